#pragma once

#include <array>
#include <optional>

#include "goldenmap/plane.hpp"

namespace gm {

enum class Regime { DeepNegative, ShallowNegative };

inline const char* regime_name(Regime r) {
  return r == Regime::DeepNegative ? "DeepNegative" : "ShallowNegative";
}

// f(x,y) = (y(x+a)/(x-1), x+a-1) with a < 0, a != -1.
template <class T> struct MapParams {
  T a;
  Regime regime;

  explicit MapParams(const T& a_) : a(a_), regime(Regime::DeepNegative) {
    if (!(a < T(0))) throw ParameterExcluded("parameter excluded: a must be negative");
    if (a == T(-1)) throw ParameterExcluded("parameter excluded: a = -1");
    regime = a < T(-1) ? Regime::DeepNegative : Regime::ShallowNegative;
  }

  template <class U> MapParams<U> cast() const {
    if constexpr (std::is_same_v<T, Rational>)
      return MapParams<U>(from_rational<U>(a));
    else
      return MapParams<U>(U(a));
  }
};

// Indeterminacy points and critical data.
template <class T> std::array<PlanePoint<T>, 2> indeterminacy_forward(const MapParams<T>& m) {
  return {PlanePoint<T>{finite(T(1)), finite(T(0))}, PlanePoint<T>{finite(T(-m.a)), infinity<T>()}};
}

template <class T> std::array<PlanePoint<T>, 2> indeterminacy_inverse(const MapParams<T>& m) {
  return {PlanePoint<T>{finite(T(0)), finite(T(-1))}, PlanePoint<T>{infinity<T>(), finite(m.a)}};
}

template <class T> struct EvalResult {
  PlanePoint<T> point;
  bool indeterminate = false;
  int which = -1;  // index into indeterminacy_forward / indeterminacy_inverse
};

constexpr double kIndeterminacyTol = 1e-12;

namespace detail {

template <class T>
int near_indeterminacy(const PlanePoint<T>& p, const std::array<PlanePoint<T>, 2>& pts) {
  for (int i = 0; i < 2; ++i) {
    if constexpr (is_exact_v<T>) {
      const auto q = normalize(p);
      const auto r = normalize(pts[i]);
      if (q.x.num == r.x.num && q.x.den == r.x.den && q.y.num == r.y.num && q.y.den == r.y.den)
        return i;
    } else {
      if (chordal_distance(p, pts[i]) < T(kIndeterminacyTol)) return i;
    }
  }
  return -1;
}

}  // namespace detail

template <class T> EvalResult<T> eval_forward(const MapParams<T>& m, const PlanePoint<T>& p) {
  const int hit = detail::near_indeterminacy(p, indeterminacy_forward(m));
  if (hit >= 0) return {p, true, hit};
  const T& a = m.a;
  const auto& [x0, x1] = p.x;
  const auto& [y0, y1] = p.y;
  PlanePoint<T> out;
  if (x1 == T(0)) {
    // (inf, y) -> (y, inf)
    out = {p.y, infinity<T>()};
  } else if (y1 == T(0)) {
    // (x, inf) -> (inf, x + a - 1)
    out = {infinity<T>(), {x0 + (a - 1) * x1, x1}};
  } else {
    out = {{y0 * (x0 + a * x1), y1 * (x0 - x1)}, {x0 + (a - 1) * x1, x1}};
  }
  return {normalize(out), false, -1};
}

template <class T> EvalResult<T> eval_inverse(const MapParams<T>& m, const PlanePoint<T>& p) {
  const int hit = detail::near_indeterminacy(p, indeterminacy_inverse(m));
  if (hit >= 0) return {p, true, hit};
  const T& a = m.a;
  const auto& [x0, x1] = p.x;
  const auto& [y0, y1] = p.y;
  PlanePoint<T> out;
  if (y1 == T(0)) {
    // (x, inf) -> (inf, x)
    out = {infinity<T>(), p.x};
  } else if (x1 == T(0)) {
    // (inf, y) -> (y + 1 - a, inf)
    out = {{y0 + (1 - a) * y1, y1}, infinity<T>()};
  } else {
    out = {{y0 + (1 - a) * y1, y1}, {x0 * (y0 - a * y1), x1 * (y0 + y1)}};
  }
  return {normalize(out), false, -1};
}

// Affine-chart iterates used by the numerical modules. They return nullopt on
// indeterminacy.
template <class T>
std::optional<PlanePoint<T>> forward_n(const MapParams<T>& m, PlanePoint<T> p, int n) {
  for (int k = 0; k < n; ++k) {
    auto r = eval_forward(m, p);
    if (r.indeterminate) return std::nullopt;
    p = r.point;
  }
  return p;
}

template <class T>
std::optional<PlanePoint<T>> inverse_n(const MapParams<T>& m, PlanePoint<T> p, int n) {
  for (int k = 0; k < n; ++k) {
    auto r = eval_inverse(m, p);
    if (r.indeterminate) return std::nullopt;
    p = r.point;
  }
  return p;
}

template <class T>
std::optional<PlanePoint<T>> iterate(const MapParams<T>& m, const PlanePoint<T>& p, int k) {
  return k >= 0 ? forward_n(m, p, k) : inverse_n(m, p, -k);
}

// Jacobians in affine coordinates; the point and its image must be finite.
template <class T> Mat2<T> jacobian(const MapParams<T>& m, const Vec2<T>& p) {
  const T x = p(0), y = p(1), a = m.a;
  const T d = x - 1;
  Mat2<T> J;
  J << y * (-1 - a) / (d * d), (x + a) / d, T(1), T(0);
  return J;
}

template <class T> Mat2<T> jacobian_inverse(const MapParams<T>& m, const Vec2<T>& p) {
  const T x = p(0), y = p(1), a = m.a;
  const T d = y + 1;
  Mat2<T> J;
  J << T(0), T(1), (y - a) / d, x * (1 + a) / (d * d);
  return J;
}

template <class T> Vec2<T> forward_affine(const MapParams<T>& m, const Vec2<T>& p) {
  return Vec2<T>(p(1) * (p(0) + m.a) / (p(0) - 1), p(0) + m.a - 1);
}

template <class T> Vec2<T> inverse_affine(const MapParams<T>& m, const Vec2<T>& p) {
  return Vec2<T>(p(1) + 1 - m.a, p(0) * (p(1) - m.a) / (p(1) + 1));
}

// Density of the invariant 2-form dx^dy/(y-x+1); singular on {y = x-1}.
template <class T> std::optional<T> two_form_density(const Vec2<T>& p) {
  const T d = p(1) - p(0) + 1;
  if (d == T(0)) return std::nullopt;
  return T(1) / d;
}

template <class T> struct NearInfinity {
  Vec2<T> actual;
  Vec2<T> predicted;
  T relative_error;
};

// Compares f^2 with x(1+(a-1)/x+(a+1)/y), y(1+(a-1)/y+(a+1)/x).
template <class T> NearInfinity<T> near_infinity_prediction(const MapParams<T>& m, const Vec2<T>& p) {
  using std::sqrt;
  const T x = p(0), y = p(1), a = m.a;
  if (x == T(0) || y == T(0) || x == T(1))
    throw std::invalid_argument("near-infinity probe needs x, y away from 0 and x != 1");
  const Vec2<T> f1 = forward_affine(m, p);
  const Vec2<T> f2 = forward_affine(m, f1);
  Vec2<T> pred(x * (1 + (a - 1) / x + (a + 1) / y), y * (1 + (a - 1) / y + (a + 1) / x));
  const T err = (f2 - pred).norm() / p.norm();
  return {f2, pred, err};
}

// Parameters where the degree sequence drops: a = (n-1)/(n+1) or a = 1/n.
inline bool is_exceptional(const Rational& a, int n_max = 1000) {
  for (int n = 1; n <= n_max; ++n) {
    if (a == Rational(n - 1, n + 1) || a == Rational(1, n)) return true;
  }
  return false;
}

inline bool is_exceptional(double a, int n_max = 1000) {
  for (int n = 1; n <= n_max; ++n) {
    if (std::abs(a - double(n - 1) / (n + 1)) < 1e-15 || std::abs(a - 1.0 / n) < 1e-15) return true;
  }
  return false;
}

// Fixed point ((1-a)/2, (a-1)/2).
template <class T> PlanePoint<T> fixed_point(const MapParams<T>& m) {
  return embed_affine(T((1 - m.a) / 2), T((m.a - 1) / 2));
}

// The involution (x,y) -> (-y,-x) conjugating f to its inverse.
template <class T> PlanePoint<T> involution(const PlanePoint<T>& p) {
  return normalize(PlanePoint<T>{{-p.y.num, p.y.den}, {-p.x.num, p.x.den}});
}

}  // namespace gm
