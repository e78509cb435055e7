#pragma once

#include <algorithm>
#include <ostream>

#include "goldenmap/scalar.hpp"

namespace gm {

// A point (num:den) of the real projective line. Infinity is (1:0).
template <class T> struct ProjCoord {
  T num{0};
  T den{1};

  bool is_infinite() const { return den == T(0); }
  T affine() const { return num / den; }
};

template <class T> struct PlanePoint {
  ProjCoord<T> x;
  ProjCoord<T> y;

  bool is_finite() const { return !x.is_infinite() && !y.is_infinite(); }
  Vec2<T> affine() const { return Vec2<T>(x.affine(), y.affine()); }
};

template <class T> ProjCoord<T> normalize(ProjCoord<T> c) {
  using std::abs;
  if (c.num == T(0) && c.den == T(0))
    throw std::invalid_argument("projective coordinate (0:0)");
  if (c.den == T(0)) return {T(1), T(0)};
  if constexpr (is_exact_v<T>) {
    return {c.num / c.den, T(1)};
  } else {
    T s = std::max(abs(c.num), abs(c.den));
    if (c.den < T(0)) s = -s;
    return {c.num / s, c.den / s};
  }
}

template <class T> PlanePoint<T> normalize(const PlanePoint<T>& p) {
  return {normalize(p.x), normalize(p.y)};
}

template <class T> ProjCoord<T> infinity() { return {T(1), T(0)}; }

template <class T> ProjCoord<T> finite(const T& v) { return normalize(ProjCoord<T>{v, T(1)}); }

template <class T> PlanePoint<T> embed_affine(const T& x, const T& y) {
  return {finite(x), finite(y)};
}

template <class T> PlanePoint<T> embed_affine(const Vec2<T>& v) {
  return embed_affine(v(0), v(1));
}

// Angle of a projective coordinate in (-pi/2, pi/2]; infinity sits at pi/2.
template <class T> auto coord_angle(const ProjCoord<T>& c) {
  using std::atan2;
  if constexpr (is_exact_v<T>) {
    return coord_angle(ProjCoord<double>{to_double(c.num), to_double(c.den)});
  } else {
    if (c.den == T(0)) return pi<T>() / 2;
    T t = atan2(c.num, c.den);
    const T h = pi<T>() / 2;
    if (t > h) t -= pi<T>();
    if (t <= -h) t += pi<T>();
    return t;
  }
}

// Distance on the circle R u {inf} of length pi.
template <class A> A circle_gap(const A& t1, const A& t2) {
  using std::abs;
  A d = abs(t1 - t2);
  A other = pi<A>() - d;
  return d < other ? d : other;
}

template <class T> auto chordal_distance(const PlanePoint<T>& p, const PlanePoint<T>& q) {
  auto dx = circle_gap(coord_angle(p.x), coord_angle(q.x));
  auto dy = circle_gap(coord_angle(p.y), coord_angle(q.y));
  return dx > dy ? dx : dy;
}

template <class T> PlanePoint<T> from_angles(const T& u, const T& v) {
  using std::cos;
  using std::sin;
  return normalize(PlanePoint<T>{{sin(u), cos(u)}, {sin(v), cos(v)}});
}

inline PlanePoint<double> to_double(const PlanePoint<Rational>& p) {
  return normalize(PlanePoint<double>{{to_double(p.x.num), to_double(p.x.den)},
                                      {to_double(p.y.num), to_double(p.y.den)}});
}

inline PlanePoint<double> to_double(const PlanePoint<HighFloat>& p) {
  return normalize(PlanePoint<double>{{to_double(p.x.num), to_double(p.x.den)},
                                      {to_double(p.y.num), to_double(p.y.den)}});
}

inline PlanePoint<double> to_double(const PlanePoint<double>& p) { return p; }

template <class T> std::ostream& operator<<(std::ostream& os, const ProjCoord<T>& c) {
  if (c.is_infinite()) return os << "inf";
  return os << c.affine();
}

template <class T> std::ostream& operator<<(std::ostream& os, const PlanePoint<T>& p) {
  return os << '(' << p.x << ", " << p.y << ')';
}

}  // namespace gm
