#include "goldenmap/degrees.hpp"

#include <algorithm>
#include <stdexcept>

#include "goldenmap/subshift.hpp"

namespace gm {

SymRationalMap SymRationalMap::identity() {
  const BiPoly one = BiPoly::constant(1);
  return {BiPoly::x(), one, BiPoly::y(), one};
}

SymRationalMap SymRationalMap::forward(const Rational& a) {
  if (a == -1) throw ParameterExcluded("parameter excluded: a = -1");
  const BiPoly x = BiPoly::x(), y = BiPoly::y(), one = BiPoly::constant(1);
  return {y * (x + one * a), x - one, x + one * (a - 1), one};
}

SymRationalMap SymRationalMap::inverse(const Rational& a) {
  if (a == -1) throw ParameterExcluded("parameter excluded: a = -1");
  const BiPoly x = BiPoly::x(), y = BiPoly::y(), one = BiPoly::constant(1);
  return {y + one * (1 - a), one, x * (y - one * a), y + one};
}

std::pair<BiPoly, BiPoly> reduce(const BiPoly& num, const BiPoly& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  if (num.is_zero()) return {BiPoly(), BiPoly::constant(1)};
  const BiPoly g = poly_gcd(num, den);
  BiPoly n = exact_div(num, g), d = exact_div(den, g);
  const Rational s = Rational(1) / d.lex_lead();
  return {n * s, d * s};
}

namespace {

struct PowerCache {
  BiPoly base;
  std::vector<BiPoly> p;
  const BiPoly& get(int k) {
    if (p.empty()) p.push_back(BiPoly::constant(1));
    while (static_cast<int>(p.size()) <= k) p.push_back(p.back() * base);
    return p[k];
  }
};

// Substitutes x = P/Q, y = R/S into N and D, clearing the same denominator.
std::pair<BiPoly, BiPoly> substitute(const BiPoly& N, const BiPoly& D, PowerCache& P, PowerCache& Q,
                                     PowerCache& R, PowerCache& S) {
  const int dx = std::max(N.deg_x(), D.deg_x());
  const int dy = std::max(N.deg_y(), D.deg_y());
  auto apply = [&](const BiPoly& F) {
    BiPoly out;
    for (int i = 0; i <= F.deg_x(); ++i) {
      const UPoly& row = F[i];
      if (row.is_zero()) continue;
      BiPoly inner;
      for (int j = 0; j <= row.degree(); ++j) {
        if (row[j] == 0) continue;
        inner = inner + R.get(j) * S.get(dy - j) * row[j];
      }
      out = out + P.get(i) * Q.get(dx - i) * inner;
    }
    return out;
  };
  return {apply(N), apply(D)};
}

}  // namespace

SymRationalMap compose_reduce(const SymRationalMap& g, const SymRationalMap& h) {
  PowerCache P{h.xn, {}}, Q{h.xd, {}}, R{h.yn, {}}, S{h.yd, {}};
  auto [xn, xd] = substitute(g.xn, g.xd, P, Q, R, S);
  auto [yn, yd] = substitute(g.yn, g.yd, P, Q, R, S);
  if (xd.is_zero() || yd.is_zero()) throw std::domain_error("composition is degenerate");
  auto X = reduce(xn, xd);
  auto Y = reduce(yn, yd);
  return {X.first, X.second, Y.first, Y.second};
}

std::pair<int, int> level_bidegree(const BiPoly& num, const BiPoly& den) {
  // A large prime quotient stands in for a generic level.
  const Rational c(1000003, 7919);
  const BiPoly L = num - den * c;
  return L.bidegree();
}

DegreeReport verify_fibonacci_growth(const Rational& a, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be positive");
  DegreeReport rep{a, {}, true};
  const SymRationalMap f = SymRationalMap::forward(a);
  SymRationalMap fn = f;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) fn = compose_reduce(f, fn);
    DegreeRow row;
    row.n = n;
    row.bidegrees = {level_bidegree(fn.xn, fn.xd), level_bidegree(fn.yn, fn.yd)};
    const auto F = [](long k) { return fibonacci(k).convert_to<int>(); };
    row.expected = {std::pair{F(n + 1), F(n)}, std::pair{F(n), F(n - 1)}};
    row.pass = row.bidegrees == row.expected;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

std::array<std::array<long, 2>, 2> pullback_action() { return {{{0, 1}, {1, 1}}}; }

}  // namespace gm
