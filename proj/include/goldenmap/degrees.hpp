#pragma once

#include <array>
#include <utility>
#include <vector>

#include "goldenmap/bipoly.hpp"
#include "goldenmap/map.hpp"

namespace gm {

// Rational map (xn/xd, yn/yd) with each quotient in lowest terms.
struct SymRationalMap {
  BiPoly xn, xd, yn, yd;

  static SymRationalMap identity();
  static SymRationalMap forward(const Rational& a);
  static SymRationalMap inverse(const Rational& a);
};

// Cancels the gcd of a quotient; the denominator is made monic.
std::pair<BiPoly, BiPoly> reduce(const BiPoly& num, const BiPoly& den);

// g o h, reduced.
SymRationalMap compose_reduce(const SymRationalMap& g, const SymRationalMap& h);

// Bidegree of the level curve {num = c den} for a generic constant c.
std::pair<int, int> level_bidegree(const BiPoly& num, const BiPoly& den);

struct DegreeRow {
  int n;
  std::array<std::pair<int, int>, 2> bidegrees;
  std::array<std::pair<int, int>, 2> expected;
  bool pass;
};

struct DegreeReport {
  Rational a;
  std::vector<DegreeRow> rows;
  bool pass;
};

// Level-curve bidegrees of the components of f^n against
// (F_{n+1}, F_n) and (F_n, F_{n-1}). Accepts any rational a != -1, including
// the exceptional values where growth drops.
DegreeReport verify_fibonacci_growth(const Rational& a, int n_max);

// 2x2 linear action on H^{1,1}: column k holds the class of the pullback of
// the k-th generator.
std::array<std::array<long, 2>, 2> pullback_action();

}  // namespace gm
