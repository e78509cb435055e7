#include "doctest.h"
#include "goldenmap/degrees.hpp"

using namespace gm;

namespace {

BiPoly X() { return BiPoly::x(); }
BiPoly Y() { return BiPoly::y(); }
BiPoly C(long v) { return BiPoly::constant(Rational(v)); }

bool same_ratio(const BiPoly& n1, const BiPoly& d1, const BiPoly& n2, const BiPoly& d2) {
  return n1 * d2 == n2 * d1;
}

}  // namespace

TEST_CASE("univariate gcd") {
  UPoly p({Rational(-1), Rational(0), Rational(1)});
  UPoly q({Rational(-1), Rational(1)});
  CHECK(gcd(p, q).monic() == q);
  CHECK(gcd(p, UPoly()).monic() == p);
  CHECK(count_real_roots(p) == 2);
}

TEST_CASE("bivariate gcd") {
  CHECK(poly_gcd(X() * X() - C(1), X() - C(1)) == X() - C(1));
  CHECK(poly_gcd((X() - C(1)) * (Y() + C(2)), (X() - C(1)) * Y()) == X() - C(1));
  CHECK(poly_gcd(C(3) * X() + C(6), BiPoly()) == X() + C(2));
  // Cofactors in y alone.
  CHECK(poly_gcd((Y() - C(1)) * X(), (Y() - C(1)) * (Y() + C(1))) == Y() - C(1));
}

TEST_CASE("second iterate at a = -2") {
  const auto f = SymRationalMap::forward(Rational(-2));
  const auto ff = compose_reduce(f, f);
  // y(x - 2) - 3(x - 1) over x - 1.
  CHECK(same_ratio(ff.yn, ff.yd, Y() * (X() - C(2)) - C(3) * (X() - C(1)), X() - C(1)));
  CHECK(level_bidegree(ff.yn, ff.yd) == std::pair{1, 1});
}

TEST_CASE("map and inverse reduce to the identity") {
  const Rational a(-3);
  const auto id = compose_reduce(SymRationalMap::forward(a), SymRationalMap::inverse(a));
  CHECK(same_ratio(id.xn, id.xd, X(), C(1)));
  CHECK(same_ratio(id.yn, id.yd, Y(), C(1)));
  const auto id2 = compose_reduce(SymRationalMap::inverse(a), SymRationalMap::forward(a));
  CHECK(same_ratio(id2.xn, id2.xd, X(), C(1)));
  CHECK(same_ratio(id2.yn, id2.yd, Y(), C(1)));
}

TEST_CASE("Fibonacci degree growth") {
  for (Rational a : {Rational(-2), Rational(-1, 2), Rational(-5, 3)}) {
    const auto rep = verify_fibonacci_growth(a, 6);
    CHECK(rep.pass);
    REQUIRE(rep.rows.size() == 6);
    CHECK(rep.rows[0].bidegrees[0] == std::pair{1, 1});
    CHECK(rep.rows[1].bidegrees[0] == std::pair{2, 1});
    CHECK(rep.rows[5].bidegrees[0] == std::pair{13, 8});
  }
}

TEST_CASE("exceptional parameter drops degree") {
  CHECK_FALSE(verify_fibonacci_growth(Rational(1, 3), 6).pass);
}

TEST_CASE("pullback action") {
  const auto A = pullback_action();
  // Golden mean matrix: trace 1, determinant -1.
  CHECK(A[0][0] + A[1][1] == 1);
  CHECK(A[0][0] * A[1][1] - A[0][1] * A[1][0] == -1);
}
