#include <cmath>

#include "doctest.h"
#include "goldenmap/plane.hpp"

using namespace gm;

TEST_CASE("normalize fixes a representative") {
  auto c = normalize(ProjCoord<double>{4, 2});
  CHECK(c.num == doctest::Approx(1));
  CHECK(c.den == doctest::Approx(0.5));

  auto q = normalize(ProjCoord<Rational>{Rational(4), Rational(2)});
  CHECK(q.num == Rational(2));
  CHECK(q.den == Rational(1));

  auto inf = normalize(ProjCoord<double>{3, 0});
  CHECK(inf.num == 1);
  CHECK(inf.den == 0);

  auto zero = normalize(ProjCoord<double>{0, -5});
  CHECK(zero.num == 0);
  CHECK(zero.den == 1);

  CHECK_THROWS_AS(normalize(ProjCoord<double>{0, 0}), std::invalid_argument);
}

TEST_CASE("embedding of huge coordinates") {
  auto p = embed_affine(1e300, 0.0);
  CHECK(p.x.num == 1);
  CHECK(p.x.den == doctest::Approx(1e-300));
  CHECK(p.y.num == 0);
}

TEST_CASE("chordal distance") {
  const double pi = std::acos(-1.0);
  auto o = embed_affine(0.0, 0.0);
  CHECK(chordal_distance(o, o) == 0);
  PlanePoint<double> xinf{infinity<double>(), gm::finite(0.0)};
  CHECK(chordal_distance(o, xinf) == doctest::Approx(pi / 2));
  CHECK(chordal_distance(embed_affine(1.0, -1.0), o) == doctest::Approx(pi / 4));
  // The circle closes up through infinity.
  CHECK(chordal_distance(embed_affine(1e8, 0.0), embed_affine(-1e8, 0.0)) < 1e-7);
}
