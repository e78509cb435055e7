#include <cmath>

#include "doctest.h"
#include "goldenmap/filtration.hpp"
#include "goldenmap/periodic.hpp"

using namespace gm;

namespace {

MapParams<double> deep(-2.0);
MapParams<double> shallow(-0.5);

}  // namespace

TEST_CASE("Lefschetz budget") {
  CHECK(lefschetz_budget(1).expected_finite == 1);
  CHECK(lefschetz_budget(2).expected_finite == 1);
  CHECK(lefschetz_budget(6).expected_finite == 16);
  CHECK(lefschetz_budget(8).expected_finite == 45);
}

TEST_CASE("cycle helpers") {
  CHECK(least_period({0, 1, 0, 1}) == 2);
  CHECK(least_period({0, 0, 1}) == 3);
  CHECK(canonical_cycle({1, 0, 0}) == canonical_cycle({0, 1, 0}));
}

TEST_CASE("fixed point") {
  auto pts = locate_all(deep, 1);
  REQUIRE(pts.size() == 1);
  const auto& p = pts[0];
  CHECK(p.cycle == std::vector<Digit>{0});
  CHECK(chordal_distance(p.point, embed_affine(1.5, -1.5)) < 1e-12);
  CHECK(p.cls == PointClass::Saddle);
  CHECK(p.eigenvalues[0].imag() == 0);
  CHECK(p.eigenvalues[1].imag() == 0);
  CHECK(std::abs(p.eigenvalues[0]) > 1);
  CHECK(std::abs(p.eigenvalues[1]) < 1);
  CHECK(std::abs(p.zeta_det) == doctest::Approx(1).epsilon(1e-9));
}

TEST_CASE("small periods") {
  CHECK(locate_all(deep, 2).size() == 1);
  auto three = locate_all(deep, 3);
  CHECK(three.size() == 4);
  int period3 = 0;
  for (const auto& p : three) period3 += p.period == 3;
  CHECK(period3 == 3);
}

TEST_CASE("census up to period 8") {
  for (const auto& m : {deep, shallow}) {
    for (int n = 1; n <= 8; ++n) {
      const auto pts = locate_all(m, n);
      CHECK(BigInt(pts.size()) == lefschetz_budget(n).expected_finite);
      for (const auto& p : pts) {
        CHECK(p.cls == PointClass::Saddle);
        CHECK(p.itinerary_ok);
        CHECK(p.residual <= 1e-11);
      }
    }
  }
}

TEST_CASE("equidistribution measure") {
  auto w = equidistribution_measure(deep, 8);
  REQUIRE(w.atoms.size() == 45);
  const auto fil = Filtration::of(deep);
  for (const auto& a : w.atoms) {
    CHECK(a.weight == doctest::Approx(1.0 / 45));
    CHECK(a.point.is_finite());
    CHECK((in_rect(fil, Rect::Zero, a.point) || in_rect(fil, Rect::One, a.point)));
  }
}
