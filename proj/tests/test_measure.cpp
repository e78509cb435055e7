#include <cmath>

#include "doctest.h"
#include "goldenmap/filtration.hpp"
#include "goldenmap/measure.hpp"
#include "goldenmap/periodic.hpp"

using namespace gm;

namespace {

MapParams<double> deep(-2.0);
MapParams<double> shallow(-0.5);

}  // namespace

TEST_CASE("intersection measure, one step each way") {
  auto w = intersection_measure(deep, 1, 1, -1.5, 1.5);
  // One atom per admissible 0 w_0 0.
  CHECK(BigInt(w.atoms.size()) == count_words(1, 1, Digit(0), Digit(0)));
  CHECK(w.raw_mass() == doctest::Approx(1).epsilon(0.05));
  const auto fil = Filtration::of(deep);
  for (const auto& a : w.atoms) CHECK((in_rect(fil, Rect::Zero, a.point) || in_rect(fil, Rect::One, a.point)));
  CHECK_THROWS_AS(intersection_measure(deep, 1, 1, 0.0, 1.5), std::invalid_argument);
}

TEST_CASE("coarse graining") {
  auto w = equidistribution_measure(deep, 8);
  auto h = coarse_grain(deep, w, 2);
  CHECK(h.excluded == 0);
  CHECK(l1_distance(h, h) == 0);
  double total = 0;
  for (const auto& [k, v] : h.mass) total += v;
  CHECK(total == doctest::Approx(1));

  auto parry = parry_histogram(2);
  CHECK(parry.mass.size() == static_cast<std::size_t>(count_words(2, 2).convert_to<long>()));
  CHECK(l1_distance(parry, parry) == 0);
}

TEST_CASE("periodic measure against Parry") {
  for (const auto& m : {deep, shallow}) {
    auto cmp = compare_measures(m, equidistribution_measure(m, 12), 2);
    CHECK(cmp.valid);
    CHECK(cmp.l1 <= 0.08);
  }
}

TEST_CASE("intersection measure against Parry") {
  auto w = intersection_measure(deep, 8, 8, -1.5, 1.5);
  auto cmp = compare_measures(deep, w, 2);
  CHECK(cmp.valid);
  CHECK(cmp.l1 <= 0.1);
  CHECK(w.raw_mass() == doctest::Approx(1).epsilon(1e-4));
}

TEST_CASE("discrete currents") {
  for (const auto& m : {deep, shallow}) {
    for (Side side : {Side::Plus, Side::Minus}) {
      auto c = discrete_current(m, side, 4);
      CHECK(c.total_weight == doctest::Approx(1).epsilon(1e-9));
      for (const auto& a : c.arcs) CHECK(std::abs(a.orientation) == 1);
    }
  }
}

TEST_CASE("bump form") {
  CHECK(bump_density(4, -4) > 0);
  CHECK(bump_density(2, -4) == 0);
  CHECK(bump_density(7, -4) == 0);
  CHECK(bump_density(4, -1) == 0);
}

TEST_CASE("wedge of the two currents") {
  auto r = wedge(deep, 4);
  CHECK(r.missed == 0);
  CHECK(r.min_excess > 0);
  CHECK(r.atoms.raw_mass() == doctest::Approx(1).epsilon(0.05));
  CHECK(compare_measures(deep, r.atoms, 2).l1 <= 0.1);
}

TEST_CASE("lamination of depth 0") {
  auto r = lamination_curve(deep, Direction::Stable, SeedLine{Axis::X, 1.5}, 0);
  CHECK(r.crossings.empty());
  CHECK(r.all_matched);
  REQUIRE_FALSE(r.pieces.empty());
  for (const auto& piece : r.pieces)
    for (const auto& p : piece.points) CHECK(p.x.affine() == doctest::Approx(1.5));
}

TEST_CASE("lamination crossings are indeterminacy preimages") {
  auto r = lamination_curve(deep, Direction::Stable, SeedLine{Axis::X, 1.5}, 4);
  CHECK(r.all_matched);
  for (const auto& c : r.crossings) {
    CHECK(c.matched);
    CHECK(c.orbit_step <= 4);
  }
  const auto svg = lamination_svg(r);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}
