#include <cmath>
#include <random>

#include "doctest.h"
#include "goldenmap/filtration.hpp"

using namespace gm;

namespace {

MapParams<double> deep(-2.0);

bool has(const std::vector<Membership>& ms, Rect r, bool interior) {
  for (const auto& m : ms)
    if (m.rect == r && m.interior == interior) return true;
  return false;
}

}  // namespace

TEST_CASE("rectangle membership") {
  const auto fil = Filtration::of(deep);
  auto fp = classify_point(fil, embed_affine(1.5, -1.5));
  REQUIRE(fp.size() == 1);
  CHECK(fp[0].rect == Rect::Zero);
  CHECK(fp[0].interior);

  auto corner = classify_point(fil, PlanePoint<double>{infinity<double>(), infinity<double>()});
  CHECK(has(corner, Rect::Zero, false));
  CHECK(has(corner, Rect::One, false));

  auto origin = classify_point(fil, embed_affine(0.0, 0.0));
  CHECK(has(origin, Rect::Plus, false));
  CHECK(has(origin, Rect::Minus, false));
  CHECK(has(origin, Rect::One, false));

  CHECK(in_interior(fil, Rect::Plus, embed_affine(-10.0, -10.0)));
  CHECK(in_interior(fil, Rect::One, embed_affine(-5.0, 7.0)));
}

TEST_CASE("drift and non-return") {
  auto d = forward_drift(deep, Vec2<double>(0, -1));
  CHECK(d.applicable);
  CHECK(d.contained);
  CHECK(d.pass);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-50, 50);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    Vec2<double> p(U(rng), U(rng));
    auto f = forward_drift(deep, p);
    if (f.applicable) {
      CHECK(f.pass);
      ++checked;
    }
    auto b = backward_drift(deep, p);
    if (b.applicable) CHECK(b.pass);
    if (in_rect(Filtration::of(deep), Rect::One, embed_affine(p))) CHECK(r1_nonreturn(deep, p));
  }
  CHECK(checked > 100);
}

TEST_CASE("itineraries") {
  auto r = itinerary(deep, embed_affine(1.5, -1.5), 8, 8);
  CHECK(r.lo == -8);
  CHECK(r.hi() == 8);
  for (Digit d : r.digits) CHECK(d == 0);

  auto q = itinerary(deep, embed_affine(-5.0, 7.0), 0, 1);
  REQUIRE(q.has_digit(0));
  REQUIRE(q.has_digit(1));
  CHECK(q.digit(0) == 1);
  CHECK(q.digit(1) == 0);

  auto esc = itinerary(deep, embed_affine(-10.0, -10.0), 0, 5);
  CHECK(esc.fwd_end.kind == Termination::EscapedToRPlus);
  CHECK(esc.fwd_end.step == 0);
  CHECK(esc.digits.empty());
}

TEST_CASE("no forbidden block on sampled orbits") {
  MapParams<double> shallow(-0.5);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-8, 8);
  for (const auto& m : {deep, shallow}) {
    for (int i = 0; i < 300; ++i) {
      auto r = itinerary(m, embed_affine(U(rng), U(rng)), 6, 6);
      for (std::size_t k = 1; k < r.digits.size(); ++k) CHECK_FALSE((r.digits[k - 1] == 1 && r.digits[k] == 1));
    }
  }
}

TEST_CASE("expansivity constant") {
  const double pi = std::acos(-1.0);
  auto e = expansivity_constant(deep);
  // R1 contains the line x = inf, so the gap from {1 <= x <= 2} closes through
  // infinity: atan(1/2) rather than the pi/4 from the finite end.
  CHECK(e.dist_a == doctest::Approx(std::atan(0.5)));
  CHECK(e.dist_b == doctest::Approx(std::atan(0.5)));
  CHECK(e.eta == doctest::Approx(0.9 * std::atan(0.5)));
  CHECK(e.eta < 0.9 * pi / 4);
  for (double a : {-1.01, -3.0, -50.0}) CHECK(expansivity_constant(MapParams<double>(a)).eta > 0);
}

TEST_CASE("basins") {
  auto b = basin_classify(deep, embed_affine(-10.0, -10.0), 50);
  CHECK(b.basin == Basin::ForwardBasin);
  CHECK(b.step == 0);
  // The fixed point is a saddle with expansion 3 + 2 sqrt2, so 45 bits of
  // trust last about 17 steps; past that the answer is Undecided.
  CHECK(basin_classify(deep, embed_affine(1.5, -1.5), 15).basin == Basin::NearOmega);
  CHECK(basin_classify(deep, embed_affine(1.5, -1.5), 40).basin == Basin::Undecided);
}

TEST_CASE("basins are dense") {
  const double h = std::acos(-1.0) / 2;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-h, h);
  for (double a : {-2.0, -0.5}) {
    MapParams<double> m(a);
    int escaped = 0;
    const int N = 10000;
    for (int i = 0; i < N; ++i) {
      const auto b = basin_classify(m, embed_affine(std::tan(U(rng)), std::tan(U(rng))), 100);
      escaped += b.basin == Basin::ForwardBasin || b.basin == Basin::BackwardBasin;
    }
    CHECK(escaped >= 0.99 * N);
  }
}
