#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "goldenmap/arcs.hpp"

using namespace gm;

namespace {

MapParams<double> deep(-2.0);
MapParams<double> shallow(-0.5);

}  // namespace

TEST_CASE("partition sizes follow the word count") {
  for (const auto& m : {deep, shallow}) {
    for (ArcKind kind : {ArcKind::U, ArcKind::S}) {
      for (Digit d : {Digit(0), Digit(1)}) {
        for (int n = 1; n <= 5; ++n) {
          const auto bs = partition(m, kind, d, n, default_seed(m, kind, d));
          const BigInt expect = kind == ArcKind::U ? count_words(n, 0, d) : count_words(0, n, std::nullopt, d);
          CHECK(BigInt(bs.size()) == expect);
        }
      }
    }
  }
}

TEST_CASE("seed of a single digit s-arc is the arc") {
  const SeedLine seed{Axis::X, 1.5};
  auto arc = trace_arc(deep, ArcKind::S, {0}, seed);
  REQUIRE(arc.points.size() > 2);
  for (const auto& p : arc.points) CHECK(p.x.affine() == doctest::Approx(1.5));
  CHECK(arc.mismatches == 0);
}

TEST_CASE("improper seeds are rejected") {
  CHECK_FALSE(seed_is_proper(deep, SeedLine{Axis::Y, 0.5}, ArcKind::U, 0));
  CHECK_THROWS_AS(trace_arc(deep, ArcKind::U, {0, 0}, SeedLine{Axis::Y, 0.5}), TraceError);
  CHECK_THROWS(trace_arc(deep, ArcKind::U, {1, 1}, default_seed(deep, ArcKind::U, 1)));
}

TEST_CASE("slope checks on traced arcs") {
  for (const auto& m : {deep, shallow}) {
    for (ArcKind kind : {ArcKind::U, ArcKind::S}) {
      for (Digit d : {Digit(0), Digit(1)}) {
        for (const auto& b : partition(m, kind, d, 4, default_seed(m, kind, d))) {
          const auto arc = trace_arc(m, b);
          CHECK(arc.mismatches == 0);
          const auto sc = check_slopes(m, arc);
          CHECK(sc.pass);
        }
      }
    }
  }
}

TEST_CASE("corrupted arc fails the slope check") {
  auto arc = trace_arc(deep, ArcKind::U, {0, 0}, default_seed(deep, ArcKind::U, 0));
  REQUIRE(check_slopes(deep, arc).pass);
  // Reversing one coordinate flips the sign of every secant slope.
  std::vector<ProjCoord<double>> ys;
  for (const auto& p : arc.points) ys.push_back(p.y);
  std::reverse(ys.begin(), ys.end());
  for (std::size_t i = 0; i < ys.size(); ++i) arc.points[i].y = ys[i];
  CHECK_FALSE(check_slopes(deep, arc).pass);
}

TEST_CASE("cone invariance") {
  auto c = cone_invariance_check(deep, Vec2<double>(3, -2), 64);
  CHECK(c.applicable);
  CHECK(c.directions == 64);
  CHECK(c.one_step_margin >= -kConeTol);
  CHECK(c.pass);
  int strict = 0;
  for (double x : {1.5, 2.5, 4.0, 9.0})
    for (double y : {-1.5, -4.0, -9.0}) {
      auto k = cone_invariance_check(deep, Vec2<double>(x, y), 32);
      if (!k.applicable) continue;
      CHECK(k.pass);
      if (k.two_step) {
        CHECK(k.two_step_margin > 0);
        ++strict;
      }
    }
  CHECK(strict > 0);
}

TEST_CASE("rectangle of the fixed point") {
  auto r = build_rectangle(deep, Word::finite(std::vector<Digit>(13, 0), -6));
  CHECK(r.corners.size() == 4);
  CHECK(r.witness_ok);
  CHECK(r.contains(deep, embed_affine(1.5, -1.5)));
  CHECK(chordal_distance(r.witness, embed_affine(1.5, -1.5)) < 1e-6);
  CHECK_FALSE(r.contains(deep, embed_affine(3.0, -1.5)));
}

TEST_CASE("distinct rectangles have disjoint strips") {
  auto r1 = build_rectangle(deep, Word::parse("10.01"));
  auto r2 = build_rectangle(deep, Word::parse("00.01"));
  auto r3 = build_rectangle(deep, Word::parse("10.00"));
  CHECK(strip_overlap(sample_strip(deep, r1.u_bounds, 17), sample_strip(deep, r2.u_bounds, 17)) <= 0);
  CHECK(strip_overlap(sample_strip(deep, r1.s_bounds, 17), sample_strip(deep, r3.s_bounds, 17)) <= 0);
  CHECK_FALSE(r1.contains(deep, r2.witness, 0));
  CHECK_FALSE(r2.contains(deep, r1.witness, 0));
}

TEST_CASE("fiber counts") {
  for (int n = 1; n <= 4; ++n) {
    auto fc = fiber_count(deep, n, 3.0, true);
    CHECK(fc.expected == fibonacci(n + 1));
    CHECK(fc.crossings == fc.expected);
    CHECK(fc.exact_roots == fc.expected);
    CHECK(fc.pass);
  }
}

TEST_CASE("order calibration") {
  auto d = calibrate_order(deep, 5);
  CHECK(d.unique);
  CHECK(d.order.first_after_zero == 0);
  CHECK(d.order.reverse[0][0]);
  CHECK_FALSE(d.order.reverse[0][1]);
  CHECK_FALSE(d.order.reverse[1][0]);
  auto s = calibrate_order(shallow, 5);
  CHECK(s.unique);
  CHECK(s.order.first_after_zero == 0);
  CHECK_FALSE(s.order.reverse[0][0]);
  CHECK_FALSE(s.order.reverse[0][1]);
  CHECK_FALSE(s.order.reverse[1][0]);
}
