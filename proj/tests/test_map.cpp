#include <random>

#include "doctest.h"
#include "goldenmap/map.hpp"

using namespace gm;

namespace {

MapParams<double> deep(-2.0);

bool near(const PlanePoint<double>& p, const PlanePoint<double>& q, double tol = 1e-12) {
  return chordal_distance(p, q) < tol;
}

PlanePoint<double> iota(const PlanePoint<double>& p) {
  return normalize(PlanePoint<double>{{-p.y.num, p.y.den}, {-p.x.num, p.x.den}});
}

}  // namespace

TEST_CASE("parameter exclusion") {
  CHECK_THROWS_AS(MapParams<double>(-1.0), ParameterExcluded);
  CHECK_THROWS_AS(MapParams<double>(0.0), ParameterExcluded);
  CHECK_THROWS_AS(MapParams<double>(0.5), ParameterExcluded);
  CHECK(MapParams<double>(-2.0).regime == Regime::DeepNegative);
  CHECK(MapParams<double>(-0.5).regime == Regime::ShallowNegative);
}

TEST_CASE("forward map at a = -2") {
  auto fp = eval_forward(deep, embed_affine(1.5, -1.5));
  CHECK_FALSE(fp.indeterminate);
  CHECK(near(fp.point, embed_affine(1.5, -1.5)));

  CHECK(near(eval_forward(deep, embed_affine(3.0, 1.0)).point, embed_affine(0.5, 0.0)));

  auto bad = eval_forward(deep, embed_affine(1.0, 0.0));
  CHECK(bad.indeterminate);
  CHECK(bad.which == 0);
  const PlanePoint<double> second{gm::finite(2.0), infinity<double>()};
  CHECK(eval_forward(deep, second).indeterminate);

  auto line = eval_forward(deep, PlanePoint<double>{infinity<double>(), gm::finite(3.0)});
  CHECK(line.point.x.affine() == doctest::Approx(3));
  CHECK(line.point.y.is_infinite());
}

TEST_CASE("exact forward map") {
  MapParams<Rational> m(Rational(-2));
  auto p = eval_forward(m, embed_affine(Rational(3, 2), Rational(-3, 2)));
  CHECK(p.point.x.affine() == Rational(3, 2));
  CHECK(p.point.y.affine() == Rational(-3, 2));
  auto q = eval_forward(m, embed_affine(Rational(3), Rational(1)));
  CHECK(q.point.x.affine() == Rational(1, 2));
  CHECK(q.point.y.affine() == Rational(0));
}

TEST_CASE("inverse map") {
  auto p = embed_affine(3.0, 1.0);
  CHECK(near(eval_inverse(deep, eval_forward(deep, p).point).point, p));
  CHECK(eval_inverse(deep, embed_affine(0.0, -1.0)).indeterminate);
  const PlanePoint<double> line{infinity<double>(), gm::finite(-2.0)};
  CHECK(eval_inverse(deep, line).indeterminate);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-20, 20);
  for (int i = 0; i < 200; ++i) {
    auto q = embed_affine(U(rng), U(rng));
    auto lhs = eval_inverse(deep, q);
    auto rhs = eval_forward(deep, iota(q));
    REQUIRE(lhs.indeterminate == rhs.indeterminate);
    if (!lhs.indeterminate) CHECK(chordal_distance(lhs.point, iota(rhs.point)) < 1e-12);
  }
}

TEST_CASE("jacobians") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-10, 10);
  for (double a : {-2.0, -0.5}) {
    MapParams<double> m(a);
    int done = 0;
    while (done < 100) {
      Vec2<double> p(U(rng), U(rng));
      if (std::abs(p(0) - 1) < 0.1 || std::abs(p(1) + 1) < 0.1) continue;
      const Vec2<double> fp = forward_affine(m, p);
      if (std::abs(fp(1) + 1) < 0.1) continue;
      Mat2<double> J = jacobian(m, p), fd;
      for (int k = 0; k < 2; ++k) {
        const double h = 1e-6 * (1 + std::abs(p(k)));
        Vec2<double> e = Vec2<double>::Zero();
        e(k) = h;
        fd.col(k) = (forward_affine(m, Vec2<double>(p + e)) - forward_affine(m, Vec2<double>(p - e))) / (2 * h);
      }
      CHECK((J - fd).norm() <= 1e-6 * std::max(1.0, J.norm()));
      const Mat2<double> I = jacobian_inverse(m, fp) * J;
      CHECK((I - Mat2<double>::Identity()).norm() < 1e-8);

      // Transport of dx dy/(y - x + 1).
      auto d0 = two_form_density(p), d1 = two_form_density(fp);
      if (d0 && d1 && std::abs(*d0) < 1e3 && std::abs(*d1) < 1e3)
        CHECK(std::abs(J.determinant() * *d1 / *d0) == doctest::Approx(1).epsilon(1e-9));
      ++done;
    }
  }
}

TEST_CASE("two form density") {
  CHECK(*two_form_density(Vec2<double>(0, 0)) == 1);
  CHECK_FALSE(two_form_density(Vec2<double>(2, 1)).has_value());
}

TEST_CASE("near infinity") {
  auto r = near_infinity_prediction(deep, Vec2<double>(1e4, -1e4));
  CHECK(r.relative_error <= 1e-7);
  auto s = near_infinity_prediction(deep, Vec2<double>(4e2, -4e2));
  auto t = near_infinity_prediction(deep, Vec2<double>(1e2, -1e2));
  CHECK(t.relative_error / s.relative_error == doctest::Approx(16).epsilon(0.1));
}

TEST_CASE("exceptional parameters") {
  CHECK(is_exceptional(Rational(1, 3)));
  CHECK_FALSE(is_exceptional(Rational(-2)));
  CHECK(is_exceptional(Rational(0)));
  CHECK(is_exceptional(Rational(1, 2)));
  CHECK_FALSE(is_exceptional(Rational(-1, 2)));
}
