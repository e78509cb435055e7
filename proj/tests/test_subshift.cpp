#include <cmath>

#include "doctest.h"
#include "goldenmap/subshift.hpp"

using namespace gm;

TEST_CASE("word validation") {
  CHECK(validate(Word::parse("0.010")).ok);
  auto v = validate(Word::parse("0.110"));
  CHECK_FALSE(v.ok);
  CHECK(v.index == 1);
  CHECK_THROWS(require_valid(Word::parse("0.110")));

  auto alt = Word::parse("(01).(01)");
  CHECK(validate(alt).ok);
  CHECK(alt.alternating());
  CHECK_FALSE(Word::parse("(0).(0)").alternating());
  // Forbidden block across the seam of a cycle.
  CHECK_FALSE(validate(Word::periodic({1, 0, 1})).ok);
}

TEST_CASE("middle dot is accepted") {
  CHECK(Word::parse("0\xC2\xB7" "010") == Word::parse("0.010"));
}

TEST_CASE("shift") {
  auto w = Word::parse("0.01");
  CHECK(w.lo() == 0);
  CHECK(w.hi() == 2);
  auto s = shift(w, 1);
  CHECK(s.lo() == -1);
  CHECK(s.hi() == 1);
  CHECK(s.at(0) == w.at(1));
  CHECK(s.at(1) == 1);
}

TEST_CASE("word counts") {
  CHECK(count_words(1, 2, Digit(0), Digit(0)) == 3);
  CHECK(count_words(0, 1, Digit(1), Digit(1)) == 0);
  CHECK(count_words(0, 0, Digit(0), Digit(0)) == 1);
  for (long k = 0; k < 12; ++k) CHECK(count_words(k, 0) == fibonacci(k + 3));
  CHECK(fibonacci(-1) == 1);
  CHECK(fibonacci(0) == 0);
  CHECK(fibonacci(1) == 1);
}

TEST_CASE("periodic words") {
  CHECK(enumerate_periodic(1).size() == 1);
  CHECK(enumerate_periodic(2).size() == 3);
  CHECK(enumerate_periodic(3).size() == 4);
  for (int n = 1; n <= 12; ++n)
    CHECK(BigInt(enumerate_periodic(n).size()) == fibonacci(n + 1) + fibonacci(n - 1));
  const double h = std::log(static_cast<double>(enumerate_periodic(20).size())) / 20;
  CHECK(h == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(0.02));
}

TEST_CASE("Parry measure") {
  CHECK(cylinder_measure(Word::parse("0.")) == doctest::Approx(0.723607).epsilon(1e-6));
  CHECK(cylinder_measure(Word::parse("1.1")) == 0);
  CHECK(cylinder_measure(Word::parse("0.")) + cylinder_measure(Word::parse("1.")) == doctest::Approx(1));
  const QSqrt5 phi = QSqrt5::phi();
  CHECK(cylinder_measure_exact(Word::parse("0.")) == phi * phi / (QSqrt5{1} + phi * phi));
  // Shift invariance.
  CHECK(cylinder_measure_exact(Word::parse("0.10")) == cylinder_measure_exact(shift(Word::parse("0.10"), 2)));
}

TEST_CASE("balanced measures") {
  const QSqrt5 inv = QSqrt5::phi().inverse();
  for (const auto& r : balanced_check({0})) CHECK(r.ok);
  auto one = balanced_check({1, 0});
  REQUIRE(one.size() == 1);
  CHECK(one[0].prepended == 0);
  CHECK(one[0].ratio == inv);
  // Every admissible w_0..w_k up to k = 6.
  std::vector<std::vector<Digit>> level{{0}, {1}};
  int checked = 0;
  for (int k = 0; k <= 6; ++k) {
    std::vector<std::vector<Digit>> next;
    for (const auto& w : level) {
      for (const auto& r : balanced_check(w)) {
        CHECK(r.ok);
        ++checked;
      }
      next.push_back(w);
      next.back().push_back(0);
      if (w.back() == 0) {
        next.push_back(w);
        next.back().push_back(1);
      }
    }
    level = std::move(next);
  }
  CHECK(checked > 0);
}

TEST_CASE("transversal distance") {
  TransversalOrder ord;
  auto w = Word::parse("0.010");
  CHECK(transversal_distance(w, w, Side::Plus, ord, 6).value == 0);
}
