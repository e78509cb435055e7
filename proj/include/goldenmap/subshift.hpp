#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goldenmap/scalar.hpp"

namespace gm {

using Digit = std::uint8_t;

// A word of the golden mean shift on symbols {0,1}: the block 11 is forbidden.
// Digits w_lo..w_hi are stored explicitly; either side may continue as a
// repeated cycle. Index 0 always lies in [lo, hi].
class Word {
 public:
  Word() = default;
  Word(std::vector<Digit> core, long lo, std::vector<Digit> left_cycle = {},
       std::vector<Digit> right_cycle = {});

  // w_k = cycle[k mod n].
  static Word periodic(const std::vector<Digit>& cycle);
  // Finite word of extent [lo, lo + digits.size() - 1].
  static Word finite(const std::vector<Digit>& digits, long lo);
  static Word parse(const std::string& text);

  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(core_.size()) - 1; }
  bool left_infinite() const { return !left_.empty(); }
  bool right_infinite() const { return !right_.empty(); }
  bool is_periodic() const { return periodic_ > 0; }
  // Least period for bi-infinite periodic words, 0 otherwise.
  int period() const { return periodic_; }

  bool defined(long k) const;
  Digit at(long k) const;
  Digit operator[](long k) const { return at(k); }

  // Digits w_from..w_to, which must all be defined.
  std::vector<Digit> slice(long from, long to) const;
  // Restriction to [from, to]; result is finite.
  Word restrict(long from, long to) const;

  const std::vector<Digit>& core() const { return core_; }
  const std::vector<Digit>& left_cycle() const { return left_; }
  const std::vector<Digit>& right_cycle() const { return right_; }

  // True when no two adjacent digits are equal over the stored description.
  bool alternating() const;

  std::string str() const;
  bool operator==(const Word& o) const;
  bool operator!=(const Word& o) const { return !(*this == o); }

 private:
  std::vector<Digit> core_;
  long lo_ = 0;
  std::vector<Digit> left_;
  std::vector<Digit> right_;
  int periodic_ = 0;
  friend Word shift(const Word& w, long k);
};

struct Validation {
  bool ok = true;
  long index = 0;  // first digit of the offending block
  std::string message;
};

Validation validate(const Word& w);
void require_valid(const Word& w);

// sigma^k: (sigma w)_j = w_{j+1}.
Word shift(const Word& w, long k);

// Number of admissible words of extent [-n, m], optionally with fixed end digits.
BigInt count_words(long n, long m, std::optional<Digit> first = std::nullopt,
                   std::optional<Digit> last = std::nullopt);

// Fibonacci numbers with F_{-1} = 1, F_0 = 0.
BigInt fibonacci(long n);

// All w with sigma^n w = w, each given with its least period.
std::vector<Word> enumerate_periodic(int n);
// Cycle digits c_0..c_{n-1} of the admissible cyclic words of length n.
std::vector<std::vector<Digit>> periodic_cycles(int n);
bool is_alternating_cycle(const std::vector<Digit>& c);

// Elements p + q sqrt5 of Q(sqrt5).
struct QSqrt5 {
  Rational p{0};
  Rational q{0};

  static QSqrt5 phi();
  QSqrt5 operator+(const QSqrt5& o) const { return {p + o.p, q + o.q}; }
  QSqrt5 operator-(const QSqrt5& o) const { return {p - o.p, q - o.q}; }
  QSqrt5 operator*(const QSqrt5& o) const { return {p * o.p + 5 * q * o.q, p * o.q + q * o.p}; }
  QSqrt5 operator/(const QSqrt5& o) const;
  QSqrt5 inverse() const;
  QSqrt5 pow(long k) const;
  bool operator==(const QSqrt5& o) const { return p == o.p && q == o.q; }
  double to_double() const;
};

// Parry measure: stationary Markov measure with P_ij = A_ij r_j / (phi r_i).
struct ParryMeasure {
  std::array<std::array<QSqrt5, 2>, 2> P;
  std::array<QSqrt5, 2> stationary;

  static ParryMeasure golden();
};

const ParryMeasure& parry();

QSqrt5 cylinder_measure_exact(const Word& w);
double cylinder_measure(const Word& w);

// Balanced one-sided measures: nu+ of C(w_0..w_k) is r_{w_k} phi^{-k} / phi^2
// with r = (phi, 1); nu- reads w_0, w_{-1}, ... the same way.
QSqrt5 balanced_plus_exact(const std::vector<Digit>& w0_to_wk);
double balanced_plus(const std::vector<Digit>& w0_to_wk);

struct BalancedResult {
  Digit prepended;
  QSqrt5 ratio;
  bool ok;
};
std::vector<BalancedResult> balanced_check(const std::vector<Digit>& w0_to_wk);

// Order on a transversal family. Words are read v_0, v_1, ... (for the plus
// side v_k = w_k, for the minus side v_k = w_{-k}). After a 0 the child digit
// `first_after_zero` comes first; each pair (v_k, v_{k+1}) with reverse set
// flips the order of everything below it.
struct TransversalOrder {
  Digit first_after_zero = 0;
  bool reverse[2][2] = {{false, false}, {false, false}};

  bool less(const std::vector<Digit>& v1, const std::vector<Digit>& v2) const;
  // nu of {u < v} within C(v_0), truncated after v.size() digits.
  double cdf(const std::vector<Digit>& v, double* bound = nullptr) const;
  std::string str() const;
  bool operator==(const TransversalOrder& o) const;
};

enum class Side { Plus, Minus };

struct TransversalDistance {
  double value;
  double bound;
};

// dist'_{+-}: balanced mass of the interval between two words with the same
// digit at index 0.
TransversalDistance transversal_distance(const Word& w1, const Word& w2, Side side,
                                         const TransversalOrder& order, int depth);

// Reads v_0..v_depth from a word for the given side.
std::vector<Digit> side_digits(const Word& w, Side side, int depth);

std::string digits_str(const std::vector<Digit>& d);
std::vector<Digit> parse_digits(const std::string& s);

}  // namespace gm
