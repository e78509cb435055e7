#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace gm {

namespace bmp = boost::multiprecision;

// Expression templates are off so the types compose cleanly with Eigen.
using HighFloat = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;
using BigInt = bmp::number<bmp::gmp_int, bmp::et_off>;

template <class T> using Vec2 = Eigen::Matrix<T, 2, 1>;
template <class T> using Mat2 = Eigen::Matrix<T, 2, 2>;

// Thrown for a in {-1} or a >= 0 and for other inputs outside the model.
struct ParameterExcluded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PrecisionLoss : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T> struct ScalarTraits;

template <> struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static int mantissa_bits() { return std::numeric_limits<double>::digits; }
  static double to_double(double v) { return v; }
};

template <> struct ScalarTraits<HighFloat> {
  static constexpr bool exact = false;
  static int mantissa_bits() {
    HighFloat probe;
    return static_cast<int>(mpfr_get_prec(probe.backend().data()));
  }
  static double to_double(const HighFloat& v) { return v.convert_to<double>(); }
};

template <> struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static int mantissa_bits() { return std::numeric_limits<int>::max(); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
};

template <class T> double to_double(const T& v) {
  return ScalarTraits<T>::to_double(v);
}

template <class T> constexpr bool is_exact_v = ScalarTraits<T>::exact;

// Sets the working mantissa width of HighFloat for the lifetime of the scope.
// Values created before the scope keep their own width; mixing is rejected
// by check_width.
class HighPrecisionScope {
 public:
  explicit HighPrecisionScope(int bits) : saved_(HighFloat::default_precision()) {
    if (bits < 24) throw std::invalid_argument("mantissa bits must be >= 24");
    HighFloat::default_precision(
        static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)));
  }
  ~HighPrecisionScope() { HighFloat::default_precision(saved_); }
  HighPrecisionScope(const HighPrecisionScope&) = delete;
  HighPrecisionScope& operator=(const HighPrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline int width_bits(const HighFloat& v) {
  return static_cast<int>(mpfr_get_prec(v.backend().data()));
}

inline void check_width(const HighFloat& a, const HighFloat& b) {
  if (width_bits(a) != width_bits(b))
    throw std::logic_error("mixed mantissa widths");
}

template <class T> T from_double(double v) { return T(v); }

template <class T> T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else if constexpr (std::is_same_v<T, HighFloat>) {
    return HighFloat(bmp::numerator(q)) / HighFloat(bmp::denominator(q));
  } else {
    return q.convert_to<double>();
  }
}

template <class T> T pi() {
  if constexpr (std::is_same_v<T, HighFloat>) {
    return boost::math::constants::pi<HighFloat>();
  } else {
    return T(3.141592653589793238462643383279502884);
  }
}

}  // namespace gm
