#pragma once

#include <string>
#include <utility>
#include <vector>

#include "goldenmap/scalar.hpp"

namespace gm {

// Dense univariate polynomial over Q; coeffs[i] multiplies t^i.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(const Rational& v) { return UPoly({v}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const Rational& operator[](int i) const { return c_[i]; }
  Rational coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : Rational(0); }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Rational& s) const;
  UPoly operator-() const { return *this * Rational(-1); }
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  // Euclidean division over Q.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  UPoly monic() const;
  Rational eval(const Rational& t) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

UPoly gcd(const UPoly& a, const UPoly& b);
UPoly derivative(const UPoly& p);
// Number of distinct real roots, by a Sturm sequence.
int count_real_roots(const UPoly& p);

// Polynomial in x and y over Q, stored as a polynomial in x whose
// coefficients are polynomials in y.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<UPoly> c) : c_(std::move(c)) { trim(); }
  static BiPoly constant(const Rational& v);
  static BiPoly x();
  static BiPoly y();
  // Sum of coeff * x^i y^j.
  static BiPoly from_terms(const std::vector<std::pair<std::pair<int, int>, Rational>>& terms);

  int deg_x() const { return static_cast<int>(c_.size()) - 1; }
  int deg_y() const;
  std::pair<int, int> bidegree() const { return {deg_x(), deg_y()}; }
  bool is_zero() const { return c_.empty(); }
  const UPoly& operator[](int i) const { return c_[i]; }
  UPoly coeff_x(int i) const { return i >= 0 && i <= deg_x() ? c_[i] : UPoly(); }
  Rational coeff(int i, int j) const { return coeff_x(i).coeff(j); }
  const UPoly& lead_x() const { return c_.back(); }
  // Leading coefficient in lex order (x first, then y).
  Rational lex_lead() const { return c_.back().lead(); }

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(const UPoly& s) const;
  BiPoly operator*(const Rational& s) const;
  BiPoly operator-() const { return *this * Rational(-1); }
  bool operator==(const BiPoly& o) const { return c_ == o.c_; }
  BiPoly shift_x(int k) const;  // times x^k

  Rational eval(const Rational& x, const Rational& y) const;
  std::string str() const;

 private:
  void trim();
  std::vector<UPoly> c_;
};

UPoly content(const BiPoly& p);
BiPoly primitive_part(const BiPoly& p);
// Divides exactly; throws std::domain_error when b does not divide a.
BiPoly exact_div(const BiPoly& a, const BiPoly& b);
// GCD normalized so that the lex-leading coefficient is 1.
BiPoly poly_gcd(const BiPoly& a, const BiPoly& b);
BiPoly make_monic(const BiPoly& p);

}  // namespace gm
