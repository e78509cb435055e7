#include "goldenmap/bipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gm {

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const Rational& s) const {
  if (s == 0) return {};
  std::vector<Rational> r = c_;
  for (auto& v : r) v *= s;
  return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  std::vector<Rational> rem = c_;
  const int dd = d.degree();
  if (degree() < dd) return {UPoly(), *this};
  std::vector<Rational> q(degree() - dd + 1);
  for (int k = degree(); k >= dd; --k) {
    if (rem[k] == 0) continue;
    const Rational t = rem[k] / d.lead();
    q[k - dd] = t;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= t * d[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(rem))};
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  return *this * (Rational(1) / lead());
}

Rational UPoly::eval(const Rational& t) const {
  Rational v = 0;
  for (int i = degree(); i >= 0; --i) v = v * t + c_[i];
  return v;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly u = a, v = b;
  while (!v.is_zero()) {
    UPoly r = u.divmod(v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

UPoly derivative(const UPoly& p) {
  if (p.degree() < 1) return UPoly();
  std::vector<Rational> c(p.degree());
  for (int i = 1; i <= p.degree(); ++i) c[i - 1] = p[i] * i;
  return UPoly(std::move(c));
}

int count_real_roots(const UPoly& p) {
  if (p.degree() < 1) return 0;
  // Square-free part first so the chain counts distinct roots.
  const UPoly q = p.divmod(gcd(p, derivative(p))).first;
  std::vector<UPoly> chain{q, derivative(q)};
  while (!chain.back().is_zero()) {
    const UPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  auto changes = [&](bool at_plus) {
    int n = 0, last = 0;
    for (const UPoly& s : chain) {
      if (s.is_zero()) continue;
      int sg = s.lead() > 0 ? 1 : -1;
      if (!at_plus && s.degree() % 2 == 1) sg = -sg;
      if (last != 0 && sg != last) ++n;
      last = sg;
    }
    return n;
  };
  return changes(false) - changes(true);
}

void BiPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::constant(const Rational& v) { return BiPoly({UPoly::constant(v)}); }
BiPoly BiPoly::x() { return BiPoly({UPoly(), UPoly::constant(1)}); }
BiPoly BiPoly::y() { return BiPoly({UPoly({0, 1})}); }

BiPoly BiPoly::from_terms(const std::vector<std::pair<std::pair<int, int>, Rational>>& terms) {
  int dx = 0, dy = 0;
  for (const auto& [e, c] : terms) {
    dx = std::max(dx, e.first);
    dy = std::max(dy, e.second);
  }
  std::vector<std::vector<Rational>> m(dx + 1, std::vector<Rational>(dy + 1));
  for (const auto& [e, c] : terms) m[e.first][e.second] += c;
  std::vector<UPoly> c;
  for (auto& row : m) c.emplace_back(std::move(row));
  return BiPoly(std::move(c));
}

int BiPoly::deg_y() const {
  int d = -1;
  for (const auto& u : c_) d = std::max(d, u.degree());
  return d;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  std::vector<UPoly> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff_x(int(i)) + o.coeff_x(int(i));
  return BiPoly(std::move(r));
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
  std::vector<UPoly> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff_x(int(i)) - o.coeff_x(int(i));
  return BiPoly(std::move(r));
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<UPoly> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return BiPoly(std::move(r));
}

BiPoly BiPoly::operator*(const UPoly& s) const {
  std::vector<UPoly> r = c_;
  for (auto& u : r) u = u * s;
  return BiPoly(std::move(r));
}

BiPoly BiPoly::operator*(const Rational& s) const {
  std::vector<UPoly> r = c_;
  for (auto& u : r) u = u * s;
  return BiPoly(std::move(r));
}

BiPoly BiPoly::shift_x(int k) const {
  if (is_zero()) return {};
  std::vector<UPoly> r(k);
  r.insert(r.end(), c_.begin(), c_.end());
  return BiPoly(std::move(r));
}

Rational BiPoly::eval(const Rational& x, const Rational& y) const {
  Rational v = 0;
  for (int i = deg_x(); i >= 0; --i) v = v * x + c_[i].eval(y);
  return v;
}

std::string BiPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = deg_x(); i >= 0; --i) {
    for (int j = c_[i].degree(); j >= 0; --j) {
      const Rational& c = c_[i][j];
      if (c == 0) continue;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      const Rational ac = c < 0 ? Rational(-c) : c;
      const bool unit = ac == 1;
      if (!unit || (i == 0 && j == 0)) os << ac;
      if (i > 0) os << (unit ? "" : "*") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
      if (j > 0) os << ((unit && i == 0) ? "" : "*") << "y" << (j > 1 ? "^" + std::to_string(j) : "");
    }
  }
  return os.str();
}

UPoly content(const BiPoly& p) {
  UPoly g;
  for (int i = 0; i <= p.deg_x(); ++i) {
    if (p[i].is_zero()) continue;
    g = g.is_zero() ? p[i].monic() : gcd(g, p[i]);
    if (g.degree() == 0) break;
  }
  return g;
}

namespace {

UPoly exact_div_u(const UPoly& a, const UPoly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

BiPoly div_by_u(const BiPoly& p, const UPoly& c) {
  std::vector<UPoly> r;
  for (int i = 0; i <= p.deg_x(); ++i) r.push_back(exact_div_u(p[i], c));
  return BiPoly(std::move(r));
}

// Scales to integer coefficients with no common factor and positive lex lead.
BiPoly integer_normalize(const BiPoly& p) {
  if (p.is_zero()) return p;
  BigInt l = 1, g = 0;
  for (int i = 0; i <= p.deg_x(); ++i)
    for (const auto& c : p[i].coeffs()) {
      if (c == 0) continue;
      l = bmp::lcm(l, BigInt(bmp::denominator(c)));
      g = bmp::gcd(g, BigInt(bmp::numerator(c)));
    }
  Rational s = Rational(l) / Rational(g);
  if (p.lex_lead() < 0) s = -s;
  return p * s;
}

}  // namespace

BiPoly primitive_part(const BiPoly& p) {
  if (p.is_zero()) return p;
  return div_by_u(p, content(p));
}

BiPoly make_monic(const BiPoly& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.lex_lead());
}

BiPoly exact_div(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  BiPoly r = a;
  std::vector<UPoly> q(std::max(0, a.deg_x() - b.deg_x() + 1));
  while (!r.is_zero()) {
    if (r.deg_x() < b.deg_x()) throw std::domain_error("inexact polynomial division");
    const int k = r.deg_x() - b.deg_x();
    const UPoly t = exact_div_u(r.lead_x(), b.lead_x());
    q[k] = q[k] + t;
    r = r - (b * t).shift_x(k);
  }
  return BiPoly(std::move(q));
}

namespace {

// a(x, y0) as a polynomial in x.
UPoly specialize_y(const BiPoly& a, const Rational& y0) {
  std::vector<Rational> c;
  for (int i = 0; i <= a.deg_x(); ++i) c.push_back(a[i].eval(y0));
  return UPoly(std::move(c));
}

// True when a(x,y0) and b(x,y0) are coprime for some y0 that keeps both
// x-degrees; then the gcd has x-degree 0.
bool coprime_in_x(const BiPoly& a, const BiPoly& b) {
  static const Rational probes[] = {Rational(7, 3), Rational(-11, 5), Rational(13, 2), Rational(-17, 9)};
  for (const auto& y0 : probes) {
    if (a.lead_x().eval(y0) == 0 || b.lead_x().eval(y0) == 0) continue;
    return gcd(specialize_y(a, y0), specialize_y(b, y0)).degree() == 0;
  }
  return false;
}

}  // namespace

namespace {

// Newton interpolation through (ys[k], vals[k]).
UPoly interpolate(const std::vector<Rational>& ys, const std::vector<Rational>& vals) {
  const std::size_t n = ys.size();
  std::vector<Rational> dd = vals;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t k = n - 1; k >= j; --k) dd[k] = (dd[k] - dd[k - 1]) / (ys[k] - ys[k - j]);
  UPoly out = UPoly::constant(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) out = out * UPoly({-ys[k], 1}) + UPoly::constant(dd[k]);
  return out;
}

bool divides(const BiPoly& d, const BiPoly& a) {
  try {
    exact_div(a, d);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

// gcd of two x-primitive polynomials of positive x-degree, by evaluating y
// and interpolating the scaled monic gcds.
BiPoly gcd_by_interpolation(const BiPoly& A, const BiPoly& B) {
  const UPoly gamma = gcd(A.lead_x(), B.lead_x());
  const std::size_t need = gamma.degree() + std::min(A.deg_y(), B.deg_y()) + 1;
  int d = std::min(A.deg_x(), B.deg_x()) + 1;
  std::vector<Rational> ys;
  std::vector<UPoly> gs;
  for (long k = 1; k < 100000; ++k) {
    const Rational y0((k % 2 ? 1 : -1) * (k + 2), k + 1 + 2 * (k % 3));
    if (A.lead_x().eval(y0) == 0 || B.lead_x().eval(y0) == 0) continue;
    UPoly g = gcd(specialize_y(A, y0), specialize_y(B, y0));
    if (g.degree() > d) continue;
    if (g.degree() < d) {
      d = g.degree();
      ys.clear();
      gs.clear();
    }
    if (d == 0) return BiPoly::constant(1);
    ys.push_back(y0);
    gs.push_back(g * gamma.eval(y0));
    if (ys.size() < need) continue;
    std::vector<UPoly> rows;
    for (int i = 0; i <= d; ++i) {
      std::vector<Rational> vals;
      for (const auto& gk : gs) vals.push_back(gk.coeff(i));
      rows.push_back(interpolate(ys, vals));
    }
    BiPoly H = integer_normalize(primitive_part(BiPoly(std::move(rows))));
    if (H.deg_x() == d && divides(H, A) && divides(H, B)) return H;
  }
  throw std::runtime_error("gcd interpolation did not stabilize");
}

}  // namespace

BiPoly poly_gcd(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  const UPoly ca = content(a), cb = content(b);
  const UPoly c = gcd(ca, cb);
  if (coprime_in_x(a, b)) return make_monic(BiPoly({c}));
  const BiPoly u = div_by_u(a, ca), v = div_by_u(b, cb);
  if (u.deg_x() == 0 || v.deg_x() == 0) return make_monic(BiPoly({c}));
  return make_monic(gcd_by_interpolation(u, v) * c);
}

}  // namespace gm
