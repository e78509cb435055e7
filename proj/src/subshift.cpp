#include "goldenmap/subshift.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gm {

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

std::vector<Digit> least_period(const std::vector<Digit>& c) {
  const std::size_t n = c.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = c[i] == c[i % p];
    if (ok) return {c.begin(), c.begin() + p};
  }
  return c;
}

}  // namespace

std::string digits_str(const std::vector<Digit>& d) {
  std::string s;
  for (Digit x : d) s.push_back(char('0' + x));
  return s;
}

std::vector<Digit> parse_digits(const std::string& s) {
  std::vector<Digit> d;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("word digits must be 0 or 1: " + s);
    d.push_back(Digit(ch - '0'));
  }
  return d;
}

Word::Word(std::vector<Digit> core, long lo, std::vector<Digit> left_cycle,
           std::vector<Digit> right_cycle)
    : core_(std::move(core)), lo_(lo), left_(std::move(left_cycle)), right_(std::move(right_cycle)) {
  for (const auto* v : {&core_, &left_, &right_})
    for (Digit d : *v)
      if (d > 1) throw std::invalid_argument("digit out of range");
  // Pull digits out of the tails until index 0 is explicit.
  while (!core_.empty() && lo_ > 0 && !left_.empty()) {
    core_.insert(core_.begin(), left_.back());
    std::rotate(left_.rbegin(), left_.rbegin() + 1, left_.rend());
    --lo_;
  }
  while (!core_.empty() && hi() < 0 && !right_.empty()) {
    core_.push_back(right_.front());
    std::rotate(right_.begin(), right_.begin() + 1, right_.end());
  }
  if (core_.empty() && !left_.empty()) {
    core_.push_back(left_.back());
    lo_ = 0;
    std::rotate(left_.rbegin(), left_.rbegin() + 1, left_.rend());
  }
  if (core_.empty() && !right_.empty()) {
    core_.push_back(right_.front());
    lo_ = 0;
    std::rotate(right_.begin(), right_.begin() + 1, right_.end());
  }
  if (core_.empty() || lo_ > 0 || hi() < 0)
    throw std::invalid_argument("word extent must contain index 0");
  if (!left_.empty() && !right_.empty()) {
    // Detect a bi-infinite periodic word.
    const long span = static_cast<long>(core_.size() + left_.size() + right_.size());
    const long from = lo_ - 2 * span, to = hi() + 2 * span;
    for (long p = 1; p <= span; ++p) {
      bool ok = true;
      for (long k = from; k + p <= to && ok; ++k) ok = at(k) == at(k + p);
      if (ok) {
        std::vector<Digit> c(p);
        for (long k = 0; k < p; ++k) c[k] = at(k);
        *this = periodic(c);
        return;
      }
    }
  }
}

Word Word::periodic(const std::vector<Digit>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("empty cycle");
  Word w;
  const auto c = least_period(cycle);
  w.core_ = c;
  w.lo_ = 0;
  w.left_ = c;
  w.right_ = c;
  w.periodic_ = static_cast<int>(c.size());
  return w;
}

Word Word::finite(const std::vector<Digit>& digits, long lo) { return Word(digits, lo); }

bool Word::defined(long k) const {
  if (k >= lo_ && k <= hi()) return true;
  if (k > hi()) return !right_.empty();
  return !left_.empty();
}

Digit Word::at(long k) const {
  if (k >= lo_ && k <= hi()) return core_[k - lo_];
  if (k > hi()) {
    if (right_.empty()) throw std::out_of_range("word index beyond extent");
    return right_[mod(k - hi() - 1, static_cast<long>(right_.size()))];
  }
  if (left_.empty()) throw std::out_of_range("word index beyond extent");
  const long p = static_cast<long>(left_.size());
  return left_[p - 1 - mod(lo_ - 1 - k, p)];
}

std::vector<Digit> Word::slice(long from, long to) const {
  std::vector<Digit> out;
  for (long k = from; k <= to; ++k) out.push_back(at(k));
  return out;
}

Word Word::restrict(long from, long to) const {
  if (from > 0 || to < 0) throw std::invalid_argument("restriction must contain index 0");
  return Word(slice(from, to), from);
}

bool Word::alternating() const {
  const long span = static_cast<long>(core_.size() + left_.size() + right_.size()) + 2;
  const long from = left_.empty() ? lo_ : lo_ - 2 * span;
  const long to = right_.empty() ? hi() : hi() + 2 * span;
  for (long k = from; k < to; ++k)
    if (at(k) == at(k + 1)) return false;
  return true;
}

std::string Word::str() const {
  std::ostringstream os;
  if (periodic_ > 0) {
    std::vector<Digit> l(periodic_), r(periodic_);
    for (int j = 0; j < periodic_; ++j) {
      l[j] = at(j - periodic_ + 1);
      r[j] = at(j + 1);
    }
    os << '(' << digits_str(l) << ").(" << digits_str(r) << ')';
    return os.str();
  }
  if (!left_.empty()) os << '(' << digits_str(left_) << ')';
  os << digits_str(slice(lo_, 0)) << '.';
  if (hi() > 0) os << digits_str(slice(1, hi()));
  if (!right_.empty()) os << '(' << digits_str(right_) << ')';
  return os.str();
}

Word Word::parse(const std::string& raw) {
  std::string text;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    // Accept the middle dot used in print as well as '.'.
    if (static_cast<unsigned char>(raw[i]) == 0xC2 && i + 1 < raw.size() &&
        static_cast<unsigned char>(raw[i + 1]) == 0xB7) {
      text.push_back('.');
      ++i;
    } else if (raw[i] != ' ') {
      text.push_back(raw[i]);
    }
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos || text.find('.', dot + 1) != std::string::npos)
    throw std::invalid_argument("word needs exactly one '.' after w_0: " + raw);
  std::string left = text.substr(0, dot), right = text.substr(dot + 1);
  std::vector<Digit> lc, rc;
  if (!left.empty() && left.front() == '(') {
    const auto close = left.find(')');
    if (close == std::string::npos) throw std::invalid_argument("unbalanced '(' in word");
    lc = parse_digits(left.substr(1, close - 1));
    left = left.substr(close + 1);
    if (lc.empty()) throw std::invalid_argument("empty cycle in word");
  }
  if (!right.empty() && right.back() == ')') {
    const auto open = right.find('(');
    if (open == std::string::npos) throw std::invalid_argument("unbalanced ')' in word");
    rc = parse_digits(right.substr(open + 1, right.size() - open - 2));
    right = right.substr(0, open);
    if (rc.empty()) throw std::invalid_argument("empty cycle in word");
  }
  std::vector<Digit> a = parse_digits(left), b = parse_digits(right);
  if (a.empty() && lc.empty()) throw std::invalid_argument("word has no digit at index 0: " + raw);
  std::vector<Digit> core = a;
  core.insert(core.end(), b.begin(), b.end());
  long lo = -(static_cast<long>(a.size()) - 1);
  if (a.empty()) {
    // w_0 comes from the left cycle.
    core.insert(core.begin(), lc.back());
    std::rotate(lc.rbegin(), lc.rbegin() + 1, lc.rend());
    lo = 0;
  }
  return Word(core, lo, lc, rc);
}

bool Word::operator==(const Word& o) const {
  if (left_infinite() != o.left_infinite() || right_infinite() != o.right_infinite()) return false;
  if (!left_infinite() && lo_ != o.lo_) return false;
  if (!right_infinite() && hi() != o.hi()) return false;
  const long span = static_cast<long>(core_.size() + left_.size() + right_.size() + o.core_.size() +
                                      o.left_.size() + o.right_.size()) + 2;
  const long from = left_infinite() ? std::min(lo_, o.lo_) - 2 * span : lo_;
  const long to = right_infinite() ? std::max(hi(), o.hi()) + 2 * span : hi();
  for (long k = from; k <= to; ++k)
    if (at(k) != o.at(k)) return false;
  return true;
}

Validation validate(const Word& w) {
  const long span = static_cast<long>(w.core().size() + w.left_cycle().size() +
                                      w.right_cycle().size()) + 2;
  const long from = w.left_infinite() ? w.lo() - 2 * span : w.lo();
  const long to = w.right_infinite() ? w.hi() + 2 * span : w.hi();
  // Scan the core first so the reported index is the leftmost explicit one.
  for (long k = std::max(from, w.lo()); k < to; ++k)
    if (w.at(k) == 1 && w.at(k + 1) == 1) return {false, k, "forbidden block 11 at index " + std::to_string(k)};
  for (long k = from; k < w.lo(); ++k)
    if (w.at(k) == 1 && w.at(k + 1) == 1) return {false, k, "forbidden block 11 at index " + std::to_string(k)};
  return {};
}

void require_valid(const Word& w) {
  auto v = validate(w);
  if (!v.ok) throw std::invalid_argument(v.message);
}

Word shift(const Word& w, long k) {
  if (w.is_periodic()) {
    std::vector<Digit> c(w.period());
    for (int j = 0; j < w.period(); ++j) c[j] = w.at(j + k);
    return Word::periodic(c);
  }
  std::vector<Digit> core = w.core_;
  long lo = w.lo_ - k;
  const long hi = lo + static_cast<long>(core.size()) - 1;
  if ((lo > 0 && w.left_.empty()) || (hi < 0 && w.right_.empty()))
    throw std::invalid_argument("shift moves index 0 outside the word extent");
  return Word(core, lo, w.left_, w.right_);
}

BigInt fibonacci(long n) {
  if (n < -1) throw std::invalid_argument("fibonacci index below -1");
  BigInt prev = 1, cur = 0;  // F_{-1}, F_0
  for (long i = 0; i < n; ++i) {
    BigInt next = prev + cur;
    prev = cur;
    cur = next;
  }
  if (n == -1) return 1;
  return cur;
}

BigInt count_words(long n, long m, std::optional<Digit> first, std::optional<Digit> last) {
  if (n < 0 || m < 0) throw std::invalid_argument("extent must contain index 0");
  const long k = n + m;  // A^k counts words of length k + 1
  const BigInt e[2][2] = {{fibonacci(k + 1), fibonacci(k)}, {fibonacci(k), fibonacci(k - 1)}};
  BigInt total = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (first && *first != i) continue;
      if (last && *last != j) continue;
      total += e[i][j];
    }
  return total;
}

bool is_alternating_cycle(const std::vector<Digit>& c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    if (c[i] == c[(i + 1) % n]) return false;
  return true;
}

std::vector<std::vector<Digit>> periodic_cycles(int n) {
  if (n < 1) throw std::invalid_argument("period must be positive");
  std::vector<std::vector<Digit>> out;
  std::vector<Digit> cur;
  cur.reserve(n);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      if (!(cur.back() == 1 && cur.front() == 1)) out.push_back(cur);
      return;
    }
    cur.push_back(0);
    self(self);
    cur.pop_back();
    if (cur.empty() || cur.back() == 0) {
      cur.push_back(1);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

std::vector<Word> enumerate_periodic(int n) {
  std::vector<Word> out;
  for (const auto& c : periodic_cycles(n)) out.push_back(Word::periodic(c));
  return out;
}

QSqrt5 QSqrt5::phi() { return {Rational(1, 2), Rational(1, 2)}; }

QSqrt5 QSqrt5::inverse() const {
  const Rational n = p * p - 5 * q * q;
  if (n == 0) throw std::domain_error("division by zero in Q(sqrt5)");
  return {p / n, -q / n};
}

QSqrt5 QSqrt5::operator/(const QSqrt5& o) const { return *this * o.inverse(); }

QSqrt5 QSqrt5::pow(long k) const {
  QSqrt5 base = k < 0 ? inverse() : *this;
  long e = k < 0 ? -k : k;
  QSqrt5 r{1, 0};
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

double QSqrt5::to_double() const { return p.convert_to<double>() + q.convert_to<double>() * std::sqrt(5.0); }

ParryMeasure ParryMeasure::golden() {
  const QSqrt5 phi = QSqrt5::phi();
  const QSqrt5 one{1, 0}, zero{0, 0};
  const std::array<QSqrt5, 2> r = {phi, one};
  const int A[2][2] = {{1, 1}, {1, 0}};
  ParryMeasure m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.P[i][j] = A[i][j] ? r[j] / (phi * r[i]) : zero;
  const QSqrt5 norm = r[0] * r[0] + r[1] * r[1];
  m.stationary = {r[0] * r[0] / norm, r[1] * r[1] / norm};
  return m;
}

const ParryMeasure& parry() {
  static const ParryMeasure m = ParryMeasure::golden();
  return m;
}

QSqrt5 cylinder_measure_exact(const Word& w) {
  if (w.left_infinite() || w.right_infinite())
    throw std::invalid_argument("cylinder needs a finite word");
  const auto& P = parry();
  QSqrt5 v = P.stationary[w.at(w.lo())];
  for (long k = w.lo(); k < w.hi(); ++k) v = v * P.P[w.at(k)][w.at(k + 1)];
  return v;
}

double cylinder_measure(const Word& w) {
  const auto& P = parry();
  double pd[2][2], st[2] = {P.stationary[0].to_double(), P.stationary[1].to_double()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) pd[i][j] = P.P[i][j].to_double();
  if (w.left_infinite() || w.right_infinite())
    throw std::invalid_argument("cylinder needs a finite word");
  double v = st[w.at(w.lo())];
  for (long k = w.lo(); k < w.hi(); ++k) v *= pd[w.at(k)][w.at(k + 1)];
  return v;
}

QSqrt5 balanced_plus_exact(const std::vector<Digit>& v) {
  if (v.empty()) throw std::invalid_argument("empty cylinder");
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == 1 && v[i + 1] == 1) return {0, 0};
  const QSqrt5 phi = QSqrt5::phi();
  const QSqrt5 r = v.back() == 0 ? phi : QSqrt5{1, 0};
  return r * phi.pow(-static_cast<long>(v.size() - 1)) * phi.pow(-2);
}

double balanced_plus(const std::vector<Digit>& v) {
  if (v.empty()) throw std::invalid_argument("empty cylinder");
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == 1 && v[i + 1] == 1) return 0.0;
  const double phi = 0.5 * (1 + std::sqrt(5.0));
  const double r = v.back() == 0 ? phi : 1.0;
  return r * std::pow(phi, -static_cast<double>(v.size() + 1));
}

std::vector<BalancedResult> balanced_check(const std::vector<Digit>& v) {
  std::vector<BalancedResult> out;
  const QSqrt5 base = balanced_plus_exact(v);
  const QSqrt5 inv_phi = QSqrt5::phi().inverse();
  for (Digit d : {Digit(0), Digit(1)}) {
    if (d == 1 && v.front() == 1) continue;
    std::vector<Digit> dv = {d};
    dv.insert(dv.end(), v.begin(), v.end());
    const QSqrt5 img = balanced_plus_exact(dv);
    const QSqrt5 ratio = img / base;
    out.push_back({d, ratio, ratio == inv_phi});
  }
  return out;
}

bool TransversalOrder::less(const std::vector<Digit>& v1, const std::vector<Digit>& v2) const {
  if (v1.empty() || v2.empty() || v1[0] != v2[0]) throw std::invalid_argument("words lie on different transversals");
  bool flip = false;
  const std::size_t n = std::min(v1.size(), v2.size());
  for (std::size_t k = 1; k < n; ++k) {
    if (v1[k] != v2[k]) {
      const bool first = (v1[k] == first_after_zero) != flip;
      return first;
    }
    flip ^= reverse[v1[k - 1]][v1[k]];
  }
  return false;
}

double TransversalOrder::cdf(const std::vector<Digit>& v, double* bound) const {
  double F = 0;
  bool flip = false;
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k - 1] == 0) {
      const Digit lead = flip ? Digit(1 - first_after_zero) : first_after_zero;
      if (v[k] != lead) {
        std::vector<Digit> sib(v.begin(), v.begin() + k);
        sib.push_back(lead);
        F += balanced_plus(sib);
      }
    }
    flip ^= reverse[v[k - 1]][v[k]];
  }
  if (bound) *bound = balanced_plus(v);
  return F;
}

std::string TransversalOrder::str() const {
  std::ostringstream os;
  os << "first_after_0=" << int(first_after_zero) << " reverse{00,01,10}=" << reverse[0][0]
     << reverse[0][1] << reverse[1][0];
  return os.str();
}

bool TransversalOrder::operator==(const TransversalOrder& o) const {
  return first_after_zero == o.first_after_zero && reverse[0][0] == o.reverse[0][0] &&
         reverse[0][1] == o.reverse[0][1] && reverse[1][0] == o.reverse[1][0];
}

std::vector<Digit> side_digits(const Word& w, Side side, int depth) {
  std::vector<Digit> v;
  for (int k = 0; k <= depth; ++k) {
    const long idx = side == Side::Plus ? k : -k;
    if (!w.defined(idx)) break;
    v.push_back(w.at(idx));
  }
  return v;
}

TransversalDistance transversal_distance(const Word& w1, const Word& w2, Side side,
                                         const TransversalOrder& order, int depth) {
  require_valid(w1);
  require_valid(w2);
  const auto v1 = side_digits(w1, side, depth), v2 = side_digits(w2, side, depth);
  if (v1[0] != v2[0]) throw std::invalid_argument("words lie on different transversals");
  double b1 = 0, b2 = 0;
  const double F1 = order.cdf(v1, &b1), F2 = order.cdf(v2, &b2);
  return {std::abs(F2 - F1), std::max(b1, b2)};
}

}  // namespace gm
