#include "goldenmap/filtration.hpp"

#include <cmath>
#include <limits>

namespace gm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = 1.5707963267948966;

double angle_of(double v) {
  if (std::isinf(v)) return v > 0 ? kHalfPi : -kHalfPi;
  return std::atan(v);
}

double gap(double s, double t) {
  const double d = std::abs(s - t);
  return std::min(d, 2 * kHalfPi - d);
}

bool intervals_meet(const LineInterval& p, const LineInterval& q) {
  if (std::max(p.lo, q.lo) <= std::min(p.hi, q.hi)) return true;
  // The two ends of [-pi/2, pi/2] are the same point.
  return (p.hi == kHalfPi && q.lo == -kHalfPi) || (q.hi == kHalfPi && p.lo == -kHalfPi);
}

double interval_distance(const LineInterval& p, const LineInterval& q) {
  if (intervals_meet(p, q)) return 0;
  return std::min({gap(p.lo, q.lo), gap(p.lo, q.hi), gap(p.hi, q.lo), gap(p.hi, q.hi)});
}

RectBox make_box(Rect r, double x0, double x1, double y0, double y1) {
  return {r, LineInterval::of(x0, x1), LineInterval::of(y0, y1)};
}

Mat2<double> angle_chart(const Mat2<double>& J, const Vec2<double>& p, const Vec2<double>& q) {
  Mat2<double> D = J;
  D.row(0) /= 1 + q(0) * q(0);
  D.row(1) /= 1 + q(1) * q(1);
  D.col(0) *= 1 + p(0) * p(0);
  D.col(1) *= 1 + p(1) * p(1);
  return D;
}

// Tracks log2 of the norm of the accumulated derivative in the arctan chart.
struct LossMeter {
  Mat2<double> M = Mat2<double>::Identity();
  double bits = 0;

  void push(const Mat2<double>& D) {
    const Mat2<double> N = D * M;
    const double s = N.norm();
    if (!std::isfinite(s) || s == 0) return;
    M = N / s;
    bits += std::log2(s);
    if (bits < 0) bits = 0;
  }
};

}  // namespace

const char* rect_name(Rect r) {
  switch (r) {
    case Rect::Plus: return "R+";
    case Rect::Minus: return "R-";
    case Rect::Zero: return "R0";
    case Rect::One: return "R1";
  }
  return "?";
}

LineInterval LineInterval::of(double lo_value, double hi_value) {
  return {angle_of(lo_value), angle_of(hi_value), lo_value, hi_value};
}

bool LineInterval::contains(double t) const {
  if (t >= lo && t <= hi) return true;
  return lo == -kHalfPi && t >= kHalfPi;
}

double LineInterval::distance(double t) const {
  if (contains(t)) return 0;
  return std::min(gap(t, lo), gap(t, hi));
}

double LineInterval::depth(double t) const { return std::min(gap(t, lo), gap(t, hi)); }

Filtration Filtration::of(const MapParams<double>& m) {
  const double a = m.a;
  Filtration fil{m.regime, a, {}};
  // Shallow regime: {x=-a} and {y=a} replace {x=1} and {y=-1}.
  const double xl = m.regime == Regime::DeepNegative ? 1.0 : -a;
  const double yl = m.regime == Regime::DeepNegative ? -1.0 : a;
  fil.boxes[0] = make_box(Rect::Plus, -kInf, xl, -kInf, 0);
  fil.boxes[1] = make_box(Rect::Minus, 0, kInf, yl, kInf);
  fil.boxes[2] = make_box(Rect::Zero, xl, kInf, -kInf, yl);
  fil.boxes[3] = make_box(Rect::One, -kInf, 0, 0, kInf);
  return fil;
}

std::vector<Membership> classify_point(const Filtration& fil, const PlanePoint<double>& p,
                                       double eps) {
  const double u = coord_angle(p.x), v = coord_angle(p.y);
  std::vector<Membership> out;
  for (const RectBox& b : fil.boxes) {
    if (b.x.distance(u) > eps || b.y.distance(v) > eps) continue;
    const bool interior = b.x.contains(u) && b.y.contains(v) && b.x.depth(u) > eps && b.y.depth(v) > eps;
    out.push_back({b.which, interior});
  }
  return out;
}

bool in_rect(const Filtration& fil, Rect r, const PlanePoint<double>& p, double eps) {
  const RectBox& b = fil.box(r);
  return b.x.distance(coord_angle(p.x)) <= eps && b.y.distance(coord_angle(p.y)) <= eps;
}

bool in_interior(const Filtration& fil, Rect r, const PlanePoint<double>& p, double eps) {
  const RectBox& b = fil.box(r);
  const double u = coord_angle(p.x), v = coord_angle(p.y);
  return b.x.contains(u) && b.y.contains(v) && b.x.depth(u) > eps && b.y.depth(v) > eps;
}

namespace {

bool finite_vec(const Vec2<double>& v) { return std::isfinite(v(0)) && std::isfinite(v(1)); }

// Slack for rounding in the drift comparisons.
double slack(double v) { return 1e-12 * (1 + std::abs(v)); }

}  // namespace

DriftCheck forward_drift(const MapParams<double>& m, const Vec2<double>& p) {
  const Filtration fil = Filtration::of(m);
  DriftCheck c;
  const auto P = embed_affine(p);
  if (!finite_vec(p) || !in_rect(fil, Rect::Plus, P, 0) || p(0) == 1) return c;
  const Vec2<double> q = forward_affine(m, p);
  if (!finite_vec(q)) return c;
  c.applicable = true;
  c.contained = in_rect(fil, Rect::Plus, embed_affine(q), 0);
  if (m.regime == Regime::DeepNegative) {
    c.lhs = std::min(q(0) - 1, q(1));
    c.rhs = std::min(p(0) - 1, p(1)) - 1;
  } else {
    c.lhs = std::max(q(0) - 1, q(1));
    c.rhs = std::max(p(0) - 1, p(1)) + m.a;
  }
  c.pass = c.contained && c.lhs <= c.rhs + slack(c.rhs);
  return c;
}

DriftCheck backward_drift(const MapParams<double>& m, const Vec2<double>& p) {
  const Filtration fil = Filtration::of(m);
  DriftCheck c;
  const auto P = embed_affine(p);
  if (!finite_vec(p) || !in_rect(fil, Rect::Minus, P, 0) || p(1) == -1) return c;
  const Vec2<double> q = inverse_affine(m, p);
  if (!finite_vec(q)) return c;
  c.applicable = true;
  c.contained = in_rect(fil, Rect::Minus, embed_affine(q), 0);
  if (m.regime == Regime::DeepNegative) {
    c.lhs = std::max(q(0), q(1) + 1);
    c.rhs = std::max(p(0), p(1) + 1) + 1;
    c.pass = c.contained && c.lhs >= c.rhs - slack(c.rhs);
  } else {
    c.lhs = std::min(q(0), q(1) + 1);
    c.rhs = std::min(p(0), p(1) + 1) - m.a;
    c.pass = c.contained && c.lhs >= c.rhs - slack(c.rhs);
  }
  return c;
}

bool r1_nonreturn(const MapParams<double>& m, const Vec2<double>& p) {
  const Filtration fil = Filtration::of(m);
  for (int dir = 0; dir < 2; ++dir) {
    if (dir == 0 && p(0) == 1) continue;
    if (dir == 1 && p(1) == -1) continue;
    const Vec2<double> q = dir == 0 ? forward_affine(m, p) : inverse_affine(m, p);
    if (!finite_vec(q)) continue;
    if (in_interior(fil, Rect::One, embed_affine(q), 0)) return false;
  }
  return true;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Completed: return "Completed";
    case Termination::HitIndeterminacy: return "HitIndeterminacy";
    case Termination::EscapedToRPlus: return "EscapedToR+";
    case Termination::EscapedToRMinus: return "EscapedToR-";
    case Termination::PrecisionLoss: return "PrecisionLoss";
  }
  return "?";
}

Word OrbitRecord::word() const {
  if (digits.empty()) return Word();
  return Word::finite(digits, lo);
}

namespace {

struct DigitRead {
  bool ok;
  Digit d;
  bool ambiguous;
  bool boundary;
  Rect escape;
};

DigitRead read_digit(const Filtration& fil, const PlanePoint<double>& p, double eps, bool forward) {
  const auto mem = classify_point(fil, p, eps);
  bool in0 = false, in1 = false, int0 = false, int1 = false, plus = false, minus = false;
  for (const auto& mb : mem) {
    if (mb.rect == Rect::Zero) in0 = true, int0 = mb.interior;
    if (mb.rect == Rect::One) in1 = true, int1 = mb.interior;
    if (mb.rect == Rect::Plus) plus = true;
    if (mb.rect == Rect::Minus) minus = true;
  }
  if (!in0 && !in1) {
    Rect e = forward ? (plus ? Rect::Plus : Rect::Minus) : (minus ? Rect::Minus : Rect::Plus);
    return {false, 0, false, false, e};
  }
  if (in0 && in1) return {true, static_cast<Digit>(int1 && !int0 ? 1 : 0), true, true, Rect::Zero};
  if (in0) return {true, 0, false, !int0, Rect::Zero};
  return {true, 1, false, !int1, Rect::One};
}

Termination escape_kind(Rect r) {
  return r == Rect::Plus ? Termination::EscapedToRPlus : Termination::EscapedToRMinus;
}

}  // namespace

OrbitRecord itinerary(const MapParams<double>& m, const PlanePoint<double>& p, int n_back, int n_fwd,
                      const ItineraryOptions& opt) {
  const Filtration fil = Filtration::of(m);
  const double budget = opt.mantissa_bits - opt.guard_bits;
  OrbitRecord rec;
  rec.base = normalize(p);
  rec.forward.push_back(rec.base);
  rec.backward.push_back(rec.base);

  const DigitRead r0 = read_digit(fil, rec.base, opt.eps, true);
  if (!r0.ok) {
    rec.fwd_end = {escape_kind(r0.escape), 0};
    const DigitRead rb = read_digit(fil, rec.base, opt.eps, false);
    rec.bwd_end = {escape_kind(rb.escape), 0};
    return rec;
  }
  std::vector<Digit> fd{r0.d}, bd;
  std::vector<bool> fa{r0.ambiguous}, fb{r0.boundary}, ba, bb;

  for (int dir = 0; dir < 2; ++dir) {
    const bool fwd = dir == 0;
    const int n = fwd ? n_fwd : n_back;
    OrbitEnd& end = fwd ? rec.fwd_end : rec.bwd_end;
    auto& pts = fwd ? rec.forward : rec.backward;
    LossMeter meter;
    PlanePoint<double> q = rec.base;
    for (int k = 1; k <= n; ++k) {
      const auto r = fwd ? eval_forward(m, q) : eval_inverse(m, q);
      const long step = fwd ? k : -k;
      if (r.indeterminate) {
        end = {Termination::HitIndeterminacy, fwd ? k - 1 : -(k - 1)};
        break;
      }
      if (q.is_finite() && r.point.is_finite()) {
        const Vec2<double> a0 = q.affine(), a1 = r.point.affine();
        const Mat2<double> J = fwd ? jacobian(m, a0) : jacobian_inverse(m, a0);
        meter.push(angle_chart(J, a0, a1));
      }
      if (meter.bits > budget) {
        end = {Termination::PrecisionLoss, step};
        break;
      }
      q = r.point;
      pts.push_back(q);
      const DigitRead rd = read_digit(fil, q, opt.eps, fwd);
      if (!rd.ok) {
        end = {escape_kind(rd.escape), step};
        break;
      }
      (fwd ? fd : bd).push_back(rd.d);
      (fwd ? fa : ba).push_back(rd.ambiguous);
      (fwd ? fb : bb).push_back(rd.boundary);
      if (k == n) end = {Termination::Completed, step};
    }
    if (n == 0) end = {Termination::Completed, 0};
    (fwd ? rec.fwd_loss_bits : rec.bwd_loss_bits) = meter.bits;
  }

  rec.lo = -static_cast<long>(bd.size());
  rec.digits.assign(bd.rbegin(), bd.rend());
  rec.ambiguous.assign(ba.rbegin(), ba.rend());
  rec.boundary.assign(bb.rbegin(), bb.rend());
  rec.digits.insert(rec.digits.end(), fd.begin(), fd.end());
  rec.ambiguous.insert(rec.ambiguous.end(), fa.begin(), fa.end());
  rec.boundary.insert(rec.boundary.end(), fb.begin(), fb.end());
  return rec;
}

double box_distance(const RectBox& p, const RectBox& q) {
  return std::max(interval_distance(p.x, q.x), interval_distance(p.y, q.y));
}

Expansivity expansivity_constant(const MapParams<double>& m) {
  const Filtration fil = Filtration::of(m);
  const double a = m.a;
  RectBox A, B;
  if (m.regime == Regime::DeepNegative) {
    A = make_box(Rect::Zero, 1, -a, -kInf, -1);
    B = make_box(Rect::Zero, 1, kInf, a, -1);
  } else {
    A = make_box(Rect::Zero, -a, 1, -kInf, a);
    B = make_box(Rect::Zero, -a, kInf, -1, a);
  }
  const double da = box_distance(fil.box(Rect::One), A);
  const double db = box_distance(fil.box(Rect::One), B);
  return {0.9 * std::min(da, db), da, db, A, B};
}

const char* basin_name(Basin b) {
  switch (b) {
    case Basin::ForwardBasin: return "ForwardBasin";
    case Basin::BackwardBasin: return "BackwardBasin";
    case Basin::Undecided: return "Undecided";
    case Basin::NearOmega: return "NearOmega";
  }
  return "?";
}

BasinResult basin_classify(const MapParams<double>& m, const PlanePoint<double>& p, int max_iter,
                           double eps) {
  const Filtration fil = Filtration::of(m);
  bool stayed = true;
  for (int dir = 0; dir < 2; ++dir) {
    const bool fwd = dir == 0;
    const Rect target = fwd ? Rect::Plus : Rect::Minus;
    LossMeter meter;
    PlanePoint<double> q = normalize(p);
    for (int k = 0; k <= max_iter; ++k) {
      if (in_interior(fil, target, q, eps))
        return {fwd ? Basin::ForwardBasin : Basin::BackwardBasin, fwd ? k : -k};
      if (!in_rect(fil, Rect::Zero, q, eps) && !in_rect(fil, Rect::One, q, eps)) stayed = false;
      if (k == max_iter) break;
      const auto r = fwd ? eval_forward(m, q) : eval_inverse(m, q);
      if (r.indeterminate) {
        stayed = false;
        break;
      }
      if (q.is_finite() && r.point.is_finite()) {
        const Vec2<double> a0 = q.affine(), a1 = r.point.affine();
        meter.push(angle_chart(fwd ? jacobian(m, a0) : jacobian_inverse(m, a0), a0, a1));
        if (meter.bits > 45) {
          stayed = false;
          break;
        }
      }
      q = r.point;
    }
  }
  return {stayed ? Basin::NearOmega : Basin::Undecided, 0};
}

}  // namespace gm
