#include "goldenmap/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "goldenmap/degrees.hpp"

namespace gm {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kHalfPi = kPi / 2;

double angle(const ProjCoord<double>& c) { return coord_angle(c); }

// Shifts t by a multiple of pi into [c - pi/2, c + pi/2).
double window(double t, double c) {
  while (t < c - kHalfPi) t += kPi;
  while (t >= c + kHalfPi) t -= kPi;
  return t;
}

double y_top(const MapParams<double>& m) { return m.regime == Regime::DeepNegative ? -1.0 : m.a; }
double x_left(const MapParams<double>& m) { return m.regime == Regime::DeepNegative ? 1.0 : -m.a; }

const LineInterval& axis_interval(const RectBox& b, Axis ax) { return ax == Axis::X ? b.x : b.y; }

double axis_center(const Filtration& fil, Digit d, Axis ax) {
  const LineInterval& I = axis_interval(fil.digit_box(d), ax);
  return (I.lo + I.hi) / 2;
}

const ProjCoord<double>& coord(const PlanePoint<double>& p, Axis ax) { return ax == Axis::X ? p.x : p.y; }
Axis other(Axis ax) { return ax == Axis::X ? Axis::Y : Axis::X; }

// A point strictly inside child j of the u-arc partition of R_d, given by its
// graph coordinate.
double child_mark(const MapParams<double>& m, Digit d, Digit j) {
  const double a = m.a;
  if (d == 1) return 3.0;
  if (m.regime == Regime::DeepNegative) return j == 0 ? 1 + (-1 - a) / 4 : 2 - a;
  return j == 0 ? ((2 - a) / 3 + 1) / 2 : 2 - a;
}

// Parameter range of a u-seed inside R_d.
std::pair<double, double> seed_range(const MapParams<double>& m, Digit d) {
  if (d == 0) return {std::atan(x_left(m)), kHalfPi};
  return {0.0, kHalfPi};
}

template <class F> double bisect(double lo, double hi, F&& keep_lo) {
  // keep_lo(t) true means the answer lies above t.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    (keep_lo(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Evaluation of u-form chains: L(theta), f(L(theta)), ... with a small nudge
// when an iterate lands on an indeterminacy point.
struct UForm {
  const MapParams<double>& m;
  const Filtration& fil;
  SeedLine seed;
  std::vector<Digit> v;  // v_{-n}..v_0

  std::optional<PlanePoint<double>> image(double theta, int k) const {
    for (int attempt = 0; attempt < 3; ++attempt) {
      const double t = theta + attempt * 1e-14 * (1 + std::abs(theta));
      auto q = forward_n(m, seed.at(t), k);
      if (q) return q;
    }
    return std::nullopt;
  }

  // Windowed graph angle of the k-th image in R_d.
  std::optional<double> graph(double theta, int k, Digit d) const {
    const auto q = image(theta, k);
    if (!q) return std::nullopt;
    const Axis ax = graph_axis(ArcKind::U, d);
    return window(angle(coord(*q, ax)), axis_center(fil, d, ax));
  }

  bool member(double theta, int k, Digit j) const {
    const auto q = image(theta, k);
    return q && in_rect(fil, fil.digit_box(j).which, *q, 0.0);
  }
};

// One descent step: the sub-interval of [tl, th] whose (k+1)-st image lies in R_j.
std::optional<std::pair<double, double>> descend(const UForm& U, double tl, double th, int k, Digit d,
                                                 Digit j) {
  const double e = (th - tl) * 1e-9;
  const auto gl = U.graph(tl + e, k, d), gh = U.graph(th - e, k, d);
  if (!gl || !gh) return std::nullopt;
  const bool inc = *gh > *gl;
  const Axis ax = graph_axis(ArcKind::U, d);
  const double target = window(std::atan(child_mark(U.m, d, j)), axis_center(U.fil, d, ax));
  const double tr = bisect(tl, th, [&](double t) {
    const auto g = U.graph(t, k, d);
    return g && ((*g < target) == inc);
  });
  if (!U.member(tr, k + 1, j)) return std::nullopt;
  double ends[2];
  const double lim[2] = {tl, th};
  for (int i = 0; i < 2; ++i) {
    if (U.member(lim[i], k + 1, j)) {
      ends[i] = lim[i];
      continue;
    }
    double in = tr, out = lim[i];
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (in + out);
      if (mid == in || mid == out) break;
      (U.member(mid, k + 1, j) ? in : out) = mid;
    }
    ends[i] = in;
  }
  return std::pair{std::min(ends[0], ends[1]), std::max(ends[0], ends[1])};
}

std::vector<Digit> u_digits(const Branch& b) {
  if (b.kind == ArcKind::U) return b.digits;
  return {b.digits.rbegin(), b.digits.rend()};
}

SeedLine u_seed(const Branch& b) { return b.kind == ArcKind::U ? b.seed : b.seed.mirrored(); }

void check_word(const std::vector<Digit>& d) {
  if (d.empty()) throw std::invalid_argument("empty word");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 1) throw std::invalid_argument("digits must be 0 or 1");
    if (i > 0 && d[i] == 1 && d[i - 1] == 1) throw std::invalid_argument("forbidden block 11");
  }
}

}  // namespace

const char* arc_kind_name(ArcKind k) { return k == ArcKind::S ? "s" : "u"; }
const char* axis_name(Axis a) { return a == Axis::X ? "x" : "y"; }

PlanePoint<double> SeedLine::at(double theta) const {
  const ProjCoord<double> free = theta >= kHalfPi
                                     ? infinity<double>()
                                     : normalize(ProjCoord<double>{std::sin(theta), std::cos(theta)});
  return fixed == Axis::X ? PlanePoint<double>{finite(value), free} : PlanePoint<double>{free, finite(value)};
}

SeedLine SeedLine::mirrored() const { return {other(fixed), -value}; }

std::string SeedLine::str() const {
  std::ostringstream os;
  os.precision(17);
  os << '{' << axis_name(fixed) << '=' << value << '}';
  return os.str();
}

Axis graph_axis(ArcKind kind, Digit d) {
  if (kind == ArcKind::U) return d == 0 ? Axis::X : Axis::Y;
  return d == 0 ? Axis::Y : Axis::X;
}

SeedLine default_seed(const MapParams<double>& m, ArcKind kind, Digit d) {
  const SeedLine u = d == 0 ? SeedLine{Axis::Y, y_top(m) - 0.5} : SeedLine{Axis::X, -1.0};
  return kind == ArcKind::U ? u : u.mirrored();
}

std::array<SeedLine, 2> extreme_seeds(const MapParams<double>& m, ArcKind kind, Digit d) {
  std::array<SeedLine, 2> u;
  if (d == 0)
    u = {SeedLine{Axis::Y, y_top(m) - 1e-9}, SeedLine{Axis::Y, -1e8}};
  else
    u = {SeedLine{Axis::X, -1e-9}, SeedLine{Axis::X, -1e8}};
  if (kind == ArcKind::S) u = {u[0].mirrored(), u[1].mirrored()};
  return u;
}

bool seed_is_proper(const MapParams<double>& m, const SeedLine& seed, ArcKind kind, Digit d) {
  const SeedLine u = kind == ArcKind::U ? seed : seed.mirrored();
  if (!std::isfinite(u.value)) return false;
  if (d == 0) return u.fixed == Axis::Y && u.value < y_top(m);
  return u.fixed == Axis::X && u.value < 0;
}

Word Branch::word() const {
  return Word::finite(digits, kind == ArcKind::U ? -static_cast<long>(steps()) : 0);
}

std::optional<PlanePoint<double>> Branch::point(const MapParams<double>& m, double theta) const {
  const Filtration fil = Filtration::of(m);
  const UForm U{m, fil, u_seed(*this), u_digits(*this)};
  auto q = U.image(theta, steps());
  if (q && kind == ArcKind::S) q = involution(*q);
  return q;
}

std::pair<double, double> Branch::graph_range(const MapParams<double>& m) const {
  const Filtration fil = Filtration::of(m);
  const UForm U{m, fil, u_seed(*this), u_digits(*this)};
  const auto a = U.graph(lo, steps(), home()), b = U.graph(hi, steps(), home());
  double ga = a.value_or(NAN), gb = b.value_or(NAN);
  if (kind == ArcKind::S) {
    const double c = axis_center(fil, home(), axis());
    ga = window(-ga, c), gb = window(-gb, c);
  }
  return {std::min(ga, gb), std::max(ga, gb)};
}

std::optional<PlanePoint<double>> Branch::at_graph(const MapParams<double>& m, double t) const {
  const Filtration fil = Filtration::of(m);
  const UForm U{m, fil, u_seed(*this), u_digits(*this)};
  const Digit d = home();
  const int n = steps();
  const double cu = axis_center(fil, d, graph_axis(ArcKind::U, d));
  const double target = window(kind == ArcKind::U ? t : -t, cu);
  const auto gl = U.graph(lo, n, d), gh = U.graph(hi, n, d);
  if (!gl || !gh) return std::nullopt;
  const double gmin = std::min(*gl, *gh), gmax = std::max(*gl, *gh);
  constexpr double slack = 1e-12;
  if (target < gmin - slack || target > gmax + slack) return std::nullopt;
  double theta;
  if (target <= gmin) {
    theta = *gl < *gh ? lo : hi;
  } else if (target >= gmax) {
    theta = *gl < *gh ? hi : lo;
  } else {
    const bool inc = *gh > *gl;
    auto h = [&](double s) {
      const auto g = U.graph(s, n, d);
      return g ? (inc ? *g - target : target - *g) : 0.0;
    };
    boost::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(h, lo, hi, inc ? *gl - target : target - *gl,
                                                     inc ? *gh - target : target - *gh,
                                                     boost::math::tools::eps_tolerance<double>(52), iters);
    theta = 0.5 * (r.first + r.second);
  }
  return point(m, theta);
}

Branch find_branch(const MapParams<double>& m, ArcKind kind, const std::vector<Digit>& digits,
                   const SeedLine& seed) {
  check_word(digits);
  Branch b;
  b.kind = kind;
  b.digits = digits;
  b.seed = seed;
  const std::vector<Digit> v = u_digits(b);
  if (!seed_is_proper(m, seed, kind, v.front()))
    throw TraceError(TraceError::BadSeed, "seed " + seed.str() + " does not cross R" +
                                              std::to_string(int(v.front())) + " properly");
  const Filtration fil = Filtration::of(m);
  const UForm U{m, fil, u_seed(b), v};
  auto [tl, th] = seed_range(m, v.front());
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const auto next = descend(U, tl, th, static_cast<int>(k), v[k], v[k + 1]);
    if (!next)
      throw TraceError(TraceError::ItineraryMismatch,
                       "branch lost at step " + std::to_string(k + 1) + " of " + digits_str(digits));
    std::tie(tl, th) = *next;
  }
  b.lo = tl;
  b.hi = th;
  return b;
}

Branch find_branch(const MapParams<double>& m, ArcKind kind, const std::vector<Digit>& digits) {
  const Digit seed_digit = kind == ArcKind::U ? digits.front() : digits.back();
  return find_branch(m, kind, digits, default_seed(m, kind, seed_digit));
}

std::vector<Branch> partition(const MapParams<double>& m, ArcKind kind, Digit start, int depth,
                              const SeedLine& seed) {
  if (!seed_is_proper(m, seed, kind, start)) throw TraceError(TraceError::BadSeed, "improper seed " + seed.str());
  const Filtration fil = Filtration::of(m);
  const SeedLine us = kind == ArcKind::U ? seed : seed.mirrored();
  struct Node {
    double lo, hi;
    std::vector<Digit> v;
  };
  auto [l0, h0] = seed_range(m, start);
  std::vector<Node> nodes{{l0, h0, {start}}};
  for (int k = 0; k < depth; ++k) {
    std::vector<Node> next;
    for (const Node& nd : nodes) {
      const UForm U{m, fil, us, nd.v};
      const Digit d = nd.v.back();
      for (Digit j = 0; j <= (d == 0 ? 1 : 0); ++j) {
        const auto iv = descend(U, nd.lo, nd.hi, k, d, j);
        if (!iv) throw TraceError(TraceError::ItineraryMismatch, "partition lost " + digits_str(nd.v));
        auto v = nd.v;
        v.push_back(j);
        next.push_back({iv->first, iv->second, std::move(v)});
      }
    }
    nodes = std::move(next);
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& p, const Node& q) { return p.lo < q.lo; });
  std::vector<Branch> out;
  for (const Node& nd : nodes) {
    Branch b;
    b.kind = kind;
    b.digits = kind == ArcKind::U ? nd.v : std::vector<Digit>(nd.v.rbegin(), nd.v.rend());
    b.seed = seed;
    b.lo = nd.lo;
    b.hi = nd.hi;
    out.push_back(std::move(b));
  }
  return out;
}

Word Arc::word() const { return Word::finite(digits, kind == ArcKind::U ? 1 - static_cast<long>(digits.size()) : 0); }

double Arc::chordal_length() const {
  double L = 0;
  for (std::size_t i = 1; i < points.size(); ++i) L += chordal_distance(points[i - 1], points[i]);
  return L;
}

Arc trace_arc(const MapParams<double>& m, const Branch& b, const TraceOptions& opt) {
  const Filtration fil = Filtration::of(m);
  const std::vector<Digit> v = u_digits(b);
  const UForm U{m, fil, u_seed(b), v};
  const int n = b.steps();
  Arc arc;
  arc.kind = b.kind;
  arc.home = b.home();
  arc.digits = b.digits;
  arc.axis = b.axis();
  arc.seed = b.seed;
  arc.theta_lo = b.lo;
  arc.theta_hi = b.hi;

  struct Sample {
    double t;
    PlanePoint<double> p;
  };
  auto sample = [&](double t) -> std::optional<Sample> {
    PlanePoint<double> q = U.seed.at(t);
    bool ok = in_rect(fil, fil.digit_box(v[0]).which, q, opt.itinerary_eps);
    for (int k = 1; k <= n; ++k) {
      auto r = eval_forward(m, q);
      if (r.indeterminate) return std::nullopt;
      q = r.point;
      ok = ok && in_rect(fil, fil.digit_box(v[k]).which, q, opt.itinerary_eps);
    }
    if (!ok) ++arc.mismatches;
    return Sample{t, b.kind == ArcKind::S ? involution(q) : q};
  };

  std::vector<Sample> out;
  const int n0 = 64;
  std::optional<Sample> prev;
  std::function<void(const Sample&, const Sample&, int)> refine = [&](const Sample& s0, const Sample& s1,
                                                                      int level) {
    if (chordal_distance(s0.p, s1.p) < opt.delta_arc) return;
    if (level > 60 || static_cast<int>(out.size()) >= opt.max_samples) {
      arc.resolved = false;
      return;
    }
    const double tm = 0.5 * (s0.t + s1.t);
    if (tm <= s0.t || tm >= s1.t) {
      arc.resolved = false;
      return;
    }
    const auto sm = sample(tm);
    if (!sm) return;
    refine(s0, *sm, level + 1);
    out.push_back(*sm);
    refine(*sm, s1, level + 1);
  };
  for (int i = 0; i <= n0; ++i) {
    const double t = b.lo + (b.hi - b.lo) * i / n0;
    auto s = sample(t);
    if (!s) throw TraceError(TraceError::Indeterminacy, "indeterminacy on " + digits_str(b.digits));
    if (prev) refine(*prev, *s, 0);
    out.push_back(*s);
    prev = s;
  }
  for (const Sample& s : out) {
    arc.params.push_back(s.t);
    arc.points.push_back(s.p);
  }
  return arc;
}

Arc trace_arc(const MapParams<double>& m, ArcKind kind, const std::vector<Digit>& digits,
              const SeedLine& seed, const TraceOptions& opt) {
  const Branch b = find_branch(m, kind, digits, seed);
  Arc arc = trace_arc(m, b, opt);
  if (arc.mismatches > 0)
    throw TraceError(TraceError::ItineraryMismatch,
                     std::to_string(arc.mismatches) + " samples off the word " + digits_str(digits));
  return arc;
}

double direction_angle(const Vec2<double>& v) {
  double t = std::atan2(v(1), v(0));
  t = std::fmod(t, kPi);
  if (t < 0) t += kPi;
  return t;
}

double Cone::margin(double t) const {
  double d = std::fmod(t - start, kPi);
  if (d < 0) d += kPi;
  if (d <= width) return std::min(d, width - d);
  return -std::min(d - width, kPi - d);
}

Cone cone_u(const MapParams<double>& m, const Vec2<double>& p, bool hat) {
  const double x = p(0), y = p(1), a = m.a;
  const bool in_one = x <= 0 && y >= 0;
  if (m.regime == Regime::DeepNegative) {
    // Lines through (0,-1), and through (1,0) for the wide cone.
    const double s = std::atan(hat ? y / (x - 1) : (y + 1) / x);
    if (!in_one) return {s + kPi, -s};
    return {kHalfPi, s + kHalfPi};
  }
  // Hyperbola tangents with asymptotes {y=a} and {x=-a}.
  const double s = std::atan(hat ? -y / (x + a) : (a - y) / x);
  if (!in_one) return {0.0, s};
  return {s, kHalfPi - s};
}

Cone cone_s(const MapParams<double>& m, const Vec2<double>& p, bool hat) {
  const Cone c = cone_u(m, Vec2<double>(-p(1), -p(0)), hat);
  double st = std::fmod(kHalfPi - c.start - c.width, kPi);
  if (st < 0) st += kPi;
  return {st, c.width};
}

ConeCheck cone_invariance_check(const MapParams<double>& m, const Vec2<double>& p, int samples) {
  const Filtration fil = Filtration::of(m);
  ConeCheck c;
  auto good = [&](const Vec2<double>& q) {
    if (!std::isfinite(q(0)) || !std::isfinite(q(1))) return false;
    if (q(0) == 1 || q(0) == -m.a) return false;
    const auto Q = embed_affine(q);
    return in_rect(fil, Rect::Zero, Q, 0) || in_rect(fil, Rect::One, Q, 0);
  };
  if (!good(p)) return c;
  const Vec2<double> q = forward_affine(m, p);
  if (!good(q)) return c;
  const Vec2<double> r = forward_affine(m, q);
  c.applicable = true;
  c.two_step = good(r);
  c.directions = samples;
  const Mat2<double> J1 = jacobian(m, p);
  const Mat2<double> J2 = jacobian(m, q) * J1;
  const Cone hat = cone_u(m, p, true), cu = cone_u(m, p, false);
  const Cone cq = cone_u(m, q, false);
  const Cone cr = c.two_step ? cone_u(m, r, false) : Cone{};
  c.one_step_margin = c.two_step_margin = kPi;
  for (int i = 0; i < samples; ++i) {
    const double s = samples == 1 ? 0.5 : double(i) / (samples - 1);
    const double t1 = hat.start + s * hat.width, t2 = cu.start + s * cu.width;
    const Vec2<double> v1 = J1 * Vec2<double>(std::cos(t1), std::sin(t1));
    c.one_step_margin = std::min(c.one_step_margin, cq.margin(direction_angle(v1)));
    if (c.two_step) {
      const Vec2<double> v2 = J2 * Vec2<double>(std::cos(t2), std::sin(t2));
      c.two_step_margin = std::min(c.two_step_margin, cr.margin(direction_angle(v2)));
    }
  }
  c.pass = c.one_step_margin >= -kConeTol && (!c.two_step || c.two_step_margin > 0);
  return c;
}

SlopeCheck check_slopes(const MapParams<double>& m, const Arc& arc, double tol) {
  const Filtration fil = Filtration::of(m);
  const Rect home = arc.home == 0 ? Rect::Zero : Rect::One;
  SlopeCheck sc;
  sc.worst_margin = kPi;
  const Axis ax = arc.axis;
  const double c = axis_center(fil, arc.home, ax);
  int direction = 0;
  for (std::size_t i = 1; i < arc.points.size(); ++i) {
    const auto& p0 = arc.points[i - 1];
    const auto& p1 = arc.points[i];
    if (!p0.is_finite() || !p1.is_finite() || !in_interior(fil, home, p0, kSlopeSkip) ||
        !in_interior(fil, home, p1, kSlopeSkip)) {
      ++sc.skipped;
      continue;
    }
    const double g0 = window(angle(coord(p0, ax)), c), g1 = window(angle(coord(p1, ax)), c);
    const int dir = g1 > g0 ? 1 : (g1 < g0 ? -1 : 0);
    if (dir == 0 || (direction != 0 && dir != direction)) sc.monotone = false;
    if (dir != 0) direction = dir;
    const Vec2<double> a0 = p0.affine(), a1 = p1.affine();
    const Vec2<double> mid = 0.5 * (a0 + a1);
    const Cone cone = arc.kind == ArcKind::U ? cone_u(m, mid) : cone_s(m, mid);
    sc.worst_margin = std::min(sc.worst_margin, cone.margin(direction_angle(a1 - a0)));
    ++sc.checked;
  }
  sc.pass = sc.checked > 0 && sc.monotone && sc.worst_margin >= -tol;
  return sc;
}

std::optional<PlanePoint<double>> intersect(const MapParams<double>& m, const Branch& u, const Branch& s) {
  if (u.kind != ArcKind::U || s.kind != ArcKind::S || u.home() != s.home())
    throw std::invalid_argument("intersect needs a u-branch and an s-branch in the same rectangle");
  const Filtration fil = Filtration::of(m);
  const Digit d = u.home();
  const Axis ax = u.axis(), bx = other(ax);
  const double ca = axis_center(fil, d, ax), cb = axis_center(fil, d, bx);
  const auto [ulo, uhi] = u.graph_range(m);
  const auto [slo, shi] = s.graph_range(m);
  if (!std::isfinite(ulo) || !std::isfinite(slo)) return std::nullopt;
  auto follow = [&](double t) -> std::optional<std::pair<PlanePoint<double>, double>> {
    const auto pu = u.at_graph(m, t);
    if (!pu) return std::nullopt;
    const double b = std::clamp(window(angle(coord(*pu, bx)), cb), slo, shi);
    const auto ps = s.at_graph(m, b);
    if (!ps) return std::nullopt;
    return std::pair{*pu, window(angle(coord(*ps, ax)), ca) - t};
  };
  const auto hl = follow(ulo), hh = follow(uhi);
  if (!hl || !hh) return std::nullopt;
  // A traced arc can stop short of the rectangle edge; a crossing in that stub
  // is taken at the end of the arc.
  const LineInterval& I = axis_interval(fil.digit_box(d), ax);
  auto stub = [&](double t) {
    const double e0 = std::abs(t - window(I.lo, ca)), e1 = std::abs(t - window(I.hi, ca));
    return std::min(e0, e1) + 1e-9;
  };
  if (hl->second <= 0) return hl->second > -stub(ulo) ? std::optional(hl->first) : std::nullopt;
  if (hh->second >= 0) return hh->second < stub(uhi) ? std::optional(hh->first) : std::nullopt;
  auto h = [&](double t) {
    const auto r = follow(t);
    return r ? r->second : 0.0;
  };
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(h, ulo, uhi, hl->second, hh->second,
                                                   boost::math::tools::eps_tolerance<double>(50), iters);
  const auto fin = follow(0.5 * (r.first + r.second));
  // Arcs from the far extreme seeds resolve the graph coordinate only to about
  // 1e-7. A collapsed bracket with a residual at that level is a crossing; a
  // jump of h would leave a far larger one.
  if (!fin || std::abs(fin->second) > 1e-6 || r.second - r.first > 1e-12) return std::nullopt;
  return fin->first;
}

bool RectangleApprox::contains(const MapParams<double>& m, const PlanePoint<double>& p, double tol) const {
  const Filtration fil = Filtration::of(m);
  const Digit d = home();
  if (!in_rect(fil, fil.digit_box(d).which, p, tol)) return false;
  for (int pass = 0; pass < 2; ++pass) {
    const auto& bounds = pass == 0 ? u_bounds : s_bounds;
    const Axis ax = bounds[0].axis(), bx = other(ax);
    const double t = window(angle(coord(p, ax)), axis_center(fil, d, ax));
    const double cb = axis_center(fil, d, bx);
    const double b = window(angle(coord(p, bx)), cb);
    double v[2];
    for (int i = 0; i < 2; ++i) {
      auto q = bounds[i].at_graph(m, t);
      if (!q) {
        const auto [lo, hi] = bounds[i].graph_range(m);
        q = bounds[i].at_graph(m, std::clamp(t, lo, hi));
        if (!q) return false;
      }
      v[i] = window(angle(coord(*q, bx)), cb);
    }
    if (b < std::min(v[0], v[1]) - tol || b > std::max(v[0], v[1]) + tol) return false;
  }
  return true;
}

RectangleApprox build_rectangle(const MapParams<double>& m, const Word& w) {
  require_valid(w);
  if (w.left_infinite() || w.right_infinite()) throw std::invalid_argument("rectangle word must be finite");
  const long n = -w.lo(), k = w.hi();
  const std::vector<Digit> minus = w.slice(-n, 0), plus = w.slice(0, k);
  RectangleApprox R;
  R.word = w;
  const auto us = extreme_seeds(m, ArcKind::U, minus.front());
  const auto ss = extreme_seeds(m, ArcKind::S, plus.back());
  for (int i = 0; i < 2; ++i) {
    R.u_bounds[i] = find_branch(m, ArcKind::U, minus, us[i]);
    R.s_bounds[i] = find_branch(m, ArcKind::S, plus, ss[i]);
  }
  const PlanePoint<double> origin = embed_affine(0.0, 0.0);
  double dn = 1e300, df = -1;
  for (const Branch& u : R.u_bounds) {
    for (const Branch& s : R.s_bounds) {
      const auto c = intersect(m, u, s);
      if (!c) continue;
      R.corners.push_back(*c);
      const double dist = chordal_distance(*c, origin);
      if (dist < dn) dn = dist, R.near_corner = *c;
      if (dist > df) df = dist, R.far_corner = *c;
    }
  }
  const auto wit = intersect(m, find_branch(m, ArcKind::U, minus), find_branch(m, ArcKind::S, plus));
  if (wit) {
    R.witness = *wit;
    ItineraryOptions io;
    io.eps = 1e-9;
    const OrbitRecord rec = itinerary(m, *wit, static_cast<int>(n), static_cast<int>(k), io);
    R.witness_ok = true;
    for (long j = -n; j <= k; ++j)
      if (!rec.has_digit(j) || rec.digit(j) != w.at(j)) R.witness_ok = false;
  }
  return R;
}

Strip sample_strip(const MapParams<double>& m, const std::array<Branch, 2>& bounds, int probes) {
  const Filtration fil = Filtration::of(m);
  const Digit d = bounds[0].home();
  Strip st;
  st.axis = bounds[0].axis();
  const Axis bx = other(st.axis);
  const LineInterval& I = axis_interval(fil.digit_box(d), st.axis);
  const double cb = axis_center(fil, d, bx);
  const double lo = I.lo + 1e-3 * (I.hi - I.lo), hi = I.hi - 1e-3 * (I.hi - I.lo);
  for (int i = 0; i < probes; ++i) {
    const double t = lo + (hi - lo) * i / std::max(1, probes - 1);
    const auto q0 = bounds[0].at_graph(m, t), q1 = bounds[1].at_graph(m, t);
    st.graph.push_back(t);
    if (!q0 || !q1) {
      st.lo.push_back(NAN);
      st.hi.push_back(NAN);
      continue;
    }
    const double v0 = window(angle(coord(*q0, bx)), cb), v1 = window(angle(coord(*q1, bx)), cb);
    st.lo.push_back(std::min(v0, v1));
    st.hi.push_back(std::max(v0, v1));
  }
  return st;
}

double strip_overlap(const Strip& a, const Strip& b) {
  double worst = -kPi;
  for (std::size_t i = 0; i < std::min(a.graph.size(), b.graph.size()); ++i) {
    if (std::isnan(a.lo[i]) || std::isnan(b.lo[i])) continue;
    worst = std::max(worst, std::min(a.hi[i], b.hi[i]) - std::max(a.lo[i], b.lo[i]));
  }
  return worst;
}

FiberCount fiber_count(const MapParams<double>& m, int depth, double x0, bool exact) {
  FiberCount fc{depth, x0, fibonacci(depth + 1).convert_to<long>(), 0, -1, false};
  const SeedLine seed = default_seed(m, ArcKind::U, 0);
  std::vector<PlanePoint<double>> pts;
  for (const Branch& b : partition(m, ArcKind::U, 0, depth, seed)) {
    if (b.digits.back() != 0) continue;
    const auto p = b.at_graph(m, std::atan(x0));
    if (!p) continue;
    bool fresh = true;
    for (const auto& q : pts) fresh = fresh && chordal_distance(*p, q) > 1e-12;
    if (fresh) pts.push_back(*p);
  }
  fc.crossings = static_cast<int>(pts.size());
  if (exact) {
    // Points (x0, y) whose n-th preimage lies on the seed line {y = c}.
    const Rational a(m.a), X(x0), c(seed.value);
    SymRationalMap g = SymRationalMap::identity();
    const SymRationalMap inv = SymRationalMap::inverse(a);
    for (int i = 0; i < depth; ++i) g = compose_reduce(inv, g);
    auto restrict_x = [&](const BiPoly& P) {
      UPoly out;
      Rational pw = 1;
      for (int i = 0; i <= P.deg_x(); ++i) {
        out = out + P[i] * pw;
        pw *= X;
      }
      return out;
    };
    fc.exact_roots = count_real_roots(restrict_x(g.yn) - restrict_x(g.yd) * c);
  }
  fc.pass = fc.crossings == fc.expected && (!exact || fc.exact_roots == fc.expected);
  return fc;
}

OrderCalibration calibrate_order(const MapParams<double>& m, int depth) {
  const Filtration fil = Filtration::of(m);
  // Geometric order of s-arcs at a probe of the graph axis.
  std::vector<std::vector<std::vector<Digit>>> sequences;
  for (Digit j = 0; j < 2; ++j) {
    const Axis ax = graph_axis(ArcKind::S, j), bx = other(ax);
    const double probe = axis_center(fil, j, ax), cb = axis_center(fil, j, bx);
    for (int d = 1; d <= depth; ++d) {
      std::vector<std::pair<double, std::vector<Digit>>> pos;
      const long total = 1L << d;
      for (long bits = 0; bits < total; ++bits) {
        std::vector<Digit> v{j};
        bool ok = true;
        for (int i = 0; i < d; ++i) {
          v.push_back(static_cast<Digit>((bits >> (d - 1 - i)) & 1));
          if (v[i] == 1 && v[i + 1] == 1) ok = false;
        }
        if (!ok) continue;
        const auto p = find_branch(m, ArcKind::S, v).at_graph(m, probe);
        if (!p) throw TraceError(TraceError::ItineraryMismatch, "calibration probe missed " + digits_str(v));
        pos.emplace_back(window(angle(coord(*p, bx)), cb), v);
      }
      std::sort(pos.begin(), pos.end());
      std::vector<std::vector<Digit>> seq;
      for (auto& e : pos) seq.push_back(e.second);
      sequences.push_back(std::move(seq));
    }
  }
  OrderCalibration cal{{}, depth, 0, false};
  for (int code = 0; code < 16; ++code) {
    TransversalOrder o;
    o.first_after_zero = static_cast<Digit>(code & 1);
    o.reverse[0][0] = code & 2;
    o.reverse[0][1] = code & 4;
    o.reverse[1][0] = code & 8;
    bool ok = true;
    for (const auto& seq : sequences)
      for (std::size_t i = 1; i < seq.size() && ok; ++i) ok = o.less(seq[i - 1], seq[i]);
    if (ok) {
      if (cal.candidates == 0) cal.order = o;
      ++cal.candidates;
    }
  }
  cal.unique = cal.candidates == 1;
  return cal;
}

}  // namespace gm
