#include "goldenmap/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "goldenmap/svg.hpp"

namespace gm {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kHalfPi = kPi / 2;

double phi() { return 0.5 * (1 + std::sqrt(5.0)); }

double wrap(double t) {
  while (t > kHalfPi) t -= kPi;
  while (t <= -kHalfPi) t += kPi;
  return t;
}

bool in_r01(const Filtration& fil, const PlanePoint<double>& p) {
  return in_rect(fil, Rect::Zero, p, 0) || in_rect(fil, Rect::One, p, 0);
}

std::vector<std::vector<Digit>> admissible(int length) {
  std::vector<std::vector<Digit>> out;
  for (long bits = 0; bits < (1L << length); ++bits) {
    std::vector<Digit> v;
    bool ok = true;
    for (int i = 0; i < length; ++i) {
      v.push_back(static_cast<Digit>((bits >> (length - 1 - i)) & 1));
      if (i > 0 && v[i] == 1 && v[i - 1] == 1) ok = false;
    }
    if (ok) out.push_back(std::move(v));
  }
  return out;
}

std::vector<Branch> all_branches(const MapParams<double>& m, ArcKind kind, int depth) {
  std::vector<Branch> out;
  for (Digit d = 0; d < 2; ++d) {
    auto part = partition(m, kind, d, depth, default_seed(m, kind, d));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

double nu_weight(const Branch& b) {
  if (b.kind == ArcKind::S) return balanced_plus(b.digits);
  return balanced_plus(std::vector<Digit>(b.digits.rbegin(), b.digits.rend()));
}

}  // namespace

WeightedPointSet intersection_measure(const MapParams<double>& m, int n, int m_steps, double s, double t) {
  if (n < 0 || m_steps < 0) throw std::invalid_argument("step counts must be nonnegative");
  const SeedLine H{Axis::Y, s}, V{Axis::X, t};
  if (!seed_is_proper(m, H, ArcKind::U, 0) || !seed_is_proper(m, V, ArcKind::S, 0))
    throw std::invalid_argument("seed lines must cross R0: {y = s} below its top edge, {x = t} right of its left edge");
  const auto us = partition(m, ArcKind::U, 0, m_steps, H);
  const auto ss = partition(m, ArcKind::S, 0, n, V);
  const double w = std::pow(phi(), -n - m_steps) * (1 + phi() * phi()) / (phi() * phi());
  WeightedPointSet out;
  out.provenance = {Provenance::Intersection, n, m_steps, s, t};
  for (const Branch& u : us)
    for (const Branch& b : ss) {
      if (u.home() != b.home()) continue;
      const auto p = intersect(m, u, b);
      if (!p)
        throw std::runtime_error("no crossing in R(" + digits_str(u.digits) + "." + digits_str(b.digits) + ")");
      out.atoms.push_back({*p, w});
    }
  return out;
}

Histogram coarse_grain(const MapParams<double>& m, const WeightedPointSet& p, int depth) {
  Histogram h;
  h.depth = depth;
  double total = 0;
  ItineraryOptions io;
  io.eps = 1e-9;
  for (const Atom& a : p.atoms) {
    ++h.atoms;
    const OrbitRecord rec = itinerary(m, a.point, depth, depth, io);
    bool ok = rec.lo <= -depth && rec.hi() >= depth;
    std::vector<Digit> key;
    for (long k = -depth; k <= depth && ok; ++k) {
      ok = !rec.ambiguous[k - rec.lo];
      key.push_back(rec.digit(k));
    }
    if (!ok) {
      ++h.excluded;
      continue;
    }
    h.mass[digits_str(key)] += a.weight;
    total += a.weight;
  }
  if (total > 0)
    for (auto& e : h.mass) e.second /= total;
  return h;
}

Histogram parry_histogram(int depth) {
  Histogram h;
  h.depth = depth;
  for (const auto& v : admissible(2 * depth + 1)) h.mass[digits_str(v)] = cylinder_measure(Word::finite(v, -depth));
  return h;
}

double l1_distance(const Histogram& p, const Histogram& q) {
  double s = 0;
  for (const auto& [k, v] : p.mass) {
    const auto it = q.mass.find(k);
    s += std::abs(v - (it == q.mass.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q.mass)
    if (!p.mass.count(k)) s += std::abs(v);
  return s;
}

MeasureComparison compare_measures(const MapParams<double>& m, const WeightedPointSet& p, int depth) {
  if (depth < 0 || depth > 6) throw std::invalid_argument("comparison depth must be in [0, 6]");
  const Histogram h = coarse_grain(m, p, depth);
  MeasureComparison c{l1_distance(h, parry_histogram(depth)), depth, h.atoms, h.excluded, false};
  c.valid = h.atoms > 0 && h.excluded * 100 < h.atoms;
  return c;
}

MeasureComparison compare_measures(const MapParams<double>& m, const WeightedPointSet& p, const WeightedPointSet& q,
                                   int depth) {
  if (depth < 0 || depth > 6) throw std::invalid_argument("comparison depth must be in [0, 6]");
  const Histogram hp = coarse_grain(m, p, depth), hq = coarse_grain(m, q, depth);
  MeasureComparison c{l1_distance(hp, hq), depth, hp.atoms + hq.atoms, hp.excluded + hq.excluded, false};
  c.valid = hp.atoms > 0 && hq.atoms > 0 && hp.excluded * 100 < hp.atoms && hq.excluded * 100 < hq.atoms;
  return c;
}

DiscreteCurrent discrete_current(const MapParams<double>& m, Side side, int depth, const TraceOptions& opt) {
  if (depth < 0 || depth > 8) throw std::invalid_argument("current depth must be in [0, 8]");
  DiscreteCurrent c;
  c.side = side;
  c.depth = depth;
  const ArcKind kind = side == Side::Plus ? ArcKind::S : ArcKind::U;
  for (const Branch& b : all_branches(m, kind, depth)) {
    WeightedArc wa{trace_arc(m, b, opt), nu_weight(b), 1};
    // Net travel in the arctan coordinate, ignoring jumps across infinity.
    const auto& P = wa.arc.points;
    double travel = 0;
    for (std::size_t i = 1; i < P.size(); ++i) {
      const double d = kind == ArcKind::S ? coord_angle(P[i].y) - coord_angle(P[i - 1].y)
                                          : coord_angle(P[i].x) - coord_angle(P[i - 1].x);
      if (std::abs(d) < kHalfPi) travel += d;
    }
    wa.orientation = (kind == ArcKind::S) == (travel < 0) ? 1 : -1;
    c.total_weight += wa.weight;
    c.arcs.push_back(std::move(wa));
  }
  return c;
}

double bump_density(double x, double y) {
  if (x < 2 || x > 6 || y < -6 || y > -2) return 0;
  const double q = (x - 2) * (6 - x) * (y + 6) * (-2 - y);
  return q * q;
}

namespace {

double integrate_dy(const std::vector<PlanePoint<double>>& pts, const std::vector<bool>& keep,
                    const FormDensity& b) {
  double s = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!keep[i - 1] || !keep[i] || !pts[i - 1].is_finite() || !pts[i].is_finite()) continue;
    const Vec2<double> p = pts[i - 1].affine(), q = pts[i].affine();
    s += 0.5 * (b(p(0), p(1)) + b(q(0), q(1))) * (q(1) - p(1));
  }
  return s;
}

}  // namespace

double pairing(const DiscreteCurrent& c, const FormDensity& b) {
  double s = 0;
  for (const WeightedArc& wa : c.arcs) {
    const std::vector<bool> keep(wa.arc.points.size(), true);
    s += wa.weight * wa.orientation * integrate_dy(wa.arc.points, keep, b);
  }
  return s;
}

PullbackProbe pullback_probe(const MapParams<double>& m, const DiscreteCurrent& c, const FormDensity& b) {
  const Filtration fil = Filtration::of(m);
  PullbackProbe pr{};
  pr.original = pairing(c, b);
  for (const WeightedArc& wa : c.arcs) {
    std::vector<PlanePoint<double>> img;
    std::vector<bool> keep;
    for (const auto& p : wa.arc.points) {
      const auto r = c.side == Side::Plus ? eval_inverse(m, p) : eval_forward(m, p);
      img.push_back(r.point);
      keep.push_back(!r.indeterminate && in_r01(fil, r.point));
    }
    pr.pulled_back += wa.weight * wa.orientation * integrate_dy(img, keep, b);
  }
  pr.ratio = pr.pulled_back / pr.original;
  pr.expected = m.regime == Regime::DeepNegative ? -phi() : phi();
  pr.relative_error = std::abs(pr.ratio - pr.expected) / phi();
  return pr;
}

WedgeResult wedge(const MapParams<double>& m, int depth) {
  WedgeResult wr;
  wr.atoms.provenance.kind = Provenance::Wedge;
  wr.atoms.provenance.n = depth;
  wr.min_angle = kPi;
  wr.min_excess = kPi;
  const double scale = std::pow(phi(), 4) / (1 + phi() * phi());
  const auto us = all_branches(m, ArcKind::U, depth);
  const auto ss = all_branches(m, ArcKind::S, depth);
  auto direction = [&](const Branch& b, const PlanePoint<double>& p) -> std::optional<double> {
    const double t = coord_angle(b.axis() == Axis::X ? p.x : p.y);
    const double h = 1e-6;
    const auto p0 = b.at_graph(m, t - h), p1 = b.at_graph(m, t + h);
    if (!p0 || !p1 || !p0->is_finite() || !p1->is_finite()) return std::nullopt;
    return direction_angle(p1->affine() - p0->affine());
  };
  for (const Branch& u : us)
    for (const Branch& s : ss) {
      if (u.home() != s.home()) continue;
      const auto p = intersect(m, u, s);
      if (!p || !p->is_finite()) {
        ++wr.missed;
        continue;
      }
      wr.atoms.atoms.push_back({*p, nu_weight(u) * nu_weight(s) * scale});
      const auto du = direction(u, *p), ds = direction(s, *p);
      if (!du || !ds) continue;
      double diff = std::abs(*du - *ds);
      diff = std::min(diff, kPi - diff);
      const Vec2<double> a = p->affine();
      const Cone cu = cone_u(m, a), cs = cone_s(m, a);
      auto fwd = [](double from, double to) {
        double g = std::fmod(to - from, kPi);
        return g < 0 ? g + kPi : g;
      };
      const double g1 = fwd(cu.end(), cs.start), g2 = fwd(cs.end(), cu.start);
      const double gap = g1 + g2 + cu.width + cs.width > kPi + 1e-12 ? 0.0 : std::min(g1, g2);
      wr.min_angle = std::min(wr.min_angle, diff);
      wr.min_excess = std::min(wr.min_excess, diff - gap);
    }
  return wr;
}

const char* direction_name(Direction d) { return d == Direction::Stable ? "stable" : "unstable"; }

namespace {

struct CurveEval {
  const MapParams<double>& m;
  Direction dir;
  SeedLine seed;
  int depth;

  std::optional<PlanePoint<double>> operator()(double theta) const {
    for (int attempt = 0; attempt < 3; ++attempt) {
      const double t = theta + attempt * 1e-13;
      const auto q = dir == Direction::Stable ? inverse_n(m, seed.at(t), depth) : forward_n(m, seed.at(t), depth);
      if (q) return q;
    }
    return std::nullopt;
  }
};

// Arctan coordinates in a chart shifted by a quarter turn when `chart` is 1.
std::pair<double, double> chart_coords(const PlanePoint<double>& p, int chart) {
  const double s = chart * kHalfPi;
  return {wrap(coord_angle(p.x) + s), wrap(coord_angle(p.y) + s)};
}

bool seam(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  return std::abs(a.first - b.first) > kHalfPi || std::abs(a.second - b.second) > kHalfPi;
}

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// Parameters (s, t) in (0,1) of a proper crossing of segments pq and rs.
std::optional<std::pair<double, double>> segment_cross(const std::pair<double, double>& p,
                                                       const std::pair<double, double>& q,
                                                       const std::pair<double, double>& r,
                                                       const std::pair<double, double>& s) {
  const double ex = q.first - p.first, ey = q.second - p.second;
  const double fx = s.first - r.first, fy = s.second - r.second;
  const double den = cross(ex, ey, fx, fy);
  if (den == 0) return std::nullopt;
  const double gx = r.first - p.first, gy = r.second - p.second;
  const double a = cross(gx, gy, fx, fy) / den, b = cross(gx, gy, ex, ey) / den;
  if (a <= 0 || a >= 1 || b <= 0 || b >= 1) return std::nullopt;
  return std::pair{a, b};
}

}  // namespace

LaminationResult lamination_curve(const MapParams<double>& m, Direction dir, const SeedLine& seed, int depth,
                                  const LaminationOptions& opt) {
  if (depth < 0 || depth > 12) throw std::invalid_argument("lamination depth must be in [0, 12]");
  LaminationResult res;
  res.direction = dir;
  res.seed = seed;
  res.depth = depth;
  const CurveEval C{m, dir, seed, depth};

  // Adaptive samples over the whole projective line.
  std::vector<double> th;
  std::vector<PlanePoint<double>> pts;
  const int n0 = 4096;
  std::function<void(double, const PlanePoint<double>&, double, const PlanePoint<double>&, int)> refine =
      [&](double t0, const PlanePoint<double>& p0, double t1, const PlanePoint<double>& p1, int level) {
        if (chordal_distance(p0, p1) < opt.delta) return;
        const double tm = 0.5 * (t0 + t1);
        if (level > 55 || tm <= t0 || tm >= t1 || static_cast<int>(pts.size()) > opt.max_samples) {
          res.resolved = false;
          return;
        }
        const auto pm = C(tm);
        if (!pm) return;
        refine(t0, p0, tm, *pm, level + 1);
        th.push_back(tm);
        pts.push_back(*pm);
        refine(tm, *pm, t1, p1, level + 1);
      };
  std::optional<std::pair<double, PlanePoint<double>>> prev;
  for (int i = 0; i <= n0; ++i) {
    const double t = -kHalfPi + kPi * i / n0;
    const auto p = C(t);
    if (!p) continue;
    if (prev) refine(prev->first, prev->second, t, *p, 0);
    th.push_back(t);
    pts.push_back(*p);
    prev = std::pair{t, *p};
  }
  res.samples = static_cast<int>(pts.size());

  // Polylines, broken at the seams of the arctan square.
  std::vector<bool> lossy(pts.size(), false);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double rate = chordal_distance(pts[i - 1], pts[i]) / (th[i] - th[i - 1]);
    lossy[i] = std::log2(std::max(rate, 1.0)) > opt.loss_bits;
  }
  Polyline cur;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && (seam(chart_coords(pts[i - 1], 0), chart_coords(pts[i], 0)) || lossy[i] != cur.lossy)) {
      if (lossy[i] != cur.lossy && !seam(chart_coords(pts[i - 1], 0), chart_coords(pts[i], 0)))
        cur.points.push_back(pts[i]);
      if (cur.points.size() > 1) res.pieces.push_back(cur);
      cur = Polyline{};
      if (lossy[i] && !seam(chart_coords(pts[i - 1], 0), chart_coords(pts[i], 0))) cur.points.push_back(pts[i - 1]);
      cur.lossy = lossy[i];
    }
    cur.points.push_back(pts[i]);
  }
  if (cur.points.size() > 1) res.pieces.push_back(cur);

  // Indeterminacy orbit whose points the self-crossings must hit.
  for (const auto& q0 : dir == Direction::Stable ? indeterminacy_forward(m) : indeterminacy_inverse(m)) {
    PlanePoint<double> q = q0;
    res.orbit.push_back(q);
    for (int k = 1; k <= depth; ++k) {
      const auto r = dir == Direction::Stable ? eval_inverse(m, q) : eval_forward(m, q);
      if (r.indeterminate) break;
      q = r.point;
      res.orbit.push_back(q);
    }
  }

  // Segment crossings in both charts, then Newton on (theta1, theta2).
  const std::size_t N = pts.size();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::pair<double, double>> candidates;
  std::vector<int> cand_chart;
  for (int chart = 0; chart < 2; ++chart) {
    std::vector<std::pair<double, double>> cc(N);
    for (std::size_t i = 0; i < N; ++i) cc[i] = chart_coords(pts[i], chart);
    const double cell = 4 * opt.delta;
    std::unordered_map<long long, std::vector<std::size_t>> grid;
    auto key = [](long i, long j) { return (static_cast<long long>(i) << 32) ^ static_cast<long long>(j & 0xffffffff); };
    for (std::size_t i = 0; i + 1 < N; ++i) {
      if (seam(cc[i], cc[i + 1])) continue;
      const long i0 = std::lround(std::floor(std::min(cc[i].first, cc[i + 1].first) / cell));
      const long i1 = std::lround(std::floor(std::max(cc[i].first, cc[i + 1].first) / cell));
      const long j0 = std::lround(std::floor(std::min(cc[i].second, cc[i + 1].second) / cell));
      const long j1 = std::lround(std::floor(std::max(cc[i].second, cc[i + 1].second) / cell));
      if ((i1 - i0 + 1) * (j1 - j0 + 1) > 4096) continue;
      for (long a = i0; a <= i1; ++a)
        for (long b = j0; b <= j1; ++b) grid[key(a, b)].push_back(i);
    }
    for (const auto& [k, segs] : grid) {
      for (std::size_t x = 0; x < segs.size(); ++x)
        for (std::size_t y = x + 1; y < segs.size(); ++y) {
          const std::size_t i = std::min(segs[x], segs[y]), j = std::max(segs[x], segs[y]);
          if (j <= i + 1 || (i == 0 && j + 2 == N)) continue;
          if (seen.count({i, j})) continue;
          const auto st = segment_cross(cc[i], cc[i + 1], cc[j], cc[j + 1]);
          if (!st) continue;
          seen.insert({i, j});
          candidates.emplace_back(th[i] + st->first * (th[i + 1] - th[i]), th[j] + st->second * (th[j + 1] - th[j]));
          cand_chart.push_back(chart);
        }
    }
  }

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const int chart = cand_chart[c];
    double t1 = candidates[c].first, t2 = candidates[c].second;
    auto G = [&](double a, double b) -> std::optional<Vec2<double>> {
      const auto p = C(a), q = C(b);
      if (!p || !q) return std::nullopt;
      const auto u = chart_coords(*p, chart), v = chart_coords(*q, chart);
      return Vec2<double>(wrap(u.first - v.first), wrap(u.second - v.second));
    };
    bool ok = false;
    for (int it = 0; it < 30; ++it) {
      const auto g = G(t1, t2);
      if (!g) break;
      if (g->norm() < 1e-13) {
        ok = true;
        break;
      }
      const double h1 = 1e-9 * (1 + std::abs(t1)), h2 = 1e-9 * (1 + std::abs(t2));
      const auto a1 = G(t1 + h1, t2), b1 = G(t1 - h1, t2), a2 = G(t1, t2 + h2), b2 = G(t1, t2 - h2);
      if (!a1 || !b1 || !a2 || !b2) break;
      Mat2<double> J;
      J.col(0) = (*a1 - *b1) / (2 * h1);
      J.col(1) = (*a2 - *b2) / (2 * h2);
      const Vec2<double> d = J.fullPivLu().solve(-*g);
      if (!std::isfinite(d(0)) || !std::isfinite(d(1))) break;
      t1 += d(0);
      t2 += d(1);
      if (d.norm() < 1e-15 * (1 + std::abs(t1) + std::abs(t2))) {
        const auto g2 = G(t1, t2);
        ok = g2 && g2->norm() < 1e-9;
        break;
      }
    }
    // Crossings of the polyline that do not survive refinement are sampling artifacts.
    if (!ok || std::abs(t1 - t2) < 1e-12) continue;
    const auto p = C(t1);
    bool dup = false;
    for (const auto& s : res.crossings)
      dup = dup || (std::abs(s.theta1 - t1) < 1e-7 && std::abs(s.theta2 - t2) < 1e-7) ||
            (std::abs(s.theta1 - t2) < 1e-7 && std::abs(s.theta2 - t1) < 1e-7);
    if (dup) continue;
    SelfIntersection si{*p, t1, t2, 1e300, -1, false};
    for (std::size_t k = 0; k < res.orbit.size(); ++k) {
      const double d = chordal_distance(*p, res.orbit[k]);
      if (d < si.orbit_distance) si.orbit_distance = d, si.orbit_step = static_cast<int>(k);
    }
    si.matched = si.orbit_distance <= opt.match_tol;
    res.all_matched = res.all_matched && si.matched;
    res.crossings.push_back(si);
  }
  // Orbit index to step count: each list restarts at k = 0.
  for (auto& si : res.crossings) {
    const PlanePoint<double> q = res.orbit[si.orbit_step];
    int k = 0;
    for (int s = si.orbit_step; s > 0; --s) {
      bool start = false;
      for (const auto& q0 : dir == Direction::Stable ? indeterminacy_forward(m) : indeterminacy_inverse(m))
        start = start || chordal_distance(res.orbit[s], q0) == 0;
      if (start) break;
      ++k;
    }
    (void)q;
    si.orbit_step = k;
  }
  return res;
}

std::string lamination_svg(const LaminationResult& r) {
  SvgCanvas svg;
  for (const Polyline& pl : r.pieces) {
    std::vector<std::pair<double, double>> uv;
    for (const auto& p : pl.points) uv.emplace_back(coord_angle(p.x), coord_angle(p.y));
    svg.polyline(uv, r.direction == Direction::Stable ? "#1f4e9c" : "#b03020", pl.lossy ? 1.2 : 0.6, pl.lossy);
  }
  for (const auto& s : r.crossings)
    svg.dot(coord_angle(s.point.x), coord_angle(s.point.y), 3, s.matched ? "#20a040" : "#e00000");
  return svg.str();
}

}  // namespace gm
