#include "goldenmap/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "goldenmap/degrees.hpp"
#include "goldenmap/measure.hpp"
#include "goldenmap/periodic.hpp"

namespace gm {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793;
const double kShallowA = -0.5;

struct Outcome {
  bool check = false;
  std::string summary;
  json detail;
};

std::vector<std::vector<Digit>> admissible_blocks(int length) {
  std::vector<std::vector<Digit>> out;
  for (long bits = 0; bits < (1L << length); ++bits) {
    std::vector<Digit> v;
    bool ok = true;
    for (int i = 0; i < length; ++i) {
      v.push_back(static_cast<Digit>((bits >> (length - 1 - i)) & 1));
      if (i > 0 && v[i] && v[i - 1]) ok = false;
    }
    if (ok) out.push_back(std::move(v));
  }
  return out;
}

// Uniform in the arctan square of a box, kept off its edges.
Vec2<double> sample_box(const RectBox& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto pick = [&](const LineInterval& I) {
    const double w = I.hi - I.lo;
    return std::tan(I.lo + w * (1e-6 + (1 - 2e-6) * U(rng)));
  };
  const double x = pick(b.x);
  return Vec2<double>(x, pick(b.y));
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

Outcome fixed_point_identity() {
  Outcome o{true, "", json::array()};
  for (const Rational& a : {Rational(-2), Rational(-3), Rational(-1, 2)}) {
    const MapParams<Rational> m(a);
    const auto p = fixed_point(m);
    const auto r = eval_forward(m, p);
    const auto q = normalize(r.point), pn = normalize(p);
    const bool ok = !r.indeterminate && q.x.num == pn.x.num && q.x.den == pn.x.den && q.y.num == pn.y.num &&
                    q.y.den == pn.y.den;
    o.check = o.check && ok;
    std::ostringstream ps;
    ps << p;
    o.detail.push_back({{"a", a.str()}, {"point", ps.str()}, {"exact", ok}});
  }
  o.summary = "f(p) = p exactly for a in {-2, -3, -1/2}";
  return o;
}

Outcome degree_growth() {
  Outcome o{true, "", json::array()};
  for (const Rational& a : {Rational(-2), Rational(-1, 2)}) {
    const DegreeReport r = verify_fibonacci_growth(a, 6);
    o.check = o.check && r.pass;
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"n", row.n},
                      {"x", {row.bidegrees[0].first, row.bidegrees[0].second}},
                      {"y", {row.bidegrees[1].first, row.bidegrees[1].second}},
                      {"pass", row.pass}});
    o.detail.push_back({{"a", a.str()}, {"rows", rows}, {"pass", r.pass}});
  }
  o.summary = "bidegrees (F_{n+1},F_n)/(F_n,F_{n-1}) for n = 1..6";
  return o;
}

Outcome periodic_census(double deep_a) {
  Outcome o{true, "", json::array()};
  int total = 0;
  for (const auto& [a, n_max] : std::vector<std::pair<double, int>>{{deep_a, 10}, {kShallowA, 8}}) {
    const MapParams<double> m(a);
    for (int n = 1; n <= n_max; ++n) {
      json row{{"a", a}, {"n", n}};
      try {
        const auto pts = locate_all(m, n);
        const long expected = lefschetz_budget(n).expected_finite.convert_to<long>();
        int saddles = 0, coded = 0;
        double worst = 0;
        for (const auto& p : pts) {
          saddles += p.cls == PointClass::Saddle;
          coded += p.itinerary_ok;
          worst = std::max(worst, p.residual);
        }
        const bool ok = static_cast<long>(pts.size()) == expected && saddles == static_cast<int>(pts.size()) &&
                        coded == static_cast<int>(pts.size()) && worst <= 1e-11;
        row.update({{"found", pts.size()}, {"expected", expected}, {"saddles", saddles},
                    {"itineraries_ok", coded}, {"worst_residual", worst}, {"pass", ok}});
        o.check = o.check && ok;
        total += static_cast<int>(pts.size());
      } catch (const ConvergenceFailure& e) {
        row.update({{"error", e.what()}, {"pass", false}});
        o.check = false;
      }
      o.detail.push_back(row);
    }
  }
  o.summary = std::to_string(total) + " points, all saddles with matching itineraries";
  return o;
}

Outcome word_rectangles(double deep_a) {
  const MapParams<double> m(deep_a);
  Outcome o;
  std::map<std::string, RectangleApprox> rects, parents;
  int empty = 0, unnested = 0;
  for (const auto& v : admissible_blocks(9)) {
    const Word w = Word::finite(v, -4);
    RectangleApprox R = build_rectangle(m, w);
    if (R.corners.size() != 4 || !R.witness_ok) ++empty;
    const std::vector<Digit> pv(v.begin() + 1, v.end() - 1);
    const std::string pk = digits_str(pv);
    if (!parents.count(pk)) parents.emplace(pk, build_rectangle(m, Word::finite(pv, -3)));
    if (!parents.at(pk).contains(m, R.witness)) ++unnested;
    rects.emplace(digits_str(v), std::move(R));
  }

  // Distinct words differ on the plus side or the minus side; the matching
  // strips must then be disjoint.
  int strip_overlaps = 0;
  double worst_overlap = -kPi;
  for (int side = 0; side < 2; ++side) {
    std::map<std::string, Strip> strips;
    std::map<std::string, Digit> home;
    for (const auto& [k, R] : rects) {
      const std::string half = side == 0 ? k.substr(4) : k.substr(0, 5);
      if (strips.count(half)) continue;
      strips.emplace(half, sample_strip(m, side == 0 ? R.s_bounds : R.u_bounds, 33));
      home[half] = R.home();
    }
    for (auto i = strips.begin(); i != strips.end(); ++i)
      for (auto j = std::next(i); j != strips.end(); ++j) {
        if (home[i->first] != home[j->first]) continue;
        const double ov = strip_overlap(i->second, j->second);
        worst_overlap = std::max(worst_overlap, ov);
        if (ov > 0) ++strip_overlaps;
      }
  }
  int foreign = 0;
  for (const auto& [k, R] : rects)
    for (const auto& [k2, R2] : rects)
      if (k != k2 && R2.home() == R.home() && R2.contains(m, R.witness, 0)) ++foreign;

  json fibers = json::array();
  bool fibers_ok = true;
  for (int n = 1; n <= 4; ++n) {
    const FiberCount fc = fiber_count(m, n, 3.0, true);
    fibers_ok = fibers_ok && fc.pass;
    fibers.push_back({{"n", n}, {"crossings", fc.crossings}, {"exact_roots", fc.exact_roots},
                      {"expected", fc.expected}, {"pass", fc.pass}});
  }
  o.check = empty == 0 && unnested == 0 && strip_overlaps == 0 && foreign == 0 && fibers_ok;
  o.detail = {{"a", deep_a},          {"words", rects.size()},   {"empty", empty},
              {"not_nested", unnested}, {"strip_overlaps", strip_overlaps}, {"worst_overlap", worst_overlap},
              {"witness_in_other", foreign}, {"fibers", fibers}};
  o.summary = std::to_string(rects.size()) + " rectangles, worst strip overlap " + fmt(worst_overlap);
  return o;
}

Outcome cone_suite(std::uint64_t seed) {
  Outcome o{true, "", json::array()};
  std::mt19937_64 rng(seed);
  for (double a : {-2.0, kShallowA}) {
    const MapParams<double> m(a);
    const Filtration fil = Filtration::of(m);
    int applicable = 0, failed = 0, attempts = 0;
    double one = kPi, two = kPi;
    while (applicable < 1000 && attempts < 2000000) {
      ++attempts;
      const Vec2<double> p = sample_box(fil.digit_box(static_cast<Digit>(attempts % 2)), rng);
      const ConeCheck c = cone_invariance_check(m, p);
      if (!c.applicable || !c.two_step) continue;
      ++applicable;
      failed += !c.pass;
      one = std::min(one, c.one_step_margin);
      two = std::min(two, c.two_step_margin);
    }
    int arcs = 0, slope_fail = 0, mismatched = 0;
    double worst = kPi;
    for (int kind = 0; kind < 2; ++kind)
      for (Digit st = 0; st < 2; ++st)
        for (int n = 0; n <= 7; ++n) {
          const ArcKind K = kind ? ArcKind::S : ArcKind::U;
          for (const Branch& b : partition(m, K, st, n, default_seed(m, K, st))) {
            const Arc arc = trace_arc(m, b);
            const SlopeCheck sc = check_slopes(m, arc);
            ++arcs;
            slope_fail += !sc.pass;
            mismatched += arc.mismatches > 0;
            worst = std::min(worst, sc.worst_margin);
          }
        }
    const bool ok = applicable == 1000 && failed == 0 && slope_fail == 0 && mismatched == 0;
    o.check = o.check && ok;
    o.detail.push_back({{"a", a},
                        {"points", applicable},
                        {"attempts", attempts},
                        {"cone_failures", failed},
                        {"one_step_margin", one},
                        {"two_step_margin", two},
                        {"arcs", arcs},
                        {"slope_failures", slope_fail},
                        {"itinerary_mismatches", mismatched},
                        {"worst_slope_margin", worst},
                        {"pass", ok}});
  }
  o.summary = "cones on 1000 points per regime, slopes on all arcs |w| <= 8";
  return o;
}

Outcome expansivity(double deep_a) {
  const MapParams<double> m(deep_a);
  const double eta = expansivity_constant(m).eta;
  std::map<std::vector<Digit>, PlanePoint<double>> at;
  std::vector<std::vector<Digit>> cycles;
  for (int n = 1; n <= 6; ++n)
    for (const auto& p : locate_all(m, n))
      if (p.period == n) {
        at[p.cycle] = p.point;
        cycles.push_back(p.cycle);
      }
  auto rotate = [](const std::vector<Digit>& c, int k) {
    std::vector<Digit> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = c[(i + k) % c.size()];
    return r;
  };
  int pairs = 0, below = 0;
  double weakest = 1e300;
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      const int L = std::lcm(static_cast<int>(cycles[i].size()), static_cast<int>(cycles[j].size()));
      double sup = 0;
      // f^k of the point coded by c is the point coded by c shifted k places.
      for (int k = 0; k < L; ++k)
        sup = std::max(sup, chordal_distance(at.at(rotate(cycles[i], k)), at.at(rotate(cycles[j], k))));
      ++pairs;
      weakest = std::min(weakest, sup);
      below += sup <= eta;
    }
  Outcome o;
  o.check = pairs > 0 && below == 0;
  o.detail = {{"a", deep_a}, {"eta", eta}, {"points", cycles.size()}, {"pairs", pairs},
              {"smallest_sup", weakest}, {"pairs_below_eta", below}};
  o.summary = std::to_string(pairs) + " pairs, smallest sup " + fmt(weakest) + " > eta " + fmt(eta);
  return o;
}

Outcome measure_agreement() {
  Outcome o{true, "", json::array()};
  for (double a : {-2.0, kShallowA}) {
    const MapParams<double> m(a);
    const bool deep = m.regime == Regime::DeepNegative;
    const double s1 = deep ? -1.5 : a - 0.5, t1 = deep ? 1.5 : -a + 0.5;
    const double s2 = deep ? -3.0 : a - 2, t2 = deep ? 4.0 : -a + 2;
    const WeightedPointSet I = intersection_measure(m, 8, 8, s1, t1);
    const WeightedPointSet I2 = intersection_measure(m, 8, 8, s2, t2);
    const WeightedPointSet P = equidistribution_measure(m, 12);
    const MeasureComparison vp = compare_measures(m, I, 2);
    const MeasureComparison vq = compare_measures(m, I, P, 2);
    const MeasureComparison vs = compare_measures(m, I, I2, 2);
    const bool ok = vp.valid && vq.valid && vs.valid && vp.l1 <= 0.1 && vq.l1 <= 0.15 && vs.l1 <= 0.05;
    o.check = o.check && ok;
    o.detail.push_back({{"a", a},
                        {"atoms", I.atoms.size()},
                        {"raw_mass", I.raw_mass()},
                        {"l1_parry", vp.l1},
                        {"l1_periodic12", vq.l1},
                        {"l1_second_seed", vs.l1},
                        {"excluded", vp.excluded + vq.excluded + vs.excluded},
                        {"seeds", {{s1, t1}, {s2, t2}}},
                        {"pass", ok}});
  }
  o.summary = "Intersection(8,8) vs Parry, periodic(12) and a second seed pair at depth 2";
  return o;
}

Outcome parabolic_asymptotics() {
  Outcome o{true, "", json::array()};
  const std::vector<Vec2<double>> dirs{{1.0, 0.5}, {0.7, 1.3}, {-1.2, 0.9}, {2.0, -1.1}};
  for (double a : {-2.0, kShallowA}) {
    const MapParams<double> m(a);
    std::vector<double> lx, ly;
    for (double s : {1e2, 1e3, 1e4}) {
      double e = 0;
      for (const auto& d : dirs) e += near_infinity_prediction(m, Vec2<double>(s * d)).relative_error;
      lx.push_back(std::log(s));
      ly.push_back(std::log(e / dirs.size()));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 3; ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
    const double slope = -sxy / sxx;
    const bool ok = slope >= 1.8 && slope <= 2.2;
    o.check = o.check && ok;
    o.detail.push_back({{"a", a}, {"decay_order", slope}, {"log_errors", ly}, {"pass", ok}});
  }
  o.summary = "relative error of the f^2 expansion decays with order 2";
  return o;
}

Outcome lamination(double deep_a, const std::string& dir) {
  const MapParams<double> m(deep_a);
  const LaminationResult r = lamination_curve(m, Direction::Stable, SeedLine{Axis::X, 1.5}, 10);
  const std::string path = dir + "/lamination_stable_depth10.svg";
  std::ofstream out(path);
  out << lamination_svg(r);
  const bool written = static_cast<bool>(out);
  double worst = 0;
  int unmatched = 0;
  for (const auto& c : r.crossings) {
    worst = std::max(worst, c.orbit_distance);
    unmatched += !c.matched;
  }
  Outcome o;
  o.check = r.all_matched && r.resolved && written;
  o.detail = {{"a", deep_a},          {"samples", r.samples}, {"pieces", r.pieces.size()},
              {"crossings", r.crossings.size()}, {"unmatched", unmatched}, {"worst_orbit_distance", worst},
              {"resolved", r.resolved}, {"svg", path},          {"svg_written", written}};
  o.summary = std::to_string(r.crossings.size()) + " self-intersections, worst distance " + fmt(worst);
  return o;
}

Outcome current_scaling() {
  Outcome o{true, "", json::array()};
  std::string ratios;
  for (double a : {-2.0, kShallowA}) {
    const MapParams<double> m(a);
    const DiscreteCurrent c = discrete_current(m, Side::Plus, 6);
    const PullbackProbe p = pullback_probe(m, c, bump_density);
    const bool ok = p.relative_error <= 0.02;
    o.check = o.check && ok;
    ratios += (ratios.empty() ? "" : ", ") + std::string("a = ") + fmt(a) + ": " + fmt(p.ratio) + " (error " +
              fmt(100 * p.relative_error) + "%)";
    o.detail.push_back({{"a", a},
                        {"arcs", c.arcs.size()},
                        {"total_weight", c.total_weight},
                        {"pairing", p.original},
                        {"pulled_back", p.pulled_back},
                        {"ratio", p.ratio},
                        {"expected", p.expected},
                        {"relative_error", p.relative_error},
                        {"pass", ok}});
  }
  o.summary = "pullback ratio of the depth-6 plus current, " + ratios + ", tolerance 2%";
  return o;
}

Outcome filtration_inequalities(std::uint64_t seed) {
  Outcome o{true, "", json::array()};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (double a : {-2.0, kShallowA}) {
    const MapParams<double> m(a);
    const Filtration fil = Filtration::of(m);
    int fwd = 0, bwd = 0, ret = 0, fwd_bad = 0, bwd_bad = 0, ret_bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const DriftCheck f = forward_drift(m, sample_box(fil.box(Rect::Plus), rng));
      fwd += f.applicable;
      fwd_bad += f.applicable && !f.pass;
      const DriftCheck b = backward_drift(m, sample_box(fil.box(Rect::Minus), rng));
      bwd += b.applicable;
      bwd_bad += b.applicable && !b.pass;
      ++ret;
      ret_bad += !r1_nonreturn(m, sample_box(fil.box(Rect::One), rng));
    }
    const bool ok = fwd_bad == 0 && bwd_bad == 0 && ret_bad == 0 && fwd > 0 && bwd > 0;
    o.check = o.check && ok;
    o.detail.push_back({{"a", a},
                        {"forward_checked", fwd},
                        {"forward_violations", fwd_bad},
                        {"backward_checked", bwd},
                        {"backward_violations", bwd_bad},
                        {"r1_checked", ret},
                        {"r1_returns", ret_bad},
                        {"pass", ok}});
  }
  o.summary = "drift bounds on R+ and R-, non-return on R1, 10^4 samples each";
  return o;
}

struct Entry {
  const char* name;
  double budget;
};

const Entry kTable[kCriteria] = {
    {"fixed-point identity", 1},     {"degree growth", 30},       {"periodic census", 120},
    {"word-rectangle consistency", 120}, {"cone and slope suite", 60}, {"expansivity", 10},
    {"measure agreement", 300},      {"parabolic asymptotics", 1}, {"lamination structure", 60},
    {"current scaling", 120},        {"filtration inequalities", 5}};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  if (id < 1 || id > kCriteria) throw std::invalid_argument("no criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = kTable[id - 1].name;
  r.budget = kTable[id - 1].budget;
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    switch (id) {
      case 1: o = fixed_point_identity(); break;
      case 2: o = degree_growth(); break;
      case 3: o = periodic_census(opt.deep_a); break;
      case 4: o = word_rectangles(opt.deep_a); break;
      case 5: o = cone_suite(opt.seed); break;
      case 6: o = expansivity(opt.deep_a); break;
      case 7: o = measure_agreement(); break;
      case 8: o = parabolic_asymptotics(); break;
      case 9: o = lamination(opt.deep_a, opt.output_dir); break;
      case 10: o = current_scaling(); break;
      case 11: o = filtration_inequalities(opt.seed); break;
    }
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what(), {{"error", e.what()}}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.check = o.check;
  r.summary = o.summary;
  r.detail = o.detail;
  r.pass = r.check && r.seconds <= r.budget;
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, const std::vector<int>& ids) {
  std::vector<int> run = ids;
  if (run.empty())
    for (int i = 1; i <= kCriteria; ++i) run.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : run) out.push_back(run_criterion(id, opt));
  return out;
}

nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id},         {"name", r.name},       {"check", r.check},   {"seconds", r.seconds},
          {"budget_seconds", r.budget}, {"pass", r.pass}, {"summary", r.summary}, {"detail", r.detail}};
}

nlohmann::json acceptance_report(const std::vector<CriterionResult>& results, const AcceptanceOptions& opt) {
  json j{{"deep_a", opt.deep_a}, {"seed", opt.seed}, {"criteria", json::array()}};
  bool all = true;
  for (const auto& r : results) {
    j["criteria"].push_back(to_json(r));
    all = all && r.pass;
  }
  j["pass"] = all;
  return j;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ' ' << r.name << "  (" << fmt(r.seconds) << " s / "
     << r.budget << " s";
  if (r.check && !r.pass) os << ", over budget";
  os << ")  " << r.summary;
  return os.str();
}

}  // namespace gm
