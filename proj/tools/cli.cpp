#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "goldenmap/acceptance.hpp"
#include "goldenmap/degrees.hpp"
#include "goldenmap/measure.hpp"
#include "goldenmap/periodic.hpp"

namespace gm::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Names the failing call in the error report.
struct Context {
  std::string module;
  std::string operation;
  json inputs = json::object();
};

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string coord_str(const ProjCoord<double>& c) { return c.is_infinite() ? "inf" : num(c.affine()); }

json coord_json(const ProjCoord<double>& c) {
  if (c.is_infinite()) return "inf";
  return c.affine();
}

json point_json(const PlanePoint<double>& p) { return json::array({coord_json(p.x), coord_json(p.y)}); }

double parse_coord(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  return parse_rational(s).convert_to<double>();
}

PlanePoint<double> make_point(const std::string& x, const std::string& y) {
  const double u = parse_coord(x), v = parse_coord(y);
  return {std::isinf(u) ? infinity<double>() : finite(u), std::isinf(v) ? infinity<double>() : finite(v)};
}

SeedLine parse_seed(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("seed must look like x=1.5 or y=-1: " + text);
  std::string axis = text.substr(0, eq);
  axis.erase(std::remove(axis.begin(), axis.end(), ' '), axis.end());
  if (axis.front() == '{') axis.erase(0, 1);
  std::string value = text.substr(eq + 1);
  if (!value.empty() && value.back() == '}') value.pop_back();
  if (axis != "x" && axis != "y") throw UsageError("seed axis must be x or y: " + text);
  return {axis == "x" ? Axis::X : Axis::Y, parse_rational(value).convert_to<double>()};
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  f << body;
  if (!f) throw std::runtime_error("cannot write " + path);
}

std::string exact_str(const QSqrt5& v) { return v.p.str() + " + " + v.q.str() + " sqrt5"; }

Rational checked_a(const std::string& text) {
  const Rational a = parse_rational(text);
  MapParams<Rational> check(a);  // throws ParameterExcluded
  (void)check;
  return a;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw UsageError("empty number");
  try {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      if (BigInt(s.substr(slash + 1)) == 0) throw UsageError("zero denominator in " + raw);
      const Rational r(s);
      return r;
    }
    std::string mant = s;
    long exp10 = 0;
    const auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
      mant = s.substr(0, e);
      std::size_t used = 0;
      exp10 = std::stol(s.substr(e + 1), &used);
      if (used != s.size() - e - 1) throw UsageError("bad exponent in " + raw);
    }
    const auto dot = mant.find('.');
    if (dot != std::string::npos) {
      exp10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") throw UsageError("not a number: " + raw);
    if (mant.front() == '+') mant.erase(0, 1);
    Rational r{BigInt(mant)};
    BigInt p = 1;
    for (long i = 0; i < std::abs(exp10); ++i) p *= 10;
    return exp10 >= 0 ? Rational(r * p) : Rational(r / p);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("not a number: " + raw);
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Golden mean dynamics of f(x,y) = (y(x+a)/(x-1), x+a-1)"};
  app.set_config("--config", "", "TOML or INI file with option values; flags on the command line win");
  app.require_subcommand(1);
  Context ctx;

  std::string a_text = "-2";
  auto add_a = [&](CLI::App* s) { s->add_option("--a", a_text, "parameter, rational or decimal")->capture_default_str(); };

  // iterate
  auto* it = app.add_subcommand("iterate", "orbit of a point, CSV k,x,y");
  std::string ix = "2", iy = "-2", precision = "double";
  int isteps = 10, ibits = 256;
  add_a(it);
  it->add_option("--x", ix)->capture_default_str();
  it->add_option("--y", iy)->capture_default_str();
  it->add_option("--steps", isteps, "negative for the inverse")->capture_default_str();
  it->add_option("--precision", precision)->check(CLI::IsMember({"double", "high", "exact"}))->capture_default_str();
  it->add_option("--bits", ibits, "mantissa bits for --precision high")->check(CLI::Range(24, 100000))->capture_default_str();

  // code
  auto* co = app.add_subcommand("code", "itinerary of a point, JSON");
  std::string cx = "2", cy = "-2";
  int back = 6, fwd = 6;
  double eps_bd = kBoundaryTol;
  add_a(co);
  co->add_option("--x", cx)->capture_default_str();
  co->add_option("--y", cy)->capture_default_str();
  co->add_option("--back", back)->check(CLI::NonNegativeNumber)->capture_default_str();
  co->add_option("--fwd", fwd)->check(CLI::NonNegativeNumber)->capture_default_str();
  co->add_option("--eps", eps_bd, "boundary tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  // basin
  auto* ba = app.add_subcommand("basin", "escape classification of a point, JSON");
  std::string bx = "2", by = "-2";
  int max_iter = 200;
  add_a(ba);
  ba->add_option("--x", bx)->capture_default_str();
  ba->add_option("--y", by)->capture_default_str();
  ba->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber)->capture_default_str();

  // subshift
  auto* su = app.add_subcommand("subshift", "word counts, periodic words and cylinder masses, JSON");
  int su_n = 4, su_m = 4, su_period = 0;
  std::string su_word;
  su->add_option("--n", su_n, "extent [-n, m]")->check(CLI::NonNegativeNumber)->capture_default_str();
  su->add_option("--m", su_m)->check(CLI::NonNegativeNumber)->capture_default_str();
  su->add_option("--period", su_period, "list the periodic words of this period")->check(CLI::NonNegativeNumber);
  su->add_option("--word", su_word, "finite word such as 01.0010 (w_0 before the dot)");

  // degrees
  auto* de = app.add_subcommand("degrees", "level-curve bidegrees of f^n in exact arithmetic, JSON");
  int de_n = 6;
  add_a(de);
  de->add_option("--n", de_n)->check(CLI::Range(1, 12))->capture_default_str();

  // rectangle
  auto* re = app.add_subcommand("rectangle", "corners and witness of R(w), JSON");
  std::string re_word = "0.0";
  add_a(re);
  re->add_option("--word", re_word, "finite word such as 010.01")->capture_default_str();

  // periodic
  auto* pe = app.add_subcommand("periodic", "points of period n, CSV");
  int period = 3;
  std::string report;
  add_a(pe);
  pe->add_option("--period", period)->check(CLI::Range(1, 14))->capture_default_str();
  pe->add_option("--report", report, "JSON summary path");

  // measure
  auto* me = app.add_subcommand("measure", "intersection measure, JSON report and CSV atoms");
  int me_n = 8, me_m = 8, me_depth = 2;
  std::string me_s, me_t, compare = "parry", atoms_path;
  add_a(me);
  me->add_option("--n", me_n)->check(CLI::Range(0, 10))->capture_default_str();
  me->add_option("--m", me_m)->check(CLI::Range(0, 10))->capture_default_str();
  me->add_option("--s", me_s, "horizontal seed line y = s, below the top of R0");
  me->add_option("--t", me_t, "vertical seed line x = t, right of the left edge of R0");
  me->add_option("--compare", compare)->check(CLI::IsMember({"parry", "periodic"}))->capture_default_str();
  me->add_option("--depth", me_depth)->check(CLI::Range(0, 6))->capture_default_str();
  me->add_option("--atoms", atoms_path, "CSV path for the atoms");

  // lamination
  auto* la = app.add_subcommand("lamination", "stable or unstable curve with self-intersections, JSON and SVG");
  int la_depth = 10;
  std::string la_seed = "x=1.5", direction = "stable", svg_path;
  add_a(la);
  la->add_option("--depth", la_depth)->check(CLI::Range(0, 12))->capture_default_str();
  la->add_option("--seed", la_seed, "seed line, x=c or y=c")->capture_default_str();
  la->add_option("--direction", direction)->check(CLI::IsMember({"stable", "unstable"}))->capture_default_str();
  la->add_option("--svg", svg_path, "SVG output path");

  // verify-all
  auto* ve = app.add_subcommand("verify-all", "acceptance suite, one line per criterion and a JSON report");
  std::string ve_out = "acceptance_report.json", ve_dir = ".";
  std::uint64_t ve_seed = AcceptanceOptions{}.seed;
  std::vector<int> only;
  add_a(ve);
  ve->add_option("--out", ve_out, "JSON report path")->capture_default_str();
  ve->add_option("--svg-dir", ve_dir, "directory for figures")->capture_default_str();
  ve->add_option("--seed", ve_seed, "random seed")->capture_default_str();
  ve->add_option("--only", only, "criterion ids")->check(CLI::Range(1, kCriteria));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    ctx.inputs["a"] = a_text;
    if (*it) {
      ctx = {"birational_map", "iterate", {{"a", a_text}, {"x", ix}, {"y", iy}, {"steps", isteps}}};
      const Rational a = checked_a(a_text);
      out << "k,x,y\n";
      auto emit = [&](int k, const std::string& x, const std::string& y) { out << k << ',' << x << ',' << y << '\n'; };
      const int dir = isteps >= 0 ? 1 : -1;
      if (precision == "exact") {
        const MapParams<Rational> m(a);
        PlanePoint<Rational> p = embed_affine(parse_rational(ix), parse_rational(iy));
        auto str = [](const ProjCoord<Rational>& c) { return c.is_infinite() ? std::string("inf") : c.affine().str(); };
        emit(0, str(p.x), str(p.y));
        for (int k = 1; k <= std::abs(isteps); ++k) {
          const auto r = dir > 0 ? eval_forward(m, p) : eval_inverse(m, p);
          if (r.indeterminate) throw std::runtime_error("orbit hits an indeterminacy point at step " + std::to_string(k - 1));
          p = r.point;
          emit(dir * k, str(p.x), str(p.y));
        }
      } else if (precision == "high") {
        HighPrecisionScope scope(ibits);
        const MapParams<HighFloat> m = MapParams<Rational>(a).cast<HighFloat>();
        PlanePoint<HighFloat> p{finite(HighFloat(parse_rational(ix))), finite(HighFloat(parse_rational(iy)))};
        auto str = [](const ProjCoord<HighFloat>& c) {
          return c.is_infinite() ? std::string("inf") : c.affine().str(std::numeric_limits<double>::max_digits10 + 3);
        };
        emit(0, str(p.x), str(p.y));
        for (int k = 1; k <= std::abs(isteps); ++k) {
          const auto r = dir > 0 ? eval_forward(m, p) : eval_inverse(m, p);
          if (r.indeterminate) throw std::runtime_error("orbit hits an indeterminacy point at step " + std::to_string(k - 1));
          p = r.point;
          emit(dir * k, str(p.x), str(p.y));
        }
      } else {
        const MapParams<double> m(a.convert_to<double>());
        PlanePoint<double> p = make_point(ix, iy);
        emit(0, coord_str(p.x), coord_str(p.y));
        for (int k = 1; k <= std::abs(isteps); ++k) {
          const auto r = dir > 0 ? eval_forward(m, p) : eval_inverse(m, p);
          if (r.indeterminate) throw std::runtime_error("orbit hits an indeterminacy point at step " + std::to_string(k - 1));
          p = r.point;
          emit(dir * k, coord_str(p.x), coord_str(p.y));
        }
      }
      return 0;
    }

    if (*co) {
      ctx = {"filtration_coding", "itinerary", {{"a", a_text}, {"x", cx}, {"y", cy}, {"back", back}, {"fwd", fwd}}};
      const MapParams<double> m(checked_a(a_text).convert_to<double>());
      ItineraryOptions io;
      io.eps = eps_bd;
      const OrbitRecord r = itinerary(m, make_point(cx, cy), back, fwd, io);
      json amb = json::array();
      for (std::size_t i = 0; i < r.ambiguous.size(); ++i)
        if (r.ambiguous[i]) amb.push_back(r.lo + static_cast<long>(i));
      json j{{"a", a_text},
             {"point", point_json(make_point(cx, cy))},
             {"lo", r.lo},
             {"hi", r.hi()},
             {"digits", digits_str(r.digits)},
             {"word", r.digits.empty() ? "" : r.word().str()},
             {"ambiguous", amb},
             {"forward_end", {{"kind", termination_name(r.fwd_end.kind)}, {"step", r.fwd_end.step}}},
             {"backward_end", {{"kind", termination_name(r.bwd_end.kind)}, {"step", r.bwd_end.step}}},
             {"forward_loss_bits", r.fwd_loss_bits},
             {"backward_loss_bits", r.bwd_loss_bits}};
      out << j.dump(2) << '\n';
      return 0;
    }

    if (*ba) {
      ctx = {"filtration_coding", "basin_classify", {{"a", a_text}, {"x", bx}, {"y", by}, {"max_iter", max_iter}}};
      const MapParams<double> m(checked_a(a_text).convert_to<double>());
      const BasinResult r = basin_classify(m, make_point(bx, by), max_iter);
      out << json{{"a", a_text}, {"point", point_json(make_point(bx, by))}, {"basin", basin_name(r.basin)},
                  {"step", r.step}}
                 .dump(2)
          << '\n';
      return 0;
    }

    if (*su) {
      ctx = {"subshift", "count_words", {{"n", su_n}, {"m", su_m}, {"period", su_period}, {"word", su_word}}};
      json j{{"extent", {-su_n, su_m}},
             {"words", count_words(su_n, su_m).str()},
             {"words_first0_last0", count_words(su_n, su_m, Digit(0), Digit(0)).str()},
             {"entropy", std::log(0.5 * (1 + std::sqrt(5.0)))}};
      if (su_period > 0) {
        json ws = json::array();
        for (const Word& w : enumerate_periodic(su_period)) ws.push_back({{"word", w.str()}, {"period", w.period()}});
        j["periodic"] = {{"n", su_period}, {"count", ws.size()}, {"words", ws}};
      }
      if (!su_word.empty()) {
        ctx.operation = "cylinder_measure";
        const Word w = Word::parse(su_word);
        require_valid(w);
        j["cylinder"] = {{"word", w.str()}, {"measure", cylinder_measure(w)},
                         {"exact", exact_str(cylinder_measure_exact(w))}};
      }
      out << j.dump(2) << '\n';
      return 0;
    }

    if (*de) {
      ctx = {"symbolic_degrees", "verify_fibonacci_growth", {{"a", a_text}, {"n", de_n}}};
      const Rational a = checked_a(a_text);
      const DegreeReport r = verify_fibonacci_growth(a, de_n);
      json rows = json::array();
      for (const auto& row : r.rows)
        rows.push_back({{"n", row.n},
                        {"x_component", {row.bidegrees[0].first, row.bidegrees[0].second}},
                        {"y_component", {row.bidegrees[1].first, row.bidegrees[1].second}},
                        {"expected_x", {row.expected[0].first, row.expected[0].second}},
                        {"expected_y", {row.expected[1].first, row.expected[1].second}},
                        {"pass", row.pass}});
      out << json{{"a", a.str()}, {"exceptional", is_exceptional(a)}, {"rows", rows}, {"pass", r.pass}}.dump(2)
          << '\n';
      return r.pass || is_exceptional(a) ? 0 : 1;
    }

    if (*re) {
      ctx = {"arcs_rectangles", "build_rectangle", {{"a", a_text}, {"word", re_word}}};
      const MapParams<double> m(checked_a(a_text).convert_to<double>());
      const Word w = Word::parse(re_word);
      const RectangleApprox R = build_rectangle(m, w);
      json corners = json::array();
      for (const auto& c : R.corners) corners.push_back(point_json(c));
      out << json{{"a", a_text},
                  {"word", w.str()},
                  {"home", "R" + std::to_string(int(R.home()))},
                  {"corners", corners},
                  {"near_corner", point_json(R.near_corner)},
                  {"far_corner", point_json(R.far_corner)},
                  {"witness", point_json(R.witness)},
                  {"witness_itinerary_ok", R.witness_ok}}
                 .dump(2)
          << '\n';
      return R.witness_ok ? 0 : 1;
    }

    if (*pe) {
      ctx = {"periodic_points", "locate_all", {{"a", a_text}, {"period", period}}};
      const MapParams<double> m(checked_a(a_text).convert_to<double>());
      const auto pts = locate_all(m, period);
      out << "cycle,period,x,y,lambda1_re,lambda1_im,lambda2_re,lambda2_im,det,class,residual,residual_bits\n";
      int saddles = 0;
      for (const auto& p : pts) {
        out << digits_str(p.cycle) << ',' << p.period << ',' << coord_str(p.point.x) << ',' << coord_str(p.point.y)
            << ',' << num(p.eigenvalues[0].real()) << ',' << num(p.eigenvalues[0].imag()) << ','
            << num(p.eigenvalues[1].real()) << ',' << num(p.eigenvalues[1].imag()) << ',' << num(p.det) << ','
            << point_class_name(p.cls) << ',' << num(p.residual) << ',' << p.residual_bits << '\n';
        saddles += p.cls == PointClass::Saddle;
      }
      const LefschetzBudget b = lefschetz_budget(period);
      const bool ok = static_cast<long>(pts.size()) == b.expected_finite.convert_to<long>();
      if (!report.empty())
        write_file(report, json{{"a", a_text},
                                {"period", period},
                                {"found", pts.size()},
                                {"lefschetz_total", b.total.str()},
                                {"at_infinity", b.at_infinity},
                                {"expected_finite", b.expected_finite.str()},
                                {"saddles", saddles},
                                {"pass", ok}}
                               .dump(2) +
                               "\n");
      return ok ? 0 : 1;
    }

    if (*me) {
      ctx = {"measure_laminations", "intersection_measure",
             {{"a", a_text}, {"n", me_n}, {"m", me_m}, {"s", me_s}, {"t", me_t}, {"compare", compare}}};
      const MapParams<double> m(checked_a(a_text).convert_to<double>());
      const bool deep = m.regime == Regime::DeepNegative;
      const double s = me_s.empty() ? (deep ? -1.5 : m.a - 0.5) : parse_rational(me_s).convert_to<double>();
      const double t = me_t.empty() ? (deep ? 1.5 : 0.5 - m.a) : parse_rational(me_t).convert_to<double>();
      const WeightedPointSet I = intersection_measure(m, me_n, me_m, s, t);
      ctx.operation = "compare_measures";
      MeasureComparison c;
      if (compare == "parry") {
        c = compare_measures(m, I, me_depth);
      } else {
        c = compare_measures(m, I, equidistribution_measure(m, 12), me_depth);
      }
      if (!atoms_path.empty()) {
        std::ostringstream csv;
        csv << "x,y,weight\n";
        for (const Atom& at : I.atoms) csv << coord_str(at.point.x) << ',' << coord_str(at.point.y) << ',' << num(at.weight) << '\n';
        write_file(atoms_path, csv.str());
      }
      out << json{{"a", a_text},
                  {"provenance", I.provenance.str()},
                  {"atoms", I.atoms.size()},
                  {"raw_mass", I.raw_mass()},
                  {"compare", compare == "parry" ? "parry" : "periodic(12)"},
                  {"depth", c.depth},
                  {"l1", c.l1},
                  {"excluded", c.excluded},
                  {"valid", c.valid}}
                 .dump(2)
          << '\n';
      return c.valid ? 0 : 1;
    }

    if (*la) {
      ctx = {"measure_laminations", "lamination_curve",
             {{"a", a_text}, {"depth", la_depth}, {"seed", la_seed}, {"direction", direction}}};
      const MapParams<double> m(checked_a(a_text).convert_to<double>());
      const LaminationResult r =
          lamination_curve(m, direction == "stable" ? Direction::Stable : Direction::Unstable, parse_seed(la_seed), la_depth);
      if (!svg_path.empty()) write_file(svg_path, lamination_svg(r));
      json xs = json::array();
      for (const auto& c : r.crossings)
        xs.push_back({{"point", point_json(c.point)}, {"orbit_step", c.orbit_step}, {"orbit_distance", c.orbit_distance},
                      {"matched", c.matched}});
      int lossy = 0;
      for (const auto& p : r.pieces) lossy += p.lossy;
      out << json{{"a", a_text},
                  {"direction", direction_name(r.direction)},
                  {"seed", r.seed.str()},
                  {"depth", r.depth},
                  {"samples", r.samples},
                  {"pieces", r.pieces.size()},
                  {"lossy_pieces", lossy},
                  {"resolved", r.resolved},
                  {"self_intersections", xs.size()},
                  {"all_matched", r.all_matched},
                  {"crossings", xs}}
                 .dump(2)
          << '\n';
      return r.all_matched && r.resolved ? 0 : 1;
    }

    if (*ve) {
      ctx = {"cli", "verify-all", {{"a", a_text}, {"seed", ve_seed}}};
      AcceptanceOptions opt;
      opt.deep_a = checked_a(a_text).convert_to<double>();
      if (opt.deep_a >= -1) throw UsageError("verify-all --a must be a deep parameter, a < -1");
      opt.seed = ve_seed;
      opt.output_dir = ve_dir;
      const auto results = run_acceptance(opt, only);
      bool all = true;
      for (const auto& r : results) {
        out << summary_line(r) << '\n';
        all = all && r.pass;
      }
      write_file(ve_out, acceptance_report(results, opt).dump(2) + "\n");
      return all ? 0 : 1;
    }
  } catch (const ParameterExcluded& e) {
    err << json{{"error", e.what()}, {"module", ctx.module}, {"operation", ctx.operation}, {"inputs", ctx.inputs}}.dump()
        << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << json{{"error", e.what()}, {"module", ctx.module}, {"operation", ctx.operation}, {"inputs", ctx.inputs}}.dump()
        << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << json{{"error", e.what()}, {"module", ctx.module}, {"operation", ctx.operation}, {"inputs", ctx.inputs}}.dump()
        << '\n';
    return 1;
  }
  return 2;
}

}  // namespace gm::cli
