#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goldenmap/filtration.hpp"

namespace gm {

enum class ArcKind { S, U };
enum class Axis { X, Y };

const char* arc_kind_name(ArcKind k);
const char* axis_name(Axis a);

struct TraceError : std::runtime_error {
  enum Kind { ItineraryMismatch, Indeterminacy, PrecisionLoss, BadSeed };
  Kind kind;
  TraceError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

// Axis-parallel line {x = value} (fixed == X) or {y = value}. Points are
// parametrized by the arctan angle of the free coordinate.
struct SeedLine {
  Axis fixed;
  double value;

  PlanePoint<double> at(double theta) const;
  // Image under (x,y) -> (-y,-x).
  SeedLine mirrored() const;
  std::string str() const;
};

// Seed lines crossing R_d properly for arcs of the given kind: u-seeds are
// horizontal in R0 and vertical in R1, s-seeds the other way.
SeedLine default_seed(const MapParams<double>& m, ArcKind kind, Digit d);
// The two ends of the seed family of R_d, just inside the boundary and near infinity.
std::array<SeedLine, 2> extreme_seeds(const MapParams<double>& m, ArcKind kind, Digit d);
bool seed_is_proper(const MapParams<double>& m, const SeedLine& seed, ArcKind kind, Digit d);

// Graph axis of an arc of the given kind in R_d.
Axis graph_axis(ArcKind kind, Digit d);

// A parameter interval of a seed line whose image is one canonical arc.
// U: digits are w_{-n}..w_0, the seed lies in R_{w_{-n}} and the arc is f^n of
// the interval. S: digits are w_0..w_m, the seed lies in R_{w_m} and the arc is
// f^{-m} of the interval; it is computed as the mirror of a u-arc.
struct Branch {
  ArcKind kind = ArcKind::U;
  std::vector<Digit> digits;
  SeedLine seed{Axis::Y, -1.5};
  double lo = 0;
  double hi = 0;

  int steps() const { return static_cast<int>(digits.size()) - 1; }
  Digit home() const { return kind == ArcKind::U ? digits.back() : digits.front(); }
  Axis axis() const { return graph_axis(kind, home()); }
  Word word() const;

  std::optional<PlanePoint<double>> point(const MapParams<double>& m, double theta) const;
  // Point of the arc whose graph coordinate has arctan angle t; nullopt when t
  // falls outside the range covered by the arc.
  std::optional<PlanePoint<double>> at_graph(const MapParams<double>& m, double t) const;
  // Graph angles of the two arc ends, increasing.
  std::pair<double, double> graph_range(const MapParams<double>& m) const;
};

// Branch of a single word. Throws TraceError when the seed is not proper.
Branch find_branch(const MapParams<double>& m, ArcKind kind, const std::vector<Digit>& digits,
                   const SeedLine& seed);
Branch find_branch(const MapParams<double>& m, ArcKind kind, const std::vector<Digit>& digits);

// All branches of depth n grown from one seed: U branches with w_{-n} = seed
// digit, S branches with w_m = seed digit. Sorted by parameter.
std::vector<Branch> partition(const MapParams<double>& m, ArcKind kind, Digit start, int depth,
                              const SeedLine& seed);

struct TraceOptions {
  double delta_arc = 1e-4;
  double itinerary_eps = 1e-9;
  int max_samples = 400000;
};

struct Arc {
  ArcKind kind = ArcKind::U;
  Digit home = 0;
  std::vector<Digit> digits;
  Axis axis = Axis::X;
  SeedLine seed{Axis::Y, -1.5};
  double theta_lo = 0;
  double theta_hi = 0;
  std::vector<double> params;
  std::vector<PlanePoint<double>> points;
  int mismatches = 0;     // samples whose itinerary disagrees with the word
  bool resolved = true;   // adjacent samples all within delta_arc

  Word word() const;
  double chordal_length() const;
};

Arc trace_arc(const MapParams<double>& m, const Branch& b, const TraceOptions& opt = {});
// Checked form: validates the word and the seed, throws on a mismatch.
Arc trace_arc(const MapParams<double>& m, ArcKind kind, const std::vector<Digit>& digits,
              const SeedLine& seed, const TraceOptions& opt = {});

// Cone of directions swept counter-clockwise from `start` through `width`,
// angles taken mod pi.
struct Cone {
  double start = 0;
  double width = 0;

  // Signed angular distance to the boundary: positive inside.
  double margin(double direction) const;
  double end() const { return start + width; }
};

double direction_angle(const Vec2<double>& v);

// Unstable cones at finite p in R0 or R1; `hat` selects the wide cone.
Cone cone_u(const MapParams<double>& m, const Vec2<double>& p, bool hat = false);
// Stable cones are the mirror images of the unstable ones.
Cone cone_s(const MapParams<double>& m, const Vec2<double>& p, bool hat = false);

struct ConeCheck {
  bool applicable = false;  // p and fp in R0 u R1
  bool two_step = false;    // f^2 p as well, so the strict check ran
  int directions = 0;
  double one_step_margin = 0;  // Df(hat C^u_p) inside C^u_{fp}
  double two_step_margin = 0;  // Df^2(C^u_p) strictly inside C^u_{f^2 p}
  bool pass = false;
};

constexpr double kConeTol = 1e-9;

ConeCheck cone_invariance_check(const MapParams<double>& m, const Vec2<double>& p, int samples = 64);

struct SlopeCheck {
  int checked = 0;
  int skipped = 0;
  double worst_margin = 0;
  bool monotone = true;
  bool pass = false;
};

constexpr double kSlopeTol = 1e-8;
constexpr double kSlopeSkip = 1e-3;

// Secant directions of adjacent samples against the cone of the arc kind at
// the secant midpoint. Samples within kSlopeSkip of the boundary of the home
// rectangle are skipped.
SlopeCheck check_slopes(const MapParams<double>& m, const Arc& arc, double tol = kSlopeTol);

// Crossing of a u-branch and an s-branch with the same home rectangle.
std::optional<PlanePoint<double>> intersect(const MapParams<double>& m, const Branch& u,
                                            const Branch& s);

struct RectangleApprox {
  Word word;
  std::array<Branch, 2> u_bounds;
  std::array<Branch, 2> s_bounds;
  std::vector<PlanePoint<double>> corners;
  PlanePoint<double> near_corner;  // closest to the origin
  PlanePoint<double> far_corner;
  PlanePoint<double> witness;      // crossing of the default-seed arcs
  bool witness_ok = false;         // witness itinerary equals the word

  Digit home() const { return word.at(0); }
  // Geometric membership: between both pairs of boundary arcs, within tol.
  bool contains(const MapParams<double>& m, const PlanePoint<double>& p, double tol = 1e-9) const;
};

// Word given on an extent [-n, m] with n, m >= 0.
RectangleApprox build_rectangle(const MapParams<double>& m, const Word& w);

// The arc strip between two boundary branches, sampled at graph angles.
struct Strip {
  Axis axis;
  std::vector<double> graph;
  std::vector<double> lo;
  std::vector<double> hi;
};
Strip sample_strip(const MapParams<double>& m, const std::array<Branch, 2>& bounds, int probes);
// Largest overlap of two strips over common probes; <= 0 when disjoint.
double strip_overlap(const Strip& a, const Strip& b);

struct FiberCount {
  int depth;
  double x0;
  long expected;     // F_{n+1}
  int crossings;     // distinct points of the canonical arcs on {x = x0}
  int exact_roots;   // real roots of the exact fiber polynomial, -1 if skipped
  bool pass;
};

// Canonical arcs of [-n,0] words beginning and ending in 0 on a vertical line.
FiberCount fiber_count(const MapParams<double>& m, int depth, double x0, bool exact);

struct OrderCalibration {
  TransversalOrder order;
  int depth;
  int candidates;  // tables consistent with the traced arcs
  bool unique;
};

// Finds the transversal-order table that sorts the traced s-arcs of R(w+)
// left to right in R0 and bottom to top in R1, for all words up to `depth`.
OrderCalibration calibrate_order(const MapParams<double>& m, int depth = 6);

}  // namespace gm
