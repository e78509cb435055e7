#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "goldenmap/arcs.hpp"
#include "goldenmap/weighted.hpp"

namespace gm {

// Atoms of f^{-n}{x = t} meet f^m{y = s}, one per word of extent [-m, n]
// with w_{-m} = w_n = 0, each of weight phi^{-n-m} (1 + phi^2) / phi^2.
// The lines must cross R0: s below its top edge and t right of its left edge.
WeightedPointSet intersection_measure(const MapParams<double>& m, int n, int m_steps, double s, double t);

struct Histogram {
  int depth = 0;
  std::map<std::string, double> mass;  // normalized, keyed by digits w_{-d}..w_d
  int atoms = 0;
  int excluded = 0;  // itinerary ambiguous or incomplete
};

// Normalized masses of depth-d cylinders, read from the numeric itinerary of each atom.
Histogram coarse_grain(const MapParams<double>& m, const WeightedPointSet& p, int depth);
Histogram parry_histogram(int depth);
double l1_distance(const Histogram& p, const Histogram& q);

struct MeasureComparison {
  double l1 = 0;
  int depth = 0;
  int atoms = 0;
  int excluded = 0;
  bool valid = false;  // fewer than 1% of atoms excluded
};

MeasureComparison compare_measures(const MapParams<double>& m, const WeightedPointSet& p, int depth);
MeasureComparison compare_measures(const MapParams<double>& m, const WeightedPointSet& p,
                                   const WeightedPointSet& q, int depth);

struct WeightedArc {
  Arc arc;
  double weight;
  int orientation;  // +1 when the stored order is the oriented direction
};

// Plus side: s-arcs of the words w_0..w_d weighted by nu+, oriented with y
// decreasing. Minus side: their mirrors, u-arcs weighted by nu-, oriented with
// x increasing.
struct DiscreteCurrent {
  Side side = Side::Plus;
  int depth = 0;
  std::vector<WeightedArc> arcs;
  double total_weight = 0;
};

DiscreteCurrent discrete_current(const MapParams<double>& m, Side side, int depth, const TraceOptions& opt = {});

// A 1-form b(x,y) dy.
using FormDensity = std::function<double(double, double)>;
// ((x-2)(6-x)(y+6)(-2-y))^2 on [2,6] x [-6,-2], zero elsewhere.
double bump_density(double x, double y);

double pairing(const DiscreteCurrent& c, const FormDensity& b);

struct PullbackProbe {
  double original;
  double pulled_back;  // pairing over f^{-1} of the arcs, kept inside R0 u R1
  double ratio;
  double expected;     // -phi in the deep regime, +phi in the shallow one
  double relative_error;
};

PullbackProbe pullback_probe(const MapParams<double>& m, const DiscreteCurrent& c, const FormDensity& b);

struct WedgeResult {
  WeightedPointSet atoms;
  double min_angle = 0;        // smallest angle between the crossing arcs
  double min_excess = 0;       // smallest angle minus the cone gap at the atom
  int missed = 0;              // pairs with no crossing found
};

// mu+ wedge mu-: crossings of the depth-d s- and u-arcs with the same w_0.
WedgeResult wedge(const MapParams<double>& m, int depth);

enum class Direction { Stable, Unstable };
const char* direction_name(Direction d);

struct LaminationOptions {
  double delta = 2e-3;       // chordal spacing of samples
  int max_samples = 3000000;
  double match_tol = 1e-6;
  double loss_bits = 45;     // expansion beyond which a segment is flagged
};

struct Polyline {
  std::vector<PlanePoint<double>> points;
  bool lossy = false;
};

struct SelfIntersection {
  PlanePoint<double> point;
  double theta1;
  double theta2;
  double orbit_distance;  // to the nearest point of the indeterminacy orbit
  int orbit_step;         // k with the match in f^{-k} I(f) (or f^k I(f^{-1}))
  bool matched;
};

struct LaminationResult {
  Direction direction = Direction::Stable;
  SeedLine seed{Axis::X, 1.5};
  int depth = 0;
  std::vector<Polyline> pieces;
  std::vector<SelfIntersection> crossings;
  std::vector<PlanePoint<double>> orbit;  // the indeterminacy orbit used for matching
  int samples = 0;
  bool all_matched = true;
  bool resolved = true;
};

// f^{-depth}(seed) for the stable direction, f^{depth}(seed) for the unstable one.
LaminationResult lamination_curve(const MapParams<double>& m, Direction dir, const SeedLine& seed, int depth,
                                  const LaminationOptions& opt = {});

std::string lamination_svg(const LaminationResult& r);

}  // namespace gm
