#pragma once

#include <array>
#include <string>
#include <vector>

#include "goldenmap/map.hpp"
#include "goldenmap/subshift.hpp"

namespace gm {

enum class Rect { Plus = 0, Minus = 1, Zero = 2, One = 3 };

const char* rect_name(Rect r);

// Closed interval of the projective line, as arctan angles lo <= hi inside
// [-pi/2, pi/2]. An endpoint at +-pi/2 is the point at infinity.
struct LineInterval {
  double lo;
  double hi;
  double lo_value;  // affine endpoints, +-inf allowed
  double hi_value;

  static LineInterval of(double lo_value, double hi_value);
  bool contains(double angle) const;
  // Circle distance to the interval; 0 inside.
  double distance(double angle) const;
  // Circle distance to the nearer endpoint.
  double depth(double angle) const;
};

struct RectBox {
  Rect which;
  LineInterval x;
  LineInterval y;
};

struct Filtration {
  Regime regime;
  double a;
  std::array<RectBox, 4> boxes;  // indexed by Rect

  static Filtration of(const MapParams<double>& m);
  const RectBox& box(Rect r) const { return boxes[static_cast<int>(r)]; }
  const RectBox& digit_box(Digit d) const { return box(d == 0 ? Rect::Zero : Rect::One); }
};

constexpr double kBoundaryTol = 1e-10;

struct Membership {
  Rect rect;
  bool interior;
};

// All rectangles containing p within eps in the chordal metric.
std::vector<Membership> classify_point(const Filtration& fil, const PlanePoint<double>& p,
                                       double eps = kBoundaryTol);
bool in_rect(const Filtration& fil, Rect r, const PlanePoint<double>& p, double eps = kBoundaryTol);
bool in_interior(const Filtration& fil, Rect r, const PlanePoint<double>& p,
                 double eps = kBoundaryTol);

struct DriftCheck {
  bool applicable = false;  // p in the right rectangle with a finite image
  bool contained = false;   // image stays in the rectangle
  double lhs = 0;
  double rhs = 0;
  bool pass = false;
};

// One step of the escape inequality on R+ (forward) or R- (backward).
DriftCheck forward_drift(const MapParams<double>& m, const Vec2<double>& p);
DriftCheck backward_drift(const MapParams<double>& m, const Vec2<double>& p);

// True when neither f(p) nor f^{-1}(p) is a finite point of int R1.
bool r1_nonreturn(const MapParams<double>& m, const Vec2<double>& p);

enum class Termination { Completed, HitIndeterminacy, EscapedToRPlus, EscapedToRMinus, PrecisionLoss };
const char* termination_name(Termination t);

struct OrbitEnd {
  Termination kind = Termination::Completed;
  long step = 0;
};

struct OrbitRecord {
  PlanePoint<double> base;
  std::vector<PlanePoint<double>> forward;   // forward[k] = f^k(base)
  std::vector<PlanePoint<double>> backward;  // backward[k] = f^{-k}(base)
  long lo = 0;                               // digits cover steps lo .. lo + size - 1
  std::vector<Digit> digits;
  std::vector<bool> ambiguous;  // both R0 and R1 within tolerance
  std::vector<bool> boundary;   // digit rectangle met only within tolerance
  OrbitEnd fwd_end;
  OrbitEnd bwd_end;
  double fwd_loss_bits = 0;
  double bwd_loss_bits = 0;

  long hi() const { return lo + static_cast<long>(digits.size()) - 1; }
  bool has_digit(long k) const { return k >= lo && k <= hi(); }
  Digit digit(long k) const { return digits[k - lo]; }
  Word word() const;
};

struct ItineraryOptions {
  double eps = kBoundaryTol;
  int mantissa_bits = 53;
  int guard_bits = 8;
};

OrbitRecord itinerary(const MapParams<double>& m, const PlanePoint<double>& p, int n_back, int n_fwd,
                      const ItineraryOptions& opt = {});

// eta = 0.9 * min of the chordal distances from R1 to the two sets of R0 used
// in the expansivity argument.
struct Expansivity {
  double eta;
  double dist_a;
  double dist_b;
  RectBox set_a;
  RectBox set_b;
};
Expansivity expansivity_constant(const MapParams<double>& m);

// Distance between two coordinate boxes in the max-of-circle metric.
double box_distance(const RectBox& p, const RectBox& q);

enum class Basin { ForwardBasin, BackwardBasin, Undecided, NearOmega };
const char* basin_name(Basin b);

struct BasinResult {
  Basin basin;
  long step;  // first iterate seen in int R+ (or int R-), signed
};

BasinResult basin_classify(const MapParams<double>& m, const PlanePoint<double>& p, int max_iter,
                           double eps = kBoundaryTol);

}  // namespace gm
