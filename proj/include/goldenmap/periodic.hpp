#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "goldenmap/filtration.hpp"
#include "goldenmap/weighted.hpp"

namespace gm {

struct LefschetzBudget {
  int n;
  BigInt total;          // fixed points of f^n on P1 x P1
  int at_infinity;       // multiplicity of (inf, inf)
  BigInt expected_finite;
};

LefschetzBudget lefschetz_budget(int n);

enum class PointClass { Saddle, Other };
const char* point_class_name(PointClass c);

struct PeriodicPoint {
  std::vector<Digit> cycle;  // w_0..w_{p-1}, p the least period
  int period = 0;
  PlanePoint<double> point;
  Mat2<double> multiplier = Mat2<double>::Zero();  // Df^p along the orbit
  std::array<std::complex<double>, 2> eigenvalues{};  // |l1| >= |l2|
  double det = 0;         // product of the jacobian determinants
  double zeta_det = 0;    // det corrected by the 2-form density ratio
  PointClass cls = PointClass::Other;
  double residual = 0;    // chordal |f^n p - p| at the certifying precision
  int residual_bits = 53;
  double link_residual = 0;  // largest chordal |f(p_j) - p_{j+1}| in double
  int newton_steps = 0;
  bool itinerary_ok = false;

  Word word() const { return Word::periodic(cycle); }
};

struct ConvergenceFailure : std::runtime_error {
  std::vector<Digit> cycle;
  ConvergenceFailure(const std::vector<Digit>& c, const std::string& what)
      : std::runtime_error(what), cycle(c) {}
};

struct LocateOptions {
  int half_width = 6;         // seeds come from R(w[-k, k])
  double residual_tol = 1e-11;
  int polish_bits = 128;      // used when the double residual misses the tolerance
  double eig_tol = 1e-6;
};

// All finite points with f^n p = p, one per admissible non-alternating cyclic
// word; ordered by canonical cycle, then rotation. Throws ConvergenceFailure.
std::vector<PeriodicPoint> locate_all(const MapParams<double>& m, int n, const LocateOptions& opt = {});

// Eigenvalues, determinant and the saddle test |l1| > 1 + d > 1 - d > |l2|.
PeriodicPoint classify(PeriodicPoint pp, const MapParams<double>& m, double eig_tol = 1e-6);

WeightedPointSet equidistribution_measure(const MapParams<double>& m, int n, const LocateOptions& opt = {});

// Lexicographically least rotation of the least-period block of c.
std::vector<Digit> canonical_cycle(const std::vector<Digit>& c);
int least_period(const std::vector<Digit>& c);

}  // namespace gm
