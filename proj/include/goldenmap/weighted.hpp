#pragma once

#include <string>
#include <vector>

#include "goldenmap/plane.hpp"

namespace gm {

struct Atom {
  PlanePoint<double> point;
  double weight;
};

struct Provenance {
  enum Kind { Intersection, PeriodicEquidistribution, Wedge };
  Kind kind = Intersection;
  int n = 0;
  int m = 0;
  double s = 0;
  double t = 0;

  std::string str() const;
};

struct WeightedPointSet {
  std::vector<Atom> atoms;
  Provenance provenance;

  double raw_mass() const {
    double s = 0;
    for (const Atom& a : atoms) s += a.weight;
    return s;
  }
};

}  // namespace gm
