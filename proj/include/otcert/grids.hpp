#pragma once

#include <vector>

#include "otcert/common.hpp"

namespace otcert {

// Radial evaluation grid for hypothesis certification and map verification.
struct GridSpec {
  double r_min = 1.0;
  double horizon = 1e3;
  int points = 512;        // log-spaced radii in [r_min, horizon]
  int directions = 16;     // unit vectors per radius (ignored in d = 1)

  GridSpec refined(int factor) const {
    GridSpec g = *this;
    g.points *= factor;
    g.directions *= factor;
    return g;
  }
};

std::vector<double> log_radii(double lo, double hi, int n);
std::vector<double> linear_radii(double lo, double hi, int n);

// Deterministic, roughly equidistributed unit vectors: +/-1 in d = 1,
// equal angles in d = 2, a Fibonacci spiral in d = 3.
std::vector<Vec> unit_directions(int dim, int count);

}  // namespace otcert
