#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "otcert/common.hpp"
#include "otcert/potentials.hpp"

namespace otcert {

// Uniform tensor grid on [-L, L]^d (d = 1 or 2), cell centers
// x_i = -L + (i + 1/2) h with h = 2L/n.  The support is the inscribed ball
// |x| <= L; nodes outside it carry zero weight.  `tail` is the continuum
// mass the support misses.
struct GridMeasure {
  int dim = 1;
  double L = 1.0;
  int n = 0;
  std::vector<double> axis;  // n cell centers
  Vec weights;               // n (d=1) or n*n row-major (d=2), sums to 1
  double tail = 0.0;

  Vec point(int flat) const;  // node coordinates from the flat index
  int size() const { return static_cast<int>(weights.size()); }
};

// Truncate-and-renormalize both densities onto the same grid.
std::pair<GridMeasure, GridMeasure> discretize(const DensityPair& pair,
                                               double L, int n);

// Geometric epsilon schedule from diam^2/8 down to eps_final
// (0 -> (2L/n)^2 on the source grid), steps_per_decade values per decade.
std::vector<double> default_schedule(const GridMeasure& source,
                                     double eps_final = 0.0,
                                     int steps_per_decade = 4);

struct EntropicPlan {
  GridMeasure source, target;
  Vec f, g;        // dual potentials on the weight vectors
  double epsilon = 0.0;
  double marginal_error = 0.0;
  int iterations = 0;
  std::vector<std::pair<double, double>> trace;  // (eps, defect) per level
};

// Log-domain Sinkhorn for cost |x-y|^2/2, warm-started down the schedule;
// every level is iterated until the sup-norm marginal defect is <= tol.
EntropicPlan solve_entropic(const GridMeasure& source,
                            const GridMeasure& target,
                            const std::vector<double>& schedule = {},
                            double tol = 1e-7, int max_iter = 200000);

// Barycentric map T(x_i) = sum_j pi_ij y_j / a_i on the supported nodes,
// with centered-difference DT eigenvalue estimates on interior nodes (NaN
// on the 3-cell boundary band and where neighbors are missing).
struct MapSample {
  int dim = 1;
  std::vector<Vec> points;
  std::vector<Vec> values;
  std::vector<std::pair<double, double>> dt_eigs;  // (min, max) estimates
};

MapSample extract_map(const EntropicPlan& plan);

// Sup over sample points with |x| <= region of |T_numeric(x) - T_oracle(x)|.
double compare_to_oracle(const MapSample& sample,
                         const std::function<Vec(const Vec&)>& oracle,
                         double region);

}  // namespace otcert
