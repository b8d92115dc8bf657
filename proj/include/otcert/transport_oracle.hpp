#pragma once

#include <limits>
#include <vector>

#include "otcert/potentials.hpp"

namespace otcert {

struct OracleOptions {
  double quad_rel = 1e-12;   // relative tolerance of the mass quadratures
  double root_tol = 1e-12;   // relative tolerance of the quantile solves
  // Restrict either density to a centered ball and renormalize (the grid
  // solver sees exactly this truncated problem).
  double trunc_source = std::numeric_limits<double>::infinity();
  double trunc_target = std::numeric_limits<double>::infinity();
};

// Monotone 1-D map T = G^{-1} o F through the CDFs.  Quantiles are matched
// through one-sided ball masses near the center and through tail masses far
// out, which keeps relative precision on heavy tails where the CDF is
// indistinguishable from 1 in absolute terms.
double cdf_map_1d(const DensityPair& pair, double x,
                  const OracleOptions& opt = {});

// Radial transport profile t(r): ball-mass balance M_f(r) = M_g(t(r)) per
// node, node derivatives from the exact mass-balance ODE
//   t'(r) = ratio * r^{d-1} f(r) / (t^{d-1} g(t)),
// monotone cubic interpolation in between.
struct RadialProfile {
  int dim = 1;
  std::vector<double> r, t, dt;   // r[0] = 0, t[0] = 0
  double mass_ratio = 1.0;        // M_g(ball R_t) / M_f(ball R_s)
  double trunc_source = std::numeric_limits<double>::infinity();
  double trunc_target = std::numeric_limits<double>::infinity();

  double operator()(double rho) const;
  double derivative(double rho) const;
  double tangential(double rho) const;   // t(rho)/rho, -> t'(0) at 0
};

// radii: strictly increasing positive nodes (0 is prepended internally).
RadialProfile radial_map(const DensityPair& pair,
                         const std::vector<double>& radii,
                         const OracleOptions& opt = {});

// (t'(r), t(r)/r): the radial and tangential eigenvalues of DT.
std::pair<double, double> radial_DT_eigs(const RadialProfile& prof, double r);

// | t'(r) (t/r)^{d-1} g(t) / f(r) / mass_ratio - 1 |, the Monge-Ampere
// defect of the interpolated profile.
double ma_residual(const DensityPair& pair, const RadialProfile& prof,
                   double r);

}  // namespace otcert
