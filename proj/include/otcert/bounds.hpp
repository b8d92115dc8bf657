#pragma once

#include <cmath>

#include "otcert/hypotheses.hpp"
#include "otcert/potentials.hpp"

namespace otcert {

// Linear-growth certificate |T(x)| <= C (1+|x|), assembled from the
// certified growth constants, Lip(V^{1/p}), the cone mass of the target
// and the resulting bound on the potential's minimum point x*.
struct LinearGrowthCertificate {
  double M0 = 0.0;
  double a_g = 0.0;
  double xstar = 0.0;
  double C = 0.0;
  GrowthConstants growth;
  LipRoot lip;
};

struct LipschitzCertificate {
  double K = 0.0;
  RatioConstants ratios;
  CurvatureConstants curvature;
  double C = 0.0;   // linear-growth constant entering 1+C
};

struct SublinearCertificate {
  double alpha = 0.0;   // (q-1)/(p-1)
  double theta = 0.0;   // 2 alpha/(1+alpha) < 2
  bool condition_ok = false;
  double p = 0.0, q = 0.0;
  int d = 0;
  double C = 0.0;       // empirical envelope constant, set by calibration
};

struct GaussianCertificate {
  double A = 0.0;       // certified source constant
  double C = 0.0;       // empirical envelope constant
};

inline double sqrt_log_envelope(double rho) {
  return std::sqrt(1.0 + std::log1p(rho));
}

// a(g) = inf over unit alpha of the g-mass of the cone {alpha.y >= |y|/2}.
// Direction-independent (one angular integral) for radial targets.
double cone_mass(const Potential& target, double tol = 1e-12);

// Fraction of the sphere subtended by the 60-degree half-angle cone.
double cone_angular_fraction(int d);

// |x*| <= 2 sup{ r : tail_f(r) >= a_g }, by monotone bisection on the tail.
double xstar_bound(const Potential& source, double a_g, double tol = 1e-10);

// M0 = max{ R0^2/2, (p Lip)^{p/(p-1)} / (delta0 C0^{1/(p-1)}) } and
// C = max{ sqrt(2 M0) + M0 xstar, M0 }, the smallest constant turning the
// affine gradient bound into C (1+|x|).
LinearGrowthCertificate linear_growth_certificate(const GrowthConstants& gc,
                                                  const LipRoot& lip,
                                                  double a_g, double xstar);

// K = sqrt(2 Lambda/lambda + 4/lambda^2) A B (1+C).
LipschitzCertificate lipschitz_certificate(const RatioConstants& rc,
                                           const CurvatureConstants& cc,
                                           double C);

SublinearCertificate sublinear_certificate(int d, double p, double q);

GaussianCertificate gaussian_certificate(double A);

// Empirical envelope constant: slack-inflated max of |T|/envelope over the
// calibration radii (the certificate is then checked on held-out radii).
double calibrate_constant(const std::vector<double>& calibration_ratios,
                          double slack = kGridSlack);

}  // namespace otcert
