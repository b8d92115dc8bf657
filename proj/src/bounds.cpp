#include "otcert/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "otcert/quadrature.hpp"
#include "otcert/rootfind.hpp"

namespace otcert {

double cone_angular_fraction(int d) {
  if (d == 1) return 0.5;
  auto s = [d](double th) { return std::pow(std::sin(th), d - 2); };
  const double cap = integrate(s, 0.0, M_PI / 3.0, 1e-13).value;
  const double full = integrate(s, 0.0, M_PI, 1e-13).value;
  return cap / full;
}

namespace {

// Cone mass around a fixed direction for a planar (possibly non-radial)
// density: nested polar quadrature.
double planar_cone_mass(const Potential& g, double phi, double tol) {
  auto ray = [&](double th) {
    auto integrand = [&](double u) {
      if (u >= 1.0) return 0.0;
      const double rho = u / (1.0 - u);
      Vec y(2);
      y << rho * std::cos(th), rho * std::sin(th);
      const double dens = g.density(y);
      if (!std::isfinite(dens)) return 0.0;
      return rho * dens / ((1.0 - u) * (1.0 - u));
    };
    return integrate(integrand, 0.0, 1.0, tol * 0.1).value;
  };
  return integrate(ray, phi - M_PI / 3.0, phi + M_PI / 3.0, tol).value;
}

}  // namespace

double cone_mass(const Potential& target, double tol) {
  const int d = target.dim();
  if (target.radial())
    return cone_angular_fraction(d) * mass(target, tol);
  if (d != 2)
    throw ConfigError("cone mass for non-radial targets implemented in d = 2");
  double best = INFINITY;
  for (const Vec& e : unit_directions(2, 32))
    best = std::min(best, planar_cone_mass(target, std::atan2(e(1), e(0)), tol));
  return best;
}

double xstar_bound(const Potential& source, double a_g, double tol) {
  if (!(a_g > 0.0) || !(a_g < 1.0))
    throw ConfigError("cone mass must lie in (0,1)");
  auto tail = [&](double r) { return tail_mass(source, r, 1e-11); };
  if (tail(0.0) <= a_g) return 0.0;
  double hi = 1.0;
  while (tail(hi) >= a_g) {
    hi *= 2.0;
    if (hi > 1e12) throw SolverError("tail never drops below the cone mass");
  }
  double lo = hi * 0.5;
  // Plain bisection: the tail is monotone and each evaluation is one
  // quadrature, so robustness beats Newton here.
  while (hi - lo > tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) >= a_g ? lo : hi) = mid;
  }
  return 2.0 * 0.5 * (lo + hi);
}

LinearGrowthCertificate linear_growth_certificate(const GrowthConstants& gc,
                                                  const LipRoot& lip,
                                                  double a_g, double xstar) {
  LinearGrowthCertificate cert;
  cert.growth = gc;
  cert.lip = lip;
  cert.a_g = a_g;
  cert.xstar = xstar;
  const double p = gc.p;
  const double d0 = gc.used_delta0();
  const double c0 = gc.used_C0();
  if (!(d0 > 0.0) || !(c0 > 0.0))
    throw ConfigError("growth constants must be positive after slack");
  const double num = std::pow(p * lip.used(), p / (p - 1.0));
  cert.M0 = std::max(0.5 * gc.R0 * gc.R0,
                     num / (d0 * std::pow(c0, 1.0 / (p - 1.0))));
  cert.C = std::max(std::sqrt(2.0 * cert.M0) + cert.M0 * xstar, cert.M0);
  return cert;
}

LipschitzCertificate lipschitz_certificate(const RatioConstants& rc,
                                           const CurvatureConstants& cc,
                                           double C) {
  const double lam = cc.used_lambda();
  if (!(lam > 0.0)) throw ConfigError("lambda must be positive");
  LipschitzCertificate cert;
  cert.ratios = rc;
  cert.curvature = cc;
  cert.C = C;
  cert.K = std::sqrt(2.0 * cc.used_Lambda() / lam + 4.0 / (lam * lam)) *
           rc.used_A() * rc.used_B() * (1.0 + C);
  return cert;
}

SublinearCertificate sublinear_certificate(int d, double p, double q) {
  if (!(p > 1.0) || !(q > 1.0))
    throw ConfigError("sublinear certificate needs p, q > 1");
  SublinearCertificate cert;
  cert.d = d;
  cert.p = p;
  cert.q = q;
  cert.alpha = (q - 1.0) / (p - 1.0);
  cert.theta = 2.0 * cert.alpha / (1.0 + cert.alpha);
  cert.condition_ok = check_pq_condition(d, p, q);
  return cert;
}

GaussianCertificate gaussian_certificate(double A) {
  if (!(A >= 0.0)) throw ConfigError("source constant A must be nonnegative");
  GaussianCertificate cert;
  cert.A = A;
  return cert;
}

double calibrate_constant(const std::vector<double>& calibration_ratios,
                          double slack) {
  if (calibration_ratios.empty())
    throw ConfigError("calibration needs at least one ratio");
  return slack * *std::max_element(calibration_ratios.begin(),
                                   calibration_ratios.end());
}

}  // namespace otcert
