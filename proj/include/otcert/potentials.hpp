#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "otcert/common.hpp"

namespace otcert {

enum class Family { Power, ScaledPower, GaussianExp, Custom };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Callbacks for user-supplied potentials.  Only `value` is required; missing
// derivatives fall back to central finite differences.  Certification needs
// declared exponents, otherwise the potential is diagnostic-only.
struct CustomSpec {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;          // optional
  std::function<Mat(const Vec&)> hessian;           // optional
  std::function<double(double)> radial_value;       // optional, enables mass
  std::optional<double> exponent;                   // declared p or q
  double v_min = 0.0;                               // declared floor
};

// A smooth positive potential V; the associated density is V^{-d}.
//
// Families:
//   power         a * <x>^r                with <x> = sqrt(1+|x|^2)
//   scaled-power  a * s * (1+|x|^2/s^2)^{r/2}   (= s*V(x/s) scaling partner)
//   gaussian-exp  a * s * exp(|x|^2 / (2 d s^2)), a = sqrt(2*pi) by default
//                 so that the density is the standard Gaussian at s = 1
class Potential {
 public:
  static Potential power(int dim, double a, double r);
  static Potential scaled_power(int dim, double a, double r, double s);
  static Potential gaussian_exp(int dim, double s = 1.0);
  static Potential custom(int dim, CustomSpec spec);

  int dim() const { return dim_; }
  Family family() const { return family_; }
  double coefficient() const { return a_; }
  double exponent() const;          // family r (throws for undeclared custom)
  bool has_exponent() const;
  double scale() const { return s_; }
  double v_min() const;             // declared positive floor

  bool radial() const;              // all named families are radial

  // Radial profile and its derivatives (rho >= 0).  deriv_over_rho is the
  // smooth extension of V'(rho)/rho; aniso is (V'' - V'/rho)/rho^2, also
  // smooth, so Hessian = deriv_over_rho*Id + aniso * x x^T with no special
  // casing at the origin.
  double radial_value(double rho) const;
  double radial_derivative(double rho) const;
  double radial_second(double rho) const;
  double deriv_over_rho(double rho) const;
  double aniso(double rho) const;

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;
  double density(const Vec& x) const;          // value^{-d}
  double radial_density(double rho) const;     // radial_value^{-d}

  // Same potential multiplied by k > 0 (normalization step).
  Potential scaled_by(double k) const;

 private:
  Potential() = default;
  int dim_ = 1;
  Family family_ = Family::Power;
  double a_ = 1.0;
  double r_ = 2.0;
  double s_ = 1.0;
  std::shared_ptr<CustomSpec> custom_;
};

struct DensityPair {
  Potential source;   // V
  Potential target;   // W
  bool normalized = false;

  int dim() const { return source.dim(); }
};

// Total mass of V^{-d} over R^d; radial reduction with compactified
// adaptive quadrature.  Throws ConfigError for non-integrable families
// (power exponent <= 1) and QuadratureError on non-convergence.
double mass(const Potential& pot, double tol = 1e-10);
// Mass of the centered ball B_R.
double ball_mass(const Potential& pot, double R, double tol = 1e-10);
// Mass outside B_R with a relative-error target (tails underflow any
// absolute target).
double tail_mass(const Potential& pot, double R, double rel_tol = 1e-12);
// Mass of the box [-L, L]^d (d <= 2; used by the grid solver).
double box_mass(const Potential& pot, double L, double tol = 1e-10);

// Scales both potentials so that the two densities have unit mass.
DensityPair normalize(DensityPair pair, double tol = 1e-10);

// Truncation of the target to the ball B_R: the truncated potential is
// c_r * W inside B_R (+infinity outside), with c_r = ball_mass(W,R)^{1/d}
// chosen so the truncated density is again a probability density.
struct Truncation {
  double radius = 0.0;
  double c_r = 1.0;
};

Truncation truncate(const Potential& target, double R, double tol = 1e-10);

}  // namespace otcert
