#include "otcert/potentials.hpp"

#include <cmath>

#include "otcert/quadrature.hpp"

namespace otcert {

namespace {
constexpr double kGaussCoeff = 2.5066282746310002;  // sqrt(2*pi)

double fd_step(double scale) { return 1e-5 * std::max(1.0, std::abs(scale)); }
}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Power: return "power";
    case Family::ScaledPower: return "scaled-power";
    case Family::GaussianExp: return "gaussian-exp";
    case Family::Custom: return "custom-composite";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "power") return Family::Power;
  if (name == "scaled-power") return Family::ScaledPower;
  if (name == "gaussian-exp") return Family::GaussianExp;
  if (name == "custom-composite") return Family::Custom;
  throw ConfigError("unknown potential family: " + name);
}

Potential Potential::power(int dim, double a, double r) {
  return scaled_power(dim, a, r, 1.0);
}

Potential Potential::scaled_power(int dim, double a, double r, double s) {
  if (dim < 1 || dim > 3) throw ConfigError("dimension must be 1, 2, or 3");
  if (!(a > 0.0) || !(s > 0.0))
    throw ConfigError("power family needs positive coefficient and scale");
  Potential p;
  p.dim_ = dim;
  p.family_ = (s == 1.0) ? Family::Power : Family::ScaledPower;
  p.a_ = a;
  p.r_ = r;
  p.s_ = s;
  return p;
}

Potential Potential::gaussian_exp(int dim, double s) {
  if (dim < 1 || dim > 3) throw ConfigError("dimension must be 1, 2, or 3");
  if (!(s > 0.0)) throw ConfigError("gaussian-exp needs positive scale");
  Potential p;
  p.dim_ = dim;
  p.family_ = Family::GaussianExp;
  p.a_ = kGaussCoeff;
  p.r_ = 0.0;
  p.s_ = s;
  return p;
}

Potential Potential::custom(int dim, CustomSpec spec) {
  if (dim < 1 || dim > 3) throw ConfigError("dimension must be 1, 2, or 3");
  if (!spec.value) throw ConfigError("custom potential needs a value callback");
  Potential p;
  p.dim_ = dim;
  p.family_ = Family::Custom;
  p.custom_ = std::make_shared<CustomSpec>(std::move(spec));
  return p;
}

double Potential::exponent() const {
  if (family_ == Family::Custom) {
    if (custom_->exponent) return *custom_->exponent;
    throw ConfigError("custom potential has no declared exponent");
  }
  if (family_ == Family::GaussianExp)
    throw ConfigError("gaussian-exp family has no power exponent");
  return r_;
}

bool Potential::has_exponent() const {
  if (family_ == Family::Custom) return custom_->exponent.has_value();
  return family_ != Family::GaussianExp;
}

double Potential::v_min() const {
  if (family_ == Family::Custom) {
    if (custom_->v_min > 0.0) return custom_->v_min;
    throw ConfigError("custom potential has no declared positive floor");
  }
  return a_ * s_;  // radial minimum at the origin for both families
}

bool Potential::radial() const {
  if (family_ == Family::Custom) return static_cast<bool>(custom_->radial_value);
  return true;
}

double Potential::radial_value(double rho) const {
  switch (family_) {
    case Family::Power:
    case Family::ScaledPower: {
      const double u = rho / s_;
      return a_ * s_ * std::pow(1.0 + u * u, 0.5 * r_);
    }
    case Family::GaussianExp:
      return a_ * s_ * std::exp(rho * rho / (2.0 * dim_ * s_ * s_));
    case Family::Custom:
      if (custom_->radial_value) return custom_->radial_value(rho);
      throw ConfigError("custom potential has no radial profile");
  }
  return 0.0;
}

double Potential::deriv_over_rho(double rho) const {
  switch (family_) {
    case Family::Power:
    case Family::ScaledPower: {
      const double u = rho / s_;
      return (a_ * r_ / s_) * std::pow(1.0 + u * u, 0.5 * r_ - 1.0);
    }
    case Family::GaussianExp:
      return radial_value(rho) / (dim_ * s_ * s_);
    case Family::Custom: break;
  }
  // Finite-difference fallback: V'(rho)/rho via a second difference at 0.
  const double h = fd_step(rho);
  if (rho < h) {
    const double v0 = custom_->radial_value(0.0);
    const double vp = custom_->radial_value(h);
    return 2.0 * (vp - v0) / (h * h);
  }
  return radial_derivative(rho) / rho;
}

double Potential::radial_derivative(double rho) const {
  if (family_ == Family::Custom && !custom_->gradient) {
    const double h = fd_step(rho);
    return (custom_->radial_value(rho + h) - custom_->radial_value(std::max(0.0, rho - h))) /
           (h + std::min(rho, h));
  }
  if (family_ == Family::Custom) {
    Vec x = Vec::Zero(dim_);
    x(0) = rho;
    return custom_->gradient(x)(0);
  }
  return deriv_over_rho(rho) * rho;
}

double Potential::radial_second(double rho) const {
  switch (family_) {
    case Family::Power:
    case Family::ScaledPower: {
      const double u = rho / s_;
      return (a_ * r_ / s_) * std::pow(1.0 + u * u, 0.5 * r_ - 2.0) *
             (1.0 + (r_ - 1.0) * u * u);
    }
    case Family::GaussianExp: {
      const double ds2 = dim_ * s_ * s_;
      return radial_value(rho) * (1.0 / ds2 + rho * rho / (ds2 * ds2));
    }
    case Family::Custom: {
      const double h = 1e-4 * std::max(1.0, rho);
      const double lo = std::max(0.0, rho - h);
      return (custom_->radial_value(rho + h) + custom_->radial_value(lo) -
              2.0 * custom_->radial_value(0.5 * (rho + h + lo))) /
             (0.25 * (rho + h - lo) * (rho + h - lo));
    }
  }
  return 0.0;
}

double Potential::aniso(double rho) const {
  switch (family_) {
    case Family::Power:
    case Family::ScaledPower: {
      const double u = rho / s_;
      return (a_ * r_ * (r_ - 2.0) / (s_ * s_ * s_)) *
             std::pow(1.0 + u * u, 0.5 * r_ - 2.0);
    }
    case Family::GaussianExp: {
      const double ds2 = dim_ * s_ * s_;
      return radial_value(rho) / (ds2 * ds2);
    }
    case Family::Custom: {
      if (rho < 1e-6) return 0.0;
      return (radial_second(rho) - deriv_over_rho(rho)) / (rho * rho);
    }
  }
  return 0.0;
}

double Potential::value(const Vec& x) const {
  if (family_ == Family::Custom) return custom_->value(x);
  return radial_value(x.norm());
}

Vec Potential::gradient(const Vec& x) const {
  if (family_ == Family::Custom) {
    if (custom_->gradient) return custom_->gradient(x);
    Vec g(x.size());
    for (int i = 0; i < x.size(); ++i) {
      Vec xp = x, xm = x;
      const double h = fd_step(x(i));
      xp(i) += h;
      xm(i) -= h;
      g(i) = (custom_->value(xp) - custom_->value(xm)) / (2.0 * h);
    }
    return g;
  }
  return deriv_over_rho(x.norm()) * x;
}

Mat Potential::hessian(const Vec& x) const {
  if (family_ == Family::Custom) {
    if (custom_->hessian) return custom_->hessian(x);
    const int n = static_cast<int>(x.size());
    Mat h(n, n);
    const double step = 1e-4;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Vec xpp = x, xpm = x, xmp = x, xmm = x;
        xpp(i) += step; xpp(j) += step;
        xpm(i) += step; xpm(j) -= step;
        xmp(i) -= step; xmp(j) += step;
        xmm(i) -= step; xmm(j) -= step;
        h(i, j) = h(j, i) = (custom_->value(xpp) - custom_->value(xpm) -
                             custom_->value(xmp) + custom_->value(xmm)) /
                            (4.0 * step * step);
      }
    return h;
  }
  const double rho = x.norm();
  Mat h = deriv_over_rho(rho) * Mat::Identity(dim_, dim_);
  h += aniso(rho) * (x * x.transpose());
  return h;
}

double Potential::density(const Vec& x) const {
  return std::pow(value(x), -dim_);
}

double Potential::radial_density(double rho) const {
  return std::pow(radial_value(rho), -dim_);
}

Potential Potential::scaled_by(double k) const {
  if (!(k > 0.0)) throw ConfigError("potential scaling must be positive");
  Potential p = *this;
  if (family_ == Family::Custom) {
    auto spec = std::make_shared<CustomSpec>(*custom_);
    auto base = custom_;
    spec->value = [base, k](const Vec& x) { return k * base->value(x); };
    if (base->gradient)
      spec->gradient = [base, k](const Vec& x) { return Vec(k * base->gradient(x)); };
    if (base->hessian)
      spec->hessian = [base, k](const Vec& x) { return Mat(k * base->hessian(x)); };
    if (base->radial_value)
      spec->radial_value = [base, k](double rho) { return k * base->radial_value(rho); };
    spec->v_min = k * base->v_min;
    p.custom_ = spec;
    return p;
  }
  p.a_ *= k;
  return p;
}

namespace {

// Integral of rho^{d-1} * dens(rho) over [lo, hi] via the compactified
// variable u = rho/(1+rho); hi may be +infinity (u -> 1).
double radial_mass_integral(const Potential& pot, double lo, double hi,
                            double abs_tol, double rel_tol) {
  const int d = pot.dim();
  auto integrand = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double rho = u / (1.0 - u);
    const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
    const double dens = pot.radial_density(rho);
    if (dens == 0.0 || !std::isfinite(dens)) return 0.0;
    return std::pow(rho, d - 1) * dens * jac;
  };
  const double ulo = lo / (1.0 + lo);
  const double uhi = std::isfinite(hi) ? hi / (1.0 + hi) : 1.0;
  if (rel_tol > 0.0) return integrate_rel(integrand, ulo, uhi, rel_tol).value;
  return integrate(integrand, ulo, uhi, abs_tol).value;
}

void require_integrable(const Potential& pot) {
  if (pot.family() == Family::Power || pot.family() == Family::ScaledPower) {
    if (!(pot.exponent() > 1.0))
      throw ConfigError("non-integrable family: power exponent must exceed 1");
  }
  if (!pot.radial())
    throw ConfigError("mass computation needs a radial profile");
}

}  // namespace

double mass(const Potential& pot, double tol) {
  require_integrable(pot);
  return sphere_area(pot.dim()) *
         radial_mass_integral(pot, 0.0, INFINITY, tol, 0.0);
}

double ball_mass(const Potential& pot, double R, double tol) {
  if (!(R > 0.0)) return 0.0;
  if (!pot.radial()) throw ConfigError("ball mass needs a radial profile");
  return sphere_area(pot.dim()) * radial_mass_integral(pot, 0.0, R, tol, 0.0);
}

double tail_mass(const Potential& pot, double R, double rel_tol) {
  require_integrable(pot);
  return sphere_area(pot.dim()) *
         radial_mass_integral(pot, std::max(0.0, R), INFINITY, 0.0, rel_tol);
}

double box_mass(const Potential& pot, double L, double tol) {
  const int d = pot.dim();
  if (!(L > 0.0)) throw ConfigError("box half-width must be positive");
  if (d == 1) return ball_mass(pot, L, tol);
  if (d != 2) throw ConfigError("box mass implemented for d <= 2");
  // Split the square into the inscribed disc plus 8 congruent corner
  // wedges: for each polar angle th in [0, pi/4] the ray exits at L/cos th.
  const double disc = ball_mass(pot, L, 0.5 * tol);
  auto wedge = [&](double th) {
    const double hi = L / std::cos(th);
    return radial_mass_integral(pot, L, hi, 0.0, 1e-10);
  };
  const double corners = 8.0 * integrate(wedge, 0.0, M_PI / 4.0, 0.5 * tol).value;
  return disc + corners;
}

DensityPair normalize(DensityPair pair, double tol) {
  auto factor = [&](const Potential& p) {
    return std::pow(mass(p, tol), 1.0 / p.dim());
  };
  pair.source = pair.source.scaled_by(factor(pair.source));
  pair.target = pair.target.scaled_by(factor(pair.target));
  pair.normalized = true;
  return pair;
}

Truncation truncate(const Potential& target, double R, double tol) {
  if (!(R >= 1.0)) throw ConfigError("truncation radius must be >= 1");
  Truncation t;
  t.radius = R;
  t.c_r = std::pow(ball_mass(target, R, tol), 1.0 / target.dim());
  return t;
}

}  // namespace otcert
