#include "otcert/transport_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "otcert/common.hpp"
#include "otcert/quadrature.hpp"
#include "otcert/rootfind.hpp"

namespace otcert {

namespace {

// Radial mass bookkeeping for one density, compactified through
// u = rho / (1 + rho) so tails and half-lines become proper integrals.
class MassCalc {
 public:
  MassCalc(const Potential& pot, double trunc, double rel)
      : pot_(&pot),
        omega_(sphere_area(pot.dim())),
        trunc_(trunc),
        rel_(rel) {
    u_hi_ = std::isfinite(trunc) ? trunc / (1.0 + trunc) : 1.0;
    total_ = segment(0.0, u_hi_);
    if (!(total_ > 0.0)) throw SolverError("density has no mass on the support");
  }

  double total() const { return total_; }

  double ball(double r) const {
    if (r <= 0.0) return 0.0;
    double u = std::min(r / (1.0 + r), u_hi_);
    return segment(0.0, u);
  }

  double tail(double r) const {
    double u = r / (1.0 + r);
    if (u >= u_hi_) return 0.0;
    return segment(u, u_hi_);
  }

  double density(double r) const { return pot_->radial_density(r); }
  double surface(double r) const {
    return omega_ * std::pow(r, pot_->dim() - 1) * density(r);
  }

 private:
  double segment(double ulo, double uhi) const {
    if (uhi <= ulo) return 0.0;
    auto h = [this](double u) {
      if (u >= 1.0) return 0.0;
      double rho = u / (1.0 - u);
      double v = density(rho) * std::pow(rho, pot_->dim() - 1);
      if (!std::isfinite(v)) return 0.0;
      return v / ((1.0 - u) * (1.0 - u));
    };
    return omega_ * integrate_rel(h, ulo, uhi, rel_).value;
  }

  const Potential* pot_;
  double omega_, trunc_, rel_, u_hi_, total_;
};

// Solve ball_g(t) = target (ball regime) or tail_g(t) = target (tail
// regime) for t in [lo_hint, cap].  Both sides are strictly monotone with
// derivative +-surface(t).
double match_quantile(const MassCalc& g, double target, bool tail_regime,
                      double lo_hint, double cap, double root_tol) {
  auto F = [&](double t) {
    return tail_regime ? target - g.tail(t) : g.ball(t) - target;
  };
  auto dF = [&](double t) { return g.surface(t); };

  double lo = std::max(lo_hint, 0.0);
  while (lo > 0.0 && F(lo) > 0.0) lo *= 0.5;
  if (F(lo) > 0.0) lo = 0.0;

  double hi = std::max({2.0 * lo, 1.0});
  hi = std::min(hi, cap);
  while (F(hi) < 0.0) {
    if (hi >= cap) break;
    hi = std::min(2.0 * hi, cap);
  }
  if (F(hi) < 0.0) {
    // Allowed only when the truncation radius itself is the quantile.
    if (std::isfinite(cap) && std::abs(F(cap)) <= 1e-9 * std::max(target, 1.0))
      return cap;
    throw SolverError("target quantile bracket failed");
  }

  RootOptions opt;
  opt.xtol = root_tol * std::max(1.0, hi);
  opt.bisect_to = 1e-3 * std::max(1.0, hi);
  return solve_increasing(F, dF, lo, hi, opt);
}

// Fraction above which quantiles are matched through tail masses instead of
// ball masses (no cancellation against the total on heavy tails).
constexpr double kTailRegime = 0.6;

struct QuantileSolver {
  MassCalc f, g;
  double ratio;  // M_g / M_f on the truncated supports
  double cap;
  double root_tol;

  QuantileSolver(const DensityPair& pair, const OracleOptions& opt)
      : f(pair.source, opt.trunc_source, opt.quad_rel),
        g(pair.target, opt.trunc_target, opt.quad_rel),
        ratio(g.total() / f.total()),
        cap(std::isfinite(opt.trunc_target) ? opt.trunc_target : 1e15),
        root_tol(opt.root_tol) {}

  double map(double rho, double warm) const {
    if (rho <= 0.0) return 0.0;
    double bf = f.ball(rho);
    double frac = bf / f.total();
    if (frac <= kTailRegime)
      return match_quantile(g, bf * ratio, false, warm, cap, root_tol);
    return match_quantile(g, f.tail(rho) * ratio, true, warm, cap, root_tol);
  }
};

int find_interval(const std::vector<double>& r, double rho) {
  auto it = std::upper_bound(r.begin(), r.end(), rho);
  int k = static_cast<int>(it - r.begin()) - 1;
  return std::clamp(k, 0, static_cast<int>(r.size()) - 2);
}

}  // namespace

double cdf_map_1d(const DensityPair& pair, double x, const OracleOptions& opt) {
  if (pair.dim() != 1) throw ConfigError("cdf_map_1d needs a 1-D pair");
  QuantileSolver q(pair, opt);
  double t = q.map(std::abs(x), std::abs(x));
  return x < 0.0 ? -t : t;
}

RadialProfile radial_map(const DensityPair& pair,
                         const std::vector<double>& radii,
                         const OracleOptions& opt) {
  if (radii.empty()) throw ConfigError("radial_map needs at least one node");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && radii[i] <= radii[i - 1]))
      throw ConfigError("radial_map nodes must be positive and increasing");
  }
  if (radii.back() > opt.trunc_source * (1.0 + 1e-12))
    throw ConfigError("radial_map nodes exceed the source truncation");

  QuantileSolver q(pair, opt);
  const int d = pair.dim();
  const std::size_t n = radii.size();

  RadialProfile prof;
  prof.dim = d;
  prof.mass_ratio = q.ratio;
  prof.trunc_source = opt.trunc_source;
  prof.trunc_target = opt.trunc_target;
  prof.r.assign(1, 0.0);
  prof.t.assign(1, 0.0);
  prof.dt.assign(1, 0.0);
  prof.r.insert(prof.r.end(), radii.begin(), radii.end());
  prof.t.resize(n + 1);
  prof.dt.resize(n + 1);

  double warm = radii.front();
  for (std::size_t i = 0; i < n; ++i) {
    double r = radii[i];
    double t = q.map(r, warm);
    warm = t;
    prof.t[i + 1] = t;
    double num = q.ratio * std::pow(r, d - 1) * q.f.density(r);
    double den = std::pow(t, d - 1) * q.g.density(t);
    if (!(den > 0.0)) throw SolverError("target density vanished on the profile");
    prof.dt[i + 1] = num / den;
  }

  // One-sided parabola through the first three nodes for t'(0+).
  {
    double r1 = prof.r[1], r2 = prof.r[2];
    double t1 = prof.t[1], t2 = prof.t[2];
    prof.dt[0] = (t1 * r2 * r2 - t2 * r1 * r1) / (r1 * r2 * (r2 - r1));
    if (!(prof.dt[0] > 0.0)) prof.dt[0] = t1 / r1;
  }

  // Fritsch-Carlson pass; exact ODE slopes on a fine grid rarely trigger it,
  // but it guarantees a monotone interpolant regardless.
  for (std::size_t i = 0; i + 1 < prof.r.size(); ++i) {
    double delta = (prof.t[i + 1] - prof.t[i]) / (prof.r[i + 1] - prof.r[i]);
    if (!(delta > 0.0)) continue;
    double a = prof.dt[i] / delta, b = prof.dt[i + 1] / delta;
    if (a < 0.0) prof.dt[i] = 0.0;
    if (b < 0.0) prof.dt[i + 1] = 0.0;
    double s = a * a + b * b;
    if (s > 9.0) {
      double tau = 3.0 / std::sqrt(s);
      prof.dt[i] = tau * a * delta;
      prof.dt[i + 1] = tau * b * delta;
    }
  }
  return prof;
}

double RadialProfile::operator()(double rho) const {
  rho = std::abs(rho);
  if (rho >= r.back())
    return t.back() + dt.back() * (rho - r.back());
  int k = find_interval(r, rho);
  double h = r[k + 1] - r[k];
  double s = (rho - r[k]) / h;
  double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * t[k] + h * (s3 - 2 * s2 + s) * dt[k] +
         (-2 * s3 + 3 * s2) * t[k + 1] + h * (s3 - s2) * dt[k + 1];
}

double RadialProfile::derivative(double rho) const {
  rho = std::abs(rho);
  if (rho >= r.back()) return dt.back();
  int k = find_interval(r, rho);
  double h = r[k + 1] - r[k];
  double s = (rho - r[k]) / h;
  return (6 * s * s - 6 * s) * (t[k] - t[k + 1]) / h +
         (3 * s * s - 4 * s + 1) * dt[k] + (3 * s * s - 2 * s) * dt[k + 1];
}

double RadialProfile::tangential(double rho) const {
  rho = std::abs(rho);
  if (rho < 1e-300) return dt[0];
  return (*this)(rho) / rho;
}

std::pair<double, double> radial_DT_eigs(const RadialProfile& prof, double r) {
  return {prof.derivative(r), prof.tangential(r)};
}

double ma_residual(const DensityPair& pair, const RadialProfile& prof,
                   double r) {
  if (!(r > 0.0)) throw ConfigError("ma_residual needs r > 0");
  double t = prof(r);
  double dt = prof.derivative(r);
  double f = pair.source.radial_density(r);
  double g = pair.target.radial_density(t);
  if (!(f > 0.0)) throw SolverError("source density vanished at the sample");
  double lhs = dt * std::pow(t / r, pair.dim() - 1) * g;
  return std::abs(lhs / (f * prof.mass_ratio) - 1.0);
}

}  // namespace otcert
