#include "otcert/transport_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace otcert {

namespace {

constexpr double kLogZero = -1e30;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Row-wise log-sum-exp of M, max-stabilized.
Vec lse_rows(const Mat& M) {
  Vec m = M.rowwise().maxCoeff();
  return (m.array() +
          ((M.colwise() - m).array().exp().rowwise().sum()).log())
      .matrix();
}

// C(i,k) = LSE_j (A(i,j) + B(j,k)); the log-domain matrix product that
// makes the 2-D updates separable (one pass per axis instead of an
// n^2 x n^2 kernel).
Mat logmm(const Mat& A, const Mat& B) {
  Mat C(A.rows(), B.cols());
  Mat M(B.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    M = B;
    M.colwise() += A.row(i).transpose();
    Eigen::RowVectorXd mx = M.colwise().maxCoeff();
    C.row(i) =
        (mx.array() +
         ((M.rowwise() - mx).array().exp().colwise().sum()).log())
            .matrix();
  }
  return C;
}

Vec log_weights(const Vec& w) {
  Vec lw(w.size());
  for (int i = 0; i < w.size(); ++i)
    lw[i] = w[i] > 0.0 ? std::log(w[i]) : kLogZero;
  return lw;
}

Mat axis_kernel(const std::vector<double>& xs, const std::vector<double>& ys,
                double eps) {
  Mat K(xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      double d = xs[i] - ys[j];
      K(i, j) = -0.5 * d * d / eps;
    }
  return K;
}

Mat reshape(const Vec& v, int n) {
  return Eigen::Map<const Mat>(v.data(), n, n).transpose();  // row-major view
}

Vec flatten(const Mat& M) {
  Mat t = M.transpose();
  return Eigen::Map<const Vec>(t.data(), t.size());
}

}  // namespace

Vec GridMeasure::point(int flat) const {
  Vec x(dim);
  if (dim == 1) {
    x[0] = axis[flat];
  } else {
    x[0] = axis[flat / n];
    x[1] = axis[flat % n];
  }
  return x;
}

std::pair<GridMeasure, GridMeasure> discretize(const DensityPair& pair,
                                               double L, int n) {
  if (pair.dim() != 1 && pair.dim() != 2)
    throw ConfigError("grid solver supports d = 1 and d = 2 only");
  if (!(L > 0.0) || n < 8) throw ConfigError("discretize needs L > 0, n >= 8");

  auto build = [&](const Potential& pot) {
    GridMeasure gm;
    gm.dim = pair.dim();
    gm.L = L;
    gm.n = n;
    double h = 2.0 * L / n;
    gm.axis.resize(n);
    for (int i = 0; i < n; ++i) gm.axis[i] = -L + (i + 0.5) * h;

    if (gm.dim == 1) {
      gm.weights = Vec(n);
      for (int i = 0; i < n; ++i)
        gm.weights[i] = pot.radial_density(std::abs(gm.axis[i]));
    } else {
      gm.weights = Vec(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double rho = std::hypot(gm.axis[i], gm.axis[j]);
          gm.weights[i * n + j] =
              rho <= L ? pot.radial_density(rho) : 0.0;
        }
    }
    double total = gm.weights.sum();
    if (!(total > 0.0)) throw SolverError("no density mass on the grid");
    gm.weights /= total;

    gm.tail = 1.0 - ball_mass(pot, L) / mass(pot);
    if (gm.tail > 0.10)
      throw SolverError("tail too heavy: " + std::to_string(gm.tail) +
                        " of the mass lies outside the grid support");
    return gm;
  };
  return {build(pair.source), build(pair.target)};
}

std::vector<double> default_schedule(const GridMeasure& source,
                                     double eps_final, int steps_per_decade) {
  double diam = 2.0 * source.L * std::sqrt(double(source.dim));
  double e0 = diam * diam / 8.0;
  double ef = eps_final > 0.0
                  ? eps_final
                  : std::pow(2.0 * source.L / source.n, 2);
  if (!(ef > 0.0) || ef > e0) throw ConfigError("bad epsilon schedule bounds");
  int k = std::max(1, (int)std::ceil(steps_per_decade * std::log10(e0 / ef)));
  std::vector<double> sched(k + 1);
  for (int i = 0; i <= k; ++i)
    sched[i] = e0 * std::pow(ef / e0, double(i) / k);
  return sched;
}

EntropicPlan solve_entropic(const GridMeasure& source,
                            const GridMeasure& target,
                            const std::vector<double>& schedule, double tol,
                            int max_iter) {
  if (source.dim != target.dim)
    throw ConfigError("source/target grid dimension mismatch");
  if (source.dim == 2 && (source.n != target.n || source.L != target.L))
    throw ConfigError("2-D solves need source and target on the same grid");
  std::vector<double> sched =
      schedule.empty() ? default_schedule(source) : schedule;
  for (std::size_t i = 0; i < sched.size(); ++i)
    if (!(sched[i] > 0.0) || (i > 0 && sched[i] > sched[i - 1]))
      throw ConfigError("epsilon schedule must be positive and decreasing");

  const int d = source.dim;
  const Vec la = log_weights(source.weights);
  const Vec lb = log_weights(target.weights);
  const double diam2 =
      std::pow(source.L + target.L, 2) * double(d);
  EntropicPlan plan;
  plan.source = source;
  plan.target = target;
  plan.f = Vec::Zero(source.size());
  plan.g = Vec::Zero(target.size());

  const int n = source.n;
  int iters = 0;

  for (std::size_t lev = 0; lev < sched.size(); ++lev) {
    double eps = sched[lev];
    if (diam2 / eps > 1e12)
      throw SolverError("epsilon underflow: kernel entries vanish at eps = " +
                        std::to_string(eps));
    // Warm-up levels only need to hand a decent start to the next level;
    // iterating every level to the final tolerance costs minutes for
    // nothing.  Only the last level's defect is reported and asserted.
    const bool last = (lev + 1 == sched.size());
    const double level_tol = last ? tol : std::max(tol, 1e-4);
    double err = std::numeric_limits<double>::infinity();

    if (d == 1) {
      Mat K = axis_kernel(source.axis, target.axis, eps);
      Mat Kt = K.transpose();
      for (;;) {
        Vec S = plan.g / eps + lb;
        Vec T = lse_rows(K.rowwise() + S.transpose());
        plan.f = -eps * T;
        Vec Sf = plan.f / eps + la;
        plan.g = -eps * lse_rows(Kt.rowwise() + Sf.transpose());
        ++iters;
        bool check = (iters % 5 == 0);
        if (check) {
          Vec S2 = plan.g / eps + lb;
          Vec T2 = lse_rows(K.rowwise() + S2.transpose());
          err = ((la + plan.f / eps + T2).array().exp() -
                 source.weights.array())
                    .abs()
                    .maxCoeff();
          if (err <= level_tol) break;
        }
        if (iters >= max_iter)
          throw SolverError(
              "entropic solver did not converge: iterations=" +
              std::to_string(iters) + " eps=" + std::to_string(eps) +
              " defect=" + std::to_string(err));
      }
    } else {
      Mat K = axis_kernel(source.axis, source.axis, eps);
      auto half_update = [&](const Vec& dual, const Vec& lw) {
        // T(i1,i2) = LSE_{j1,j2} K(i1,j1) + K(i2,j2) + S(j1,j2)
        Mat S = reshape(dual / eps + lw, n);
        Mat U = logmm(K, S.transpose());  // U(i2,j1)
        Mat T = logmm(K, U.transpose());  // T(i1,i2)
        return flatten(T);
      };
      for (;;) {
        plan.f = -eps * half_update(plan.g, lb);
        plan.g = -eps * half_update(plan.f, la);
        ++iters;
        bool check = (iters % 5 == 0);
        if (check) {
          Vec T2 = half_update(plan.g, lb);
          err = ((la + plan.f / eps + T2).array().exp() -
                 source.weights.array())
                    .abs()
                    .maxCoeff();
          if (err <= level_tol) break;
        }
        if (iters >= max_iter)
          throw SolverError(
              "entropic solver did not converge: iterations=" +
              std::to_string(iters) + " eps=" + std::to_string(eps) +
              " defect=" + std::to_string(err));
      }
    }
    plan.trace.emplace_back(eps, err);
    plan.epsilon = eps;
    plan.marginal_error = err;
  }
  plan.iterations = iters;
  return plan;
}

MapSample extract_map(const EntropicPlan& plan) {
  const GridMeasure& src = plan.source;
  const GridMeasure& tgt = plan.target;
  const int d = src.dim, n = src.n;
  const double eps = plan.epsilon;
  const Vec lb = log_weights(tgt.weights);

  MapSample out;
  out.dim = d;

  // T on every supported node, in flat-index order.
  std::vector<Vec> T(src.size());
  std::vector<bool> have(src.size(), false);

  if (d == 1) {
    Mat K = axis_kernel(src.axis, tgt.axis, eps);
    Vec S = plan.g / eps + lb;
    for (int i = 0; i < n; ++i) {
      if (!(src.weights[i] > 0.0)) continue;
      Vec row = K.row(i).transpose() + S;
      double m = row.maxCoeff();
      Vec w = (row.array() - m).exp().matrix();
      double z = w.sum();
      Vec v(1);
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += w[j] * tgt.axis[j];
      v[0] = acc / z;
      T[i] = v;
      have[i] = true;
    }
  } else {
    Mat K = axis_kernel(src.axis, tgt.axis, eps);
    Mat S = reshape(plan.g / eps + lb, n);
    Vec ax = Eigen::Map<const Vec>(tgt.axis.data(), n);
    Mat M(n, n);
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        int flat = i1 * n + i2;
        if (!(src.weights[flat] > 0.0)) continue;
        M = S;
        M.colwise() += K.row(i1).transpose();
        M.rowwise() += K.row(i2);
        double m = M.maxCoeff();
        Mat W = (M.array() - m).exp().matrix();
        double z = W.sum();
        Vec v(2);
        v[0] = W.rowwise().sum().dot(ax) / z;
        v[1] = W.colwise().sum().dot(ax) / z;
        T[flat] = v;
        have[flat] = true;
      }
  }

  // Centered-difference DT estimates; the 3-cell boundary band and nodes
  // with missing neighbors report NaN.
  const double h = 2.0 * src.L / n;
  auto eig_at = [&](int flat) -> std::pair<double, double> {
    if (d == 1) {
      int i = flat;
      if (i < 3 || i >= n - 3 || !have[i - 1] || !have[i + 1])
        return {kNaN, kNaN};
      double s = (T[i + 1][0] - T[i - 1][0]) / (2.0 * h);
      return {s, s};
    }
    int i1 = flat / n, i2 = flat % n;
    if (i1 < 3 || i1 >= n - 3 || i2 < 3 || i2 >= n - 3)
      return {kNaN, kNaN};
    int xp = flat + n, xm = flat - n, yp = flat + 1, ym = flat - 1;
    if (!have[xp] || !have[xm] || !have[yp] || !have[ym])
      return {kNaN, kNaN};
    double j11 = (T[xp][0] - T[xm][0]) / (2.0 * h);
    double j21 = (T[xp][1] - T[xm][1]) / (2.0 * h);
    double j12 = (T[yp][0] - T[ym][0]) / (2.0 * h);
    double j22 = (T[yp][1] - T[ym][1]) / (2.0 * h);
    double off = 0.5 * (j12 + j21);
    double tr = j11 + j22;
    double disc = std::sqrt(std::pow(0.5 * (j11 - j22), 2) + off * off);
    return {0.5 * tr - disc, 0.5 * tr + disc};
  };

  for (int flat = 0; flat < src.size(); ++flat) {
    if (!have[flat]) continue;
    out.points.push_back(src.point(flat));
    out.values.push_back(T[flat]);
    out.dt_eigs.push_back(eig_at(flat));
  }
  return out;
}

double compare_to_oracle(const MapSample& sample,
                         const std::function<Vec(const Vec&)>& oracle,
                         double region) {
  double sup = -1.0;
  for (std::size_t k = 0; k < sample.points.size(); ++k) {
    if (sample.points[k].norm() > region) continue;
    double e = (sample.values[k] - oracle(sample.points[k])).norm();
    sup = std::max(sup, e);
  }
  if (sup < 0.0) throw ConfigError("no sample points inside the region");
  return sup;
}

}  // namespace otcert
