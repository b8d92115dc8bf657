#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace otcert {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error taxonomy.  The CLI maps each type to a distinct exit code.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// A concrete point at which a required inequality fails, kept so reports can
// show the offending location rather than a bare "no".
struct Witness {
  std::string quantity;
  double radius = 0.0;
  Vec point;
  double value = 0.0;
  std::string detail;
};

struct HypothesisViolation : std::runtime_error {
  Witness witness;
  HypothesisViolation(const std::string& msg, Witness w)
      : std::runtime_error(msg), witness(std::move(w)) {}
};

// <x> = sqrt(1 + |x|^2), the smoothed radius used throughout.
inline double bracket(double rho) { return std::sqrt(1.0 + rho * rho); }

// Surface area of the unit sphere S^{d-1} in R^d.
inline double sphere_area(int d) {
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace otcert
