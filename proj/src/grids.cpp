#include "otcert/grids.hpp"

#include <cmath>

namespace otcert {

std::vector<double> log_radii(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw ConfigError("log_radii requires 0 < lo < hi and n >= 2");
  std::vector<double> r(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    r[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  r.front() = lo;
  r.back() = hi;
  return r;
}

std::vector<double> linear_radii(double lo, double hi, int n) {
  if (!(hi > lo) || n < 2)
    throw ConfigError("linear_radii requires lo < hi and n >= 2");
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = lo + (hi - lo) * i / (n - 1);
  return r;
}

std::vector<Vec> unit_directions(int dim, int count) {
  std::vector<Vec> dirs;
  if (dim == 1) {
    dirs.push_back(Vec::Constant(1, 1.0));
    dirs.push_back(Vec::Constant(1, -1.0));
    return dirs;
  }
  if (count < 2) count = 2;
  dirs.reserve(count);
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * M_PI * i / count;
      Vec e(2);
      e << std::cos(th), std::sin(th);
      dirs.push_back(e);
    }
    return dirs;
  }
  if (dim == 3) {
    // Fibonacci sphere: z equispaced, azimuth stepped by the golden angle.
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = ga * i;
      Vec e(3);
      e << rho * std::cos(th), rho * std::sin(th), z;
      dirs.push_back(e);
    }
    return dirs;
  }
  throw ConfigError("unit_directions supports dimensions 1..3");
}

}  // namespace otcert
