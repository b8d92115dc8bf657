#pragma once

#include <cmath>
#include <functional>

#include "otcert/common.hpp"

namespace otcert {

struct RootOptions {
  double xtol = 1e-13;       // relative step tolerance for termination
  double bisect_to = 1e-3;   // bracket width (relative) handed to Newton
  int max_iter = 200;
};

// Solve f(x) = 0 for increasing f on [lo, hi] with f(lo) <= 0 <= f(hi):
// bisection narrows the bracket, then safeguarded Newton finishes.  `df`
// may be empty, in which case bisection runs to full tolerance.
inline double solve_increasing(const std::function<double(double)>& f,
                               const std::function<double(double)>& df,
                               double lo, double hi,
                               const RootOptions& opt = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0)
    throw SolverError("root bracket does not straddle zero");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  const double coarse = df ? opt.bisect_to : opt.xtol;
  int it = 0;
  while (hi - lo > coarse * std::max(1.0, std::abs(lo) + std::abs(hi)) &&
         it++ < opt.max_iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    (fm < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  if (!df) return x;
  for (it = 0; it < opt.max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    (fx < 0.0 ? lo : hi) = x;
    const double d = df(x);
    double next = (d > 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= opt.xtol * std::max(1.0, std::abs(x))) return x;
  }
  return x;
}

}  // namespace otcert
