#pragma once

#include <functional>

#include "otcert/common.hpp"

namespace otcert {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // estimated absolute error
  int panels = 0;
};

// Adaptive Gauss-Kronrod 7/15 on a finite interval, absolute-error target.
// Throws QuadratureError if the target is not met within the panel budget.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, int max_panels = 4000);

// Relative-error target: a coarse pass sizes the integral, a second pass
// tightens to rel_tol * |I|.  Used for tail masses where the value spans
// many orders of magnitude and an absolute target would be meaningless.
QuadResult integrate_rel(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-12, int max_panels = 4000);

}  // namespace otcert
