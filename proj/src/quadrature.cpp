#include "otcert/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace otcert {
namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (symmetric half listed).
constexpr int kNodes = 8;
constexpr double kXgk[kNodes] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[kNodes] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss-7 weights attach to kXgk indices 1, 3, 5, 7.
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Panel {
  double a, b;
  double value;   // Kronrod estimate
  double error;   // |Kronrod - Gauss|
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fk = 0.0, fg = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double dx = h * kXgk[i];
    const double v = (i == kNodes - 1) ? f(c) : f(c - dx) + f(c + dx);
    fk += kWgk[i] * v;
    if (i % 2 == 1) fg += kWg[i / 2] * v;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = fk * h;
  p.error = std::abs((fk - fg) * h);
  return p;
}

QuadResult adapt(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_panels) {
  if (!(b > a)) return {0.0, 0.0, 0};
  std::priority_queue<Panel> queue;
  queue.push(eval_panel(f, a, b));
  double total = queue.top().value;
  double err = queue.top().error;
  int panels = 1;
  while (err > abs_tol && panels < max_panels) {
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at floating-point resolution; keep its estimate as-is.
      worst.error = 0.0;
      queue.push(worst);
      bool all_flat = true;
      std::priority_queue<Panel> copy = queue;
      while (!copy.empty()) {
        if (copy.top().error > 0.0) { all_flat = false; break; }
        copy.pop();
      }
      if (all_flat) break;
      continue;
    }
    Panel left = eval_panel(f, worst.a, mid);
    Panel right = eval_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  // Re-sum from panels for a stable total (the incremental update drifts).
  double sum = 0.0, esum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    esum += queue.top().error;
    queue.pop();
  }
  if (esum > abs_tol)
    throw QuadratureError("quadrature did not converge: estimated error " +
                          std::to_string(esum) + " > target " +
                          std::to_string(abs_tol));
  return {sum, esum, panels};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_panels) {
  return adapt(f, a, b, abs_tol, max_panels);
}

QuadResult integrate_rel(const std::function<double(double)>& f, double a, double b,
                         double rel_tol, int max_panels) {
  // Coarse absolute pass to size the integral.
  QuadResult coarse = adapt(f, a, b, 1e-6, max_panels);
  const double scale = std::abs(coarse.value);
  if (scale == 0.0) return coarse;
  const double target = std::max(rel_tol * scale, 1e-300);
  if (coarse.error <= target) return coarse;
  return adapt(f, a, b, target, max_panels);
}

}  // namespace otcert
