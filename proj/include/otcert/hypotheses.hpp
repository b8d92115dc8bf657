#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otcert/grids.hpp"
#include "otcert/potentials.hpp"

namespace otcert {

// Default multiplicative slack applied to grid-certified constants: suprema
// are inflated, infima deflated.  Closed-form certifications carry slack 1.
constexpr double kGridSlack = 1.05;

// Constants of the tail growth hypothesis on the target:
//   nabla W(y).y / W(y) >= 1 + delta0   and   W(y) >= C0 |y|^p
// for all |y| >= R0.
struct GrowthConstants {
  double p = 0.0;
  double R0 = 0.0;
  double delta0 = 0.0;
  double C0 = 0.0;
  bool closed_form = false;   // certified from the family tail
  double slack = 1.0;         // declared sampling slack (1 when closed-form)

  // Slack-deflated values actually fed into bound formulas.
  double used_delta0() const { return (1.0 + delta0) / slack - 1.0; }
  double used_C0() const { return C0 / slack; }
};

// Constants A, B of the gradient-ratio system:
//   (1+|grad V|^2)/V^2 <= A^2/<x>^2,   W^2/(1+|grad W|^2) <= B^2 <y>^2.
struct RatioConstants {
  double A = 0.0;
  double B = 0.0;
  bool closed_form = false;
  double slack = 1.0;

  double used_A() const { return A * slack; }
  double used_B() const { return B * slack; }
};

// Constants of the curvature system:
//   D2W >= lambda (1+|grad W|^2)/W Id,  D2V <= Lambda (1+|grad V|^2)/V Id.
struct CurvatureConstants {
  double lambda = 0.0;
  double Lambda = 0.0;
  bool closed_form = false;
  double slack = 1.0;

  double used_lambda() const { return lambda / slack; }
  double used_Lambda() const { return Lambda * slack; }
};

// Constants of the incremental-ratio (finite-difference) system, certified
// on samples (z, e, alpha) with |z| >= R0, alpha in (0, alpha0):
//   (1+|z|) |V(z+ae)-V(z)| / (a V(z+ae))                 <= A0
//   |W(z+ae)-W(z)| W(z) / (a (1+|grad W|^2) (1+|z|))     <= B0
//   (-1/V)^a(z,e) V^3 / (a^2 (1+|grad V|^2))             <= Lambda0
//   W^a(z,e) W / (a^2 (1+|grad W|^2))                    >= lambda0
// where h^a(z,e) = h(z+ae) + h(z-ae) - 2h(z).
struct AsymptoticConstants {
  double A0 = 0.0;
  double B0 = 0.0;
  double lambda0 = 0.0;
  double Lambda0 = 0.0;
  double R0 = 0.0;
  double alpha0 = 0.0;
  double slack = 1.0;
};

struct SampleSpec {
  double r_min = 1.0;       // asymptotic region starts here
  double horizon = 1e3;
  int radii = 64;
  int directions = 16;
  double alpha0 = 0.1;
  int alpha_count = 3;      // alphas alpha0 / 2^k, k = 0..count-1
};

// Target tail growth (feeds the linear-growth constant chain).  Power
// families take a closed-form path: the growth ratio is monotone and its
// limit is the exponent, so the certified constants are exact.  Other
// families are certified on the grid with slack and the declared-tail rule.
GrowthConstants certify_growth(const Potential& W, double p,
                               const GridSpec& grid = {},
                               double slack = kGridSlack);

// sup |grad(V^{1/p})| = sup |grad V| V^{1/p-1} / p.  Returns nullopt when
// the supremum diverges (family exponent above p, or growing grid trend).
struct LipRoot {
  double value = 0.0;
  bool closed_form = false;
  double slack = 1.0;

  double used() const { return value * slack; }
};

std::optional<LipRoot> lip_root(const Potential& V, double p,
                                const GridSpec& grid = {},
                                double slack = kGridSlack);

RatioConstants certify_ratios(const Potential& V, const Potential& W,
                              const GridSpec& grid = {},
                              double slack = kGridSlack);

CurvatureConstants certify_curvature(const Potential& V, const Potential& W,
                                     const GridSpec& grid = {},
                                     double slack = kGridSlack);

AsymptoticConstants certify_asymptotic(const Potential& V, const Potential& W,
                                       const SampleSpec& sample = {},
                                       double slack = kGridSlack);

// d(q-1)(p-1) > q-p, the admissibility condition of the sublinear theorem.
bool check_pq_condition(int d, double p, double q);

// Smallest A with |grad V|/V <= A/(1+|x|) everywhere (Gaussian-target
// source condition).
double certify_gauss_source(const Potential& V, const GridSpec& grid = {},
                            double slack = kGridSlack);

// Smallest A with |grad V| <= A (1+|x|)^{q-1} everywhere (second source
// condition of the sublinear theorem).
double certify_derivative_growth(const Potential& V, double q,
                                 const GridSpec& grid = {},
                                 double slack = kGridSlack);

// Sublinear-theorem target conditions: liminf W/|y|^p > 0 and
// liminf (grad W.y)/W >= p.  Closed-form tails required (power family or
// declared exponent); returns the certified positive liminf of W/|y|^p.
double certify_p_growth(const Potential& W, double p,
                        const GridSpec& grid = {},
                        double slack = kGridSlack);

}  // namespace otcert
