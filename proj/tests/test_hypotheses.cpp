#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "otcert/hypotheses.hpp"

using namespace otcert;

namespace {

const double kPi = 3.14159265358979323846;
const double kSqrtPi = std::sqrt(kPi);

// wrap a power family as a callback potential so certification takes the
// grid path instead of the closed-form one
Potential gridified(const Potential& p, double exponent) {
  CustomSpec spec;
  Potential copy = p;
  spec.value = [copy](const Vec& x) { return copy.value(x); };
  spec.gradient = [copy](const Vec& x) { return copy.gradient(x); };
  spec.hessian = [copy](const Vec& x) { return copy.hessian(x); };
  spec.radial_value = [copy](double rho) { return copy.radial_value(rho); };
  spec.exponent = exponent;
  spec.v_min = copy.v_min();
  return Potential::custom(p.dim(), spec);
}

}  // namespace

TEST_CASE("growth constants of the quadratic family") {
  Potential W = Potential::power(1, 1.0, 2.0);

  GridSpec from3;
  from3.r_min = 3.0;
  GrowthConstants g3 = certify_growth(W, 2.0, from3);
  CHECK(g3.R0 == doctest::Approx(3.0));
  // grad W . y / W = 2 rho^2/(1+rho^2) = 18/10 at rho = 3
  CHECK(g3.delta0 == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(g3.C0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g3.closed_form);
  CHECK(g3.slack == 1.0);

  GrowthConstants gd = certify_growth(W, 2.0);
  CHECK(gd.R0 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(gd.delta0 == doctest::Approx(0.5).epsilon(1e-12));

  // exponent 1: ratio limit is 1, no positive delta0 exists
  CHECK_THROWS_AS(certify_growth(Potential::power(1, 1.0, 1.0), 1.5),
                  HypothesisViolation);
  // p above the family exponent: W/|y|^p -> 0
  CHECK_THROWS_AS(certify_growth(W, 3.0), HypothesisViolation);
}

TEST_CASE("growth certification below the family exponent") {
  Potential W = Potential::power(1, 2.0, 3.0);
  GrowthConstants g = certify_growth(W, 2.0);
  CHECK(g.C0 > 0.0);
  CHECK(g.delta0 > 0.0);
  // W >= C0 |y|^2 must hold on a refined grid with the slack-deflated C0
  for (double rho : log_radii(g.R0, 1e4, 257)) {
    CHECK(W.radial_value(rho) >= g.used_C0() * std::pow(rho, 2.0));
    CHECK(W.radial_derivative(rho) * rho / W.radial_value(rho) >=
          1.0 + g.used_delta0());
  }
}

TEST_CASE("growth certification on the grid path and scaled families") {
  // gaussian-exp grows faster than any power: certifiable at p = 2
  GrowthConstants g = certify_growth(Potential::gaussian_exp(1), 2.0);
  CHECK(g.C0 > 0.0);
  CHECK(g.delta0 > 0.0);
  CHECK(!g.closed_form);
  CHECK(g.slack == kGridSlack);

  // scaled family: C0 limit is a s^{1-r}
  Potential Ws = Potential::scaled_power(1, kPi, 2.0, 2.0);
  GrowthConstants gs = certify_growth(Ws, 2.0);
  CHECK(gs.C0 == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(gs.R0 == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(gs.delta0 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("lipschitz constant of the root potential") {
  auto l1 = lip_root(Potential::power(1, 1.0, 2.0), 2.0);
  REQUIRE(l1.has_value());
  CHECK(l1->value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l1->closed_form);

  auto la = lip_root(Potential::power(2, 4.0, 2.0), 2.0);
  REQUIRE(la.has_value());
  CHECK(la->value == doctest::Approx(2.0).epsilon(1e-12));

  // V^{1/2} ~ |x|^{3/2} is not Lipschitz
  CHECK(!lip_root(Potential::power(1, 1.0, 3.0), 2.0).has_value());
  // gaussian root grows like e^{rho^2/(2dp)}
  CHECK(!lip_root(Potential::gaussian_exp(1), 2.0).has_value());
}

TEST_CASE("ratio constants of the radial scaling pair") {
  Potential V = Potential::power(2, kSqrtPi, 2.0);
  Potential W = Potential::scaled_power(2, kSqrtPi, 2.0, 3.0);
  RatioConstants rc = certify_ratios(V, W);
  CHECK(rc.closed_form);
  CHECK(rc.A == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(rc.B == doctest::Approx(3.0 * kSqrtPi).epsilon(1e-10));

  // the certified inequalities hold on a refined grid
  RatioConstants used = rc;
  for (double rho : log_radii(1e-3, 1e4, 257)) {
    Vec x(2);
    x << rho, 0.0;
    double lhs_a = (1.0 + V.gradient(x).squaredNorm()) / (V.value(x) * V.value(x));
    CHECK(lhs_a <= used.used_A() * used.used_A() / (1.0 + rho * rho) + 1e-15);
    double lhs_b = W.value(x) * W.value(x) / (1.0 + W.gradient(x).squaredNorm());
    CHECK(lhs_b <= used.used_B() * used.used_B() * (1.0 + rho * rho) * (1 + 1e-14));
  }
}

TEST_CASE("curvature constants and the convexity violation") {
  Potential V = Potential::power(2, kSqrtPi, 2.0);
  Potential W = Potential::scaled_power(2, kSqrtPi, 2.0, 3.0);
  CurvatureConstants cc = certify_curvature(V, W);
  CHECK(cc.lambda == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(cc.Lambda == doctest::Approx(2.0 * kPi).epsilon(1e-10));

  // gaussian-exp target in d >= 2: lambda degenerates in the tail
  try {
    certify_curvature(V, Potential::gaussian_exp(2));
    CHECK(false);
  } catch (const HypothesisViolation& e) {
    CHECK(e.witness.quantity == std::string("curvature-lambda"));
    CHECK(e.witness.value <= 0.0);
  }
  // but survives in d = 1 where the tail limit is 1
  CurvatureConstants c1 = certify_curvature(Potential::power(1, kPi, 2.0),
                                            Potential::gaussian_exp(1));
  CHECK(c1.lambda > 0.0);

  // exponent 1 target: tail lambda (r-1)/r = 0
  CHECK_THROWS_AS(
      certify_curvature(V, Potential::power(2, 1.0, 1.0)),
      HypothesisViolation);
}

TEST_CASE("asymptotic constants converge to their differential limits") {
  Potential V = Potential::power(2, kSqrtPi, 2.0);
  Potential W = Potential::scaled_power(2, kSqrtPi, 2.0, 3.0);
  CurvatureConstants cc = certify_curvature(V, W);

  // alpha -> 0 limits over the sampled region [r_min, horizon].  The
  // difference quotients collapse onto radial-profile derivatives; every
  // direction dependence is linear in cos^2 of the angle to the radius, so
  // the extremes sit on the radial (c2 = 1) and tangential (c2 = 0) axes.
  SampleSpec spec;
  double limA = 0.0, limB = 0.0, limLambda = 0.0;
  double limlambda = std::numeric_limits<double>::infinity();
  for (double rho : log_radii(spec.r_min, spec.horizon, spec.radii)) {
    const double v = V.radial_value(rho), dv = V.radial_derivative(rho);
    const double w = W.radial_value(rho), dw = W.radial_derivative(rho);
    limA = std::max(limA, (1.0 + rho) * dv / v);
    limB = std::max(limB, dw * w / ((1.0 + dw * dw) * (1.0 + rho)));
    for (double c2 : {0.0, 1.0}) {
      const double d2v =
          V.deriv_over_rho(rho) * (1.0 - c2) + V.radial_second(rho) * c2;
      const double d2w =
          W.deriv_over_rho(rho) * (1.0 - c2) + W.radial_second(rho) * c2;
      limLambda = std::max(limLambda,
                           (v * d2v - 2.0 * c2 * dv * dv) / (1.0 + dv * dv));
      limlambda = std::min(limlambda, d2w * w / (1.0 + dw * dw));
    }
  }
  // the curvature floor is its tail limit, reached inside the region; the
  // region supremum of the upper quantity sits below the global constant
  CHECK(limlambda == doctest::Approx(cc.lambda).epsilon(1e-3));
  CHECK(limLambda <= cc.Lambda);

  double prev_gap = 1e9;
  for (double alpha0 : {0.5, 0.1, 0.02}) {
    SampleSpec s = spec;
    s.alpha0 = alpha0;
    AsymptoticConstants ac = certify_asymptotic(V, W, s);
    CHECK(ac.lambda0 > 0.0);
    CHECK(ac.Lambda0 > 0.0);
    double gap = std::abs(ac.lambda0 - limlambda) / limlambda +
                 std::abs(ac.Lambda0 - limLambda) / limLambda +
                 std::abs(ac.A0 - limA) / limA +
                 std::abs(ac.B0 - limB) / limB;
    CHECK(gap <= prev_gap + 1e-6);
    prev_gap = gap;
    if (alpha0 == 0.02) {
      CHECK(std::abs(ac.lambda0 - cc.lambda) <= 0.05 * cc.lambda);
      CHECK(std::abs(ac.Lambda0 - limLambda) <= 0.05 * limLambda);
      CHECK(std::abs(ac.A0 - limA) <= 0.05 * limA);
      CHECK(std::abs(ac.B0 - limB) <= 0.05 * limB);
    }
  }
}

TEST_CASE("pq admissibility condition") {
  CHECK(check_pq_condition(2, 2.0, 3.0));
  CHECK(check_pq_condition(1, 2.5, 2.5));
  CHECK(!check_pq_condition(1, 1.1, 3.0));

  // monotone in d when q > p
  for (double p : {1.2, 1.5, 2.0}) {
    for (double q : {2.0, 3.0, 6.0}) {
      if (q <= p) continue;
      for (int d = 1; d <= 2; ++d) {
        if (check_pq_condition(d, p, q)) CHECK(check_pq_condition(d + 1, p, q));
      }
    }
  }
}

TEST_CASE("gaussian-target source constant") {
  // sup (1+|x|)|grad V|/V for <x>^q peaks at rho = 1+sqrt(2)
  const double interior = (4.0 + 3.0 * std::sqrt(2.0)) / (4.0 + 2.0 * std::sqrt(2.0));
  for (double q : {2.0, 3.0}) {
    double A = certify_gauss_source(Potential::power(1, 2.0, q));
    CHECK(A >= q / 2.0);
    CHECK(A <= 2.0 * q);
    CHECK(A == doctest::Approx(interior * q).epsilon(1e-6));
  }
  // constant potential: zero gradient
  CHECK(certify_gauss_source(Potential::power(1, 2.0, 0.0)) == 0.0);
}

TEST_CASE("derivative growth of the source") {
  Potential V = Potential::power(1, 1.0, 3.0);
  double a3 = certify_derivative_growth(V, 3.0);
  CHECK(a3 == doctest::Approx(3.0).epsilon(1e-6));
  // q above the exponent: ratio tends to zero, sup still finite
  CHECK(certify_derivative_growth(V, 4.0) < a3);
  // q below: |grad V|/(1+rho)^{q-1} diverges
  CHECK_THROWS_AS(certify_derivative_growth(V, 2.0), HypothesisViolation);
}

TEST_CASE("target p-growth for the sublinear system") {
  Potential W = Potential::power(2, kSqrtPi, 2.0);
  CHECK(certify_p_growth(W, 2.0) == doctest::Approx(kSqrtPi).epsilon(1e-12));
  CHECK_THROWS_AS(certify_p_growth(W, 3.0), HypothesisViolation);
}

TEST_CASE("closed-form and grid certification agree for power families") {
  Potential V = Potential::power(2, kSqrtPi, 2.0);
  Potential Vg = gridified(V, 2.0);

  auto lc = lip_root(V, 2.0);
  auto lg = lip_root(Vg, 2.0);
  REQUIRE(lc.has_value());
  REQUIRE(lg.has_value());
  CHECK(std::abs(lg->value - lc->value) <= 0.02 * lc->value);
  CHECK(lg->slack == kGridSlack);

  double ac = certify_gauss_source(V);
  double ag = certify_gauss_source(Vg);
  CHECK(std::abs(ag - ac) <= 0.02 * ac);

  Potential W = Potential::scaled_power(2, kSqrtPi, 2.0, 3.0);
  Potential Wg = gridified(W, 2.0);
  RatioConstants rc = certify_ratios(V, W);
  RatioConstants rg = certify_ratios(Vg, Wg);
  CHECK(std::abs(rg.A - rc.A) <= 0.02 * rc.A);
  CHECK(std::abs(rg.B - rc.B) <= 0.02 * rc.B);

  CurvatureConstants cc = certify_curvature(V, W);
  CurvatureConstants cg = certify_curvature(Vg, Wg);
  CHECK(std::abs(cg.lambda - cc.lambda) <= 0.02 * cc.lambda);
  CHECK(std::abs(cg.Lambda - cc.Lambda) <= 0.02 * cc.Lambda);
}

TEST_CASE("certified constants survive a refined grid") {
  Potential W = Potential::gaussian_exp(1);
  GridSpec grid;
  GrowthConstants g = certify_growth(W, 2.0, grid);
  GridSpec fine = grid.refined(2);
  for (double rho : log_radii(g.R0, fine.horizon, fine.points)) {
    const double w = W.radial_value(rho);
    if (!std::isfinite(w)) break;  // overflow past the effective horizon
    CHECK(w >= g.used_C0() * rho * rho);
    CHECK(W.radial_derivative(rho) * rho / w >= 1.0 + g.used_delta0());
  }
}
