#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "otcert/common.hpp"
#include "otcert/transport_numeric.hpp"
#include "otcert/transport_oracle.hpp"

namespace otcert {

using MapFn = std::function<Vec(const Vec&)>;

// T(x) = t(|x|) x/|x| from a radial profile.
MapFn map_from_profile(const RadialProfile& prof);

enum class EnvelopeKind { PowerLaw, SqrtLog };

// (1+|x|)^alpha, or sqrt(1+log(1+|x|)).
struct Envelope {
  EnvelopeKind kind = EnvelopeKind::PowerLaw;
  double alpha = 1.0;

  double operator()(double rho) const;
  std::string name() const;
};

enum class Status { Pass, Fail, NotApplicable };

std::string status_name(Status s);

struct Verdict {
  Status status = Status::NotApplicable;
  double margin = 0.0;  // certificate / measured
  std::string notes;
};

// pass iff measured <= certificate * (1 + slack).
Verdict verify(double certificate, double measured, double slack);

struct GrowthReport {
  Envelope envelope;
  std::vector<double> radii;
  std::vector<double> ratios;  // per-radius sup over directions of |T|/env
  double supremum = 0.0;
  // log|T| vs log|x| least-squares slope over the last decade of radii.
  double empirical_slope = 0.0;
  double first_decade_max = 0.0;
  double last_decade_max = 0.0;
  double certificate = -1.0;  // < 0 until a certificate is attached
  Verdict verdict;
};

GrowthReport measure_growth(const MapFn& map, int dim, const Envelope& env,
                            const std::vector<double>& radii,
                            int directions = 16);

// Growth of an extracted grid map on its own sample points (|x| <= region).
GrowthReport measure_growth_samples(const MapSample& sample,
                                    const Envelope& env, double region);

struct LipschitzReport {
  std::vector<double> eps_list;
  std::vector<double> sup_per_eps;  // sup of (T(x+eps e)-T(x-eps e)).e/(2eps)
  double supremum = 0.0;
  // Radial maps: sup over radii of max(t'(r), t(r)/r); must dominate the
  // sampled quotients.
  double closed_form = -1.0;
  double certificate = -1.0;
  Verdict verdict;
};

LipschitzReport measure_lipschitz(const MapFn& map, int dim,
                                  const std::vector<double>& eps_list,
                                  const std::vector<double>& radii,
                                  int directions = 16);

// Closed-form channel + sampled quotients for a radial profile.
LipschitzReport measure_lipschitz_radial(const RadialProfile& prof,
                                         const std::vector<double>& eps_list,
                                         const std::vector<double>& radii,
                                         int directions = 16);

// Lipschitz estimate of a grid map from its interior DT eigenvalues.
double lip_from_samples(const MapSample& sample, double region);

// CSV with fixed columns: radius, ratio, envelope, certificate, verdict
// (one row per radius plus one summary row).
void write_growth_csv(std::ostream& os, const GrowthReport& report);
void write_lipschitz_csv(std::ostream& os, const LipschitzReport& report);

// r, t, t', t/r rows of a radial profile.
void write_profile_csv(std::ostream& os, const RadialProfile& prof);

// x, T(x), eigenvalue estimates of an extracted grid map.
void write_map_csv(std::ostream& os, const MapSample& sample);
MapSample read_map_csv(std::istream& is);

}  // namespace otcert
