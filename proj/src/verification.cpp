#include "otcert/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "otcert/grids.hpp"

namespace otcert {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

// %.17g round-trips doubles exactly; keeps reports byte-stable.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double slope_last_decade(const std::vector<double>& radii,
                         const std::vector<double>& tmax) {
  double hi = radii.back(), lo = hi / 10.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < lo || !(tmax[i] > 0.0)) continue;
    double x = std::log(radii[i]), y = std::log(tmax[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) return kNaN;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

MapFn map_from_profile(const RadialProfile& prof) {
  return [prof](const Vec& x) -> Vec {
    double rho = x.norm();
    if (rho < 1e-300) return Vec::Zero(x.size());
    return (prof(rho) / rho) * x;
  };
}

double Envelope::operator()(double rho) const {
  if (kind == EnvelopeKind::PowerLaw) return std::pow(1.0 + rho, alpha);
  return std::sqrt(1.0 + std::log1p(rho));
}

std::string Envelope::name() const {
  if (kind == EnvelopeKind::PowerLaw)
    return "power:" + fmt(alpha);
  return "sqrt-log";
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "not-applicable";
  }
}

Verdict verify(double certificate, double measured, double slack) {
  Verdict v;
  if (!(measured > 0.0)) {
    v.status = Status::Pass;
    v.margin = std::numeric_limits<double>::infinity();
    v.notes = "measured quantity is zero";
    return v;
  }
  v.margin = certificate / measured;
  bool ok = measured <= certificate * (1.0 + slack);
  v.status = ok ? Status::Pass : Status::Fail;
  v.notes = ok ? "measured within certificate" : "measured exceeds certificate";
  return v;
}

GrowthReport measure_growth(const MapFn& map, int dim, const Envelope& env,
                            const std::vector<double>& radii,
                            int directions) {
  GrowthReport rep;
  rep.envelope = env;
  rep.radii = radii;
  auto dirs = unit_directions(dim, directions);
  std::vector<double> tmax(radii.size(), 0.0);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double best = 0.0;
    for (const Vec& e : dirs)
      best = std::max(best, map(radii[i] * e).norm());
    tmax[i] = best;
    rep.ratios.push_back(best / env(radii[i]));
  }
  rep.supremum = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  double first_hi = radii.front() * 10.0, last_lo = radii.back() / 10.0;
  rep.first_decade_max = 0.0;
  rep.last_decade_max = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= first_hi)
      rep.first_decade_max = std::max(rep.first_decade_max, rep.ratios[i]);
    if (radii[i] >= last_lo)
      rep.last_decade_max = std::max(rep.last_decade_max, rep.ratios[i]);
  }
  rep.empirical_slope = slope_last_decade(radii, tmax);
  return rep;
}

GrowthReport measure_growth_samples(const MapSample& sample,
                                    const Envelope& env, double region) {
  GrowthReport rep;
  rep.envelope = env;
  // Bucket sample points by radius so the report has the usual shape.
  std::vector<std::pair<double, double>> by_r;  // (radius, |T|)
  for (std::size_t k = 0; k < sample.points.size(); ++k) {
    double rho = sample.points[k].norm();
    if (rho > region) continue;
    by_r.emplace_back(rho, sample.values[k].norm());
  }
  if (by_r.empty()) throw ConfigError("no sample points inside the region");
  std::sort(by_r.begin(), by_r.end());
  std::vector<double> tmax;
  for (auto& [rho, tv] : by_r) {
    if (!rep.radii.empty() && rho == rep.radii.back()) {
      rep.ratios.back() = std::max(rep.ratios.back(), tv / env(rho));
      tmax.back() = std::max(tmax.back(), tv);
    } else {
      rep.radii.push_back(rho);
      rep.ratios.push_back(tv / env(rho));
      tmax.push_back(tv);
    }
  }
  rep.supremum = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  double first_hi = rep.radii.front() * 10.0, last_lo = rep.radii.back() / 10.0;
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    if (rep.radii[i] <= first_hi)
      rep.first_decade_max = std::max(rep.first_decade_max, rep.ratios[i]);
    if (rep.radii[i] >= last_lo)
      rep.last_decade_max = std::max(rep.last_decade_max, rep.ratios[i]);
  }
  rep.empirical_slope = slope_last_decade(rep.radii, tmax);
  return rep;
}

LipschitzReport measure_lipschitz(const MapFn& map, int dim,
                                  const std::vector<double>& eps_list,
                                  const std::vector<double>& radii,
                                  int directions) {
  LipschitzReport rep;
  rep.eps_list = eps_list;
  auto dirs = unit_directions(dim, directions);
  for (double eps : eps_list) {
    double sup = 0.0;
    for (double rho : radii) {
      for (const Vec& xd : dirs) {
        Vec x = rho * xd;
        for (const Vec& e : dirs) {
          Vec dp = map(x + eps * e) - map(x - eps * e);
          sup = std::max(sup, dp.dot(e) / (2.0 * eps));
        }
      }
    }
    rep.sup_per_eps.push_back(sup);
  }
  rep.supremum =
      *std::max_element(rep.sup_per_eps.begin(), rep.sup_per_eps.end());
  return rep;
}

LipschitzReport measure_lipschitz_radial(const RadialProfile& prof,
                                         const std::vector<double>& eps_list,
                                         const std::vector<double>& radii,
                                         int directions) {
  LipschitzReport rep =
      measure_lipschitz(map_from_profile(prof), prof.dim, eps_list, radii,
                        directions);
  double cf = prof.dt[0];
  for (std::size_t i = 1; i < prof.r.size(); ++i)
    cf = std::max({cf, prof.dt[i], prof.t[i] / prof.r[i]});
  rep.closed_form = cf;
  return rep;
}

double lip_from_samples(const MapSample& sample, double region) {
  double sup = -1.0;
  for (std::size_t k = 0; k < sample.points.size(); ++k) {
    if (sample.points[k].norm() > region) continue;
    double e = sample.dt_eigs[k].second;
    if (std::isnan(e)) continue;
    sup = std::max(sup, e);
  }
  if (sup < 0.0)
    throw ConfigError("no interior derivative estimates inside the region");
  return sup;
}

void write_growth_csv(std::ostream& os, const GrowthReport& report) {
  os << "radius, ratio, envelope, certificate, verdict\n";
  std::string cert = report.certificate >= 0.0 ? fmt(report.certificate) : "";
  std::string status = status_name(report.verdict.status);
  for (std::size_t i = 0; i < report.radii.size(); ++i) {
    os << fmt(report.radii[i]) << ", " << fmt(report.ratios[i]) << ", "
       << fmt(report.envelope(report.radii[i])) << ", " << cert << ", "
       << status << "\n";
  }
  os << "summary, " << fmt(report.supremum) << ", " << report.envelope.name()
     << ", " << cert << ", " << status << "\n";
}

void write_lipschitz_csv(std::ostream& os, const LipschitzReport& report) {
  os << "eps, quotient_sup, closed_form, certificate, verdict\n";
  std::string cert = report.certificate >= 0.0 ? fmt(report.certificate) : "";
  std::string cf = report.closed_form >= 0.0 ? fmt(report.closed_form) : "";
  std::string status = status_name(report.verdict.status);
  for (std::size_t i = 0; i < report.eps_list.size(); ++i) {
    os << fmt(report.eps_list[i]) << ", " << fmt(report.sup_per_eps[i]) << ", "
       << cf << ", " << cert << ", " << status << "\n";
  }
  os << "summary, " << fmt(report.supremum) << ", " << cf << ", " << cert
     << ", " << status << "\n";
}

void write_profile_csv(std::ostream& os, const RadialProfile& prof) {
  os << "r, t, dt, tangential\n";
  for (std::size_t i = 0; i < prof.r.size(); ++i) {
    double tang = i == 0 ? prof.dt[0] : prof.t[i] / prof.r[i];
    os << fmt(prof.r[i]) << ", " << fmt(prof.t[i]) << ", " << fmt(prof.dt[i])
       << ", " << fmt(tang) << "\n";
  }
}

void write_map_csv(std::ostream& os, const MapSample& sample) {
  if (sample.dim == 1)
    os << "x, T, eig_min, eig_max\n";
  else
    os << "x1, x2, T1, T2, eig_min, eig_max\n";
  for (std::size_t k = 0; k < sample.points.size(); ++k) {
    for (int c = 0; c < sample.dim; ++c) os << fmt(sample.points[k][c]) << ", ";
    for (int c = 0; c < sample.dim; ++c) os << fmt(sample.values[k][c]) << ", ";
    os << fmt(sample.dt_eigs[k].first) << ", " << fmt(sample.dt_eigs[k].second)
       << "\n";
  }
}

MapSample read_map_csv(std::istream& is) {
  MapSample sample;
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty map file");
  sample.dim = line.rfind("x1", 0) == 0 ? 2 : 1;
  const int d = sample.dim;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    // std::stod instead of stream extraction: the rows may contain "nan".
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos < line.size()) {
      std::size_t next = line.find(',', pos);
      if (next == std::string::npos) next = line.size();
      vals.push_back(std::stod(line.substr(pos, next - pos)));
      pos = next + 1;
    }
    if (static_cast<int>(vals.size()) != 2 * d + 2)
      throw ConfigError("malformed map row: " + line);
    Vec x(d), t(d);
    for (int c = 0; c < d; ++c) x[c] = vals[c];
    for (int c = 0; c < d; ++c) t[c] = vals[d + c];
    sample.points.push_back(x);
    sample.values.push_back(t);
    sample.dt_eigs.emplace_back(vals[2 * d], vals[2 * d + 1]);
  }
  return sample;
}

}  // namespace otcert
