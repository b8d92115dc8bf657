#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otcert/grids.hpp"
#include "otcert/potentials.hpp"

namespace otcert {

struct PotentialSpec {
  std::string family;  // power | scaled-power | gaussian-exp
  double a = 1.0;
  double r = 2.0;
  double s = 1.0;
};

// Verification sample: log-spaced radii x fixed direction set, plus the
// epsilon list for difference quotients.
struct SampleSpecV {
  double r_min = 1e-2;
  double horizon = 1e3;
  int radii = 64;
  int directions = 16;
  std::vector<double> eps = {1.0, 0.1, 0.01};
};

struct EntropicSpec {
  double L = 25.0;
  int n = 256;
  double eps_final = 0.0;  // 0 -> grid-cell scale
};

struct ExperimentConfig {
  int schema = 1;
  std::string id;
  int dim = 1;
  PotentialSpec source, target;
  std::string theorem;  // thm-1.1 | thm-1.2 | thm-2.2 | thm-2.3 | thm-3.1
  std::string solver;   // oracle-1d | oracle-radial | entropic
  double p = 0.0;       // target growth exponent (0 -> target family's r)
  double q = 0.0;       // source growth exponent (thm-2.2)
  GridSpec certify_grid;
  SampleSpecV sample;
  EntropicSpec entropic;
  double slack = 0.02;
  std::string out_dir = ".";
  bool emit_witness = false;

  // p after resolution against the target family (set by load_config).
  double p_resolved() const;
};

ExperimentConfig load_config(const std::string& path);
Potential build_potential(const PotentialSpec& spec, int dim);
DensityPair build_pair(const ExperimentConfig& cfg);

// Stage functions; each reads its inputs from cfg.out_dir artifacts and
// writes its own.  Failures throw; only verify reports pass/fail by value.
void stage_hypotheses(const ExperimentConfig& cfg);
void stage_certify(const ExperimentConfig& cfg);
void stage_solve(const ExperimentConfig& cfg);
int stage_verify(const ExperimentConfig& cfg);  // 0 pass, 2 fail

int run_experiment(const ExperimentConfig& cfg);

// `report`: merge run directories into one summary CSV, ordered by run id.
void merge_reports(const std::vector<std::string>& run_dirs,
                   const std::string& out_csv);

}  // namespace otcert
