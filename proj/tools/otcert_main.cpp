#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "otcert/common.hpp"
#include "otcert/experiment.hpp"
#include "otcert/quadrature.hpp"

namespace {

using otcert::ExperimentConfig;

struct StageArgs {
  std::string config;
  std::string out;
  double slack = -1.0;
  bool emit_witness = false;
};

ExperimentConfig resolve(const StageArgs& args) {
  ExperimentConfig cfg = otcert::load_config(args.config);
  if (!args.out.empty()) cfg.out_dir = args.out;
  if (args.slack >= 0.0) cfg.slack = args.slack;
  if (args.emit_witness) cfg.emit_witness = true;
  return cfg;
}

void write_witness(const ExperimentConfig& cfg,
                   const otcert::HypothesisViolation& v) {
  nlohmann::ordered_json point = nlohmann::ordered_json::array();
  for (int i = 0; i < v.witness.point.size(); ++i)
    point.push_back(v.witness.point[i]);
  nlohmann::ordered_json j{{"error", v.what()},
                           {"quantity", v.witness.quantity},
                           {"radius", v.witness.radius},
                           {"point", point},
                           {"value", v.witness.value},
                           {"detail", v.witness.detail}};
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream os(std::filesystem::path(cfg.out_dir) / "witness.json");
  os << j.dump(2) << "\n";
}

int dispatch(const std::string& stage, const StageArgs& args) {
  ExperimentConfig cfg = resolve(args);
  try {
    if (stage == "hypotheses") {
      otcert::stage_hypotheses(cfg);
    } else if (stage == "certify") {
      otcert::stage_certify(cfg);
    } else if (stage == "solve") {
      otcert::stage_solve(cfg);
    } else if (stage == "verify") {
      int code = otcert::stage_verify(cfg);
      if (code != 0) std::cerr << "verify: verification failure\n";
      return code;
    } else {  // run
      int code = otcert::run_experiment(cfg);
      if (code != 0) std::cerr << "run: verification failure\n";
      return code;
    }
    return 0;
  } catch (const otcert::HypothesisViolation& v) {
    std::cerr << "hypothesis violation: " << v.what() << "\n  quantity: "
              << v.witness.quantity << "\n  radius: " << v.witness.radius
              << "\n  value: " << v.witness.value
              << "\n  detail: " << v.witness.detail << "\n";
    if (cfg.emit_witness) write_witness(cfg, v);
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growth and Lipschitz certification of monotone transport maps"};
  app.require_subcommand(1);

  StageArgs args;
  std::vector<std::string> run_dirs;
  std::string summary_out =  "summary.csv";

  auto add_stage = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", args.config, "experiment config JSON")
        ->required();
    sub->add_option("--out", args.out, "output directory override");
    sub->add_option("--slack", args.slack, "verification slack override");
    sub->add_flag("--emit-witness", args.emit_witness,
                  "write witness.json on hypothesis violations");
    return sub;
  };

  add_stage("run", "full pipeline: hypotheses, certify, solve, verify");
  add_stage("hypotheses", "certify hypothesis constants");
  add_stage("certify", "assemble certificates from saved constants");
  add_stage("solve", "compute the transport map artifact");
  add_stage("verify", "measure the saved map and check certificates");

  CLI::App* rep = app.add_subcommand("report", "merge runs into a summary");
  rep->add_option("dirs", run_dirs, "run output directories")->required();
  rep->add_option("--out", summary_out, "summary CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 5;
  }

  try {
    if (rep->parsed()) {
      otcert::merge_reports(run_dirs, summary_out);
      return 0;
    }
    return dispatch(app.get_subcommands().front()->get_name(), args);
  } catch (const otcert::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 5;
  } catch (const otcert::HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (const otcert::QuadratureError& e) {
    std::cerr << "solver failure (quadrature): " << e.what() << "\n";
    return 4;
  } catch (const otcert::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
