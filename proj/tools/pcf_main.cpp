#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcf/errors.hpp"
#include "pcf/experiments.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pcf::InvalidInput("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report_error(const char* category, const std::exception& e) {
  std::cerr << "{\"error_category\":\"" << category << "\",\"message\":\"" << e.what() << "\"}\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcf: evolution and verification runs for the coupled (Lambda, phi) wave system"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  double mu = 2.0, lambda = 1.0, eps = 0.05, v = 0.0;
  int levels = 3;
  bool finite_energy = false;

  auto* run = app.add_subcommand("run", "execute the experiment described by a config file");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides config)");

  auto* sol = app.add_subcommand("soliton-check",
                                 "closed-form soliton verification (residual order, det g, "
                                 "modified energy or finite-energy admissibility)");
  sol->add_option("--mu", mu, "pole parameter")->required();
  sol->add_flag("--finite-energy", finite_energy, "check the finite-energy family (0 < mu < 1)");
  sol->add_option("--lambda", lambda, "seed background (finite-energy)");
  sol->add_option("--eps", eps, "seed amplitude (finite-energy)");
  sol->add_option("--out", out_dir, "output directory");

  auto* dec = app.add_subcommand("decay", "windowed interior-energy decay study");
  dec->add_option("--v", v, "window center velocity, |v| < 1")->required();
  dec->add_option("--config", config_path, "JSON config file")->required();
  dec->add_option("--out", out_dir, "output directory (overrides config)");

  auto* con = app.add_subcommand("converge", "grid refinement study");
  con->add_option("--levels", levels, "number of refinement levels (>= 3)");
  con->add_option("--config", config_path, "JSON config file")->required();
  con->add_option("--out", out_dir, "output directory (overrides config)");

  auto* swp = app.add_subcommand("sweep", "parameter sweep of evolution runs");
  swp->add_option("--config", config_path, "JSON config file")->required();
  swp->add_option("--out", out_dir, "output directory (overrides config)");

  CLI11_PARSE(app, argc, argv);

  try {
    pcf::ExperimentConfig config;
    if (!config_path.empty()) config = pcf::parse_config(slurp(config_path));

    if (sol->parsed()) {
      config.experiment = pcf::ExperimentKind::soliton_check;
      config.initial_data.mu = mu;
      if (finite_energy) {
        config.initial_data.type = "finite-energy-soliton";
        config.initial_data.lambda_bg = lambda;
        config.initial_data.epsilon = eps;
        config.grid = {-20.0, 20.0, 2001};
      }
      if (out_dir.empty()) out_dir = "pcf-out";
    } else if (dec->parsed()) {
      config.experiment = pcf::ExperimentKind::decay_study;
      config.decay.v = v;
      if (!(std::abs(v) < 1.0))
        throw pcf::InvalidInput("decay: requires |v| < 1 (interior of the light cone), got " +
                                std::to_string(v));
    } else if (con->parsed()) {
      config.experiment = pcf::ExperimentKind::convergence;
      config.levels = levels;
      if (levels < 3) throw pcf::InvalidInput("converge: levels must be >= 3");
    } else if (swp->parsed()) {
      config.experiment = pcf::ExperimentKind::sweep;
    }

    if (!out_dir.empty()) config.output_dir = out_dir;
    const int code = pcf::run_experiment(config);
    if (code != 0)
      std::cerr << "{\"error_category\":\"" << (code == 2 ? "SingularityApproach" : "NumericalOverflow")
                << "\",\"exit_code\":" << code << "}\n";
    return code;
  } catch (const pcf::InvalidInput& e) {
    return report_error("InvalidInput", e);
  } catch (const pcf::DomainError& e) {
    return report_error("DomainError", e);
  } catch (const pcf::SingularityApproach& e) {
    return report_error("SingularityApproach", e);
  } catch (const pcf::NumericalOverflow& e) {
    return report_error("NumericalOverflow", e);
  } catch (const std::exception& e) {
    return report_error("Unexpected", e);
  }
}
