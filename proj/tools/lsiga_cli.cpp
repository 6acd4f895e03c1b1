/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include <CLI11.hpp>

#include <cstdio>
#include <sstream>

#include "lsiga/driver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  return values;
}

void print_summary(const lsiga::SolvedCase& result) {
  if (result.no_buckling) {
    std::printf("%s: no positive buckling factor (tension-stabilized)\n",
                result.case_id.c_str());
    return;
  }
  std::printf("%s: nDoF=%d (extra %d, free %d)\n", result.case_id.c_str(),
              result.dofs.n_dofs, result.dofs.n_extra, result.n_free);
  for (size_t k = 0; k < result.lambdas_normalized.size(); ++k)
    std::printf("  mode %zu: lambda* = %.6g\n", k + 1,
                result.lambdas_normalized[k]);
  std::printf("  timings: assembly %.3fs, static %.3fs, eigen %.3fs\n",
              result.timings.assembly_s, result.timings.static_s,
              result.timings.eigen_s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isogeometric level-set thermal buckling of stiffened plates"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int refinement_override = -1;
  int modes_override = -1;
  int grid_override = -1;
  std::string axis_name;
  std::string values_csv;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "model description file")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides config)");
    cmd->add_option("--refinement", refinement_override, "plate refinement override");
    cmd->add_option("--modes", modes_override, "number of buckling modes");
  };

  CLI::App* run = app.add_subcommand("run", "solve one configuration");
  add_common(run);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parametric sweep over one axis");
  add_common(sweep_cmd);
  sweep_cmd
      ->add_option("--axis", axis_name,
                   "radius | theta | refinement | stiffener-refinement | gamma | delta-eps")
      ->required();
  sweep_cmd->add_option("--values", values_csv, "comma-separated axis values")->required();

  CLI::App* export_cmd = app.add_subcommand("export-modes", "solve and export mode shapes");
  add_common(export_cmd);
  export_cmd->add_option("--grid", grid_override, "sampling grid resolution");

  CLI::App* validate = app.add_subcommand("validate", "check a configuration file");
  validate->add_option("--config", config_path, "model description file")->required();

  CLI11_PARSE(app, argc, argv);

  lsiga::ModelConfig config;
  try {
    config = lsiga::load_config(config_path);
  } catch (const lsiga::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitValidation;
  }
  if (validate->parsed()) {
    std::printf("%s: valid\n", config_path.c_str());
    return kExitOk;
  }

  if (!out_dir.empty()) config.output.dir = out_dir;
  if (refinement_override > 0) config.refinement = refinement_override;
  if (modes_override > 0) config.analysis.n_modes = modes_override;
  if (grid_override > 1) config.output.modes_grid = grid_override;

  try {
    if (run->parsed()) {
      const lsiga::SolvedCase result = lsiga::run_analysis(config);
      print_summary(result);
      lsiga::write_run_outputs({result}, config.output.dir);
      std::printf("results written to %s\n", config.output.dir.c_str());
    } else if (sweep_cmd->parsed()) {
      const auto axis = lsiga::sweep_axis_from_name(axis_name);
      if (!axis.has_value()) {
        std::fprintf(stderr, "unknown sweep axis '%s'\n", axis_name.c_str());
        return kExitValidation;
      }
      const auto results = lsiga::sweep(config, *axis, parse_values(values_csv));
      for (const auto& r : results) {
        if (r.failed())
          std::printf("%s: failed (%s)\n", r.case_id.c_str(), r.error.c_str());
        else
          std::printf("%s: lambda* = %.6g\n", r.case_id.c_str(),
                      r.lambdas_normalized.empty() ? std::nan("")
                                                   : r.lambdas_normalized.front());
      }
      lsiga::write_run_outputs(results, config.output.dir);
      std::printf("results written to %s\n", config.output.dir.c_str());
    } else if (export_cmd->parsed()) {
      const lsiga::SolvedCase result = lsiga::run_analysis(config);
      print_summary(result);
      lsiga::write_run_outputs({result}, config.output.dir);
      lsiga::export_modes(result, config.output.dir);
      std::printf("modes written to %s\n", config.output.dir.c_str());
    }
  } catch (const lsiga::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kExitSolver;
  }
  return kExitOk;
}
