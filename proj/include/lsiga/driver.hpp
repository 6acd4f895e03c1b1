/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_DRIVER_HPP
#define LSIGA_DRIVER_HPP

#include <memory>

#include "lsiga/model.hpp"

namespace lsiga {

struct PhaseTimings {
  double assembly_s = 0.0;
  double static_s = 0.0;
  double eigen_s = 0.0;
};

/// One analyzed configuration: eigenvalues, modes and bookkeeping.
/// Failed sweep points carry the error text instead of results.
struct SolvedCase {
  std::string case_id;
  ModelConfig config;
  std::shared_ptr<PlateModel> model;
  DofMap dofs;
  std::vector<double> lambdas;             // critical temperature multipliers
  std::vector<double> lambdas_normalized;  // per the configured convention
  Eigen::MatrixXd modes_full;              // full-DOF modes, ||phi||_inf = 1
  bool no_buckling = false;
  int n_free = 0;
  PhaseTimings timings;
  std::string error;

  bool failed() const { return !error.empty(); }
};

/// Full pipeline: build, assemble (plate + stiffeners), constrain,
/// thermal prestress at dT_ref, geometric stiffness, buckling solve,
/// normalization. Deterministic for identical configs.
SolvedCase run_analysis(const ModelConfig& config,
                        const std::string& case_id = "case");

/// Transverse mode displacement sampled on a uniform grid x grid
/// parametric lattice; points inside a cutout come back as NaN.
Eigen::MatrixXd sample_mode_w(const SolvedCase& solved, int mode_index, int grid);

/// Writes mode_<k>.csv / mode_<k>.vtk (per the config's formats) into
/// out_dir. CSV cells inside cutouts are empty; VTK uses NaN.
void export_modes(const SolvedCase& solved, const std::string& out_dir);

enum class SweepAxis {
  CutoutRadius,
  EllipseTheta,
  PlateRefinement,
  StiffenerRefinement,
  Gamma,
  DeltaEps
};
std::optional<SweepAxis> sweep_axis_from_name(const std::string& name);

/// One run per axis value (rows ordered by value, not completion);
/// failures are recorded per point and the sweep continues.
std::vector<SolvedCase> sweep(const ModelConfig& config, SweepAxis axis,
                              std::vector<double> values);

/// Deterministic results table (no timings, fixed column order).
std::string results_table_csv(const std::vector<SolvedCase>& cases);
/// Wall-clock phase timings, kept out of the deterministic outputs.
std::string timings_csv(const std::vector<SolvedCase>& cases);

/// results.csv + timings.csv under dir (created if needed).
void write_run_outputs(const std::vector<SolvedCase>& cases,
                       const std::string& dir);

}  // namespace lsiga

#endif  // LSIGA_DRIVER_HPP
