/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/driver.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lsiga {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// shortest round-trippable formatting: re-parsing gives the same bits
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

SolvedCase run_analysis(const ModelConfig& config, const std::string& case_id) {
  SolvedCase out;
  out.case_id = case_id;
  out.config = config;

  auto t0 = std::chrono::steady_clock::now();

  const NurbsPatch patch =
      NurbsPatch::rectangle(config.length_x, config.length_y, config.degree)
          .h_refined(config.refinement);
  const ConstitutiveSet cs = constitutive_set(config.laminate_stack());
  out.model = std::make_shared<PlateModel>(build_plate_model(
      patch, cs, config.thickness, config.cutout_shape(), TriangleRule::seven_point()));
  out.dofs = DofMap::build(out.model->cls.cp_enriched);

  AssembledPlate ap = assemble_plate(*out.model, out.dofs);
  Triplets K_trip = std::move(ap.K);
  Eigen::VectorXd F_unit = std::move(ap.F_unit);
  Eigen::VectorXd F_stiff = Eigen::VectorXd::Zero(out.dofs.n_dofs);

  struct StiffenerInstance {
    StiffenerPath path;
    StiffenerSection section;
    int refinement;
  };
  std::vector<StiffenerInstance> stiffeners;
  for (const StiffenerConfig& sc : config.stiffeners) {
    const Vec2 middle = sc.has_middle
                            ? sc.middle
                            : Vec2(sc.delta_dist * config.length_x,
                                   sc.delta_dist * config.length_y);
    StiffenerInstance inst{
        parabola_path(sc.start, sc.end, middle, sc.delta_eps, config.length_x,
                      config.length_y),
        section_from_ratios(sc.gamma, sc.delta, config.length_x, config.thickness,
                            cs.D(0, 0), sc.E, sc.nu, sc.alpha),
        sc.refinement};
    const StiffenerContribution contrib = stiffener_matrices(
        *out.model, out.dofs, inst.path, inst.section, inst.refinement);
    K_trip.insert(K_trip.end(), contrib.K.begin(), contrib.K.end());
    F_stiff += contrib.F_unit;
    stiffeners.push_back(std::move(inst));
  }

  const SpMat K = matrix_from_triplets(out.dofs.n_dofs, K_trip);
  const ConstraintSet cons = build_constraints(*out.model, out.dofs, config.bc, K);
  const SpMat K_ff = reduce_matrix(K, cons);
  out.n_free = cons.n_free;
  out.timings.assembly_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const double dT_ref = config.analysis.dT_ref;
  const PrestressResult pre = prestress_solve(*out.model, out.dofs, cons, K_ff,
                                              F_unit, dT_ref, &F_stiff);

  Triplets KG_trip = assemble_geometric(*out.model, out.dofs, pre);
  for (const auto& inst : stiffeners) {
    const Triplets kgs =
        stiffener_geometric(*out.model, out.dofs, inst.path, inst.section,
                            inst.refinement, pre.u_full, dT_ref);
    KG_trip.insert(KG_trip.end(), kgs.begin(), kgs.end());
  }
  const SpMat KG_ff =
      reduce_matrix(matrix_from_triplets(out.dofs.n_dofs, KG_trip), cons);
  out.timings.static_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const BucklingSolution sol = buckling_solve(K_ff, KG_ff, config.analysis.n_modes);
  out.timings.eigen_s = seconds_since(t0);

  out.no_buckling = sol.no_buckling;
  out.modes_full.resize(out.dofs.n_dofs, static_cast<int>(sol.lambdas.size()));
  for (size_t k = 0; k < sol.lambdas.size(); ++k) {
    const double dT_cr = sol.lambdas[k] * dT_ref;
    out.lambdas.push_back(dT_cr);
    out.lambdas_normalized.push_back(normalized_critical_temperature(
        dT_cr, config.analysis.normalization, config.analysis.alpha0));
    Eigen::VectorXd mode = cons.expand(sol.modes_free.col(static_cast<int>(k)));
    const double mx = mode.cwiseAbs().maxCoeff();
    if (mx > 0.0) mode /= mx;
    out.modes_full.col(static_cast<int>(k)) = mode;
  }
  return out;
}

Eigen::MatrixXd sample_mode_w(const SolvedCase& solved, int mode_index, int grid) {
  if (solved.model == nullptr || mode_index < 0 ||
      mode_index >= solved.modes_full.cols())
    throw std::invalid_argument("sample_mode_w: no such mode");
  const PlateModel& model = *solved.model;
  const PatchMesh& mesh = model.mesh;

  std::vector<int> span_to_ix(model.patch.knots_xi().values().size(), 0);
  std::vector<int> span_to_iy(model.patch.knots_eta().values().size(), 0);
  for (const PatchMesh::Element& el : mesh.elements) {
    span_to_ix[el.span_xi] = el.ix;
    span_to_iy[el.span_eta] = el.iy;
  }

  const Eigen::VectorXd mode = solved.modes_full.col(mode_index);
  Eigen::MatrixXd w(grid, grid);
  Vec2 pt;
  Mat2 J;
  for (int j = 0; j < grid; ++j) {
    const double eta = static_cast<double>(j) / (grid - 1);
    for (int i = 0; i < grid; ++i) {
      const double xi = static_cast<double>(i) / (grid - 1);
      model.patch.map_parametric(xi, eta, pt, J);
      if (model.cutout.has_value() && model.cutout->signed_distance(pt) < 0.0) {
        w(j, i) = std::nan("");
        continue;
      }
      const int sx = model.patch.knots_xi().find_span(xi);
      const int sy = model.patch.knots_eta().find_span(eta);
      const size_t e = span_to_ix[sx] + span_to_iy[sy] * mesh.nx;
      const PatchMesh::Element& el = mesh.elements[e];
      const bool enriched = model.cls.tags[e] == ElementTag::Enriched;
      const Vec2 uv((xi - 0.5 * (el.xi0 + el.xi1)) / (0.5 * (el.xi1 - el.xi0)),
                    (eta - 0.5 * (el.eta0 + el.eta1)) / (0.5 * (el.eta1 - el.eta0)));
      const PointBasis pb = evaluate_point_basis(
          model.patch, el, uv, enriched ? &model.cls.corner_phi[e] : nullptr);
      const std::vector<int> idx = element_dof_indices(solved.dofs, pb);

      double value = 0.0;
      for (int a = 0; a < pb.n_std(); ++a) {
        value += pb.N[a] * mode[idx[kPlateDofs * a + 2]];
        if (pb.enriched)
          value += pb.psi * pb.N[a] *
                   mode[idx[kPlateDofs * (pb.n_std() + a) + 2]];
      }
      w(j, i) = value;
    }
  }
  return w;
}

void export_modes(const SolvedCase& solved, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const int grid = solved.config.output.modes_grid;
  const int n_modes = static_cast<int>(solved.lambdas.size());

  for (int k = 0; k < n_modes; ++k) {
    const Eigen::MatrixXd w = sample_mode_w(solved, k, grid);

    if (solved.config.output.csv) {
      std::ofstream csv(fs::path(out_dir) / ("mode_" + std::to_string(k + 1) + ".csv"));
      for (int j = 0; j < grid; ++j) {
        for (int i = 0; i < grid; ++i) {
          if (i) csv << ",";
          if (!std::isnan(w(j, i))) csv << format_double(w(j, i));
        }
        csv << "\n";
      }
    }
    if (solved.config.output.vtk) {
      std::ofstream vtk(fs::path(out_dir) / ("mode_" + std::to_string(k + 1) + ".vtk"));
      vtk << "# vtk DataFile Version 3.0\n"
          << "buckling mode " << k + 1 << "\n"
          << "ASCII\nDATASET STRUCTURED_POINTS\n"
          << "DIMENSIONS " << grid << " " << grid << " 1\n"
          << "ORIGIN 0 0 0\n"
          << "SPACING " << format_double(solved.config.length_x / (grid - 1)) << " "
          << format_double(solved.config.length_y / (grid - 1)) << " 1\n"
          << "POINT_DATA " << grid * grid << "\n"
          << "SCALARS w double 1\nLOOKUP_TABLE default\n";
      for (int j = 0; j < grid; ++j)
        for (int i = 0; i < grid; ++i)
          vtk << (std::isnan(w(j, i)) ? std::string("nan") : format_double(w(j, i)))
              << "\n";
    }
  }
}

std::optional<SweepAxis> sweep_axis_from_name(const std::string& name) {
  if (name == "radius") return SweepAxis::CutoutRadius;
  if (name == "theta") return SweepAxis::EllipseTheta;
  if (name == "refinement") return SweepAxis::PlateRefinement;
  if (name == "stiffener-refinement") return SweepAxis::StiffenerRefinement;
  if (name == "gamma") return SweepAxis::Gamma;
  if (name == "delta-eps") return SweepAxis::DeltaEps;
  return std::nullopt;
}

std::vector<SolvedCase> sweep(const ModelConfig& config, SweepAxis axis,
                              std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<SolvedCase> results;

  for (double v : values) {
    ModelConfig point = config;
    std::string label;
    switch (axis) {
      case SweepAxis::CutoutRadius:
        label = "radius=";
        if (point.cutouts.empty() ||
            point.cutouts.front().kind != CutoutConfig::Kind::Circle) {
          SolvedCase failed;
          failed.case_id = label + format_label(v);
          failed.error = "radius sweep needs a leading circle cutout";
          results.push_back(std::move(failed));
          continue;
        }
        if (v <= 0.0)
          point.cutouts.clear();  // d/b = 0 row: no cutout at all
        else
          point.cutouts.front().radius = v;
        break;
      case SweepAxis::EllipseTheta:
        label = "theta=";
        if (point.cutouts.empty() ||
            point.cutouts.front().kind != CutoutConfig::Kind::Ellipse) {
          SolvedCase failed;
          failed.case_id = label + format_label(v);
          failed.error = "theta sweep needs a leading ellipse cutout";
          results.push_back(std::move(failed));
          continue;
        }
        point.cutouts.front().orientation_deg = v;
        break;
      case SweepAxis::PlateRefinement:
        label = "refinement=";
        point.refinement = static_cast<int>(v);
        break;
      case SweepAxis::StiffenerRefinement:
        label = "stiffener-refinement=";
        for (StiffenerConfig& s : point.stiffeners)
          s.refinement = static_cast<int>(v);
        break;
      case SweepAxis::Gamma:
        label = "gamma=";
        for (StiffenerConfig& s : point.stiffeners) s.gamma = v;
        break;
      case SweepAxis::DeltaEps:
        label = "delta-eps=";
        for (StiffenerConfig& s : point.stiffeners) s.delta_eps = v;
        break;
    }

    const std::string case_id = label + format_label(v);
    try {
      results.push_back(run_analysis(point, case_id));
    } catch (const std::exception& e) {
      SolvedCase failed;
      failed.case_id = case_id;
      failed.error = e.what();
      results.push_back(std::move(failed));
    }
  }
  return results;
}

std::string results_table_csv(const std::vector<SolvedCase>& cases) {
  std::ostringstream os;
  os << "case_id,lambda_star,modes_found,n_dofs,extra_dofs,n_free,status";
  size_t max_modes = 0;
  for (const SolvedCase& c : cases)
    max_modes = std::max(max_modes, c.lambdas_normalized.size());
  for (size_t k = 0; k < max_modes; ++k) os << ",lambda_" << k + 1;
  os << "\n";

  for (const SolvedCase& c : cases) {
    os << c.case_id << ",";
    if (!c.failed() && !c.lambdas_normalized.empty())
      os << format_double(c.lambdas_normalized.front());
    os << "," << c.lambdas_normalized.size() << "," << c.dofs.n_dofs << ","
       << c.dofs.n_extra << "," << c.n_free << ",";
    if (c.failed())
      os << "error: " << c.error;
    else if (c.no_buckling)
      os << "no-buckling";
    else
      os << "ok";
    for (size_t k = 0; k < max_modes; ++k) {
      os << ",";
      if (k < c.lambdas_normalized.size())
        os << format_double(c.lambdas_normalized[k]);
    }
    os << "\n";
  }
  return os.str();
}

std::string timings_csv(const std::vector<SolvedCase>& cases) {
  std::ostringstream os;
  os << "case_id,assembly_s,static_s,eigen_s\n";
  for (const SolvedCase& c : cases)
    os << c.case_id << "," << format_double(c.timings.assembly_s) << ","
       << format_double(c.timings.static_s) << ","
       << format_double(c.timings.eigen_s) << "\n";
  return os.str();
}

void write_run_outputs(const std::vector<SolvedCase>& cases,
                       const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream(fs::path(dir) / "results.csv") << results_table_csv(cases);
  std::ofstream(fs::path(dir) / "timings.csv") << timings_csv(cases);
}

}  // namespace lsiga
