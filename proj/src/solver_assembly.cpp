/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/solver_assembly.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace lsiga {

DofMap DofMap::build(const std::vector<bool>& cp_enriched) {
  DofMap map;
  const int n_cp = static_cast<int>(cp_enriched.size());
  map.std_base.resize(n_cp);
  map.enr_base.assign(n_cp, -1);
  int next = 0;
  for (int c = 0; c < n_cp; ++c) {
    map.std_base[c] = next;
    next += kPlateDofs;
    if (cp_enriched[c]) {
      map.enr_base[c] = next;
      next += kPlateDofs;
      map.n_extra += kPlateDofs;
    }
  }
  map.n_dofs = next;
  return map;
}

PlateModel build_plate_model(const NurbsPatch& patch,
                             const ConstitutiveSet& laminate, double thickness,
                             const std::optional<LevelSetShape>& cutout,
                             const TriangleRule& tri_rule) {
  PlateModel model{patch, build_mesh(patch), laminate, thickness, cutout, {}, {}};

  if (cutout.has_value()) {
    model.cls = classify_elements(model.patch, model.mesh, *cutout);
  } else {
    model.cls.tags.assign(model.mesh.elements.size(), ElementTag::Outer);
    model.cls.corner_phi.assign(model.mesh.elements.size(), {1, 1, 1, 1});
    model.cls.cp_enriched.assign(model.patch.num_control_points(), false);
    model.cls.cp_phi.assign(model.patch.num_control_points(), 1.0);
    model.cls.num_enriched_cp = 0;
  }

  model.equad.reserve(model.mesh.elements.size());
  const LevelSetShape* shape = cutout.has_value() ? &*cutout : nullptr;
  for (size_t e = 0; e < model.mesh.elements.size(); ++e)
    model.equad.push_back(element_quadrature(model.patch, model.mesh.elements[e],
                                             model.cls.tags[e],
                                             &model.cls.corner_phi[e], shape,
                                             tri_rule));
  return model;
}

std::vector<int> element_dof_indices(const DofMap& dofs, const PointBasis& pb) {
  std::vector<int> idx(kPlateDofs * pb.n_cols());
  for (int a = 0; a < pb.n_std(); ++a)
    for (int c = 0; c < kPlateDofs; ++c)
      idx[kPlateDofs * a + c] = dofs.std_base[pb.cps[a]] + c;
  if (pb.enriched) {
    for (int a = 0; a < pb.n_std(); ++a) {
      const int base = dofs.enr_base[pb.cps[a]];
      if (base < 0)
        throw ModelError("assemble: enriched element touches an unmarked control point");
      for (int c = 0; c < kPlateDofs; ++c)
        idx[kPlateDofs * (pb.n_std() + a) + c] = base + c;
    }
  }
  return idx;
}

namespace {

void scatter_symmetric(const Eigen::MatrixXd& Ke, const std::vector<int>& idx,
                       Triplets& out) {
  for (int i = 0; i < Ke.rows(); ++i)
    for (int j = 0; j < Ke.cols(); ++j)
      if (Ke(i, j) != 0.0) out.emplace_back(idx[i], idx[j], Ke(i, j));
}

}  // namespace

AssembledPlate assemble_plate(const PlateModel& model, const DofMap& dofs) {
  AssembledPlate out;
  out.F_unit = Eigen::VectorXd::Zero(dofs.n_dofs);

  for (int e = 0; e < model.num_elements(); ++e) {
    const ElementQuadrature& eq = model.equad[e];
    if (eq.rule.empty()) continue;
    const Eigen::MatrixXd Ke = element_stiffness(eq, model.laminate.Dp);
    const Eigen::VectorXd fe = element_thermal_force(
        eq, model.laminate.NT_unit, model.laminate.MT_unit, 1.0);
    const std::vector<int> idx = element_dof_indices(dofs, eq.basis.front());
    scatter_symmetric(Ke, idx, out.K);
    for (size_t i = 0; i < idx.size(); ++i) out.F_unit[idx[i]] += fe[i];
  }
  return out;
}

SpMat matrix_from_triplets(int n, const Triplets& triplets) {
  SpMat K(n, n);
  K.setFromTriplets(triplets.begin(), triplets.end());
  return K;
}

Eigen::VectorXd ConstraintSet::reduce(const Eigen::VectorXd& full) const {
  Eigen::VectorXd f(n_free);
  for (int i = 0; i < n_free; ++i) f[i] = full[free_to_full[i]];
  return f;
}

Eigen::VectorXd ConstraintSet::expand(const Eigen::VectorXd& free) const {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(full_to_free.size());
  for (int i = 0; i < n_free; ++i) full[free_to_full[i]] = free[i];
  return full;
}

ConstraintSet build_constraints(const PlateModel& model, const DofMap& dofs,
                                BcKind bc, const SpMat& K) {
  const int n = model.patch.n(), m = model.patch.m();
  std::vector<bool> fixed(dofs.n_dofs, false);

  auto fix_cp = [&](int cp, std::initializer_list<int> comps) {
    for (int c : comps) {
      fixed[dofs.std_base[cp] + c] = true;
      if (dofs.enr_base[cp] >= 0) fixed[dofs.enr_base[cp] + c] = true;
    }
  };

  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) {
      const bool x_edge = (i == 0 || i == n - 1);
      const bool y_edge = (j == 0 || j == m - 1);
      if (!x_edge && !y_edge) continue;
      const int cp = i + j * n;
      if (bc == BcKind::CCCC) {
        fix_cp(cp, {0, 1, 2, 3, 4});
      } else {
        // SSSS: tangential rotation fixed, normal rotation free
        if (x_edge) fix_cp(cp, {0, 1, 2, 4});
        if (y_edge) fix_cp(cp, {0, 1, 2, 3});
      }
    }

  // DOFs with a structurally empty stiffness row (support entirely inside
  // the cutout) cannot stay in the system.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dofs.n_dofs);
  for (int k = 0; k < K.outerSize(); ++k)
    for (SpMat::InnerIterator it(K, k); it; ++it)
      if (it.row() == it.col()) diag[it.row()] = it.value();
  const double dmax = diag.cwiseAbs().maxCoeff();

  ConstraintSet cons;
  cons.full_to_free.assign(dofs.n_dofs, -1);
  for (int d = 0; d < dofs.n_dofs; ++d) {
    if (!fixed[d] && std::abs(diag[d]) <= 1e-14 * dmax) {
      fixed[d] = true;
      ++cons.n_auto_fixed;
    }
    if (!fixed[d]) {
      cons.full_to_free[d] = cons.n_free++;
      cons.free_to_full.push_back(d);
    }
  }
  return cons;
}

SpMat reduce_matrix(const SpMat& K, const ConstraintSet& cons) {
  Triplets trip;
  trip.reserve(K.nonZeros());
  for (int k = 0; k < K.outerSize(); ++k)
    for (SpMat::InnerIterator it(K, k); it; ++it) {
      const int r = cons.full_to_free[it.row()];
      const int c = cons.full_to_free[it.col()];
      if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
    }
  return matrix_from_triplets(cons.n_free, trip);
}

PrestressResult prestress_solve(const PlateModel& model, const DofMap& dofs,
                                const ConstraintSet& cons, const SpMat& K_ff,
                                const Eigen::VectorXd& F_unit_full,
                                double dT_ref,
                                const Eigen::VectorXd* extra_force_full) {
  Eigen::VectorXd F_full = F_unit_full * dT_ref;
  if (extra_force_full != nullptr) F_full += *extra_force_full * dT_ref;

  PrestressResult out;
  if (dT_ref == 0.0) {
    out.u_full = Eigen::VectorXd::Zero(dofs.n_dofs);
  } else {
    Eigen::SimplicialLDLT<SpMat> ldlt(K_ff);
    if (ldlt.info() != Eigen::Success)
      throw NumericalError("prestress_solve: stiffness factorization failed "
                           "(insufficient boundary conditions?)");
    const Eigen::VectorXd u_f = ldlt.solve(cons.reduce(F_full));
    out.u_full = cons.expand(u_f);
  }

  const Eigen::Matrix3d& A = model.laminate.A;
  const Eigen::Matrix3d& B = model.laminate.B;
  out.states.resize(model.num_elements());
  for (int e = 0; e < model.num_elements(); ++e) {
    const ElementQuadrature& eq = model.equad[e];
    out.states[e].reserve(eq.rule.size());
    if (eq.rule.empty()) continue;

    const std::vector<int> idx = element_dof_indices(dofs, eq.basis.front());
    Eigen::VectorXd ue(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) ue[i] = out.u_full[idx[i]];

    for (size_t k = 0; k < eq.rule.size(); ++k) {
      const Eigen::VectorXd strains = strain_operator(eq.basis[k]) * ue;
      const Eigen::Vector3d N = A * strains.segment<3>(0) +
                                B * strains.segment<3>(3) -
                                model.laminate.NT_unit * dT_ref;
      InPlaneStressState s;
      s.t = model.thickness;
      s.sigma_x0 = N[0] / model.thickness;
      s.sigma_y0 = N[1] / model.thickness;
      s.tau_xy0 = N[2] / model.thickness;
      out.states[e].push_back(s);
    }
  }
  return out;
}

Triplets assemble_geometric(const PlateModel& model, const DofMap& dofs,
                            const PrestressResult& prestress) {
  Triplets trip;
  for (int e = 0; e < model.num_elements(); ++e) {
    const ElementQuadrature& eq = model.equad[e];
    if (eq.rule.empty()) continue;
    const Eigen::MatrixXd Kg = element_geometric_stiffness(eq, prestress.states[e]);
    const std::vector<int> idx = element_dof_indices(dofs, eq.basis.front());
    scatter_symmetric(Kg, idx, trip);
  }
  return trip;
}

namespace {

// Modified Gram-Schmidt in the K-inner product, two passes.
void k_orthonormalize(const SpMat& K, Eigen::MatrixXd& X) {
  const int q = static_cast<int>(X.cols());
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < q; ++i) {
      Eigen::VectorXd Kxi = K * X.col(i);
      for (int j = 0; j < i; ++j) {
        const double proj = X.col(j).dot(Kxi);
        X.col(i) -= proj * X.col(j);
        Kxi = K * X.col(i);
      }
      const double nrm = std::sqrt(X.col(i).dot(Kxi));
      if (nrm > 0.0) X.col(i) /= nrm;
    }
  }
}

BucklingSolution dense_buckling(const SpMat& K, const SpMat& KG, int n_modes) {
  const Eigen::MatrixXd Kd = Eigen::MatrixXd(K);
  const Eigen::MatrixXd Bd = -Eigen::MatrixXd(KG);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Bd, Kd);
  if (ges.info() != Eigen::Success)
    throw NumericalError("buckling_solve: dense generalized eigensolve failed");

  BucklingSolution sol;
  const Eigen::VectorXd mu = ges.eigenvalues();  // ascending
  const double mu_scale = mu.cwiseAbs().maxCoeff();
  for (int i = static_cast<int>(mu.size()) - 1; i >= 0; --i) {
    if (static_cast<int>(sol.lambdas.size()) >= n_modes) break;
    if (mu[i] <= 1e-12 * mu_scale) break;
    sol.lambdas.push_back(1.0 / mu[i]);
    sol.modes_free.conservativeResize(Kd.rows(), sol.lambdas.size());
    sol.modes_free.col(sol.lambdas.size() - 1) = ges.eigenvectors().col(i);
  }
  sol.no_buckling = sol.lambdas.empty();
  return sol;
}

}  // namespace

BucklingSolution buckling_solve(const SpMat& K_ff, const SpMat& KG_ff,
                                int n_modes, double tol, int max_iterations) {
  const int nf = static_cast<int>(K_ff.rows());
  if (nf == 0) throw NumericalError("buckling_solve: empty system");
  n_modes = std::min(n_modes, nf);

  if (nf <= 500) return dense_buckling(K_ff, KG_ff, n_modes);

  const int q = std::min(2 * n_modes + 4, nf);
  Eigen::SimplicialLDLT<SpMat> ldlt(K_ff);
  if (ldlt.info() != Eigen::Success)
    throw NumericalError("buckling_solve: stiffness factorization failed");

  const SpMat B = -KG_ff;

  // deterministic pseudo-random start block
  Eigen::MatrixXd X(nf, q);
  uint64_t state = 0x2545F4914F6CDD1DULL;
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < nf; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      X(i, j) = (static_cast<double>(state >> 11) / 9007199254740992.0) - 0.5;
    }

  BucklingSolution sol;
  Eigen::VectorXd mu_prev = Eigen::VectorXd::Zero(n_modes);
  Eigen::VectorXd mu_top = Eigen::VectorXd::Zero(n_modes);
  Eigen::MatrixXd Q;

  int it = 0;
  for (; it < max_iterations; ++it) {
    // Y = K^{-1} B X, then Rayleigh-Ritz on the K-orthonormalized block
    Eigen::MatrixXd Y(nf, q);
    for (int j = 0; j < q; ++j) Y.col(j) = ldlt.solve(B * X.col(j));
    k_orthonormalize(K_ff, Y);
    Q = Y;

    Eigen::MatrixXd Br(q, q);
    const Eigen::MatrixXd BQ = B * Q;
    Br.noalias() = Q.transpose() * BQ;
    Br = 0.5 * (Br + Br.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Br);
    // reorder columns by descending mu
    Eigen::MatrixXd C(q, q);
    Eigen::VectorXd mu(q);
    for (int j = 0; j < q; ++j) {
      mu[j] = es.eigenvalues()[q - 1 - j];
      C.col(j) = es.eigenvectors().col(q - 1 - j);
    }
    X.noalias() = Q * C;
    Q = X;

    for (int j = 0; j < n_modes; ++j) mu_top[j] = mu[j];
    double rel = 0.0;
    for (int j = 0; j < n_modes; ++j) {
      const double denom = std::max(std::abs(mu_top[j]), 1e-300);
      rel = std::max(rel, std::abs(mu_top[j] - mu_prev[j]) / denom);
    }
    mu_prev = mu_top;
    if (it > 1 && rel < tol) break;
  }
  sol.iterations = it + 1;

  const double mu_scale = std::max(mu_top.cwiseAbs().maxCoeff(), 1e-300);
  for (int j = 0; j < n_modes; ++j) {
    if (mu_top[j] <= 1e-12 * mu_scale) break;
    sol.lambdas.push_back(1.0 / mu_top[j]);
    sol.modes_free.conservativeResize(nf, sol.lambdas.size());
    sol.modes_free.col(sol.lambdas.size() - 1) = Q.col(j);
  }
  sol.no_buckling = sol.lambdas.empty();
  return sol;
}

double normalized_critical_temperature(double dT_cr, Normalization convention,
                                       double alpha0) {
  switch (convention) {
    case Normalization::Identity: return dT_cr;
    case Normalization::Alpha0E3: return alpha0 * dT_cr * 1e3;
    case Normalization::Alpha0E3Times100: return alpha0 * dT_cr * 1e5;
  }
  return dT_cr;
}

}  // namespace lsiga
