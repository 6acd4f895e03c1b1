/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_SOLVER_ASSEMBLY_HPP
#define LSIGA_SOLVER_ASSEMBLY_HPP

#include <Eigen/Sparse>

#include <optional>

#include "lsiga/plate_fsdt.hpp"

namespace lsiga {

using SpMat = Eigen::SparseMatrix<double>;
using Triplets = std::vector<Eigen::Triplet<double>>;

/// Dense, unique DOF indices: five standard DOFs per control point and
/// five extra DOFs per enriched control point, interleaved per control
/// point to keep the matrix profile narrow.
struct DofMap {
  std::vector<int> std_base;  // first of the 5 standard DOFs
  std::vector<int> enr_base;  // first of the 5 extra DOFs, -1 if none
  int n_dofs = 0;
  int n_extra = 0;

  static DofMap build(const std::vector<bool>& cp_enriched);
};

/// Assembled plate data: geometry, laminate, optional cutout with its
/// classification, and the cached per-element material quadrature.
struct PlateModel {
  NurbsPatch patch;
  PatchMesh mesh;
  ConstitutiveSet laminate;
  double thickness = 0.0;
  std::optional<LevelSetShape> cutout;
  ElementClassification cls;
  std::vector<ElementQuadrature> equad;

  /// Parent-area to physical-area factor of an element map (flat
  /// rectangular patches have a constant Jacobian; the general value is
  /// carried per quadrature point).
  int num_elements() const { return static_cast<int>(mesh.elements.size()); }
};

PlateModel build_plate_model(const NurbsPatch& patch,
                             const ConstitutiveSet& laminate, double thickness,
                             const std::optional<LevelSetShape>& cutout,
                             const TriangleRule& tri_rule);

/// Scatters element stiffness and unit thermal force into global
/// triplets/vector. K is symmetric; rows of void-only DOFs stay empty
/// and are constrained out later.
struct AssembledPlate {
  Triplets K;
  Eigen::VectorXd F_unit;  // thermal force for a unit temperature rise
};
AssembledPlate assemble_plate(const PlateModel& model, const DofMap& dofs);

/// Global DOF indices of a basis evaluation's columns: the standard
/// block followed by the enriched block on cut elements.
std::vector<int> element_dof_indices(const DofMap& dofs, const PointBasis& pb);

SpMat matrix_from_triplets(int n, const Triplets& triplets);

enum class BcKind { CCCC, SSSS };

/// Reduction from full to free DOFs by row/column elimination.
struct ConstraintSet {
  std::vector<int> full_to_free;  // -1 when fixed
  std::vector<int> free_to_full;
  int n_free = 0;
  int n_auto_fixed = 0;  // zero-stiffness DOFs constrained automatically

  Eigen::VectorXd reduce(const Eigen::VectorXd& full) const;
  Eigen::VectorXd expand(const Eigen::VectorXd& free) const;
};

/// Applies the edge constraint sets (CCCC: all five DOFs on every
/// boundary control point; SSSS: u0,v0,w0 plus the tangential rotation)
/// and auto-constrains DOFs whose stiffness row is structurally zero
/// (basis functions supported entirely inside a cutout).
ConstraintSet build_constraints(const PlateModel& model, const DofMap& dofs,
                                BcKind bc, const SpMat& K);

SpMat reduce_matrix(const SpMat& K, const ConstraintSet& cons);

/// Static thermal prestress at a reference temperature rise: solves
/// K u = F_th(dT_ref) and recovers the mid-plane in-plane stress state at
/// every material quadrature point (N = A eps + B kappa - NT dT, sigma = N/t).
struct PrestressResult {
  Eigen::VectorXd u_full;
  std::vector<std::vector<InPlaneStressState>> states;  // per element, per point
};
PrestressResult prestress_solve(const PlateModel& model, const DofMap& dofs,
                                const ConstraintSet& cons, const SpMat& K_ff,
                                const Eigen::VectorXd& F_unit_full,
                                double dT_ref,
                                const Eigen::VectorXd* extra_force_full = nullptr);

/// Geometric stiffness triplets from the recovered stress field.
Triplets assemble_geometric(const PlateModel& model, const DofMap& dofs,
                            const PrestressResult& prestress);

/// Buckling eigenpairs of K phi = -lambda K_G phi with K SPD.
///
/// Solved by subspace iteration on the shifted-inverted pencil (sparse
/// LDLT of K, block Rayleigh-Ritz), with a dense reduction fallback for
/// small systems. Modes come back K-orthonormal up to the final
/// normalization ||phi||_inf = 1 and K_G-orthogonal.
struct BucklingSolution {
  std::vector<double> lambdas;  // ascending, positive
  Eigen::MatrixXd modes_free;   // free-DOF mode vectors (columns)
  bool no_buckling = false;     // no positive eigenvalue found
  int iterations = 0;
};
BucklingSolution buckling_solve(const SpMat& K_ff, const SpMat& KG_ff,
                                int n_modes, double tol = 5e-13,
                                int max_iterations = 400);

/// Reporting conventions for the critical temperature multiplier.
enum class Normalization {
  Identity,        // lambda* = dT_cr (dT_ref = 1)
  Alpha0E3,        // lambda* = alpha0 * dT_cr * 1e3
  Alpha0E3Times100 // thin-plate presentation, additionally x100
};
double normalized_critical_temperature(double dT_cr, Normalization convention,
                                       double alpha0 = 1.0);

}  // namespace lsiga

#endif  // LSIGA_SOLVER_ASSEMBLY_HPP
