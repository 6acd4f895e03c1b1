/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_PLATE_FSDT_HPP
#define LSIGA_PLATE_FSDT_HPP

#include <vector>

#include "lsiga/cut_quadrature.hpp"
#include "lsiga/laminate.hpp"
#include "lsiga/levelset.hpp"

namespace lsiga {

/// Number of generalized displacements per control point: u0, v0, w0,
/// beta_x, beta_y, in this fixed order.
inline constexpr int kPlateDofs = 5;

/// Basis data at one quadrature point, pushed to physical gradients.
///
/// For enriched elements the enrichment function and its physical
/// gradient are carried along; the enriched shape functions are psi*N
/// with product-rule derivatives, and their columns are appended after
/// the standard ones.
struct PointBasis {
  std::vector<int> cps;            // global control-point grid indices
  Eigen::VectorXd N, dNdx, dNdy;   // standard values and gradients
  bool enriched = false;
  double psi = 0.0, dpsi_dx = 0.0, dpsi_dy = 0.0;
  double detJ = 0.0;               // parent square -> physical

  int n_std() const { return static_cast<int>(N.size()); }
  int n_cols() const { return (enriched ? 2 : 1) * n_std(); }
};

/// Evaluates the plate basis at a parent-square point of an element.
/// corner_phi activates the enrichment columns (cut elements).
PointBasis evaluate_point_basis(const NurbsPatch& patch,
                                const PatchMesh::Element& element,
                                const Vec2& uv,
                                const std::array<double, 4>* corner_phi);

/// Generalized strain operator, rows ordered
/// (eps_x0, eps_y0, gamma_xy0, kappa_x, kappa_y, kappa_xy, gamma_xz, gamma_yz),
/// with 5 columns per active function, enriched columns appended.
Eigen::MatrixXd strain_operator(const PointBasis& pb);

/// Gradient operator of (w0, beta_x, beta_y), rows
/// (w,x w,y bx,x bx,y by,x by,y), feeding the geometric stiffness.
Eigen::MatrixXd geometric_operator(const PointBasis& pb);

/// Mid-plane in-plane stress state of a plate of thickness t.
struct InPlaneStressState {
  double sigma_x0 = 0.0, sigma_y0 = 0.0, tau_xy0 = 0.0;
  double t = 0.0;
};

/// 6x6 in-plane stress matrix: thickness-weighted membrane block and the
/// two t^3/12 rotation blocks, each [sx txy; txy sy].
Eigen::Matrix<double, 6, 6> stress_matrix(const InPlaneStressState& state);

/// Cached quadrature data of one element: rule points with basis
/// evaluations, reused by stiffness, load, recovery and geometric terms.
struct ElementQuadrature {
  std::vector<RulePoint> rule;
  std::vector<PointBasis> basis;
};

ElementQuadrature element_quadrature(const NurbsPatch& patch,
                                     const PatchMesh::Element& element,
                                     ElementTag tag,
                                     const std::array<double, 4>* corner_phi,
                                     const LevelSetShape* shape,
                                     const TriangleRule& tri_rule);

Eigen::MatrixXd element_stiffness(const ElementQuadrature& eq,
                                  const Eigen::Matrix<double, 8, 8>& Dp);

Eigen::MatrixXd element_geometric_stiffness(
    const ElementQuadrature& eq, const std::vector<InPlaneStressState>& states);

Eigen::VectorXd element_thermal_force(const ElementQuadrature& eq,
                                      const Eigen::Vector3d& NT_unit,
                                      const Eigen::Vector3d& MT_unit,
                                      double dT);

}  // namespace lsiga

#endif  // LSIGA_PLATE_FSDT_HPP
