/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/plate_fsdt.hpp"

namespace lsiga {

PointBasis evaluate_point_basis(const NurbsPatch& patch,
                                const PatchMesh::Element& element,
                                const Vec2& uv,
                                const std::array<double, 4>* corner_phi) {
  const Vec2 par = PatchMesh::parent_to_parametric(element, uv);
  const SurfaceBasis sb = patch.surface_basis(par.x(), par.y());
  const int p = patch.knots_xi().degree(), q = patch.knots_eta().degree();

  PointBasis pb;
  pb.cps = patch.active_control_points(sb.span_xi, sb.span_eta);
  pb.N = sb.R;

  // parametric geometry Jacobian
  Mat2 Jp = Mat2::Zero();
  int k = 0;
  for (int j = 0; j <= q; ++j)
    for (int i = 0; i <= p; ++i, ++k) {
      const Vec2& P = patch.control_point(sb.i0 + i, sb.j0 + j);
      Jp.col(0) += sb.dRdxi[k] * P;
      Jp.col(1) += sb.dRdeta[k] * P;
    }

  const double hx = 0.5 * (element.xi1 - element.xi0);
  const double hy = 0.5 * (element.eta1 - element.eta0);
  Mat2 Jparent = Jp;
  Jparent.col(0) *= hx;
  Jparent.col(1) *= hy;
  pb.detJ = Jparent.determinant();
  if (pb.detJ <= 0.0)
    throw NumericalError("evaluate_point_basis: inverted element (det(J) <= 0)");

  const Mat2 JpinvT = Jp.inverse().transpose();
  pb.dNdx.resize(pb.N.size());
  pb.dNdy.resize(pb.N.size());
  for (int a = 0; a < pb.N.size(); ++a) {
    const Vec2 g = JpinvT * Vec2(sb.dRdxi[a], sb.dRdeta[a]);
    pb.dNdx[a] = g.x();
    pb.dNdy[a] = g.y();
  }

  if (corner_phi != nullptr) {
    pb.enriched = true;
    const PsiValue pv = psi_on_parent(*corner_phi, uv);
    const Vec2 g = Jparent.inverse().transpose() * Vec2(pv.dpsi_du, pv.dpsi_dv);
    pb.psi = pv.psi;
    pb.dpsi_dx = g.x();
    pb.dpsi_dy = g.y();
  }
  return pb;
}

namespace {

// Fills the 5 columns of one active function into B given its value and
// physical gradient.
inline void fill_strain_columns(Eigen::MatrixXd& B, int col0, double R,
                                double Rx, double Ry) {
  B(0, col0 + 0) = Rx;                     // eps_x = u0,x
  B(1, col0 + 1) = Ry;                     // eps_y = v0,y
  B(2, col0 + 0) = Ry;                     // gamma_xy = u0,y + v0,x
  B(2, col0 + 1) = Rx;
  B(3, col0 + 3) = Rx;                     // kappa_x = bx,x
  B(4, col0 + 4) = Ry;                     // kappa_y = by,y
  B(5, col0 + 3) = Ry;                     // kappa_xy = bx,y + by,x
  B(5, col0 + 4) = Rx;
  B(6, col0 + 2) = Rx;                     // gamma_xz = w,x + bx
  B(6, col0 + 3) = R;
  B(7, col0 + 2) = Ry;                     // gamma_yz = w,y + by
  B(7, col0 + 4) = R;
}

inline void fill_geometric_columns(Eigen::MatrixXd& B, int col0, double Rx,
                                   double Ry) {
  B(0, col0 + 2) = Rx;  // w,x
  B(1, col0 + 2) = Ry;  // w,y
  B(2, col0 + 3) = Rx;  // bx,x
  B(3, col0 + 3) = Ry;  // bx,y
  B(4, col0 + 4) = Rx;  // by,x
  B(5, col0 + 4) = Ry;  // by,y
}

}  // namespace

Eigen::MatrixXd strain_operator(const PointBasis& pb) {
  const int n = pb.n_std();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(8, kPlateDofs * pb.n_cols());
  for (int a = 0; a < n; ++a)
    fill_strain_columns(B, kPlateDofs * a, pb.N[a], pb.dNdx[a], pb.dNdy[a]);
  if (pb.enriched) {
    for (int a = 0; a < n; ++a) {
      // d(psi N)/dx = N psi,x + N,x psi
      const double R = pb.psi * pb.N[a];
      const double Rx = pb.N[a] * pb.dpsi_dx + pb.dNdx[a] * pb.psi;
      const double Ry = pb.N[a] * pb.dpsi_dy + pb.dNdy[a] * pb.psi;
      fill_strain_columns(B, kPlateDofs * (n + a), R, Rx, Ry);
    }
  }
  return B;
}

Eigen::MatrixXd geometric_operator(const PointBasis& pb) {
  const int n = pb.n_std();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(6, kPlateDofs * pb.n_cols());
  for (int a = 0; a < n; ++a)
    fill_geometric_columns(B, kPlateDofs * a, pb.dNdx[a], pb.dNdy[a]);
  if (pb.enriched) {
    for (int a = 0; a < n; ++a) {
      const double Rx = pb.N[a] * pb.dpsi_dx + pb.dNdx[a] * pb.psi;
      const double Ry = pb.N[a] * pb.dpsi_dy + pb.dNdy[a] * pb.psi;
      fill_geometric_columns(B, kPlateDofs * (n + a), Rx, Ry);
    }
  }
  return B;
}

Eigen::Matrix<double, 6, 6> stress_matrix(const InPlaneStressState& s) {
  Eigen::Matrix<double, 6, 6> sp = Eigen::Matrix<double, 6, 6>::Zero();
  Mat2 block;
  block << s.sigma_x0, s.tau_xy0, s.tau_xy0, s.sigma_y0;
  sp.block<2, 2>(0, 0) = s.t * block;
  const double r = s.t * s.t * s.t / 12.0;
  sp.block<2, 2>(2, 2) = r * block;
  sp.block<2, 2>(4, 4) = r * block;
  return sp;
}

ElementQuadrature element_quadrature(const NurbsPatch& patch,
                                     const PatchMesh::Element& element,
                                     ElementTag tag,
                                     const std::array<double, 4>* corner_phi,
                                     const LevelSetShape* shape,
                                     const TriangleRule& tri_rule) {
  ElementQuadrature eq;
  eq.rule = physical_rule(patch, element, tag, shape, tri_rule);
  eq.basis.reserve(eq.rule.size());
  const std::array<double, 4>* phi =
      (tag == ElementTag::Enriched) ? corner_phi : nullptr;
  for (const RulePoint& rp : eq.rule)
    eq.basis.push_back(evaluate_point_basis(patch, element, rp.uv, phi));
  return eq;
}

Eigen::MatrixXd element_stiffness(const ElementQuadrature& eq,
                                  const Eigen::Matrix<double, 8, 8>& Dp) {
  if (eq.rule.empty()) return Eigen::MatrixXd();
  const int ncols = kPlateDofs * eq.basis.front().n_cols();
  Eigen::MatrixXd Ke = Eigen::MatrixXd::Zero(ncols, ncols);
  for (size_t k = 0; k < eq.rule.size(); ++k) {
    const Eigen::MatrixXd B = strain_operator(eq.basis[k]);
    const double w = eq.rule[k].weight * eq.basis[k].detJ;
    Ke.noalias() += w * B.transpose() * Dp * B;
  }
  return Ke;
}

Eigen::MatrixXd element_geometric_stiffness(
    const ElementQuadrature& eq, const std::vector<InPlaneStressState>& states) {
  if (eq.rule.empty()) return Eigen::MatrixXd();
  const int ncols = kPlateDofs * eq.basis.front().n_cols();
  Eigen::MatrixXd Kg = Eigen::MatrixXd::Zero(ncols, ncols);
  for (size_t k = 0; k < eq.rule.size(); ++k) {
    const Eigen::MatrixXd B = geometric_operator(eq.basis[k]);
    const Eigen::Matrix<double, 6, 6> sp = stress_matrix(states[k]);
    const double w = eq.rule[k].weight * eq.basis[k].detJ;
    Kg.noalias() += w * B.transpose() * sp * B;
  }
  return Kg;
}

Eigen::VectorXd element_thermal_force(const ElementQuadrature& eq,
                                      const Eigen::Vector3d& NT_unit,
                                      const Eigen::Vector3d& MT_unit,
                                      double dT) {
  if (eq.rule.empty()) return Eigen::VectorXd();
  const int ncols = kPlateDofs * eq.basis.front().n_cols();
  Eigen::VectorXd fe = Eigen::VectorXd::Zero(ncols);
  Eigen::Matrix<double, 8, 1> rhs = Eigen::Matrix<double, 8, 1>::Zero();
  rhs.segment<3>(0) = NT_unit * dT;
  rhs.segment<3>(3) = MT_unit * dT;
  for (size_t k = 0; k < eq.rule.size(); ++k) {
    const Eigen::MatrixXd B = strain_operator(eq.basis[k]);
    const double w = eq.rule[k].weight * eq.basis[k].detJ;
    fe.noalias() += w * B.transpose() * rhs;
  }
  return fe;
}

}  // namespace lsiga
