/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/stiffener.hpp"

#include <cmath>

namespace lsiga {

double StiffenerSection::torsion_J() const {
  const double w = std::max(width, height);
  const double t = std::min(width, height);
  const double r = t / w;
  return w * t * t * t *
         (1.0 / 3.0 - 0.21 * r * (1.0 - r * r * r * r / 12.0));
}

StiffenerSection section_from_ratios(double gamma, double delta,
                                     double plate_width, double plate_thickness,
                                     double D11, double E, double nu,
                                     double alpha) {
  if (!(gamma > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("section_from_ratios: ratios must be positive");

  const double A = delta * plate_width * plate_thickness;
  const double I = gamma * plate_width * D11 / E;
  const double tp = plate_thickness;

  // b_s h_s = A and A (h^2/12 + (tp+h)^2/4) = I  =>  4h^2 + 6 tp h + 3 tp^2 = 12 I/A
  const double disc = 192.0 * I / A - 12.0 * tp * tp;
  if (disc <= 36.0 * tp * tp)
    throw NumericalError("section_from_ratios: no positive section for these ratios");
  const double h = (-6.0 * tp + std::sqrt(disc)) / 8.0;

  StiffenerSection s;
  s.height = h;
  s.width = A / h;
  s.E = E;
  s.nu = nu;
  s.alpha = alpha;
  return s;
}

namespace {

// counterclockwise boundary coordinate on the plate rectangle
double boundary_coordinate(const Vec2& p, double lx, double ly) {
  const double tol = 1e-12 * (lx + ly);
  if (std::abs(p.y()) < tol) return p.x();
  if (std::abs(p.x() - lx) < tol) return lx + p.y();
  if (std::abs(p.y() - ly) < tol) return lx + ly + (lx - p.x());
  if (std::abs(p.x()) < tol) return 2.0 * lx + ly + (ly - p.y());
  throw std::invalid_argument(
      "parabola_path: offset endpoints must lie on the plate boundary");
}

Vec2 boundary_point(double s, double lx, double ly) {
  const double per = 2.0 * (lx + ly);
  s = std::fmod(s, per);
  if (s < 0.0) s += per;
  if (s < lx) return Vec2(s, 0.0);
  s -= lx;
  if (s < ly) return Vec2(lx, s);
  s -= ly;
  if (s < lx) return Vec2(lx - s, ly);
  s -= lx;
  return Vec2(0.0, ly - s);
}

}  // namespace

StiffenerPath parabola_path(const Vec2& start, const Vec2& end,
                            const Vec2& middle, double delta_eps,
                            double plate_lx, double plate_ly) {
  if ((end - start).norm() < 1e-12 * (plate_lx + plate_ly))
    throw std::invalid_argument("parabola_path: degenerate (zero-length) path");

  Vec2 p0 = start, p2 = end;
  if (delta_eps != 0.0) {
    p0 = boundary_point(boundary_coordinate(start, plate_lx, plate_ly) - delta_eps,
                        plate_lx, plate_ly);
    p2 = boundary_point(boundary_coordinate(end, plate_lx, plate_ly) + delta_eps,
                        plate_lx, plate_ly);
  }
  KnotVector kv({0, 0, 0, 1, 1, 1}, 2);
  return StiffenerPath{NurbsCurve(kv, {p0, middle, p2}, {1.0, 1.0, 1.0})};
}

StiffenerPath parabola_path(const Vec2& start, const Vec2& end, double delta_eps,
                            double delta_dist, double plate_lx, double plate_ly) {
  return parabola_path(start, end, Vec2(delta_dist, delta_dist), delta_eps,
                       plate_lx, plate_ly);
}

namespace {

struct Station {
  double w_ds = 0.0;  // quadrature weight, arc-length measure
  Vec2 tangent;
  PointBasis pb;
  std::vector<int> dof_idx;
};

// Columns of one active function in the beam operators, given its value
// and physical gradient.
struct BeamCols {
  double dRds;  // tangential derivative
  double R;
};

std::vector<Station> build_stations(const PlateModel& model, const DofMap& dofs,
                                    const StiffenerPath& path, int refine_level) {
  // reject paths that leave the plate or cross a cutout
  {
    Vec2 pt, vel;
    for (int k = 0; k <= 256; ++k) {
      path.curve.map_parametric(k / 256.0, pt, vel);
      if (model.cutout.has_value() && model.cutout->signed_distance(pt) < 0.0)
        throw ModelError("stiffener: path crosses a cutout");
    }
  }

  const NurbsCurve curve = path.curve.h_refined(refine_level);
  const GaussRule1D g = gauss_legendre(2);
  const double xi_lo = model.patch.knots_xi().front();
  const double xi_hi = model.patch.knots_xi().back();
  const double eta_lo = model.patch.knots_eta().front();
  const double eta_hi = model.patch.knots_eta().back();

  // spans -> raster indices of the plate mesh
  std::vector<int> span_to_ix(model.patch.knots_xi().values().size(), -1);
  std::vector<int> span_to_iy(model.patch.knots_eta().values().size(), -1);
  for (const PatchMesh::Element& el : model.mesh.elements) {
    span_to_ix[el.span_xi] = el.ix;
    span_to_iy[el.span_eta] = el.iy;
  }

  std::vector<Station> stations;
  for (const KnotVector::Span& span : curve.knots().nonempty_spans()) {
    for (size_t q = 0; q < g.points.size(); ++q) {
      const double xi = span.lo + 0.5 * (g.points[q] + 1.0) * (span.hi - span.lo);
      Vec2 pt, vel;
      curve.map_parametric(xi, pt, vel);

      Station st;
      st.w_ds = g.weights[q] * 0.5 * (span.hi - span.lo) * vel.norm();
      st.tangent = vel.normalized();

      Vec2 uv_par;
      try {
        uv_par = model.patch.invert_point(pt);
      } catch (const NumericalError&) {
        throw ModelError("stiffener: quadrature station outside the plate domain");
      }
      if (uv_par.x() < xi_lo || uv_par.x() > xi_hi || uv_par.y() < eta_lo ||
          uv_par.y() > eta_hi)
        throw ModelError("stiffener: quadrature station outside the plate domain");

      const int sx = model.patch.knots_xi().find_span(uv_par.x());
      const int sy = model.patch.knots_eta().find_span(uv_par.y());
      const size_t e = static_cast<size_t>(span_to_ix[sx] + span_to_iy[sy] * model.mesh.nx);
      const PatchMesh::Element& el = model.mesh.elements[e];
      const bool enriched = model.cls.tags[e] == ElementTag::Enriched;
      const Vec2 uv(
          (uv_par.x() - 0.5 * (el.xi0 + el.xi1)) / (0.5 * (el.xi1 - el.xi0)),
          (uv_par.y() - 0.5 * (el.eta0 + el.eta1)) / (0.5 * (el.eta1 - el.eta0)));
      st.pb = evaluate_point_basis(model.patch, el, uv,
                                   enriched ? &model.cls.corner_phi[e] : nullptr);
      st.dof_idx = element_dof_indices(dofs, st.pb);
      stations.push_back(std::move(st));
    }
  }
  return stations;
}

// Beam strain operator at a station: rows (axial, bending, shear, twist).
Eigen::MatrixXd beam_strain_operator(const Station& st, double zbar) {
  const PointBasis& pb = st.pb;
  const double tx = st.tangent.x(), ty = st.tangent.y();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(4, kPlateDofs * pb.n_cols());

  auto fill = [&](int col0, double R, double Rx, double Ry) {
    const double dRds = tx * Rx + ty * Ry;
    B(0, col0 + 0) = dRds * tx;
    B(0, col0 + 1) = dRds * ty;
    B(0, col0 + 3) = zbar * dRds * tx;
    B(0, col0 + 4) = zbar * dRds * ty;
    B(1, col0 + 3) = dRds * tx;
    B(1, col0 + 4) = dRds * ty;
    B(2, col0 + 2) = dRds;
    B(2, col0 + 3) = R * tx;
    B(2, col0 + 4) = R * ty;
    B(3, col0 + 3) = -dRds * ty;
    B(3, col0 + 4) = dRds * tx;
  };

  for (int a = 0; a < pb.n_std(); ++a)
    fill(kPlateDofs * a, pb.N[a], pb.dNdx[a], pb.dNdy[a]);
  if (pb.enriched)
    for (int a = 0; a < pb.n_std(); ++a)
      fill(kPlateDofs * (pb.n_std() + a), pb.psi * pb.N[a],
           pb.N[a] * pb.dpsi_dx + pb.dNdx[a] * pb.psi,
           pb.N[a] * pb.dpsi_dy + pb.dNdy[a] * pb.psi);
  return B;
}

// Transverse deflection gradients (vertical and lateral) for the
// geometric stiffness of the axial prestress.
Eigen::MatrixXd beam_deflection_gradients(const Station& st, double zbar) {
  const PointBasis& pb = st.pb;
  const double tx = st.tangent.x(), ty = st.tangent.y();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2, kPlateDofs * pb.n_cols());

  auto fill = [&](int col0, double Rx, double Ry) {
    const double dRds = tx * Rx + ty * Ry;
    G(0, col0 + 2) = dRds;            // vertical
    G(1, col0 + 0) = -dRds * ty;      // lateral
    G(1, col0 + 1) = dRds * tx;
    G(1, col0 + 3) = -zbar * dRds * ty;
    G(1, col0 + 4) = zbar * dRds * tx;
  };

  for (int a = 0; a < pb.n_std(); ++a)
    fill(kPlateDofs * a, pb.dNdx[a], pb.dNdy[a]);
  if (pb.enriched)
    for (int a = 0; a < pb.n_std(); ++a)
      fill(kPlateDofs * (pb.n_std() + a),
           pb.N[a] * pb.dpsi_dx + pb.dNdx[a] * pb.psi,
           pb.N[a] * pb.dpsi_dy + pb.dNdy[a] * pb.psi);
  return G;
}

}  // namespace

StiffenerContribution stiffener_matrices(const PlateModel& model,
                                         const DofMap& dofs,
                                         const StiffenerPath& path,
                                         const StiffenerSection& section,
                                         int refine_level) {
  const std::vector<Station> stations =
      build_stations(model, dofs, path, refine_level);
  const double zbar = section.centroid_offset(model.thickness);
  const double EA = section.E * section.area();
  Eigen::Vector4d k_sec(EA, section.E * section.I_own(),
                        (5.0 / 6.0) * section.shear_modulus() * section.area(),
                        section.shear_modulus() * section.torsion_J());

  StiffenerContribution out;
  out.F_unit = Eigen::VectorXd::Zero(dofs.n_dofs);
  for (const Station& st : stations) {
    const Eigen::MatrixXd B = beam_strain_operator(st, zbar);
    const Eigen::MatrixXd Ks =
        st.w_ds * B.transpose() * k_sec.asDiagonal() * B;
    for (int i = 0; i < Ks.rows(); ++i)
      for (int j = 0; j < Ks.cols(); ++j)
        if (Ks(i, j) != 0.0)
          out.K.emplace_back(st.dof_idx[i], st.dof_idx[j], Ks(i, j));

    // axial restraint force per unit temperature rise
    const Eigen::VectorXd fe =
        st.w_ds * EA * section.alpha * B.row(0).transpose();
    for (size_t i = 0; i < st.dof_idx.size(); ++i)
      out.F_unit[st.dof_idx[i]] += fe[i];
  }
  return out;
}

Triplets stiffener_geometric(const PlateModel& model, const DofMap& dofs,
                             const StiffenerPath& path,
                             const StiffenerSection& section, int refine_level,
                             const Eigen::VectorXd& u_full, double dT_ref) {
  const std::vector<Station> stations =
      build_stations(model, dofs, path, refine_level);
  const double zbar = section.centroid_offset(model.thickness);
  const double EA = section.E * section.area();

  Triplets out;
  for (const Station& st : stations) {
    Eigen::VectorXd ue(st.dof_idx.size());
    for (size_t i = 0; i < st.dof_idx.size(); ++i) ue[i] = u_full[st.dof_idx[i]];

    const Eigen::MatrixXd B = beam_strain_operator(st, zbar);
    const double eps_c = B.row(0).dot(ue);
    const double N_s = EA * (eps_c - section.alpha * dT_ref);

    const Eigen::MatrixXd G = beam_deflection_gradients(st, zbar);
    const Eigen::MatrixXd Kg = st.w_ds * N_s * (G.transpose() * G);
    for (int i = 0; i < Kg.rows(); ++i)
      for (int j = 0; j < Kg.cols(); ++j)
        if (Kg(i, j) != 0.0)
          out.emplace_back(st.dof_idx[i], st.dof_idx[j], Kg(i, j));
  }
  return out;
}

}  // namespace lsiga
