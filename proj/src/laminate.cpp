/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/laminate.hpp"

#include <cmath>

namespace lsiga {

Ply Ply::isotropic(double E, double nu, double alpha, double thickness) {
  Ply p;
  p.E_L = p.E_T = E;
  p.G_LT = p.G_TT = 0.5 * E / (1.0 + nu);
  p.nu_LT = p.nu_TT = nu;
  p.alpha_L = p.alpha_T = alpha;
  p.theta = 0.0;
  p.thickness = thickness;
  return p;
}

double LaminateStack::thickness() const {
  double h = 0.0;
  for (const Ply& p : plies) h += p.thickness;
  return h;
}

LaminateStack LaminateStack::from_angles(const Ply& base,
                                         const std::vector<double>& angles,
                                         double total_thickness) {
  LaminateStack stack;
  for (double a : angles) {
    Ply p = base;
    p.theta = a;
    p.thickness = total_thickness / static_cast<double>(angles.size());
    stack.plies.push_back(p);
  }
  return stack;
}

ReducedStiffness reduced_stiffness(const Ply& ply) {
  if (!(ply.E_L > 0.0) || !(ply.E_T > 0.0) || !(ply.G_LT > 0.0) ||
      !(ply.G_TT > 0.0) || !(ply.thickness > 0.0))
    throw std::invalid_argument("reduced_stiffness: nonpositive modulus or thickness");
  if (ply.nu_LT < 0.0 || ply.nu_LT >= 0.5)
    throw std::invalid_argument("reduced_stiffness: nu_LT outside [0, 0.5)");

  const double nu_TL = ply.nu_LT * ply.E_T / ply.E_L;
  const double denom = 1.0 - ply.nu_LT * nu_TL;
  if (denom <= 0.0)
    throw NumericalError("reduced_stiffness: unstable material (1 - nu_LT*nu_TL <= 0)");

  ReducedStiffness Q;
  Q.Q11 = ply.E_L / denom;
  Q.Q22 = ply.E_T / denom;
  Q.Q12 = ply.nu_LT * Q.Q22;
  Q.Q66 = ply.G_LT;
  Q.Q44 = ply.G_TT;  // transverse shear 2-3
  Q.Q55 = ply.G_LT;  // transverse shear 1-3
  return Q;
}

TransformedStiffness transformed_stiffness(const ReducedStiffness& Q,
                                           double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double c2 = c * c, s2 = s * s;
  const double c4 = c2 * c2, s4 = s2 * s2;
  const double cs = c * s;

  TransformedStiffness T;
  T.Q11 = c4 * Q.Q11 + 2.0 * c2 * s2 * Q.Q12 + s4 * Q.Q22 + 4.0 * c2 * s2 * Q.Q66;
  T.Q12 = c2 * s2 * Q.Q11 + (c4 + s4) * Q.Q12 + c2 * s2 * Q.Q22 - 4.0 * c2 * s2 * Q.Q66;
  T.Q22 = s4 * Q.Q11 + 2.0 * c2 * s2 * Q.Q12 + c4 * Q.Q22 + 4.0 * c2 * s2 * Q.Q66;
  T.Q16 = c2 * cs * Q.Q11 + cs * (s2 - c2) * Q.Q12 - s2 * cs * Q.Q22 +
          2.0 * cs * (s2 - c2) * Q.Q66;
  T.Q26 = s2 * cs * Q.Q11 + cs * (c2 - s2) * Q.Q12 - c2 * cs * Q.Q22 +
          2.0 * cs * (c2 - s2) * Q.Q66;
  T.Q66 = c2 * s2 * Q.Q11 - 2.0 * c2 * s2 * Q.Q12 + c2 * s2 * Q.Q22 +
          (c2 - s2) * (c2 - s2) * Q.Q66;
  T.Q44 = c2 * Q.Q44 + s2 * Q.Q55;
  T.Q45 = cs * (Q.Q55 - Q.Q44);
  T.Q55 = s2 * Q.Q44 + c2 * Q.Q55;
  return T;
}

Eigen::Vector3d transformed_alpha(double alpha_L, double alpha_T, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return Eigen::Vector3d(c * c * alpha_L + s * s * alpha_T,
                         s * s * alpha_L + c * c * alpha_T,
                         2.0 * c * s * (alpha_L - alpha_T));
}

void ConstitutiveSet::assemble_Dp() {
  Dp.setZero();
  Dp.block<3, 3>(0, 0) = A;
  Dp.block<3, 3>(0, 3) = B;
  Dp.block<3, 3>(3, 0) = B;
  Dp.block<3, 3>(3, 3) = D;
  Dp.block<2, 2>(6, 6) = As;
}

ConstitutiveSet constitutive_set(const LaminateStack& stack, double K_shear) {
  if (stack.plies.empty())
    throw std::invalid_argument("constitutive_set: empty laminate stack");

  ConstitutiveSet out;
  out.A.setZero();
  out.B.setZero();
  out.D.setZero();
  out.As.setZero();
  out.NT_unit.setZero();
  out.MT_unit.setZero();
  out.thickness = stack.thickness();

  const double h = out.thickness;
  double z = -0.5 * h;
  for (const Ply& ply : stack.plies) {
    const double z0 = z, z1 = z + ply.thickness;
    z = z1;
    const TransformedStiffness Qb =
        transformed_stiffness(reduced_stiffness(ply), ply.theta);
    const Eigen::Matrix3d Qm = Qb.membrane();
    const Eigen::Vector3d av =
        transformed_alpha(ply.alpha_L, ply.alpha_T, ply.theta);

    const double d1 = z1 - z0;
    const double d2 = 0.5 * (z1 * z1 - z0 * z0);
    const double d3 = (z1 * z1 * z1 - z0 * z0 * z0) / 3.0;

    out.A += Qm * d1;
    out.B += Qm * d2;
    out.D += Qm * d3;
    out.As += K_shear * Qb.shear() * d1;
    out.NT_unit += Qm * av * d1;
    out.MT_unit += Qm * av * d2;
  }
  out.assemble_Dp();
  return out;
}

}  // namespace lsiga
