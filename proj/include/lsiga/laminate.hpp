/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_LAMINATE_HPP
#define LSIGA_LAMINATE_HPP

#include <vector>

#include "lsiga/common.hpp"

namespace lsiga {

/// Orthotropic lamina. L/T are the directions parallel/perpendicular to
/// the fibers; theta is the fiber angle in radians.
struct Ply {
  double E_L = 0.0, E_T = 0.0;      // Young's moduli
  double G_LT = 0.0, G_TT = 0.0;    // in-plane / transverse shear moduli
  double nu_LT = 0.0, nu_TT = 0.0;  // Poisson ratios
  double alpha_L = 0.0, alpha_T = 0.0;  // thermal expansion (1/degC)
  double theta = 0.0;               // fiber angle (rad)
  double thickness = 0.0;

  static Ply isotropic(double E, double nu, double alpha, double thickness);
};

/// Ordered bottom-to-top ply stack; interfaces span [-h/2, h/2].
struct LaminateStack {
  std::vector<Ply> plies;

  double thickness() const;

  /// Equal-thickness stack of one base material at the given fiber
  /// angles (radians), bottom to top.
  static LaminateStack from_angles(const Ply& base,
                                   const std::vector<double>& angles,
                                   double total_thickness);
};

/// Plane-stress reduced stiffnesses of a lamina in material axes.
struct ReducedStiffness {
  double Q11 = 0, Q12 = 0, Q22 = 0, Q66 = 0, Q44 = 0, Q55 = 0;
};

/// Reduced stiffnesses rotated to laminate axes.
struct TransformedStiffness {
  double Q11 = 0, Q12 = 0, Q22 = 0, Q16 = 0, Q26 = 0, Q66 = 0;
  double Q44 = 0, Q45 = 0, Q55 = 0;

  Eigen::Matrix3d membrane() const {
    Eigen::Matrix3d M;
    M << Q11, Q12, Q16, Q12, Q22, Q26, Q16, Q26, Q66;
    return M;
  }
  Eigen::Matrix2d shear() const {
    Eigen::Matrix2d S;
    S << Q44, Q45, Q45, Q55;
    return S;
  }
};

/// Thickness-integrated constitutive matrices of a laminate and the
/// thermal resultants per unit temperature rise.
struct ConstitutiveSet {
  Eigen::Matrix3d A, B, D;
  Eigen::Matrix2d As;
  Eigen::Matrix<double, 8, 8> Dp;  // [A B 0; B D 0; 0 0 As]
  Eigen::Vector3d NT_unit, MT_unit;
  double thickness = 0.0;

  void assemble_Dp();
};

/// Plane-stress reduction. Throws NumericalError when 1 - nu_LT*nu_TL
/// is not positive (unstable material data).
ReducedStiffness reduced_stiffness(const Ply& ply);

TransformedStiffness transformed_stiffness(const ReducedStiffness& Q,
                                           double theta);

/// (alpha_x, alpha_y, alpha_xy) in laminate axes.
Eigen::Vector3d transformed_alpha(double alpha_L, double alpha_T, double theta);

/// A/B/D/As assembly with shear correction K (default 5/6), plus thermal
/// force and moment resultants per unit temperature rise.
ConstitutiveSet constitutive_set(const LaminateStack& stack,
                                 double K_shear = 5.0 / 6.0);

}  // namespace lsiga

#endif  // LSIGA_LAMINATE_HPP
