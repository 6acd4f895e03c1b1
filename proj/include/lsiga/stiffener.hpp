/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_STIFFENER_HPP
#define LSIGA_STIFFENER_HPP

#include "lsiga/solver_assembly.hpp"

namespace lsiga {

/// Rectangular isotropic stiffener section attached on top of the plate
/// mid-surface; the centroid offset is (t_plate + height)/2.
struct StiffenerSection {
  double width = 0.0;   // b_s
  double height = 0.0;  // h_s
  double E = 0.0, nu = 0.0, alpha = 0.0;

  double area() const { return width * height; }
  double I_own() const { return width * height * height * height / 12.0; }
  double centroid_offset(double t_plate) const { return 0.5 * (t_plate + height); }
  double shear_modulus() const { return 0.5 * E / (1.0 + nu); }
  /// St-Venant torsion constant of the rectangle (beta-table approximation).
  double torsion_J() const;
};

/// Sizes the rectangle from the stiffness ratio gamma = EI/(bD) and the
/// area ratio delta = A_s/(b t_p), with D the plate's D11 and b its edge
/// length. I is the inertia about the plate mid-plane, so
/// b_s h_s^3/12 + A_s zbar^2 = I with zbar = (t_p + h_s)/2.
/// Throws NumericalError when no positive section exists.
StiffenerSection section_from_ratios(double gamma, double delta,
                                     double plate_width, double plate_thickness,
                                     double D11, double E, double nu,
                                     double alpha);

/// Quadratic Bezier path of a stiffener on the plate mid-surface.
struct StiffenerPath {
  NurbsCurve curve;  // degree 2, three control points
};

/// Three-control-point parabola through offset endpoints. Both endpoints
/// must lie on the plate boundary; delta_eps slides the start by
/// -delta_eps and the end by +delta_eps along the counterclockwise
/// boundary coordinate, lengthening the path toward the plate interior.
/// The middle control point is given explicitly; a collinear middle point
/// yields a valid straight path.
StiffenerPath parabola_path(const Vec2& start, const Vec2& end,
                            const Vec2& middle, double delta_eps,
                            double plate_lx = 1.0, double plate_ly = 1.0);

/// Convenience overload: middle control point at (delta_dist,
/// delta_dist) in the plate frame.
StiffenerPath parabola_path(const Vec2& start, const Vec2& end,
                            double delta_eps, double delta_dist,
                            double plate_lx = 1.0, double plate_ly = 1.0);

/// Elastic stiffness and unit thermal force of a Timoshenko beam riding
/// on the plate displacement field (displacement compatibility through
/// the plate basis at each quadrature station; first-order offset
/// kinematics with the centroid at zbar above the mid-plane).
///
/// Throws ModelError when the path leaves the plate domain or enters a
/// cutout, and std::invalid_argument for degenerate (zero-length) paths.
struct StiffenerContribution {
  Triplets K;
  Eigen::VectorXd F_unit;  // thermal restraint force per unit dT
};
StiffenerContribution stiffener_matrices(const PlateModel& model,
                                         const DofMap& dofs,
                                         const StiffenerPath& path,
                                         const StiffenerSection& section,
                                         int refine_level);

/// Geometric stiffness from the stiffener's axial prestress
/// N_s = EA (eps_c(u) - alpha dT) recovered on the deformed state.
Triplets stiffener_geometric(const PlateModel& model, const DofMap& dofs,
                             const StiffenerPath& path,
                             const StiffenerSection& section, int refine_level,
                             const Eigen::VectorXd& u_full, double dT_ref);

}  // namespace lsiga

#endif  // LSIGA_STIFFENER_HPP
