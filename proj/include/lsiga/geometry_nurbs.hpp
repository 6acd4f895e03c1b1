/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_GEOMETRY_NURBS_HPP
#define LSIGA_GEOMETRY_NURBS_HPP

#include <array>
#include <vector>

#include "lsiga/common.hpp"

namespace lsiga {

/// Open (clamped) knot vector of a given polynomial degree.
///
/// Knots are non-decreasing with the first and last values repeated
/// degree+1 times; the number of basis functions is
/// n = len(values) - degree - 1.
class KnotVector {
 public:
  KnotVector(std::vector<double> values, int degree);

  int degree() const { return degree_; }
  const std::vector<double>& values() const { return values_; }
  int num_basis() const {
    return static_cast<int>(values_.size()) - degree_ - 1;
  }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

  /// Span index i with values[i] <= xi < values[i+1]; xi equal to the
  /// last knot maps into the final nonempty span. Throws
  /// std::domain_error for xi outside [front, back].
  int find_span(double xi) const;

  /// Nonzero basis values and derivatives at xi.
  ///
  /// Row k holds the k-th derivatives of the degree+1 nonzero functions
  /// N_{span-degree}..N_{span} (triangular-table recursion). Orders above
  /// the degree come back as zeros.
  Eigen::MatrixXd basis_derivatives(double xi, int max_order) const;

  struct Span {
    int index;  // knot index of the span start
    double lo, hi;
  };
  std::vector<Span> nonempty_spans() const;

  /// Parameter values whose insertion bisects every nonempty span.
  std::vector<double> span_midpoints() const;

  /// Greville abscissae (knot averages), one per basis function. With
  /// unit weights, coefficients sampled from a linear function at these
  /// points reproduce that function exactly.
  std::vector<double> greville() const;

 private:
  std::vector<double> values_;
  int degree_;
};

/// Rational basis values at a surface point: the (p+1)(q+1) nonzero
/// functions and their first parametric derivatives, flattened with the
/// xi index running fastest.
struct SurfaceBasis {
  int span_xi = 0, span_eta = 0;
  int i0 = 0, j0 = 0;  // first nonzero basis index in each direction
  Eigen::VectorXd R, dRdxi, dRdeta;
};

/// Tensor-product NURBS surface patch in the plane.
///
/// Control points form an n x m grid stored with the xi index running
/// fastest (grid index i + j*n); all weights are strictly positive. The
/// parametric domain is the open knot range, [0,1]^2 for patches built
/// by the factory functions here.
class NurbsPatch {
 public:
  NurbsPatch(KnotVector knots_xi, KnotVector knots_eta,
             std::vector<Vec2> control_points, std::vector<double> weights);

  /// Single-element Bezier patch for an axis-aligned rectangle with
  /// corner (0,0), mapping [0,1]^2 linearly onto lx x ly.
  static NurbsPatch rectangle(double lx, double ly, int degree);

  /// Quarter annulus (radii r0 < r1) swept 90 degrees, degree 2 along
  /// the arc with the standard circle weights, degree 1 radially.
  static NurbsPatch quarter_annulus(double r0, double r1);

  const KnotVector& knots_xi() const { return knots_xi_; }
  const KnotVector& knots_eta() const { return knots_eta_; }
  int n() const { return knots_xi_.num_basis(); }
  int m() const { return knots_eta_.num_basis(); }
  int num_control_points() const { return n() * m(); }
  const Vec2& control_point(int i, int j) const { return cps_[i + j * n()]; }
  double weight(int i, int j) const { return w_[i + j * n()]; }

  /// Rational basis and first parametric derivatives (quotient rule
  /// against the weight function W).
  SurfaceBasis surface_basis(double xi, double eta) const;

  /// Physical point and the parametric Jacobian dX/d(xi,eta).
  void map_parametric(double xi, double eta, Vec2& point, Mat2& J) const;

  struct MapResult {
    Vec2 point;
    Mat2 J;  // scaled to the parent square [-1,1]^2 of the containing span
  };

  /// Physical point and Jacobian at (xi, eta). The Jacobian columns are
  /// scaled by half the containing knot-span widths, i.e. it maps the
  /// element parent square [-1,1]^2 to physical coordinates. Throws
  /// NumericalError if det(J) <= 0.
  MapResult surface_map(double xi, double eta) const;

  /// Uniform h-refinement: each level inserts the midpoints of all
  /// nonempty spans in both directions. The geometric map is unchanged.
  NurbsPatch h_refined(int levels) const;

  /// Newton inversion of the surface map. Throws NumericalError if the
  /// iteration fails to converge.
  Vec2 invert_point(const Vec2& x, const Vec2& guess = Vec2(0.5, 0.5)) const;

  /// Grid indices of the (p+1)(q+1) control points supporting the
  /// element at (span_xi, span_eta), flattened as i + j*n.
  std::vector<int> active_control_points(int span_xi, int span_eta) const;

 private:
  KnotVector knots_xi_, knots_eta_;
  std::vector<Vec2> cps_;
  std::vector<double> w_;
};

/// NURBS curve in the plane (used for degree-2 stiffener paths).
class NurbsCurve {
 public:
  NurbsCurve(KnotVector knots, std::vector<Vec2> control_points,
             std::vector<double> weights);

  const KnotVector& knots() const { return knots_; }
  int n() const { return knots_.num_basis(); }
  const std::vector<Vec2>& control_points() const { return cps_; }

  /// Point and parametric velocity dC/dxi.
  void map_parametric(double xi, Vec2& point, Vec2& velocity) const;

  NurbsCurve h_refined(int levels) const;

 private:
  KnotVector knots_;
  std::vector<Vec2> cps_;
  std::vector<double> w_;
};

/// Element raster of a patch: the products of nonempty knot spans, each
/// with its parent square [-1,1]^2 for quadrature.
struct PatchMesh {
  struct Element {
    int ix, iy;              // raster position (xi index fastest)
    int span_xi, span_eta;   // knot-span indices
    double xi0, xi1, eta0, eta1;
    std::array<Vec2, 4> corners;  // physical corners, parent order
                                  // (-1,-1),(1,-1),(1,1),(-1,1)
  };

  int nx = 0, ny = 0;
  std::vector<Element> elements;  // row-major, ix fastest

  /// Parametric coordinates of a parent-square point of an element.
  static Vec2 parent_to_parametric(const Element& e, const Vec2& uv) {
    return Vec2(e.xi0 + 0.5 * (uv.x() + 1.0) * (e.xi1 - e.xi0),
                e.eta0 + 0.5 * (uv.y() + 1.0) * (e.eta1 - e.eta0));
  }
};

PatchMesh build_mesh(const NurbsPatch& patch);

}  // namespace lsiga

#endif  // LSIGA_GEOMETRY_NURBS_HPP
