/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_QUADRATURE_HPP
#define LSIGA_QUADRATURE_HPP

#include <vector>

#include "lsiga/common.hpp"

namespace lsiga {

/// One-dimensional Gauss-Legendre rule on [-1, 1].
struct GaussRule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence. Exact for polynomials of degree 2n-1.
GaussRule1D gauss_legendre(int n);

/// Symmetric Gauss rule on the reference triangle {(0,0),(1,0),(0,1)}.
///
/// Weights sum to 1 under the convention
///   I = 1/2 * sum_i w_i f(xi'_i, eta'_i) * |J|
/// where the 1/2 is the reference-triangle area factor.
struct TriangleRule {
  std::vector<Vec2> points;    // (xi', eta') on the reference triangle
  std::vector<double> weights;

  /// 3-point rule, exact for total degree 2.
  static TriangleRule three_point();
  /// 7-point rule, exact for total degree 5.
  static TriangleRule seven_point();
};

}  // namespace lsiga

#endif  // LSIGA_QUADRATURE_HPP
