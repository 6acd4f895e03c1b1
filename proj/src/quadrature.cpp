/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/quadrature.hpp"

#include <cmath>

namespace lsiga {

GaussRule1D gauss_legendre(int n) {
  if (n < 1) throw NumericalError("gauss_legendre: need at least one point");
  GaussRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);

  // Nodes are roots of P_n; start from the Chebyshev estimate and polish
  // with Newton. Symmetric pairs are filled from one half.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence up to degree n at x
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

TriangleRule TriangleRule::three_point() {
  TriangleRule r;
  r.points = {Vec2(1.0 / 6.0, 1.0 / 6.0), Vec2(2.0 / 3.0, 1.0 / 6.0),
              Vec2(1.0 / 6.0, 2.0 / 3.0)};
  r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return r;
}

TriangleRule TriangleRule::seven_point() {
  const double a1 = 0.0597158717897698;
  const double b1 = 0.4701420641051151;
  const double a2 = 0.7974269853530873;
  const double b2 = 0.1012865073234563;
  const double w0 = 0.225;
  const double w1 = 0.1323941527885062;
  const double w2 = 0.1259391805448271;
  TriangleRule r;
  r.points = {Vec2(1.0 / 3.0, 1.0 / 3.0), Vec2(a1, b1), Vec2(b1, a1),
              Vec2(b1, b1),               Vec2(a2, b2), Vec2(b2, a2),
              Vec2(b2, b2)};
  r.weights = {w0, w1, w1, w1, w2, w2, w2};
  return r;
}

}  // namespace lsiga
