/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_LEVELSET_HPP
#define LSIGA_LEVELSET_HPP

#include <array>
#include <vector>

#include "lsiga/geometry_nurbs.hpp"

namespace lsiga {

/// Implicit cutout geometry. The level set is negative inside the void,
/// zero on the cutout boundary and positive in the material.
///
/// Circles carry the exact signed distance; ellipses use the normalized
/// algebraic level function ((x'/a)^2 + (y'/b)^2 - 1) * min(a,b) in the
/// rotated frame (only the zero set and sign matter for classification
/// and root finding). A union of shapes is the union of their voids,
/// phi = min over children.
class LevelSetShape {
 public:
  static LevelSetShape circle(const Vec2& center, double radius);
  static LevelSetShape ellipse(const Vec2& center, double semi_major,
                               double semi_minor, double orientation);
  static LevelSetShape union_of(std::vector<LevelSetShape> shapes);

  double signed_distance(const Vec2& x) const;

 private:
  LevelSetShape() = default;

  enum class Kind { Circle, Ellipse, Union };
  Kind kind_ = Kind::Circle;
  Vec2 center_ = Vec2::Zero();
  double a_ = 0.0, b_ = 0.0;  // radius or semi-axes
  double cos_t_ = 1.0, sin_t_ = 0.0;
  std::vector<LevelSetShape> children_;
};

enum class ElementTag { Outer, Inner, Enriched };

/// Per-element cut classification plus the level-set values stored at
/// the control points and element corners.
struct ElementClassification {
  std::vector<ElementTag> tags;                   // mesh element order
  std::vector<std::array<double, 4>> corner_phi;  // parent corner order
  std::vector<double> cp_phi;                     // at control point coords
  std::vector<bool> cp_enriched;  // support intersects a cut element
  int num_enriched_cp = 0;

  bool any_enriched() const { return num_enriched_cp > 0; }
};

/// Tags every element as outer / inner / enriched using the corner signs
/// plus interior edge samples (8 per edge) to catch shallow arcs.
ElementClassification classify_elements(const NurbsPatch& patch,
                                        const PatchMesh& mesh,
                                        const LevelSetShape& shape);

/// Interface crossing on an element edge.
struct EdgeCrossing {
  Vec2 parent;    // parent-square coordinates
  Vec2 physical;
  int edge;       // 0 bottom, 1 right, 2 top, 3 left (CCW walk)
  double s;       // perimeter coordinate in [0, 8)
};

/// Roots of phi along the element edges, located by bisection to
/// |phi| < 1e-10 and ordered by the perimeter walk. Throws ModelError if
/// fewer than two crossings are found on an element tagged enriched.
std::vector<EdgeCrossing> edge_intersections(const NurbsPatch& patch,
                                             const PatchMesh::Element& element,
                                             const LevelSetShape& shape);

/// Enrichment value from the four corner level-set values and four
/// interpolatory shape-function values: psi = sum|phi_I| N_I - |sum phi_I N_I|.
double enrichment_psi(const std::array<double, 4>& phi,
                      const std::array<double, 4>& N);

/// Enrichment function on the parent square built on the bilinear corner
/// basis, with parent-coordinate derivatives.
struct PsiValue {
  double psi = 0.0;
  double dpsi_du = 0.0, dpsi_dv = 0.0;
};
PsiValue psi_on_parent(const std::array<double, 4>& corner_phi, const Vec2& uv);

}  // namespace lsiga

#endif  // LSIGA_LEVELSET_HPP
