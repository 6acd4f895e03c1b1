/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_CUT_QUADRATURE_HPP
#define LSIGA_CUT_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "lsiga/levelset.hpp"
#include "lsiga/quadrature.hpp"

namespace lsiga {

/// Triangle in parent-square coordinates, tagged by the sign of the
/// level set at its centroid (material = positive side).
struct Triangle {
  Vec2 v0, v1, v2;
  bool material = false;

  double area() const {
    return 0.5 * std::abs((v1.x() - v0.x()) * (v2.y() - v0.y()) -
                          (v2.x() - v0.x()) * (v1.y() - v0.y()));
  }
  Vec2 centroid() const { return (v0 + v1 + v2) / 3.0; }
};

/// Triangulation of a cut element's parent square into material and void
/// triangles separated by the chord approximation of the interface.
struct CutCellPartition {
  std::vector<Triangle> triangles;
  int dropped_slivers = 0;

  double material_area() const;
  double total_area() const;
};

/// Splits the parent square along the interface polygon defined by the
/// edge crossings. The boundary runs between consecutive crossings each
/// close with a chord; with more than two crossings the inner crossing
/// polygon fills the remainder. Sub-polygons are fan-triangulated from
/// their centroids and each triangle is tagged by phi at its centroid.
/// Sliver triangles (area < 1e-12 of the parent) are dropped and counted.
///
/// phi_parent evaluates the level set at parent-square coordinates.
/// Throws ModelError when fewer than two crossings are supplied.
CutCellPartition triangulate_cut_element(
    const std::vector<EdgeCrossing>& crossings,
    const std::function<double(const Vec2&)>& phi_parent);

/// Gauss point mapped from the reference triangle into the parent square.
struct MappedPoint {
  Vec2 uv;
  double weight;  // w * |J_tri|, |J_tri| = 2 * parent-coordinate area
};

/// Maps a triangle rule into parent coordinates via the linear vertex
/// blend [1-xi'-eta', xi', eta']. Throws NumericalError for zero-area
/// triangles. Integrals follow I = 1/2 * sum w_i |J_tri| f_i.
std::vector<MappedPoint> map_triangle_gauss(const Triangle& tri,
                                            const TriangleRule& rule);

/// Quadrature point of the element rule in parent coordinates. Weights
/// are parent-area measures: integrals accumulate w * f * |J_el|.
struct RulePoint {
  Vec2 uv;
  double weight;
  bool enriched = false;
};

/// Integration rule restricted to the material part of an element:
/// full (p+1)x(q+1) tensor Gauss for outer elements, empty for inner
/// ones, and mapped triangle rules over the material triangles for
/// enriched ones (the 1/2 reference-area factor is folded in).
std::vector<RulePoint> physical_rule(const NurbsPatch& patch,
                                     const PatchMesh::Element& element,
                                     ElementTag tag,
                                     const LevelSetShape* shape,
                                     const TriangleRule& tri_rule);

}  // namespace lsiga

#endif  // LSIGA_CUT_QUADRATURE_HPP
