/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/cut_quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace lsiga {

namespace {

constexpr double kSliverFraction = 1e-12;  // of the parent area (4)

// Parent boundary point at perimeter coordinate s in [0, 8).
Vec2 boundary_point(double s) {
  s = std::fmod(s, 8.0);
  if (s < 0.0) s += 8.0;
  const int edge = static_cast<int>(s / 2.0);
  const double t = 0.5 * (s - 2.0 * edge);
  switch (edge) {
    case 0: return Vec2(-1.0 + 2.0 * t, -1.0);
    case 1: return Vec2(1.0, -1.0 + 2.0 * t);
    case 2: return Vec2(1.0 - 2.0 * t, 1.0);
    default: return Vec2(-1.0, 1.0 - 2.0 * t);
  }
}

void fan_triangulate(const std::vector<Vec2>& polygon,
                     const std::function<double(const Vec2&)>& phi_parent,
                     CutCellPartition& out) {
  if (polygon.size() < 3) return;
  Vec2 centroid = Vec2::Zero();
  for (const Vec2& v : polygon) centroid += v;
  centroid /= static_cast<double>(polygon.size());

  for (size_t i = 0; i < polygon.size(); ++i) {
    Triangle tri;
    tri.v0 = centroid;
    tri.v1 = polygon[i];
    tri.v2 = polygon[(i + 1) % polygon.size()];
    if (tri.area() < kSliverFraction * 4.0) {
      ++out.dropped_slivers;
      continue;
    }
    tri.material = phi_parent(tri.centroid()) > 0.0;
    out.triangles.push_back(tri);
  }
}

}  // namespace

double CutCellPartition::material_area() const {
  double a = 0.0;
  for (const Triangle& t : triangles)
    if (t.material) a += t.area();
  return a;
}

double CutCellPartition::total_area() const {
  double a = 0.0;
  for (const Triangle& t : triangles) a += t.area();
  return a;
}

CutCellPartition triangulate_cut_element(
    const std::vector<EdgeCrossing>& crossings,
    const std::function<double(const Vec2&)>& phi_parent) {
  if (crossings.size() < 2)
    throw ModelError("triangulate_cut_element: need at least two crossings");

  std::vector<EdgeCrossing> cr = crossings;
  std::sort(cr.begin(), cr.end(),
            [](const EdgeCrossing& a, const EdgeCrossing& b) { return a.s < b.s; });
  const size_t k = cr.size();

  CutCellPartition out;

  // One polygon per boundary run between consecutive crossings: the run
  // collects the square corners passed on the walk and closes with the
  // chord back to the entry crossing.
  for (size_t i = 0; i < k; ++i) {
    const EdgeCrossing& c0 = cr[i];
    const EdgeCrossing& c1 = cr[(i + 1) % k];
    const double s0 = c0.s;
    const double s1 = (i + 1 < k) ? c1.s : c1.s + 8.0;

    std::vector<Vec2> polygon;
    polygon.push_back(c0.parent);
    for (double sc = std::floor(s0 / 2.0) * 2.0 + 2.0; sc < s1; sc += 2.0)
      polygon.push_back(boundary_point(sc));
    polygon.push_back(c1.parent);
    fan_triangulate(polygon, phi_parent, out);
  }

  // Remaining interior region bounded by the chords.
  if (k >= 3) {
    std::vector<Vec2> inner;
    for (const EdgeCrossing& c : cr) inner.push_back(c.parent);
    fan_triangulate(inner, phi_parent, out);
  }
  return out;
}

std::vector<MappedPoint> map_triangle_gauss(const Triangle& tri,
                                            const TriangleRule& rule) {
  const double jac = 2.0 * tri.area();
  if (jac <= 0.0)
    throw NumericalError("map_triangle_gauss: zero-area triangle");

  std::vector<MappedPoint> out;
  out.reserve(rule.points.size());
  for (size_t i = 0; i < rule.points.size(); ++i) {
    const double xi = rule.points[i].x(), eta = rule.points[i].y();
    MappedPoint mp;
    mp.uv = (1.0 - xi - eta) * tri.v0 + xi * tri.v1 + eta * tri.v2;
    mp.weight = rule.weights[i] * jac;
    out.push_back(mp);
  }
  return out;
}

std::vector<RulePoint> physical_rule(const NurbsPatch& patch,
                                     const PatchMesh::Element& element,
                                     ElementTag tag,
                                     const LevelSetShape* shape,
                                     const TriangleRule& tri_rule) {
  std::vector<RulePoint> rule;
  if (tag == ElementTag::Inner) return rule;

  if (tag == ElementTag::Outer) {
    const GaussRule1D gx = gauss_legendre(patch.knots_xi().degree() + 1);
    const GaussRule1D gy = gauss_legendre(patch.knots_eta().degree() + 1);
    for (size_t j = 0; j < gy.points.size(); ++j)
      for (size_t i = 0; i < gx.points.size(); ++i)
        rule.push_back({Vec2(gx.points[i], gy.points[j]),
                        gx.weights[i] * gy.weights[j], false});
    return rule;
  }

  if (shape == nullptr)
    throw ModelError("physical_rule: enriched element needs a level-set shape");

  const auto crossings = edge_intersections(patch, element, *shape);
  Vec2 pt;
  Mat2 J;
  auto phi_parent = [&](const Vec2& uv) {
    const Vec2 xi = PatchMesh::parent_to_parametric(element, uv);
    patch.map_parametric(xi.x(), xi.y(), pt, J);
    return shape->signed_distance(pt);
  };
  const CutCellPartition parts = triangulate_cut_element(crossings, phi_parent);

  for (const Triangle& tri : parts.triangles) {
    if (!tri.material) continue;
    for (const MappedPoint& mp : map_triangle_gauss(tri, tri_rule))
      rule.push_back({mp.uv, 0.5 * mp.weight, true});
  }
  return rule;
}

}  // namespace lsiga
