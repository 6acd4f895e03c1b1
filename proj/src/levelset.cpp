/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/levelset.hpp"

#include <algorithm>
#include <cmath>

namespace lsiga {

namespace {

constexpr int kEdgeSamples = 8;     // interior samples per edge
constexpr double kRootTol = 1e-10;  // |phi| at accepted edge roots

// Parent coordinates of the four element corners, CCW from (-1,-1).
const std::array<Vec2, 4> kParentCorners = {Vec2(-1, -1), Vec2(1, -1),
                                            Vec2(1, 1), Vec2(-1, 1)};

Vec2 edge_point(int edge, double t) {
  // t in [0,1] along edge in CCW walk order
  switch (edge) {
    case 0: return Vec2(-1.0 + 2.0 * t, -1.0);
    case 1: return Vec2(1.0, -1.0 + 2.0 * t);
    case 2: return Vec2(1.0 - 2.0 * t, 1.0);
    default: return Vec2(-1.0, 1.0 - 2.0 * t);
  }
}

}  // namespace

LevelSetShape LevelSetShape::circle(const Vec2& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle: nonpositive radius");
  LevelSetShape s;
  s.kind_ = Kind::Circle;
  s.center_ = center;
  s.a_ = radius;
  return s;
}

LevelSetShape LevelSetShape::ellipse(const Vec2& center, double semi_major,
                                     double semi_minor, double orientation) {
  if (!(semi_major > 0.0) || !(semi_minor > 0.0))
    throw std::invalid_argument("ellipse: nonpositive semi-axis");
  LevelSetShape s;
  s.kind_ = Kind::Ellipse;
  s.center_ = center;
  s.a_ = semi_major;
  s.b_ = semi_minor;
  s.cos_t_ = std::cos(orientation);
  s.sin_t_ = std::sin(orientation);
  return s;
}

LevelSetShape LevelSetShape::union_of(std::vector<LevelSetShape> shapes) {
  if (shapes.empty()) throw std::invalid_argument("union: no child shapes");
  LevelSetShape s;
  s.kind_ = Kind::Union;
  s.children_ = std::move(shapes);
  return s;
}

double LevelSetShape::signed_distance(const Vec2& x) const {
  switch (kind_) {
    case Kind::Circle:
      return (x - center_).norm() - a_;
    case Kind::Ellipse: {
      const Vec2 d = x - center_;
      const double xr = cos_t_ * d.x() + sin_t_ * d.y();
      const double yr = -sin_t_ * d.x() + cos_t_ * d.y();
      const double q = (xr / a_) * (xr / a_) + (yr / b_) * (yr / b_) - 1.0;
      return q * std::min(a_, b_);
    }
    case Kind::Union: {
      double phi = children_.front().signed_distance(x);
      for (size_t i = 1; i < children_.size(); ++i)
        phi = std::min(phi, children_[i].signed_distance(x));
      return phi;
    }
  }
  return 0.0;
}

ElementClassification classify_elements(const NurbsPatch& patch,
                                        const PatchMesh& mesh,
                                        const LevelSetShape& shape) {
  ElementClassification cls;
  cls.tags.resize(mesh.elements.size());
  cls.corner_phi.resize(mesh.elements.size());
  cls.cp_enriched.assign(patch.num_control_points(), false);

  cls.cp_phi.resize(patch.num_control_points());
  for (int j = 0; j < patch.m(); ++j)
    for (int i = 0; i < patch.n(); ++i)
      cls.cp_phi[i + j * patch.n()] = shape.signed_distance(patch.control_point(i, j));

  Vec2 pt;
  Mat2 J;
  for (size_t e = 0; e < mesh.elements.size(); ++e) {
    const PatchMesh::Element& el = mesh.elements[e];

    double mn = 0.0, mx = 0.0;
    for (int c = 0; c < 4; ++c) {
      const double phi = shape.signed_distance(el.corners[c]);
      cls.corner_phi[e][c] = phi;
      mn = (c == 0) ? phi : std::min(mn, phi);
      mx = (c == 0) ? phi : std::max(mx, phi);
    }
    for (int edge = 0; edge < 4; ++edge)
      for (int k = 1; k <= kEdgeSamples; ++k) {
        const Vec2 uv = edge_point(edge, k / (kEdgeSamples + 1.0));
        const Vec2 xi = PatchMesh::parent_to_parametric(el, uv);
        patch.map_parametric(xi.x(), xi.y(), pt, J);
        const double phi = shape.signed_distance(pt);
        mn = std::min(mn, phi);
        mx = std::max(mx, phi);
      }

    if (mn < 0.0 && mx > 0.0)
      cls.tags[e] = ElementTag::Enriched;
    else if (mx <= 0.0)
      cls.tags[e] = ElementTag::Inner;
    else
      cls.tags[e] = ElementTag::Outer;
  }

  for (size_t e = 0; e < mesh.elements.size(); ++e) {
    if (cls.tags[e] != ElementTag::Enriched) continue;
    const PatchMesh::Element& el = mesh.elements[e];
    for (int cp : patch.active_control_points(el.span_xi, el.span_eta))
      cls.cp_enriched[cp] = true;
  }
  cls.num_enriched_cp = static_cast<int>(
      std::count(cls.cp_enriched.begin(), cls.cp_enriched.end(), true));
  return cls;
}

std::vector<EdgeCrossing> edge_intersections(const NurbsPatch& patch,
                                             const PatchMesh::Element& element,
                                             const LevelSetShape& shape) {
  Vec2 pt;
  Mat2 J;
  auto phi_at = [&](int edge, double t) {
    const Vec2 uv = edge_point(edge, t);
    const Vec2 xi = PatchMesh::parent_to_parametric(element, uv);
    patch.map_parametric(xi.x(), xi.y(), pt, J);
    return shape.signed_distance(pt);
  };

  std::vector<EdgeCrossing> crossings;
  for (int edge = 0; edge < 4; ++edge) {
    const int ns = kEdgeSamples + 1;  // subintervals between samples
    double t_prev = 0.0;
    double phi_prev = phi_at(edge, 0.0);
    for (int k = 1; k <= ns; ++k) {
      const double t = static_cast<double>(k) / ns;
      const double phi = phi_at(edge, t);
      if ((phi_prev < 0.0 && phi > 0.0) || (phi_prev > 0.0 && phi < 0.0)) {
        double lo = t_prev, hi = t, flo = phi_prev;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = phi_at(edge, mid);
          if (std::abs(fm) < kRootTol) {
            lo = hi = mid;
            break;
          }
          if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        const double root = 0.5 * (lo + hi);
        EdgeCrossing cross;
        cross.edge = edge;
        cross.s = 2.0 * edge + 2.0 * root;
        cross.parent = edge_point(edge, root);
        const Vec2 xi = PatchMesh::parent_to_parametric(element, cross.parent);
        patch.map_parametric(xi.x(), xi.y(), cross.physical, J);
        crossings.push_back(cross);
      } else if (phi == 0.0 && phi_prev != 0.0) {
        EdgeCrossing cross;
        cross.edge = edge;
        cross.s = 2.0 * edge + 2.0 * t;
        cross.parent = edge_point(edge, t);
        const Vec2 xi = PatchMesh::parent_to_parametric(element, cross.parent);
        patch.map_parametric(xi.x(), xi.y(), cross.physical, J);
        crossings.push_back(cross);
      }
      t_prev = t;
      phi_prev = phi;
    }
  }

  // drop near-duplicates (roots landing on shared samples or corners)
  std::sort(crossings.begin(), crossings.end(),
            [](const EdgeCrossing& a, const EdgeCrossing& b) { return a.s < b.s; });
  std::vector<EdgeCrossing> unique;
  for (const EdgeCrossing& c : crossings) {
    if (!unique.empty() && (c.parent - unique.back().parent).norm() < 1e-9)
      continue;
    unique.push_back(c);
  }
  if (unique.size() >= 2 &&
      (unique.front().parent - unique.back().parent).norm() < 1e-9)
    unique.pop_back();

  if (unique.size() < 2)
    throw ModelError(
        "edge_intersections: fewer than two interface crossings on an "
        "element tagged enriched (classification inconsistency)");
  return unique;
}

double enrichment_psi(const std::array<double, 4>& phi,
                      const std::array<double, 4>& N) {
  double abs_sum = 0.0, sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    abs_sum += std::abs(phi[i]) * N[i];
    sum += phi[i] * N[i];
  }
  return abs_sum - std::abs(sum);
}

PsiValue psi_on_parent(const std::array<double, 4>& corner_phi, const Vec2& uv) {
  PsiValue out;
  double g = 0.0, gu = 0.0, gv = 0.0;
  double a = 0.0, au = 0.0, av = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double ui = kParentCorners[i].x(), vi = kParentCorners[i].y();
    const double N = 0.25 * (1.0 + ui * uv.x()) * (1.0 + vi * uv.y());
    const double Nu = 0.25 * ui * (1.0 + vi * uv.y());
    const double Nv = 0.25 * vi * (1.0 + ui * uv.x());
    const double p = corner_phi[i];
    g += p * N;
    gu += p * Nu;
    gv += p * Nv;
    a += std::abs(p) * N;
    au += std::abs(p) * Nu;
    av += std::abs(p) * Nv;
  }
  const double sgn = (g > 0.0) ? 1.0 : ((g < 0.0) ? -1.0 : 0.0);
  out.psi = a - std::abs(g);
  out.dpsi_du = au - sgn * gu;
  out.dpsi_dv = av - sgn * gv;
  return out;
}

}  // namespace lsiga
