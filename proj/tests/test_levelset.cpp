#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lsiga/levelset.hpp"

using namespace lsiga;

namespace {

// Brute-force classification: tag each element by the signs of phi over
// a dense node lattice spanning it, boundary included. With 33 nodes per
// side on a 16x16 raster this is denser than a global 500x500 grid and,
// unlike cell centers, sees corner slivers.
std::vector<ElementTag> dense_classification(const PatchMesh& mesh,
                                             const LevelSetShape& shape,
                                             int nodes_per_side) {
  std::vector<ElementTag> tags(mesh.elements.size());
  const int g = nodes_per_side;
  for (size_t e = 0; e < mesh.elements.size(); ++e) {
    const PatchMesh::Element& el = mesh.elements[e];
    double mn = 1e300, mx = -1e300;
    for (int j = 0; j < g; ++j)
      for (int i = 0; i < g; ++i) {
        const Vec2 x(el.corners[0].x() +
                         (el.corners[1].x() - el.corners[0].x()) * i / (g - 1.0),
                     el.corners[0].y() +
                         (el.corners[3].y() - el.corners[0].y()) * j / (g - 1.0));
        const double phi = shape.signed_distance(x);
        mn = std::min(mn, phi);
        mx = std::max(mx, phi);
      }
    if (mn < 0.0 && mx > 0.0)
      tags[e] = ElementTag::Enriched;
    else if (mx <= 0.0)
      tags[e] = ElementTag::Inner;
    else
      tags[e] = ElementTag::Outer;
  }
  return tags;
}

}  // namespace

TEST_CASE("signed distance of circle and ellipse") {
  const LevelSetShape c = LevelSetShape::circle(Vec2(0.3, 0.7), 0.15);
  CHECK(c.signed_distance(Vec2(0.3, 0.7)) == doctest::Approx(-0.15));
  CHECK(c.signed_distance(Vec2(0.45, 0.7)) == doctest::Approx(0.0));

  const LevelSetShape e = LevelSetShape::ellipse(Vec2(0.5, 0.5), 0.2, 0.1, 0.0);
  CHECK(e.signed_distance(Vec2(0.7, 0.5)) == doctest::Approx(0.0));
  CHECK(e.signed_distance(Vec2(0.5, 0.6)) == doctest::Approx(0.0));
  CHECK(e.signed_distance(Vec2(0.5, 0.5)) < 0.0);
  CHECK(e.signed_distance(Vec2(0.9, 0.9)) > 0.0);

  // rotated by 90 degrees the axes swap
  const LevelSetShape er = LevelSetShape::ellipse(Vec2(0.5, 0.5), 0.2, 0.1, kPi / 2);
  CHECK(er.signed_distance(Vec2(0.5, 0.7)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(er.signed_distance(Vec2(0.6, 0.5)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("circle level set equals Euclidean distance to the circle") {
  const LevelSetShape c = LevelSetShape::circle(Vec2(0.4, 0.6), 0.22);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 x(u(rng), u(rng));
    const double d_boundary = std::abs((x - Vec2(0.4, 0.6)).norm() - 0.22);
    CHECK(std::abs(std::abs(c.signed_distance(x)) - d_boundary) < 1e-14);
  }
}

TEST_CASE("union is the pointwise minimum of children") {
  const LevelSetShape a = LevelSetShape::circle(Vec2(0.4, 0.65), 0.15);
  const LevelSetShape b = LevelSetShape::circle(Vec2(0.5, 0.7), 0.15);
  const LevelSetShape c = LevelSetShape::circle(Vec2(0.5, 0.6), 0.15);
  const LevelSetShape clover = LevelSetShape::union_of({a, b, c});
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const Vec2 x(u(rng), u(rng));
    const double expect = std::min(
        {a.signed_distance(x), b.signed_distance(x), c.signed_distance(x)});
    CHECK(clover.signed_distance(x) == doctest::Approx(expect).epsilon(1e-15));
  }
  CHECK_THROWS_AS(LevelSetShape::union_of({}), std::invalid_argument);
  CHECK_THROWS_AS(LevelSetShape::circle(Vec2(0, 0), -1.0), std::invalid_argument);
}

TEST_CASE("classification: trivial cases") {
  const NurbsPatch patch = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(3);
  const PatchMesh mesh = build_mesh(patch);

  const LevelSetShape outside = LevelSetShape::circle(Vec2(5.0, 5.0), 0.2);
  const ElementClassification all_out = classify_elements(patch, mesh, outside);
  for (ElementTag t : all_out.tags) CHECK(t == ElementTag::Outer);
  CHECK(all_out.num_enriched_cp == 0);

  // cutout covering several central elements completely
  const LevelSetShape big = LevelSetShape::circle(Vec2(0.5, 0.5), 0.3);
  const ElementClassification cls = classify_elements(patch, mesh, big);
  const int center = 3 + 3 * mesh.nx;  // element [0.375,0.5]^2, well inside
  CHECK(cls.tags[center] == ElementTag::Inner);
  CHECK(cls.tags[0] == ElementTag::Outer);
}

TEST_CASE("classification matches the dense-sampling oracle") {
  const NurbsPatch patch4 = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(4);
  const PatchMesh mesh4 = build_mesh(patch4);
  const struct {
    LevelSetShape shape;
    const char* name;
  } cases[] = {
      {LevelSetShape::circle(Vec2(0.5, 0.5), 0.15), "centered circle"},
      {LevelSetShape::circle(Vec2(0.3, 0.7), 0.15), "offset circle"},
      {LevelSetShape::ellipse(Vec2(0.5, 0.5), 0.2, 0.1, 0.0), "ellipse"},
      {LevelSetShape::ellipse(Vec2(0.5, 0.5), 0.2, 0.1, kPi / 4), "rotated ellipse"},
      {LevelSetShape::union_of({LevelSetShape::circle(Vec2(0.4, 0.65), 0.15),
                                LevelSetShape::circle(Vec2(0.5, 0.7), 0.15),
                                LevelSetShape::circle(Vec2(0.5, 0.6), 0.15)}),
       "clover"},
  };
  for (const auto& tc : cases) {
    CAPTURE(tc.name);
    const ElementClassification cls = classify_elements(patch4, mesh4, tc.shape);
    const std::vector<ElementTag> oracle = dense_classification(mesh4, tc.shape, 33);
    int mismatches = 0;
    for (size_t e = 0; e < oracle.size(); ++e)
      if (cls.tags[e] != oracle[e]) ++mismatches;
    CHECK(mismatches == 0);
  }
}

TEST_CASE("enriched ring count on the 16x16 mesh matches the oracle exactly") {
  const NurbsPatch patch = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(4);
  const PatchMesh mesh = build_mesh(patch);
  const LevelSetShape shape = LevelSetShape::circle(Vec2(0.5, 0.5), 0.15);
  const ElementClassification cls = classify_elements(patch, mesh, shape);
  const std::vector<ElementTag> oracle = dense_classification(mesh, shape, 33);
  int ours = 0, expect = 0;
  for (size_t e = 0; e < oracle.size(); ++e) {
    ours += cls.tags[e] == ElementTag::Enriched;
    expect += oracle[e] == ElementTag::Enriched;
  }
  CHECK(ours == expect);
  CHECK(ours > 0);
}

TEST_CASE("edge intersections: symmetric pair and analytic root") {
  const NurbsPatch patch = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(3);
  const PatchMesh mesh = build_mesh(patch);

  // circle centered on the midpoint of the shared edge between two elements
  const double r = 0.05;
  const Vec2 c(0.5, 0.5 + 1.0 / 16.0);  // mid-edge of element row
  const LevelSetShape shape = LevelSetShape::circle(c, r);

  // element just below the center: crossings symmetric about x = 0.5
  const PatchMesh::Element& el = mesh.elements[3 + 4 * mesh.nx];
  CHECK(el.corners[2].y() == doctest::Approx(0.625));
  const auto crossings = edge_intersections(patch, el, shape);
  CHECK(crossings.size() >= 2);
  for (const EdgeCrossing& cr : crossings) {
    CHECK(std::abs(shape.signed_distance(cr.physical)) < 1e-9);
    // analytic root on an axis-aligned edge y = const
    const double dy = cr.physical.y() - c.y();
    const double dx2 = r * r - dy * dy;
    CHECK((cr.physical.x() - c.x()) * (cr.physical.x() - c.x()) ==
          doctest::Approx(dx2).epsilon(1e-8));
  }
  // the pair sits on the right-hand edge, symmetric about the center height
  std::vector<double> ys;
  for (const EdgeCrossing& cr : crossings)
    if (cr.edge == 1) ys.push_back(cr.physical.y());
  REQUIRE(ys.size() == 2);
  CHECK(ys[0] + ys[1] == doctest::Approx(2.0 * c.y()).epsilon(1e-10));
}

TEST_CASE("shallow arc intruding through one edge yields two same-edge crossings") {
  const NurbsPatch patch = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(3);
  const PatchMesh mesh = build_mesh(patch);
  // all corners of element [0.375,0.5]x[0.5,0.625] are outside this small
  // circle but its arc pokes through the bottom edge
  const LevelSetShape shape = LevelSetShape::circle(Vec2(0.4375, 0.495), 0.02);
  const PatchMesh::Element& el = mesh.elements[3 + 4 * mesh.nx];
  for (const Vec2& corner : el.corners)
    CHECK(shape.signed_distance(corner) > 0.0);

  const ElementClassification cls = classify_elements(patch, mesh, shape);
  CHECK(cls.tags[3 + 4 * mesh.nx] == ElementTag::Enriched);

  const auto crossings = edge_intersections(patch, el, shape);
  REQUIRE(crossings.size() == 2);
  CHECK(crossings[0].edge == crossings[1].edge);
}

TEST_CASE("edge intersections on an uncut element are a model error") {
  const NurbsPatch patch = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(2);
  const PatchMesh mesh = build_mesh(patch);
  const LevelSetShape far_away = LevelSetShape::circle(Vec2(9, 9), 0.1);
  CHECK_THROWS_AS(edge_intersections(patch, mesh.elements[0], far_away), ModelError);
}

TEST_CASE("enrichment function: closed-form values") {
  CHECK(enrichment_psi({1, 2, 3, 4}, {0.25, 0.25, 0.25, 0.25}) == doctest::Approx(0.0));
  CHECK(enrichment_psi({-1, -2, -3, -4}, {0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(0.0));
  CHECK(enrichment_psi({-1, 1, 1, -1}, {0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(1.0));
}

TEST_CASE("psi on the parent square: nonnegative, zero at corners, zero off-cut") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> p(0.1, 2.0);

  const std::array<Vec2, 4> corners = {Vec2(-1, -1), Vec2(1, -1), Vec2(1, 1),
                                       Vec2(-1, 1)};
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 4> phi;
    for (double& v : phi) v = p(rng) * (u(rng) > 0 ? 1.0 : -1.0);

    for (int k = 0; k < 40; ++k) {
      const Vec2 uv(u(rng), u(rng));
      CHECK(psi_on_parent(phi, uv).psi >= -1e-15);
    }
    for (const Vec2& cpt : corners)
      CHECK(std::abs(psi_on_parent(phi, cpt).psi) < 1e-15);

    std::array<double, 4> same;
    for (double& v : same) v = p(rng);
    const Vec2 uv(u(rng), u(rng));
    CHECK(psi_on_parent(same, uv).psi == doctest::Approx(0.0));

    // derivative check against finite differences
    const double h = 1e-7;
    const PsiValue pv = psi_on_parent(phi, Vec2(0.33, -0.41));
    const double fdu = (psi_on_parent(phi, Vec2(0.33 + h, -0.41)).psi -
                        psi_on_parent(phi, Vec2(0.33 - h, -0.41)).psi) /
                       (2 * h);
    const double fdv = (psi_on_parent(phi, Vec2(0.33, -0.41 + h)).psi -
                        psi_on_parent(phi, Vec2(0.33, -0.41 - h)).psi) /
                       (2 * h);
    CHECK(pv.dpsi_du == doctest::Approx(fdu).epsilon(1e-5));
    CHECK(pv.dpsi_dv == doctest::Approx(fdv).epsilon(1e-5));
  }
}
