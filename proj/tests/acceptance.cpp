// Acceptance suite: one self-contained check per validation criterion,
// printed as a PASS/FAIL line. The exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lsiga/driver.hpp"

using namespace lsiga;

namespace {

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Criterion> g_results;

void record(const std::string& name, bool pass, const std::string& detail) {
  g_results.push_back({name, pass, detail});
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// shared model builders

// Composite validation set: the thin-plate (a/h = 100) cross-ply used by
// the cutout tables, with alpha_T = alpha_0 = 0.01 so the reported
// lambda* equals the raw critical temperature multiplier.
std::string composite_plate_json(int refinement, const std::string& layup,
                                 const std::string& extra) {
  std::ostringstream os;
  os << R"({
  "version": 1,
  "plate": {
    "thickness": 0.01,
    "refinement": )"
     << refinement << R"(,
    "layup_deg": )"
     << layup << R"(,
    "material": {
      "E_L": 15.0, "E_T": 1.0, "G_LT": 0.5, "G_TT": 0.3356,
      "nu_LT": 0.3, "nu_TT": 0.49, "alpha_L": 0.00015, "alpha_T": 0.01
    }
  },
  "bc": "CCCC")"
     << extra << "\n}";
  return os.str();
}

const char* kCenteredEllipse90 = R"(,
  "cutouts": [{"type": "ellipse", "center": [0.5, 0.5],
               "semi_major": 0.2, "semi_minor": 0.1, "orientation_deg": 90}])";

std::string isotropic_plate_json(int refinement, const std::string& bc,
                                 const std::string& extra) {
  std::ostringstream os;
  os << R"({
  "version": 1,
  "plate": {
    "thickness": 0.01,
    "refinement": )"
     << refinement << R"(,
    "layup_deg": [0],
    "material": {"E": 208e9, "nu": 0.3, "alpha": 1.17e-5}
  },
  "bc": ")"
     << bc << "\"" << extra << "\n}";
  return os.str();
}

double lambda1_of(const ModelConfig& cfg, const std::string& id) {
  const SolvedCase solved = run_analysis(cfg, id);
  if (solved.no_buckling || solved.lambdas_normalized.empty())
    throw NumericalError(id + ": no buckling factor found");
  return solved.lambdas_normalized.front();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> seq;
  for (int level : {2, 3, 4, 5})
    seq.push_back(lambda1_of(
        parse_config_text(composite_plate_json(level, "[0, 90, 90, 0]", kCenteredEllipse90)),
        "convergence-l" + std::to_string(level)));
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool decreasing = true;
  for (size_t i = 1; i < seq.size(); ++i)
    if (!(seq[i] < seq[i - 1])) decreasing = false;
  const double target = 0.381;
  const double err = std::abs(seq.back() - target) / target;

  std::ostringstream os;
  os << "0.653/0.421/0.401/0.381 vs " << fmt(seq[0]) << "/" << fmt(seq[1]) << "/"
     << fmt(seq[2]) << "/" << fmt(seq[3]) << ", final err " << fmt(100 * err)
     << "%, " << fmt(elapsed) << " s";
  record("criterion 1 (elliptical-cutout convergence)",
         decreasing && err <= 0.05 && elapsed < 60.0, os.str());
}

void criterion_2_orientation() {
  // the table's theta is measured from the soft bending axis: our
  // orientation is 90 - theta
  const double targets[] = {0.381, 0.395, 0.427, 0.469};
  const double thetas[] = {0.0, 15.0, 30.0, 45.0};
  std::vector<double> got;
  bool within = true;
  for (int i = 0; i < 4; ++i) {
    std::ostringstream cut;
    cut << R"(,
  "cutouts": [{"type": "ellipse", "center": [0.5, 0.5],
               "semi_major": 0.2, "semi_minor": 0.1, "orientation_deg": )"
        << 90.0 - thetas[i] << "}]";
    got.push_back(lambda1_of(
        parse_config_text(composite_plate_json(5, "[0, 90, 90, 0]", cut.str())),
        "theta-" + std::to_string(static_cast<int>(thetas[i]))));
    if (std::abs(got[i] - targets[i]) / targets[i] > 0.05) within = false;
  }
  const bool monotone = got[0] < got[1] && got[1] < got[2] && got[2] < got[3];

  std::ostringstream os;
  os << "targets 0.381/0.395/0.427/0.469 vs " << fmt(got[0]) << "/" << fmt(got[1])
     << "/" << fmt(got[2]) << "/" << fmt(got[3]);
  record("criterion 2 (ellipse-orientation parametrics)", within && monotone, os.str());
}

void criterion_3_isotropic_hole() {
  const double cccc_table[] = {29.35, 28.01, 29.17, 35.27, 49.53, 78.74};
  const double ssss_table[] = {10.83, 10.64, 10.52, 11.01, 12.48, 15.41};
  const double radii[] = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25};

  bool ok = true;
  std::ostringstream os;
  std::vector<double> cccc, ssss;
  for (const char* bc : {"CCCC", "SSSS"}) {
    for (double r : radii) {
      std::string extra;
      if (r > 0.0) {
        std::ostringstream cut;
        cut << R"(,
  "cutouts": [{"type": "circle", "center": [0.5, 0.5], "radius": )"
            << r << "}]";
        extra = cut.str();
      }
      const double v =
          lambda1_of(parse_config_text(isotropic_plate_json(5, bc, extra)),
                     std::string(bc) + "-r" + fmt(r));
      (bc == std::string("CCCC") ? cccc : ssss).push_back(v);
    }
  }

  // normalization-free ratios against the no-hole case
  const double r1 = cccc[1] / cccc[0];
  const double r5 = cccc[5] / cccc[0];
  const double s2 = ssss[2] / ssss[0];
  const double s5 = ssss[5] / ssss[0];
  if (std::abs(r1 - 28.01 / 29.35) > 0.05 * (28.01 / 29.35)) ok = false;
  if (std::abs(r5 - 78.74 / 29.35) > 0.05 * (78.74 / 29.35)) ok = false;
  if (r5 < 2.6) ok = false;
  if (std::abs(s2 - 10.52 / 10.83) > 0.05 * (10.52 / 10.83)) ok = false;
  if (std::abs(s5 - 15.41 / 10.83) > 0.05 * (15.41 / 10.83)) ok = false;
  os << "CCCC dip " << fmt(r1) << " (0.954), rise " << fmt(r5) << " (2.683); "
     << "SSSS dip " << fmt(s2) << " (0.971), rise " << fmt(s5) << " (1.423)";

  // absolute match in degC with the thickness calibrated on d/b = 0
  double max_abs = 0.0;
  for (int i = 0; i < 6; ++i) {
    max_abs = std::max(max_abs, std::abs(cccc[i] - cccc_table[i]) / cccc_table[i]);
    max_abs = std::max(max_abs, std::abs(ssss[i] - ssss_table[i]) / ssss_table[i]);
  }
  os << "; max abs err " << fmt(100 * max_abs) << "%";
  if (max_abs > 0.05) ok = false;

  record("criterion 3 (isotropic circular-hole trend)", ok, os.str());
}

void criterion_4_classical_oracle() {
  const double E = 208e9, nu = 0.3, alpha = 1.17e-5, t = 0.01;
  const double D = E * t * t * t / (12.0 * (1.0 - nu * nu));
  // biaxial restrained heating: N_cr = pi^2 D (m^2+n^2) minimized at (1,1)
  const double series = 2.0 * kPi * kPi * D * (1.0 - nu) / (E * alpha * t);

  const double got = lambda1_of(parse_config_text(isotropic_plate_json(5, "SSSS", "")),
                                "classical-oracle");
  const double err = std::abs(got - series) / series;
  std::ostringstream os;
  os << "series " << fmt(series) << " degC vs " << fmt(got) << ", err "
     << fmt(100 * err) << "%";
  record("criterion 4 (classical SSSS oracle)", err <= 0.01, os.str());
}

const char* kStiffenerJson = R"(,
  "stiffeners": [{
    "start": [0.5, 0.0], "end": [1.0, 0.5], "middle": [0.8, 0.2],
    "delta_eps": %EPS%,
    "gamma": 5.0, "delta": 0.1,
    "material": {"E": 1.0, "nu": 0.3, "alpha": 0.01},
    "refinement": 5
  }])";

std::string stiffener_extra(double delta_eps, const std::string& cutouts) {
  std::string s = kStiffenerJson;
  const std::string key = "%EPS%";
  s.replace(s.find(key), key.size(), fmt(delta_eps));
  return cutouts + s;
}

void criterion_5_stiffened() {
  const std::string circle = R"(,
  "cutouts": [{"type": "circle", "center": [0.3, 0.7], "radius": 0.15}])";

  // (a) the stiffener raises the critical temperature of the cutout plate
  const double bare = lambda1_of(
      parse_config_text(composite_plate_json(5, "[0, 90, 90, 0]", circle)), "5a-bare");
  const double stiffened = lambda1_of(
      parse_config_text(
          composite_plate_json(5, "[0, 90, 90, 0]", stiffener_extra(0.25, circle))),
      "5a-stiffened");
  const bool a_ok = stiffened > bare;

  // (b) five positive ascending eigenvalues with K_G-orthogonal modes
  const ModelConfig cfg5 = parse_config_text(
      composite_plate_json(5, "[0, 90, 90, 0]", stiffener_extra(0.25, circle)));
  bool b_ok = true;
  std::string b_note;
  {
    const NurbsPatch patch =
        NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(cfg5.refinement);
    const ConstitutiveSet cs = constitutive_set(cfg5.laminate_stack());
    PlateModel model = build_plate_model(patch, cs, cfg5.thickness,
                                         cfg5.cutout_shape(), TriangleRule::seven_point());
    DofMap dofs = DofMap::build(model.cls.cp_enriched);
    AssembledPlate ap = assemble_plate(model, dofs);
    const StiffenerConfig& sc = cfg5.stiffeners.front();
    const StiffenerPath path =
        parabola_path(sc.start, sc.end, sc.middle, sc.delta_eps);
    const StiffenerSection sec = section_from_ratios(
        sc.gamma, sc.delta, 1.0, cfg5.thickness, cs.D(0, 0), sc.E, sc.nu, sc.alpha);
    StiffenerContribution stc =
        stiffener_matrices(model, dofs, path, sec, sc.refinement);
    ap.K.insert(ap.K.end(), stc.K.begin(), stc.K.end());

    const SpMat K = matrix_from_triplets(dofs.n_dofs, ap.K);
    const ConstraintSet cons = build_constraints(model, dofs, cfg5.bc, K);
    const SpMat K_ff = reduce_matrix(K, cons);
    const PrestressResult pre =
        prestress_solve(model, dofs, cons, K_ff, ap.F_unit, 1.0, &stc.F_unit);
    Triplets kg = assemble_geometric(model, dofs, pre);
    const Triplets kgs =
        stiffener_geometric(model, dofs, path, sec, sc.refinement, pre.u_full, 1.0);
    kg.insert(kg.end(), kgs.begin(), kgs.end());
    const SpMat KG_ff = reduce_matrix(matrix_from_triplets(dofs.n_dofs, kg), cons);

    const BucklingSolution sol = buckling_solve(K_ff, KG_ff, 5);
    if (sol.lambdas.size() != 5) {
      b_ok = false;
      b_note = "found " + std::to_string(sol.lambdas.size()) + " modes";
    } else {
      for (int i = 0; i < 5; ++i) {
        if (sol.lambdas[i] <= 0.0) b_ok = false;
        if (i > 0 && sol.lambdas[i] < sol.lambdas[i - 1]) b_ok = false;
      }
      const Eigen::MatrixXd G =
          sol.modes_free.transpose() * KG_ff * sol.modes_free;
      double worst = 0.0;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          if (i != j)
            worst = std::max(worst, std::abs(G(i, j)) /
                                        std::sqrt(std::abs(G(i, i) * G(j, j))));
      if (worst > 1e-8) b_ok = false;
      b_note = "orthogonality " + fmt(worst);
    }
  }

  // (c) delta_eps = 0.25 vs 0 for the antisymmetric cross-ply with the
  // centered ellipse: ordering 0.559 > 0.475, ratio within 10%
  const double lam0 = lambda1_of(
      parse_config_text(composite_plate_json(
          5, "[0, 90, 0, 90]", stiffener_extra(0.0, kCenteredEllipse90))),
      "5c-eps0");
  const double lam25 = lambda1_of(
      parse_config_text(composite_plate_json(
          5, "[0, 90, 0, 90]", stiffener_extra(0.25, kCenteredEllipse90))),
      "5c-eps25");
  const double target_ratio = 0.559 / 0.475;
  const double ratio = lam25 / lam0;
  const bool c_ok =
      lam25 > lam0 && std::abs(ratio - target_ratio) <= 0.10 * target_ratio;

  std::ostringstream os;
  os << "(a) " << fmt(bare) << " -> " << fmt(stiffened) << "; (b) " << b_note
     << "; (c) " << fmt(lam0) << " -> " << fmt(lam25) << ", ratio " << fmt(ratio)
     << " vs " << fmt(target_ratio);
  record("criterion 5 (stiffened-plate property suite)", a_ok && b_ok && c_ok,
         os.str());
}

void criterion_6_invariants() {
  bool ok = true;
  std::ostringstream os;

  // partition of unity and derivative zero-sum
  {
    const NurbsPatch patch = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(3);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const SurfaceBasis b = patch.surface_basis(u(rng), u(rng));
      worst = std::max(worst, std::abs(b.R.sum() - 1.0));
      worst = std::max(worst, std::abs(b.dRdxi.sum()));
      worst = std::max(worst, std::abs(b.dRdeta.sum()));
    }
    if (worst > 1e-12) ok = false;
    os << "unity " << fmt(worst);
  }

  // knot-insertion geometry exactness
  {
    const NurbsPatch coarse = NurbsPatch::quarter_annulus(0.7, 1.4);
    const NurbsPatch fine = coarse.h_refined(3);
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double xi = u(rng), eta = u(rng);
      Vec2 a, b;
      Mat2 J;
      coarse.map_parametric(xi, eta, a, J);
      fine.map_parametric(xi, eta, b, J);
      worst = std::max(worst, (a - b).norm());
    }
    if (worst > 1e-12) ok = false;
    os << ", insertion " << fmt(worst);
  }

  // B = 0 for a symmetric layup
  {
    Ply p;
    p.E_T = 1.0;
    p.E_L = 15.0;
    p.G_LT = 0.5;
    p.G_TT = 0.3356;
    p.nu_LT = 0.3;
    p.nu_TT = 0.49;
    p.alpha_L = 0.00015;
    p.alpha_T = 0.01;
    const ConstitutiveSet cs = constitutive_set(
        LaminateStack::from_angles(p, {0.3, -0.7, -0.7, 0.3}, 0.01));
    const double rel = cs.B.norm() / (cs.A.norm() * cs.thickness);
    if (rel > 1e-14) ok = false;
    os << ", B/Ah " << fmt(rel);
  }

  // cut-cell area reproduction at refinement 5
  {
    const NurbsPatch patch = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(5);
    const PatchMesh mesh = build_mesh(patch);
    const double r = 0.15;
    const LevelSetShape shape = LevelSetShape::circle(Vec2(0.5, 0.5), r);
    const ElementClassification cls = classify_elements(patch, mesh, shape);
    const TriangleRule tri = TriangleRule::seven_point();
    double area = 0.0;
    for (size_t e = 0; e < mesh.elements.size(); ++e) {
      const PatchMesh::Element& el = mesh.elements[e];
      const double jel = 0.25 * (el.xi1 - el.xi0) * (el.eta1 - el.eta0);
      for (const RulePoint& rp : physical_rule(patch, el, cls.tags[e], &shape, tri))
        area += rp.weight * jel;
    }
    const double err = std::abs(area - (1.0 - kPi * r * r));
    if (err > 2e-3) ok = false;
    os << ", area " << fmt(err);
  }

  // psi vanishes away from the interface
  {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const std::array<double, 4> phi = {0.1 + std::abs(u(rng)), 0.2, 0.7, 1.4};
      worst = std::max(worst, psi_on_parent(phi, Vec2(u(rng), u(rng))).psi);
    }
    if (worst > 0.0) ok = false;
  }

  // K and K_G symmetry on a cutout model
  {
    const ModelConfig cfg = parse_config_text(composite_plate_json(
        4, "[0, 90, 90, 0]",
        R"(, "cutouts": [{"type": "circle", "center": [0.5, 0.5], "radius": 0.15}])"));
    const NurbsPatch patch = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(4);
    const ConstitutiveSet cs = constitutive_set(cfg.laminate_stack());
    PlateModel model = build_plate_model(patch, cs, cfg.thickness, cfg.cutout_shape(),
                                         TriangleRule::seven_point());
    DofMap dofs = DofMap::build(model.cls.cp_enriched);
    AssembledPlate ap = assemble_plate(model, dofs);
    const SpMat K = matrix_from_triplets(dofs.n_dofs, ap.K);
    const ConstraintSet cons = build_constraints(model, dofs, BcKind::CCCC, K);
    const SpMat K_ff = reduce_matrix(K, cons);
    const PrestressResult pre =
        prestress_solve(model, dofs, cons, K_ff, ap.F_unit, 1.0);
    const SpMat KG = matrix_from_triplets(dofs.n_dofs,
                                          assemble_geometric(model, dofs, pre));
    const double ksym = (Eigen::MatrixXd(K) - Eigen::MatrixXd(K).transpose()).norm() /
                        Eigen::MatrixXd(K).norm();
    const double gsym = (Eigen::MatrixXd(KG) - Eigen::MatrixXd(KG).transpose()).norm() /
                        Eigen::MatrixXd(KG).norm();
    if (ksym > 1e-13 || gsym > 1e-13) ok = false;
    os << ", sym " << fmt(std::max(ksym, gsym));
  }

  // moduli-scaling invariance and alpha-scaling reciprocity
  {
    auto lam = [](double mod_scale, double alpha_scale) {
      std::ostringstream mat;
      mat << R"({
  "version": 1,
  "plate": {"thickness": 0.01, "refinement": 3, "layup_deg": [0, 90, 90, 0],
    "material": {"E_L": )"
          << 15.0 * mod_scale << R"(, "E_T": )" << mod_scale
          << R"(, "G_LT": )" << 0.5 * mod_scale << R"(, "G_TT": )"
          << 0.3356 * mod_scale
          << R"(, "nu_LT": 0.3, "nu_TT": 0.49, "alpha_L": )" << 0.00015 * alpha_scale
          << R"(, "alpha_T": )" << 0.01 * alpha_scale << R"(}},
  "bc": "CCCC"
})";
      return lambda1_of(parse_config_text(mat.str()), "scaling");
    };
    const double base = lam(1.0, 1.0);
    const double mod = lam(13.7, 1.0);
    const double alp = lam(1.0, 3.0);
    const double e1 = std::abs(mod - base) / base;
    const double e2 = std::abs(alp - base / 3.0) / (base / 3.0);
    if (e1 > 1e-10 || e2 > 1e-10) ok = false;
    os << ", scaling " << fmt(std::max(e1, e2));
  }

  record("criterion 6 (invariant suites)", ok, os.str());
}

void criterion_7_extra_dofs() {
  const int ndof_table[] = {660, 1920, 6320};
  const int extra_table[] = {160, 300, 540};
  bool ok = true;
  std::ostringstream os;
  std::vector<int> ndofs, extras;
  for (int level : {3, 4, 5}) {
    const ModelConfig cfg = parse_config_text(composite_plate_json(
        level, "[0, 90, 90, 0]",
        R"(, "cutouts": [{"type": "circle", "center": [0.5, 0.5], "radius": 0.15}])"));
    const NurbsPatch patch = NurbsPatch::rectangle(1.0, 1.0, 2).h_refined(level);
    const ElementClassification cls =
        classify_elements(patch, build_mesh(patch), *cfg.cutout_shape());
    const DofMap dofs = DofMap::build(cls.cp_enriched);
    ndofs.push_back(dofs.n_dofs);
    extras.push_back(dofs.n_extra);
  }
  for (int i = 0; i < 3; ++i) {
    if (std::abs(ndofs[i] - ndof_table[i]) > 0.2 * ndof_table[i]) ok = false;
    if (std::abs(extras[i] - extra_table[i]) > 0.2 * extra_table[i]) ok = false;
  }
  // interface scaling: extra-DOF growth strictly slower than total growth
  for (int i = 1; i < 3; ++i) {
    const double g_extra = static_cast<double>(extras[i]) / extras[i - 1];
    const double g_total = static_cast<double>(ndofs[i]) / ndofs[i - 1];
    if (!(g_extra < g_total)) ok = false;
  }
  os << "nDoF " << ndofs[0] << "/" << ndofs[1] << "/" << ndofs[2]
     << " (660/1920/6320), extra " << extras[0] << "/" << extras[1] << "/"
     << extras[2] << " (160/300/540)";
  record("criterion 7 (extra-DOF scaling)", ok, os.str());
}

}  // namespace

int main() {
  criterion_1_convergence();
  criterion_2_orientation();
  criterion_3_isotropic_hole();
  criterion_4_classical_oracle();
  criterion_5_stiffened();
  criterion_6_invariants();
  criterion_7_extra_dofs();

  int failures = 0;
  for (const Criterion& c : g_results)
    if (!c.pass) ++failures;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - failures,
              g_results.size());
  return failures;
}
