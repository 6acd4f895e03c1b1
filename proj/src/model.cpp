/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/model.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lsiga {

using nlohmann::json;

namespace {

std::string issues_summary(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  os << "invalid config (" << issues.size() << " issue(s)):";
  for (const ConfigIssue& i : issues) os << "\n  " << i.path << ": " << i.message;
  return os.str();
}

// Validation context: collects issues and checks key sets.
struct Ctx {
  std::vector<ConfigIssue> issues;

  void err(const std::string& path, const std::string& message) {
    issues.push_back({path, message});
  }

  void check_keys(const json& j, const std::string& path,
                  std::initializer_list<const char*> known) {
    if (!j.is_object()) return;
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool ok = false;
      for (const char* k : known)
        if (it.key() == k) ok = true;
      if (!ok) err(path + "." + it.key(), "unknown key");
    }
  }

  double number(const json& j, const std::string& path, const char* key,
                double fallback, bool required = false) {
    if (!j.contains(key)) {
      if (required) err(path + "." + key, "missing required field");
      return fallback;
    }
    if (!j[key].is_number()) {
      err(path + "." + key, "expected a number");
      return fallback;
    }
    return j[key].get<double>();
  }

  int integer(const json& j, const std::string& path, const char* key,
              int fallback, bool required = false) {
    if (!j.contains(key)) {
      if (required) err(path + "." + key, "missing required field");
      return fallback;
    }
    if (!j[key].is_number_integer()) {
      err(path + "." + key, "expected an integer");
      return fallback;
    }
    return j[key].get<int>();
  }

  Vec2 point(const json& j, const std::string& path, const char* key,
             bool required = false) {
    if (!j.contains(key)) {
      if (required) err(path + "." + key, "missing required field");
      return Vec2::Zero();
    }
    const json& v = j[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      err(path + "." + key, "expected a [x, y] pair");
      return Vec2::Zero();
    }
    return Vec2(v[0].get<double>(), v[1].get<double>());
  }
};

MaterialConfig parse_material(Ctx& ctx, const json& j, const std::string& path) {
  MaterialConfig m;
  if (!j.is_object()) {
    ctx.err(path, "expected an object");
    return m;
  }
  if (j.contains("E")) {
    ctx.check_keys(j, path, {"E", "nu", "alpha"});
    const double E = ctx.number(j, path, "E", 0.0, true);
    const double nu = ctx.number(j, path, "nu", 0.0, true);
    const double alpha = ctx.number(j, path, "alpha", 0.0, true);
    m.E_L = m.E_T = E;
    m.G_LT = m.G_TT = 0.5 * E / (1.0 + nu);
    m.nu_LT = m.nu_TT = nu;
    m.alpha_L = m.alpha_T = alpha;
  } else {
    ctx.check_keys(j, path,
                   {"E_L", "E_T", "G_LT", "G_TT", "nu_LT", "nu_TT", "alpha_L", "alpha_T"});
    m.E_L = ctx.number(j, path, "E_L", 0.0, true);
    m.E_T = ctx.number(j, path, "E_T", 0.0, true);
    m.G_LT = ctx.number(j, path, "G_LT", 0.0, true);
    m.G_TT = ctx.number(j, path, "G_TT", 0.0, true);
    m.nu_LT = ctx.number(j, path, "nu_LT", 0.0, true);
    m.nu_TT = ctx.number(j, path, "nu_TT", 0.0);
    m.alpha_L = ctx.number(j, path, "alpha_L", 0.0, true);
    m.alpha_T = ctx.number(j, path, "alpha_T", 0.0, true);
  }
  if (m.E_L <= 0.0 || m.E_T <= 0.0) ctx.err(path, "moduli must be positive");
  return m;
}

CutoutConfig parse_cutout(Ctx& ctx, const json& j, const std::string& path) {
  CutoutConfig c;
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    ctx.err(path, "cutout needs a string 'type' (circle/ellipse/union)");
    return c;
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "circle") {
    ctx.check_keys(j, path, {"type", "center", "radius"});
    c.kind = CutoutConfig::Kind::Circle;
    c.center = ctx.point(j, path, "center", true);
    c.radius = ctx.number(j, path, "radius", 0.0, true);
    if (c.radius <= 0.0) ctx.err(path + ".radius", "must be positive");
  } else if (type == "ellipse") {
    ctx.check_keys(j, path,
                   {"type", "center", "semi_major", "semi_minor", "orientation_deg"});
    c.kind = CutoutConfig::Kind::Ellipse;
    c.center = ctx.point(j, path, "center", true);
    c.semi_major = ctx.number(j, path, "semi_major", 0.0, true);
    c.semi_minor = ctx.number(j, path, "semi_minor", 0.0, true);
    c.orientation_deg = ctx.number(j, path, "orientation_deg", 0.0);
    if (c.semi_major <= 0.0 || c.semi_minor <= 0.0)
      ctx.err(path, "semi-axes must be positive");
  } else if (type == "union") {
    ctx.check_keys(j, path, {"type", "shapes"});
    c.kind = CutoutConfig::Kind::Union;
    if (!j.contains("shapes") || !j["shapes"].is_array() || j["shapes"].empty()) {
      ctx.err(path + ".shapes", "union needs a nonempty shape list");
    } else {
      int k = 0;
      for (const json& s : j["shapes"])
        c.children.push_back(parse_cutout(ctx, s, path + ".shapes[" + std::to_string(k++) + "]"));
    }
  } else {
    ctx.err(path + ".type", "unknown cutout type '" + type + "'");
  }
  return c;
}

StiffenerConfig parse_stiffener(Ctx& ctx, const json& j, const std::string& path) {
  StiffenerConfig s;
  if (!j.is_object()) {
    ctx.err(path, "expected an object");
    return s;
  }
  ctx.check_keys(j, path,
                 {"start", "end", "middle", "delta_dist", "delta_eps", "gamma",
                  "delta", "material", "refinement"});
  s.start = ctx.point(j, path, "start", true);
  s.end = ctx.point(j, path, "end", true);
  if (j.contains("middle")) {
    s.has_middle = true;
    s.middle = ctx.point(j, path, "middle");
  }
  s.delta_dist = ctx.number(j, path, "delta_dist", 0.5);
  s.delta_eps = ctx.number(j, path, "delta_eps", 0.0);
  s.gamma = ctx.number(j, path, "gamma", 5.0);
  s.delta = ctx.number(j, path, "delta", 0.1);
  s.refinement = ctx.integer(j, path, "refinement", 5);
  if (s.gamma <= 0.0 || s.delta <= 0.0)
    ctx.err(path, "gamma and delta must be positive");
  if (s.refinement < 0) ctx.err(path + ".refinement", "must be non-negative");

  if (!j.contains("material") || !j["material"].is_object()) {
    ctx.err(path + ".material", "missing stiffener material {E, nu, alpha}");
  } else {
    const json& m = j["material"];
    ctx.check_keys(m, path + ".material", {"E", "nu", "alpha"});
    s.E = ctx.number(m, path + ".material", "E", 0.0, true);
    s.nu = ctx.number(m, path + ".material", "nu", 0.0, true);
    s.alpha = ctx.number(m, path + ".material", "alpha", 0.0, true);
    if (s.E <= 0.0) ctx.err(path + ".material.E", "must be positive");
  }
  return s;
}

ModelConfig parse_config(const json& root, const std::string& origin) {
  Ctx ctx;
  ModelConfig cfg;

  if (!root.is_object()) {
    ctx.err(origin, "top level must be a JSON object");
    throw ConfigError(std::move(ctx.issues));
  }
  ctx.check_keys(root, origin,
                 {"version", "plate", "cutouts", "stiffeners", "bc", "analysis", "output"});

  cfg.version = ctx.integer(root, origin, "version", 0, true);
  if (cfg.version != 1) ctx.err(origin + ".version", "unsupported config version");

  if (!root.contains("plate") || !root["plate"].is_object()) {
    ctx.err(origin + ".plate", "missing required object");
  } else {
    const json& p = root["plate"];
    const std::string pp = origin + ".plate";
    ctx.check_keys(p, pp,
                   {"length_x", "length_y", "thickness", "degree", "refinement",
                    "layup_deg", "material"});
    cfg.length_x = ctx.number(p, pp, "length_x", 1.0);
    cfg.length_y = ctx.number(p, pp, "length_y", 1.0);
    cfg.thickness = ctx.number(p, pp, "thickness", 0.0, true);
    cfg.degree = ctx.integer(p, pp, "degree", 2);
    cfg.refinement = ctx.integer(p, pp, "refinement", 1, true);
    if (cfg.thickness <= 0.0) ctx.err(pp + ".thickness", "must be positive");
    if (cfg.degree < 1) ctx.err(pp + ".degree", "must be at least 1");
    if (cfg.refinement < 1) ctx.err(pp + ".refinement", "must be at least 1");
    if (cfg.length_x <= 0.0 || cfg.length_y <= 0.0)
      ctx.err(pp, "plate dimensions must be positive");

    if (!p.contains("layup_deg") || !p["layup_deg"].is_array() || p["layup_deg"].empty()) {
      ctx.err(pp + ".layup_deg", "need a nonempty list of ply angles in degrees");
    } else {
      for (const json& a : p["layup_deg"]) {
        if (!a.is_number()) {
          ctx.err(pp + ".layup_deg", "angles must be numbers");
          break;
        }
        cfg.layup_deg.push_back(a.get<double>());
      }
    }
    if (!p.contains("material")) {
      ctx.err(pp + ".material", "missing required object");
    } else {
      cfg.material = parse_material(ctx, p["material"], pp + ".material");
    }
  }

  if (root.contains("cutouts")) {
    if (!root["cutouts"].is_array()) {
      ctx.err(origin + ".cutouts", "expected an array");
    } else {
      int k = 0;
      for (const json& c : root["cutouts"])
        cfg.cutouts.push_back(
            parse_cutout(ctx, c, origin + ".cutouts[" + std::to_string(k++) + "]"));
    }
  }

  if (root.contains("stiffeners")) {
    if (!root["stiffeners"].is_array()) {
      ctx.err(origin + ".stiffeners", "expected an array");
    } else {
      int k = 0;
      for (const json& s : root["stiffeners"])
        cfg.stiffeners.push_back(parse_stiffener(
            ctx, s, origin + ".stiffeners[" + std::to_string(k++) + "]"));
    }
  }

  if (!root.contains("bc") || !root["bc"].is_string()) {
    ctx.err(origin + ".bc", "missing boundary condition ('CCCC' or 'SSSS')");
  } else {
    const std::string bc = root["bc"].get<std::string>();
    if (bc == "CCCC")
      cfg.bc = BcKind::CCCC;
    else if (bc == "SSSS")
      cfg.bc = BcKind::SSSS;
    else
      ctx.err(origin + ".bc", "unknown boundary condition '" + bc + "'");
  }

  if (root.contains("analysis")) {
    const json& a = root["analysis"];
    const std::string pa = origin + ".analysis";
    ctx.check_keys(a, pa, {"n_modes", "dT_ref", "normalization", "alpha0"});
    cfg.analysis.n_modes = ctx.integer(a, pa, "n_modes", 5);
    cfg.analysis.dT_ref = ctx.number(a, pa, "dT_ref", 1.0);
    cfg.analysis.alpha0 = ctx.number(a, pa, "alpha0", 1.0);
    if (cfg.analysis.n_modes < 1) ctx.err(pa + ".n_modes", "must be at least 1");
    if (a.contains("normalization")) {
      if (!a["normalization"].is_string()) {
        ctx.err(pa + ".normalization", "expected a string");
      } else {
        const std::string n = a["normalization"].get<std::string>();
        if (n == "identity")
          cfg.analysis.normalization = Normalization::Identity;
        else if (n == "alpha0_e3")
          cfg.analysis.normalization = Normalization::Alpha0E3;
        else if (n == "alpha0_e3_x100")
          cfg.analysis.normalization = Normalization::Alpha0E3Times100;
        else
          ctx.err(pa + ".normalization", "unknown convention '" + n + "'");
      }
    }
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    const std::string po = origin + ".output";
    ctx.check_keys(o, po, {"dir", "modes_grid", "formats"});
    if (o.contains("dir")) {
      if (o["dir"].is_string())
        cfg.output.dir = o["dir"].get<std::string>();
      else
        ctx.err(po + ".dir", "expected a string");
    }
    cfg.output.modes_grid = ctx.integer(o, po, "modes_grid", 64);
    if (cfg.output.modes_grid < 2) ctx.err(po + ".modes_grid", "must be at least 2");
    if (o.contains("formats")) {
      if (!o["formats"].is_array()) {
        ctx.err(po + ".formats", "expected an array");
      } else {
        cfg.output.csv = cfg.output.vtk = false;
        for (const json& f : o["formats"]) {
          if (f.is_string() && f.get<std::string>() == "csv")
            cfg.output.csv = true;
          else if (f.is_string() && f.get<std::string>() == "vtk")
            cfg.output.vtk = true;
          else
            ctx.err(po + ".formats", "formats are 'csv' and 'vtk'");
        }
      }
    }
  }

  if (!ctx.issues.empty()) throw ConfigError(std::move(ctx.issues));
  return cfg;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(issues_summary(issues)), issues_(std::move(issues)) {}

Ply MaterialConfig::ply(double theta, double thickness) const {
  Ply p;
  p.E_L = E_L;
  p.E_T = E_T;
  p.G_LT = G_LT;
  p.G_TT = G_TT;
  p.nu_LT = nu_LT;
  p.nu_TT = nu_TT;
  p.alpha_L = alpha_L;
  p.alpha_T = alpha_T;
  p.theta = theta;
  p.thickness = thickness;
  return p;
}

LevelSetShape CutoutConfig::shape() const {
  switch (kind) {
    case Kind::Circle:
      return LevelSetShape::circle(center, radius);
    case Kind::Ellipse:
      return LevelSetShape::ellipse(center, semi_major, semi_minor,
                                    deg_to_rad(orientation_deg));
    case Kind::Union: {
      std::vector<LevelSetShape> shapes;
      for (const CutoutConfig& c : children) shapes.push_back(c.shape());
      return LevelSetShape::union_of(std::move(shapes));
    }
  }
  throw std::logic_error("unreachable cutout kind");
}

LaminateStack ModelConfig::laminate_stack() const {
  std::vector<double> angles;
  for (double deg : layup_deg) angles.push_back(deg_to_rad(deg));
  return LaminateStack::from_angles(material.ply(0.0, 1.0), angles, thickness);
}

std::optional<LevelSetShape> ModelConfig::cutout_shape() const {
  if (cutouts.empty()) return std::nullopt;
  if (cutouts.size() == 1) return cutouts.front().shape();
  std::vector<LevelSetShape> shapes;
  for (const CutoutConfig& c : cutouts) shapes.push_back(c.shape());
  return LevelSetShape::union_of(std::move(shapes));
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError({{path, "cannot open config file"}});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

ModelConfig parse_config_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({{origin, std::string("JSON parse error: ") + e.what()}});
  }
  return parse_config(root, origin);
}

}  // namespace lsiga
