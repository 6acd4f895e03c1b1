/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_MODEL_HPP
#define LSIGA_MODEL_HPP

#include <string>
#include <vector>

#include "lsiga/stiffener.hpp"

namespace lsiga {

/// One validation problem, with the JSON path of the offending field.
struct ConfigIssue {
  std::string path;
  std::string message;
};

/// Carries every issue found in a config file, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

struct MaterialConfig {
  // orthotropic set; isotropic input fills E_L = E_T etc.
  double E_L = 0, E_T = 0, G_LT = 0, G_TT = 0;
  double nu_LT = 0, nu_TT = 0;
  double alpha_L = 0, alpha_T = 0;

  Ply ply(double theta, double thickness) const;
};

struct CutoutConfig {
  enum class Kind { Circle, Ellipse, Union };
  Kind kind = Kind::Circle;
  Vec2 center = Vec2::Zero();
  double radius = 0.0;                 // circle
  double semi_major = 0.0, semi_minor = 0.0, orientation_deg = 0.0;  // ellipse
  std::vector<CutoutConfig> children;  // union

  LevelSetShape shape() const;
};

struct StiffenerConfig {
  Vec2 start = Vec2::Zero(), end = Vec2::Zero();
  bool has_middle = false;
  Vec2 middle = Vec2::Zero();   // explicit middle control point
  double delta_dist = 0.5;      // used when no explicit middle is given
  double delta_eps = 0.0;
  double gamma = 5.0, delta = 0.1;
  double E = 0.0, nu = 0.0, alpha = 0.0;
  int refinement = 5;
};

struct AnalysisConfig {
  int n_modes = 5;
  double dT_ref = 1.0;
  Normalization normalization = Normalization::Identity;
  double alpha0 = 1.0;
};

struct OutputConfig {
  std::string dir = "out";
  int modes_grid = 64;
  bool csv = true;
  bool vtk = true;
};

struct ModelConfig {
  int version = 1;
  double length_x = 1.0, length_y = 1.0;
  double thickness = 0.0;
  int degree = 2;
  int refinement = 1;
  std::vector<double> layup_deg;  // bottom to top, degrees
  MaterialConfig material;
  std::vector<CutoutConfig> cutouts;
  std::vector<StiffenerConfig> stiffeners;
  BcKind bc = BcKind::CCCC;
  AnalysisConfig analysis;
  OutputConfig output;

  LaminateStack laminate_stack() const;
  std::optional<LevelSetShape> cutout_shape() const;
};

/// Parses and fully validates a config file. All violations are
/// collected into one ConfigError (not fail-fast); unknown keys are
/// reported with their field paths.
ModelConfig load_config(const std::string& path);

/// Same, from a JSON string (used by tests and stdin-driven tools).
ModelConfig parse_config_text(const std::string& text,
                              const std::string& origin = "<string>");

}  // namespace lsiga

#endif  // LSIGA_MODEL_HPP
