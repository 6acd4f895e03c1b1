/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#ifndef LSIGA_COMMON_HPP
#define LSIGA_COMMON_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace lsiga {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Raised when a computation degenerates numerically (zero-length knot
/// span, inverted element, unsolvable section sizing, singular system).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a model description is inconsistent with itself
/// (enriched element without interface crossings, stiffener through a
/// cutout, constraint on a nonexistent DOF).
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

}  // namespace lsiga

#endif  // LSIGA_COMMON_HPP
