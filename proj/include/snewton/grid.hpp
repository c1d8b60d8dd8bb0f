#pragma once

#include <cstddef>

#include "snewton/errors.hpp"

namespace snewton {

// Uniform radial grid on [0, R]: r_j = j*dr, R = (n_points-1)*dr.
struct RadialGrid {
  double dr = 0.0;
  std::size_t n_points = 0;

  RadialGrid() = default;
  RadialGrid(double spacing, std::size_t count) : dr(spacing), n_points(count) {
    if (!(dr > 0.0)) throw grid_error("RadialGrid: spacing must be positive");
    if (n_points < 16) throw grid_error("RadialGrid: need at least 16 points");
  }

  double r(std::size_t j) const { return static_cast<double>(j) * dr; }
  double outer_radius() const { return static_cast<double>(n_points - 1) * dr; }

  bool operator==(const RadialGrid&) const = default;
};

}  // namespace snewton
