#pragma once

#include <cmath>
#include <string>

#include "pcf/errors.hpp"

namespace pcf {

/// Uniform 1D spatial lattice. Node positions are always recomputed from
/// the index so no rounding accumulates across the grid.
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  int nx = 0;
  double dx = 0.0;
  double dt = 0.0;
  double cfl = 0.0;

  Grid() = default;

  Grid(double x_min_, double x_max_, int nx_, double cfl_ = 0.4)
      : x_min(x_min_), x_max(x_max_), nx(nx_), cfl(cfl_) {
    if (nx < 8) throw InvalidInput("Grid: nx must be >= 8, got " + std::to_string(nx));
    dx = (x_max - x_min) / (nx - 1);
    if (!(dx > 0.0)) throw InvalidInput("Grid: need x_max > x_min");
    if (!(cfl > 0.0 && cfl <= 1.0))
      throw InvalidInput("Grid: cfl must lie in (0, 1], got " + std::to_string(cfl));
    dt = cfl * dx;
  }

  double x(int i) const { return x_min + i * dx; }
};

}  // namespace pcf
