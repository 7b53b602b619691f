#pragma once

#include <span>
#include <vector>

#include "pcf/grid.hpp"

namespace pcf {

/// First x-derivative: 2nd-order centered in the interior, 2nd-order
/// one-sided at the two boundary nodes.
std::vector<double> spatial_derivative(std::span<const double> f, const Grid& grid);

/// Second x-derivative, same order and boundary treatment.
std::vector<double> second_derivative(std::span<const double> f, const Grid& grid);

/// Composite trapezoid over the whole grid.
double trapezoid(std::span<const double> f, const Grid& grid);

/// Trapezoid of f restricted to [a, b], with linear interpolation for the
/// partial cells at the interval ends. [a, b] is clipped to the grid.
double trapezoid_interval(std::span<const double> f, const Grid& grid, double a, double b);

/// Linear interpolation of grid samples at position x (clamped to the grid).
double interp_linear(std::span<const double> f, const Grid& grid, double x);

}  // namespace pcf
