#pragma once

#include <vector>

#include "pcf/field_state.hpp"
#include "pcf/grid.hpp"

namespace pcf {

/// sinh(a)^2, series-evaluated below |a| = 1e-4 so squaring never loses
/// the leading a^2 term.
double sinh_sq(double a);

/// coth(a) = 1/a + a/3 + O(a^3) near zero; direct ratio elsewhere.
double coth_stable(double a);

/// Pointwise energy and momentum densities
///   e = (Lx^2 + Lt^2)/2 + 2 sinh(Lambda)^2 (px^2 + pt^2)
///   p = Lx Lt + 4 sinh(Lambda)^2 px pt
/// which satisfy e >= 0 and |p| <= e at every node.
struct DensityPair {
  std::vector<double> e;
  std::vector<double> p;
};

DensityPair densities(const FieldState& state, const Grid& grid);

}  // namespace pcf
