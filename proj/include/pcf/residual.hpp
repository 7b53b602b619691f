#pragma once

#include "pcf/diagnostics.hpp"
#include "pcf/field_state.hpp"
#include "pcf/grid.hpp"

namespace pcf {

struct ResidualNorms {
  double r_Lambda = 0.0;
  double r_phi = 0.0;
  double max() const { return r_Lambda > r_phi ? r_Lambda : r_phi; }
};

/// Max-norm residual of the two wave equations for closed-form fields,
/// all derivatives by 2nd-order differences at spacing (dt, grid.dx):
///   box(Lambda) + 2 sinh(2 Lambda)(px^2 - pt^2)
///   box(phi)    + 2 coth(Lambda)(pt Lt - px Lx),
/// box = dtt - dxx, evaluated away from the boundary stencils.
ResidualNorms pde_residual(const ClosedFormPair& fields, const Grid& grid, double t, double dt);

/// Same residual for three consecutive evolved states (dtt by the second
/// time difference, first time derivatives from the stored arrays) -- the
/// solver cross-check.
ResidualNorms pde_residual_states(const FieldState& before, const FieldState& mid,
                                  const FieldState& after, const Grid& grid);

/// Least-squares slope of log(error) against log(h) -- the observed
/// convergence order of an error sequence under mesh refinement.
double observed_order(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace pcf
