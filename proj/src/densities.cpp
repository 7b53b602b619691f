#include "pcf/densities.hpp"

#include <cmath>
#include <string>

#include "pcf/errors.hpp"
#include "pcf/stencil.hpp"

namespace pcf {

double sinh_sq(double a) {
  const double a2 = a * a;
  if (std::abs(a) < 1e-4) return a2 * (1.0 + a2 / 3.0 + 2.0 * a2 * a2 / 45.0);
  const double s = std::sinh(a);
  return s * s;
}

double coth_stable(double a) {
  if (std::abs(a) < 1e-4) return 1.0 / a + a / 3.0;
  return std::cosh(a) / std::sinh(a);
}

DensityPair densities(const FieldState& state, const Grid& grid) {
  state.validate(grid);
  const auto Lx = spatial_derivative(state.Ltil, grid);
  const auto px = spatial_derivative(state.phi, grid);
  const int n = grid.nx;
  DensityPair out;
  out.e.resize(n);
  out.p.resize(n);
  for (int i = 0; i < n; ++i) {
    const double s2 = sinh_sq(state.lambda_bg + state.Ltil[i]);
    const double lt = state.Ltil_t[i];
    const double pt = state.phi_t[i];
    out.e[i] = 0.5 * (Lx[i] * Lx[i] + lt * lt) + 2.0 * s2 * (px[i] * px[i] + pt * pt);
    out.p[i] = Lx[i] * lt + 4.0 * s2 * px[i] * pt;
    if (!std::isfinite(out.e[i]) || !std::isfinite(out.p[i]))
      throw NumericalOverflow("densities: non-finite density at node " + std::to_string(i), i);
  }
  return out;
}

}  // namespace pcf
