#include "pcf/null_form.hpp"

#include <cmath>

#include "pcf/errors.hpp"
#include "pcf/stencil.hpp"

namespace pcf {

NullFrame null_frame(const FieldState& state, FieldSelector which, const Grid& grid) {
  state.validate(grid);
  const auto& f = (which == FieldSelector::Ltil) ? state.Ltil : state.phi;
  const auto& ft = (which == FieldSelector::Ltil) ? state.Ltil_t : state.phi_t;
  const auto fx = spatial_derivative(f, grid);

  NullFrame out;
  out.t = state.t;
  const int n = grid.nx;
  out.Lf.resize(n);
  out.Lbf.resize(n);
  out.u.resize(n);
  out.ub.resize(n);
  for (int i = 0; i < n; ++i) {
    out.Lf[i] = ft[i] + fx[i];
    out.Lbf[i] = ft[i] - fx[i];
    out.u[i] = 0.5 * (state.t + grid.x(i));
    out.ub[i] = 0.5 * (state.t - grid.x(i));
  }
  return out;
}

std::vector<double> null_form_q0(const NullFrame& a, const NullFrame& b) {
  const size_t n = a.Lf.size();
  if (b.Lf.size() != n || a.u.size() != n || b.u.size() != n)
    throw InvalidInput("null_form_q0: frame size mismatch");
  if (std::abs(a.u.front() - b.u.front()) > 1e-12 || std::abs(a.u.back() - b.u.back()) > 1e-12)
    throw InvalidInput("null_form_q0: frames sampled on different grids or times");
  std::vector<double> q(n);
  for (size_t i = 0; i < n; ++i)
    q[i] = -0.5 * (a.Lf[i] * b.Lbf[i] + a.Lbf[i] * b.Lf[i]);
  return q;
}

}  // namespace pcf
