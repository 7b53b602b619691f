#include "pcf/residual.hpp"

#include <cmath>

#include "pcf/densities.hpp"
#include "pcf/errors.hpp"
#include "pcf/stencil.hpp"

namespace pcf {

ResidualNorms pde_residual(const ClosedFormPair& fields, const Grid& grid, double t, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("pde_residual: dt must be positive");
  const int n = grid.nx;
  std::vector<double> L0(n), Lp(n), Lm(n), P0(n), Pp(n), Pm(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.x(i);
    L0[i] = fields.Lambda(t, x);
    Lp[i] = fields.Lambda(t + dt, x);
    Lm[i] = fields.Lambda(t - dt, x);
    P0[i] = fields.phi(t, x);
    Pp[i] = fields.phi(t + dt, x);
    Pm[i] = fields.phi(t - dt, x);
  }
  const double invdt2 = 1.0 / (dt * dt);
  const double inv2dt = 1.0 / (2.0 * dt);
  const double invdx2 = 1.0 / (grid.dx * grid.dx);
  const double inv2dx = 1.0 / (2.0 * grid.dx);

  ResidualNorms out;
  for (int i = 2; i + 2 < n; ++i) {
    const double boxL =
        (Lp[i] - 2.0 * L0[i] + Lm[i]) * invdt2 - (L0[i + 1] - 2.0 * L0[i] + L0[i - 1]) * invdx2;
    const double boxP =
        (Pp[i] - 2.0 * P0[i] + Pm[i]) * invdt2 - (P0[i + 1] - 2.0 * P0[i] + P0[i - 1]) * invdx2;
    const double Lt = (Lp[i] - Lm[i]) * inv2dt;
    const double Lx = (L0[i + 1] - L0[i - 1]) * inv2dx;
    const double pt = (Pp[i] - Pm[i]) * inv2dt;
    const double px = (P0[i + 1] - P0[i - 1]) * inv2dx;
    const double F1 = -2.0 * std::sinh(2.0 * L0[i]) * (px * px - pt * pt);
    const double F2 = -2.0 * coth_stable(L0[i]) * (pt * Lt - px * Lx);
    out.r_Lambda = std::max(out.r_Lambda, std::abs(boxL - F1));
    out.r_phi = std::max(out.r_phi, std::abs(boxP - F2));
  }
  return out;
}

ResidualNorms pde_residual_states(const FieldState& before, const FieldState& mid,
                                  const FieldState& after, const Grid& grid) {
  const double dt1 = mid.t - before.t;
  const double dt2 = after.t - mid.t;
  if (!(dt1 > 0.0) || std::abs(dt1 - dt2) > 1e-9 * std::max(dt1, dt2))
    throw InvalidInput("pde_residual_states: slices must be uniformly spaced in time");
  const double invdt2 = 1.0 / (dt1 * dt1);
  const double invdx2 = 1.0 / (grid.dx * grid.dx);
  const double inv2dx = 1.0 / (2.0 * grid.dx);

  ResidualNorms out;
  for (int i = 2; i + 2 < grid.nx; ++i) {
    const double lam = mid.lambda_bg + mid.Ltil[i];
    const double boxL = (after.Ltil[i] - 2.0 * mid.Ltil[i] + before.Ltil[i]) * invdt2 -
                        (mid.Ltil[i + 1] - 2.0 * mid.Ltil[i] + mid.Ltil[i - 1]) * invdx2;
    const double boxP = (after.phi[i] - 2.0 * mid.phi[i] + before.phi[i]) * invdt2 -
                        (mid.phi[i + 1] - 2.0 * mid.phi[i] + mid.phi[i - 1]) * invdx2;
    const double Lx = (mid.Ltil[i + 1] - mid.Ltil[i - 1]) * inv2dx;
    const double px = (mid.phi[i + 1] - mid.phi[i - 1]) * inv2dx;
    const double F1 =
        -2.0 * std::sinh(2.0 * lam) * (px * px - mid.phi_t[i] * mid.phi_t[i]);
    const double F2 = -2.0 * coth_stable(lam) * (mid.phi_t[i] * mid.Ltil_t[i] - px * Lx);
    out.r_Lambda = std::max(out.r_Lambda, std::abs(boxL - F1));
    out.r_phi = std::max(out.r_phi, std::abs(boxP - F2));
  }
  return out;
}

double observed_order(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2)
    throw InvalidInput("observed_order: need matching sequences of length >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    const double X = std::log(h[i]);
    const double Y = std::log(err[i]);
    sx += X;
    sy += Y;
    sxx += X * X;
    sxy += X * Y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace pcf
