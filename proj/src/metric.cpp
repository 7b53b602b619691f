#include "pcf/metric.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pcf/densities.hpp"
#include "pcf/errors.hpp"
#include "pcf/stencil.hpp"

namespace pcf {

MetricField assemble_g(std::span<const double> Lambda, std::span<const double> phi, double alpha,
                       double t) {
  if (Lambda.size() != phi.size()) throw InvalidInput("assemble_g: length mismatch");
  MetricField g;
  g.alpha = alpha;
  g.t = t;
  const size_t n = Lambda.size();
  g.g11.resize(n);
  g.g12.resize(n);
  g.g22.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double ch = std::cosh(Lambda[i]);
    const double sh = std::sinh(Lambda[i]);
    const double c2 = std::cos(2.0 * phi[i]);
    const double s2 = std::sin(2.0 * phi[i]);
    g.g11[i] = alpha * (ch + c2 * sh);
    g.g12[i] = alpha * s2 * sh;
    g.g22[i] = alpha * (ch - c2 * sh);
    if (!std::isfinite(g.g11[i]) || !std::isfinite(g.g22[i]))
      throw NumericalOverflow("assemble_g: non-finite entry at node " + std::to_string(i),
                              static_cast<int>(i));
  }
  return g;
}

MetricField assemble_g(const FieldState& state) {
  std::vector<double> Lambda(state.Ltil.size());
  for (size_t i = 0; i < Lambda.size(); ++i) Lambda[i] = state.lambda_bg + state.Ltil[i];
  return assemble_g(Lambda, state.phi, 1.0, state.t);
}

namespace {

using M2 = std::array<double, 4>;  // row-major 2x2

M2 mat_at(const MetricField& g, int i) { return {g.g11[i], g.g12[i], g.g12[i], g.g22[i]}; }

M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

M2 inv(const M2& a) {
  const double det = a[0] * a[3] - a[1] * a[2];
  if (std::abs(det) < 1e-8) throw DomainError("chiral_residual: near-singular metric");
  return {a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
}

M2 sub(const M2& a, const M2& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }

M2 scale(double s, const M2& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

M2 avg(const M2& a, const M2& b) {
  return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2]), 0.5 * (a[3] + b[3])};
}

// (gb - ga)/h * inv((ga + gb)/2): the product dg g^-1 at the midpoint.
M2 halfstep_product(const M2& ga, const M2& gb, double h) {
  return mul(scale(1.0 / h, sub(gb, ga)), inv(avg(ga, gb)));
}

}  // namespace

double chiral_residual(const MetricField& before, const MetricField& mid, const MetricField& after,
                       const Grid& grid) {
  const int n = grid.nx;
  if (before.nx() != n || mid.nx() != n || after.nx() != n)
    throw InvalidInput("chiral_residual: slice length mismatch");
  const double dt1 = mid.t - before.t;
  const double dt2 = after.t - mid.t;
  if (!(dt1 > 0.0) || std::abs(dt1 - dt2) > 1e-9 * std::max(dt1, dt2))
    throw InvalidInput("chiral_residual: slices must be uniformly spaced in time");
  const double dt = dt1;

  double res = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const M2 g0 = mat_at(mid, i);
    const M2 pt_plus = halfstep_product(g0, mat_at(after, i), dt);
    const M2 pt_minus = halfstep_product(mat_at(before, i), g0, dt);
    const M2 tt = scale(1.0 / dt, sub(pt_plus, pt_minus));

    const M2 qx_plus = halfstep_product(g0, mat_at(mid, i + 1), grid.dx);
    const M2 qx_minus = halfstep_product(mat_at(mid, i - 1), g0, grid.dx);
    const M2 xx = scale(1.0 / grid.dx, sub(qx_plus, qx_minus));

    const M2 r = sub(tt, xx);
    for (double v : r) res = std::max(res, std::abs(v));
  }
  return res;
}

std::vector<double> source_G(const FieldState& state, const Grid& grid) {
  state.validate(grid);
  const auto Lx = spatial_derivative(state.Ltil, grid);
  const auto px = spatial_derivative(state.phi, grid);
  std::vector<double> G(grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    const double s2 = sinh_sq(state.lambda_bg + state.Ltil[i]);
    const double Lt = state.Ltil_t[i];
    const double pt = state.phi_t[i];
    G[i] = -0.5 * (Lt * Lt - Lx[i] * Lx[i]) - 2.0 * s2 * (pt * pt - px[i] * px[i]);
  }
  return G;
}

double dalembert_solve(const std::function<double(double)>& psi0,
                       const std::function<double(double)>& psi1, const SourceHistory& source,
                       double t, double x, const Grid& grid) {
  const double T = t - source.t0;
  if (T < 0.0) throw InvalidInput("dalembert_solve: t before the start of the history");
  if (x - T < grid.x_min - 1e-12 || x + T > grid.x_max + 1e-12)
    throw InvalidInput("dalembert_solve: backward cone exits the grid");

  double psi = 0.5 * (psi0(x + T) + psi0(x - T));

  // int_{x-T}^{x+T} psi1 by trapezoid at the grid spacing
  if (T > 0.0) {
    const int m = std::max(2, static_cast<int>(std::ceil(2.0 * T / grid.dx)) + 1);
    const double h = 2.0 * T / (m - 1);
    double s = 0.5 * (psi1(x - T) + psi1(x + T));
    for (int j = 1; j + 1 < m; ++j) s += psi1(x - T + j * h);
    psi += 0.5 * s * h;
  }

  if (!source.slices.empty() && T > 0.0) {
    if (!(source.dt > 0.0)) throw InvalidInput("dalembert_solve: history needs dt > 0");
    const double t_last = source.t0 + (source.slices.size() - 1) * source.dt;
    if (t > t_last + 1e-9 * source.dt)
      throw InvalidInput("dalembert_solve: history does not reach the requested time");
    // inner integrals over the cone cross-sections, then trapezoid in tau
    const int full = static_cast<int>(std::floor(T / source.dt + 1e-12));
    double cone = 0.0;
    double prev = trapezoid_interval(source.slices[0], grid, x - T, x + T);
    for (int j = 1; j <= full; ++j) {
      const double width = T - j * source.dt;
      const double cur =
          width > 0.0 ? trapezoid_interval(source.slices[j], grid, x - width, x + width) : 0.0;
      cone += 0.5 * (prev + cur) * source.dt;
      prev = cur;
    }
    const double tip = T - full * source.dt;  // remaining sliver below the apex
    if (tip > 1e-12 * source.dt) cone += 0.5 * prev * tip;
    psi += 0.5 * cone;
  }
  return psi;
}

}  // namespace pcf
