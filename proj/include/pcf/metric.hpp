#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pcf/field_state.hpp"
#include "pcf/grid.hpp"
#include "pcf/initdata.hpp"

namespace pcf {

/// Samples of the symmetric 2x2 metric block g(t, x) with constant alpha.
/// det g = alpha^2 holds node by node.
struct MetricField {
  std::vector<double> g11, g12, g22;
  double alpha = 1.0;
  double t = 0.0;

  int nx() const { return static_cast<int>(g11.size()); }
};

/// g = alpha [ cosh L + cos(2p) sinh L,   sin(2p) sinh L
///             sin(2p) sinh L,            cosh L - cos(2p) sinh L ].
MetricField assemble_g(std::span<const double> Lambda, std::span<const double> phi, double alpha,
                       double t = 0.0);

/// Metric assembled from a field state (Lambda = lambda_bg + Ltil).
MetricField assemble_g(const FieldState& state);

/// Max-norm over interior nodes of dt(dt g g^-1) - dx(dx g g^-1) from three
/// consecutive slices at uniform dt, with both outer derivatives in compact
/// staggered form (products at half-steps, then differenced).
double chiral_residual(const MetricField& before, const MetricField& mid, const MetricField& after,
                       const Grid& grid);

/// Wave-equation source for ln f at constant alpha:
/// G = -(Lt^2 - Lx^2)/2 - 2 sinh^2(Lambda) (pt^2 - px^2).
std::vector<double> source_G(const FieldState& state, const Grid& grid);

/// Source samples on uniformly spaced time slices starting at t0.
struct SourceHistory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<std::vector<double>> slices;
};

/// d'Alembert evaluation of psi(t, x) for box psi = source with data
/// (psi0, psi1) at t0:
///   psi = (psi0(x+T) + psi0(x-T))/2 + (1/2) int_{x-T}^{x+T} psi1
///       + (1/2) iint_{backward cone} source,     T = t - t0,
/// the cone integral by 2D trapezoid over the stored slices. The cone must
/// stay inside the grid.
double dalembert_solve(const std::function<double(double)>& psi0,
                       const std::function<double(double)>& psi1, const SourceHistory& source,
                       double t, double x, const Grid& grid);

}  // namespace pcf
