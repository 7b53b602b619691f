#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "pcf/field_state.hpp"
#include "pcf/grid.hpp"

namespace pcf::testing {

/// State sampled from analytic fields: caller supplies Ltil(t,x), phi(t,x)
/// and their exact time derivatives.
inline FieldState analytic_state(const Grid& grid, double t, double lambda_bg,
                                 const std::function<double(double, double)>& L,
                                 const std::function<double(double, double)>& Lt,
                                 const std::function<double(double, double)>& P,
                                 const std::function<double(double, double)>& Pt) {
  FieldState s = FieldState::zero(grid, lambda_bg, t);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x(i);
    s.Ltil[i] = L(t, x);
    s.Ltil_t[i] = Lt(t, x);
    s.phi[i] = P(t, x);
    s.phi_t[i] = Pt(t, x);
  }
  return s;
}

/// Smooth localized random state: a few random Fourier-Gaussian modes per
/// field, amplitude-bounded so the state stays regular.
inline FieldState random_smooth_state(const Grid& grid, std::mt19937_64& rng,
                                      double amplitude = 0.2, double lambda_bg = 1.0) {
  std::uniform_real_distribution<double> freq(0.3, 2.0), phase(0.0, 6.28), amp(-1.0, 1.0);
  auto field = [&](std::vector<double>& f) {
    const double k1 = freq(rng), k2 = freq(rng), p1 = phase(rng), p2 = phase(rng);
    const double a1 = amp(rng), a2 = amp(rng);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const double env = std::exp(-x * x / 50.0);
      f[i] = amplitude * env * (a1 * std::sin(k1 * x + p1) + a2 * std::cos(k2 * x + p2));
    }
  };
  FieldState s = FieldState::zero(grid, lambda_bg);
  field(s.Ltil);
  field(s.Ltil_t);
  field(s.phi);
  field(s.phi_t);
  return s;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace pcf::testing
