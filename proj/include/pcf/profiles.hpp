#pragma once

#include <functional>

namespace pcf {

/// A C^2 profile with its analytic first derivative.
struct Profile {
  std::function<double(double)> f;
  std::function<double(double)> df;

  double operator()(double s) const { return f(s); }
};

/// amplitude * (1 - s^2)^3 on |s| < 1 (s scaled by width, shifted by
/// center); the value and its first two derivatives vanish at the edges.
Profile polynomial_bump(double center, double width, double amplitude);

/// Gaussian with sigma = width/6, truncated to zero outside
/// |x - center| >= width. The residual edge jump is exp(-18) of the
/// amplitude, below any stencil-visible scale.
Profile gaussian_truncated(double center, double width, double amplitude);

/// The standard C^infinity bump amplitude * exp(1 - 1/(1 - s^2)),
/// normalized to peak at `amplitude`.
Profile smooth_exp_bump(double center, double width, double amplitude);

Profile zero_profile();

}  // namespace pcf
