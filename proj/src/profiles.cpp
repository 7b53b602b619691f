#include "pcf/profiles.hpp"

#include <cmath>

#include "pcf/errors.hpp"

namespace pcf {

Profile polynomial_bump(double center, double width, double amplitude) {
  if (!(width > 0.0)) throw InvalidInput("polynomial_bump: width must be positive");
  auto val = [=](double x) {
    const double s = (x - center) / width;
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return amplitude * q * q * q;
  };
  auto der = [=](double x) {
    const double s = (x - center) / width;
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return amplitude * (-6.0 * s * q * q) / width;
  };
  return {val, der};
}

Profile gaussian_truncated(double center, double width, double amplitude) {
  if (!(width > 0.0)) throw InvalidInput("gaussian_truncated: width must be positive");
  const double sigma = width / 6.0;
  auto val = [=](double x) {
    const double d = x - center;
    if (std::abs(d) >= width) return 0.0;
    return amplitude * std::exp(-d * d / (2.0 * sigma * sigma));
  };
  auto der = [=](double x) {
    const double d = x - center;
    if (std::abs(d) >= width) return 0.0;
    return amplitude * (-d / (sigma * sigma)) * std::exp(-d * d / (2.0 * sigma * sigma));
  };
  return {val, der};
}

Profile smooth_exp_bump(double center, double width, double amplitude) {
  if (!(width > 0.0)) throw InvalidInput("smooth_exp_bump: width must be positive");
  auto val = [=](double x) {
    const double s = (x - center) / width;
    if (std::abs(s) >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
  };
  auto der = [=](double x) {
    const double s = (x - center) / width;
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return amplitude * std::exp(1.0 - 1.0 / q) * (-2.0 * s / (q * q)) / width;
  };
  return {val, der};
}

Profile zero_profile() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

}  // namespace pcf
