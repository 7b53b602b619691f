#include "pcf/stencil.hpp"

#include <algorithm>
#include <cmath>

#include "pcf/errors.hpp"

namespace pcf {

std::vector<double> spatial_derivative(std::span<const double> f, const Grid& grid) {
  const int n = grid.nx;
  if (static_cast<int>(f.size()) != n)
    throw InvalidInput("spatial_derivative: array length does not match grid nx");
  std::vector<double> d(n);
  const double inv2 = 1.0 / (2.0 * grid.dx);
  for (int i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
  return d;
}

std::vector<double> second_derivative(std::span<const double> f, const Grid& grid) {
  const int n = grid.nx;
  if (static_cast<int>(f.size()) != n)
    throw InvalidInput("second_derivative: array length does not match grid nx");
  std::vector<double> d(n);
  const double inv = 1.0 / (grid.dx * grid.dx);
  for (int i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
  return d;
}

double trapezoid(std::span<const double> f, const Grid& grid) {
  const int n = grid.nx;
  if (static_cast<int>(f.size()) != n)
    throw InvalidInput("trapezoid: array length does not match grid nx");
  double s = 0.5 * (f[0] + f[n - 1]);
  for (int i = 1; i + 1 < n; ++i) s += f[i];
  return s * grid.dx;
}

double interp_linear(std::span<const double> f, const Grid& grid, double x) {
  if (x <= grid.x_min) return f.front();
  if (x >= grid.x_max) return f.back();
  const double s = (x - grid.x_min) / grid.dx;
  const int i = std::min(static_cast<int>(s), grid.nx - 2);
  const double w = s - i;
  return (1.0 - w) * f[i] + w * f[i + 1];
}

double trapezoid_interval(std::span<const double> f, const Grid& grid, double a, double b) {
  a = std::max(a, grid.x_min);
  b = std::min(b, grid.x_max);
  if (!(b > a)) return 0.0;
  const int ia = static_cast<int>(std::ceil((a - grid.x_min) / grid.dx - 1e-12));
  const int ib = static_cast<int>(std::floor((b - grid.x_min) / grid.dx + 1e-12));
  if (ia > ib) {
    // both ends inside one cell
    return 0.5 * (interp_linear(f, grid, a) + interp_linear(f, grid, b)) * (b - a);
  }
  double s = 0.0;
  for (int i = ia; i < ib; ++i) s += 0.5 * (f[i] + f[i + 1]) * grid.dx;
  const double xa = grid.x(ia), xb = grid.x(ib);
  if (xa > a) s += 0.5 * (interp_linear(f, grid, a) + f[ia]) * (xa - a);
  if (b > xb) s += 0.5 * (f[ib] + interp_linear(f, grid, b)) * (b - xb);
  return s;
}

}  // namespace pcf
