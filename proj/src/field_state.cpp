#include "pcf/field_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcf/errors.hpp"

namespace pcf {

double FieldState::min_lambda() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : Ltil) m = std::min(m, lambda_bg + v);
  return m;
}

double FieldState::max_abs_Ltil() const {
  double m = 0.0;
  for (double v : Ltil) m = std::max(m, std::abs(v));
  return m;
}

void FieldState::validate(const Grid& grid) const {
  const auto n = static_cast<size_t>(grid.nx);
  if (Ltil.size() != n || Ltil_t.size() != n || phi.size() != n || phi_t.size() != n)
    throw InvalidInput("FieldState: array length does not match grid nx");
  if (!(lambda_bg > 0.0)) throw InvalidInput("FieldState: lambda_bg must be positive");
  auto finite = [](const std::vector<double>& a) {
    return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
  };
  if (!finite(Ltil) || !finite(Ltil_t) || !finite(phi) || !finite(phi_t))
    throw InvalidInput("FieldState: non-finite entry");
}

FieldState FieldState::zero(const Grid& grid, double lambda_bg, double t) {
  FieldState s;
  s.t = t;
  s.lambda_bg = lambda_bg;
  s.Ltil.assign(grid.nx, 0.0);
  s.Ltil_t.assign(grid.nx, 0.0);
  s.phi.assign(grid.nx, 0.0);
  s.phi_t.assign(grid.nx, 0.0);
  return s;
}

}  // namespace pcf
