#pragma once

#include <vector>

#include "pcf/grid.hpp"

namespace pcf {

/// Grid samples of the evolved unknowns at one time level: the shifted
/// field Ltil and angle phi together with their time derivatives, plus the
/// constant background lambda_bg > 0. The total field is
/// Lambda(i) = lambda_bg + Ltil[i].
struct FieldState {
  double t = 0.0;
  double lambda_bg = 1.0;
  std::vector<double> Ltil;
  std::vector<double> Ltil_t;
  std::vector<double> phi;
  std::vector<double> phi_t;

  int nx() const { return static_cast<int>(Ltil.size()); }

  double lambda_total(int i) const { return lambda_bg + Ltil[i]; }

  /// Smallest value of lambda_bg + Ltil over the grid. The state is
  /// regular iff this stays at or above the singularity floor; a negative
  /// value means the field crossed zero between checks and the state is
  /// singular even if the magnitude is large.
  double min_lambda() const;

  double max_abs_Ltil() const;

  bool is_regular(double floor) const { return min_lambda() >= floor; }

  /// Checks array lengths against the grid and that every entry is finite.
  void validate(const Grid& grid) const;

  static FieldState zero(const Grid& grid, double lambda_bg, double t = 0.0);
};

}  // namespace pcf
