#pragma once

#include <vector>

#include "pcf/field_state.hpp"
#include "pcf/grid.hpp"

namespace pcf {

enum class FieldSelector { Ltil, phi };

/// Derivatives of one field along the two global null directions
/// L = d_t + d_x and Lb = d_t - d_x, together with the null coordinates
/// u = (t+x)/2 and ub = (t-x)/2 at each node.
struct NullFrame {
  double t = 0.0;
  std::vector<double> Lf;
  std::vector<double> Lbf;
  std::vector<double> u;
  std::vector<double> ub;
};

NullFrame null_frame(const FieldState& state, FieldSelector which, const Grid& grid);

/// Fundamental null form Q0(a,b) = dx(a) dx(b) - dt(a) dt(b), reconstructed
/// from the frames as -(La*Lbb + Lba*Lb)/2. With this sign the two wave
/// equations read box(Ltil) = -2 sinh(2*Lambda) Q0(phi,phi) and
/// box(phi) = 2 coth(Lambda) Q0(phi, Ltil).
std::vector<double> null_form_q0(const NullFrame& a, const NullFrame& b);

}  // namespace pcf
