#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "pcf/field_state.hpp"
#include "pcf/grid.hpp"

namespace pcf {

enum class Boundary { outgoing, frozen };
enum class Termination { completed, singularity, overflow };

std::string to_string(Boundary b);
std::string to_string(Termination t);

struct SolverConfig {
  double t_end = 0.0;
  double cfl = 0.4;
  Boundary boundary = Boundary::outgoing;
  double singularity_floor = 1e-6;
  int record_every = 1;
};

/// Right sides of the two second-order equations,
///   F1 = -2 sinh(2 Lambda) (px^2 - pt^2)
///   F2 = -2 coth(Lambda) (pt Lt - px Lx),      Lambda = lambda_bg + Ltil,
/// where the coefficient ratio sinh(2a)/sinh(a)^2 has been reduced to
/// 2 coth(a).
struct RhsValue {
  std::vector<double> F1;
  std::vector<double> F2;
};

RhsValue rhs(const FieldState& state, const Grid& grid, double singularity_floor = 1e-6);

/// One classical RK4 step of the first-order system
///   dt Ltil = Pi_L,  dt Pi_L = dxx Ltil + F1,   (same for phi)
/// with boundary nodes advected out of the domain (`outgoing`) or held at
/// their current values (`frozen`).
FieldState step(const FieldState& state, const Grid& grid, const SolverConfig& config);

struct RunSummary {
  long steps = 0;
  double wall_time_s = 0.0;
  double min_lambda = std::numeric_limits<double>::infinity();
  double max_abs_Ltil = 0.0;
  Termination reason = Termination::completed;
  double final_t = 0.0;
};

using Observer = std::function<void(const FieldState&)>;

/// Steps from initial.t to config.t_end (a shortened last step lands on
/// t_end exactly). The observer sees the initial state, every
/// record_every-th step, and the final state. Dynamics failures after
/// validation never propagate as exceptions: the run stops with the reason
/// recorded and the last good state already delivered to the observer.
RunSummary evolve(const FieldState& initial, const Grid& grid, const SolverConfig& config,
                  const Observer& observer = {});

}  // namespace pcf
