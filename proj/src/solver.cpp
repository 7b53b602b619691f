#include "pcf/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "pcf/densities.hpp"
#include "pcf/errors.hpp"
#include "pcf/stencil.hpp"

namespace pcf {

std::string to_string(Boundary b) { return b == Boundary::outgoing ? "outgoing" : "frozen"; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::singularity: return "singularity";
    default: return "overflow";
  }
}

namespace {

void check_regular(const FieldState& state, double floor) {
  const int n = state.nx();
  for (int i = 0; i < n; ++i) {
    const double lam = state.lambda_bg + state.Ltil[i];
    if (!(lam >= floor))
      throw SingularityApproach("Lambda reached " + std::to_string(lam) + " at node " +
                                    std::to_string(i) + " (floor " + std::to_string(floor) + ")",
                                i, lam);
  }
}

// Four-component work vector for the RK stages.
struct StateVec {
  std::vector<double> Ltil, Ltil_t, phi, phi_t;

  static StateVec from(const FieldState& s) { return {s.Ltil, s.Ltil_t, s.phi, s.phi_t}; }

  static StateVec like(const FieldState& s) {
    const size_t n = s.Ltil.size();
    return {std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
            std::vector<double>(n)};
  }
};

// y = a + h*k
void axpy(const StateVec& a, double h, const StateVec& k, StateVec& y) {
  const size_t n = a.Ltil.size();
  for (size_t i = 0; i < n; ++i) {
    y.Ltil[i] = a.Ltil[i] + h * k.Ltil[i];
    y.Ltil_t[i] = a.Ltil_t[i] + h * k.Ltil_t[i];
    y.phi[i] = a.phi[i] + h * k.phi[i];
    y.phi_t[i] = a.phi_t[i] + h * k.phi_t[i];
  }
}

// Time derivative of the first-order system, including the boundary policy.
void eval_deriv(const StateVec& s, const Grid& grid, double lambda_bg, double floor,
                Boundary boundary, StateVec& out) {
  const int n = grid.nx;
  const double inv2dx = 1.0 / (2.0 * grid.dx);
  const double invdx2 = 1.0 / (grid.dx * grid.dx);

  for (int i = 0; i < n; ++i) {
    const double lam = lambda_bg + s.Ltil[i];
    if (!(lam >= floor))
      throw SingularityApproach("Lambda reached " + std::to_string(lam) + " at node " +
                                    std::to_string(i) + " during a stage evaluation",
                                i, lam);
  }

  for (int i = 1; i + 1 < n; ++i) {
    const double lam = lambda_bg + s.Ltil[i];
    const double Lx = (s.Ltil[i + 1] - s.Ltil[i - 1]) * inv2dx;
    const double px = (s.phi[i + 1] - s.phi[i - 1]) * inv2dx;
    const double Lt = s.Ltil_t[i];
    const double pt = s.phi_t[i];
    const double F1 = -2.0 * std::sinh(2.0 * lam) * (px * px - pt * pt);
    const double F2 = -2.0 * coth_stable(lam) * (pt * Lt - px * Lx);
    out.Ltil[i] = Lt;
    out.Ltil_t[i] = (s.Ltil[i + 1] - 2.0 * s.Ltil[i] + s.Ltil[i - 1]) * invdx2 + F1;
    out.phi[i] = pt;
    out.phi_t[i] = (s.phi[i + 1] - 2.0 * s.phi[i] + s.phi[i - 1]) * invdx2 + F2;
    if (!std::isfinite(out.Ltil_t[i]) || !std::isfinite(out.phi_t[i]))
      throw NumericalOverflow("non-finite right side at node " + std::to_string(i), i);
  }

  if (boundary == Boundary::frozen) {
    for (auto* q : {&out.Ltil, &out.Ltil_t, &out.phi, &out.phi_t}) {
      (*q)[0] = 0.0;
      (*q)[n - 1] = 0.0;
    }
  } else {
    // characteristic advection out of the domain at speed 1
    auto adv = [&](const std::vector<double>& q, std::vector<double>& dq) {
      dq[0] = (-3.0 * q[0] + 4.0 * q[1] - q[2]) * inv2dx;
      dq[n - 1] = -(3.0 * q[n - 1] - 4.0 * q[n - 2] + q[n - 3]) * inv2dx;
    };
    adv(s.Ltil, out.Ltil);
    adv(s.Ltil_t, out.Ltil_t);
    adv(s.phi, out.phi);
    adv(s.phi_t, out.phi_t);
  }
}

FieldState step_dt(const FieldState& state, const Grid& grid, const SolverConfig& config,
                   double dt) {
  const StateVec y0 = StateVec::from(state);
  StateVec k1 = StateVec::like(state), k2 = StateVec::like(state), k3 = StateVec::like(state),
           k4 = StateVec::like(state), ytmp = StateVec::like(state);

  const double bg = state.lambda_bg;
  const double floor = config.singularity_floor;
  eval_deriv(y0, grid, bg, floor, config.boundary, k1);
  axpy(y0, 0.5 * dt, k1, ytmp);
  eval_deriv(ytmp, grid, bg, floor, config.boundary, k2);
  axpy(y0, 0.5 * dt, k2, ytmp);
  eval_deriv(ytmp, grid, bg, floor, config.boundary, k3);
  axpy(y0, dt, k3, ytmp);
  eval_deriv(ytmp, grid, bg, floor, config.boundary, k4);

  FieldState next = state;
  next.t = state.t + dt;
  const int n = grid.nx;
  const double h = dt / 6.0;
  for (int i = 0; i < n; ++i) {
    next.Ltil[i] = y0.Ltil[i] + h * (k1.Ltil[i] + 2.0 * k2.Ltil[i] + 2.0 * k3.Ltil[i] + k4.Ltil[i]);
    next.Ltil_t[i] =
        y0.Ltil_t[i] + h * (k1.Ltil_t[i] + 2.0 * k2.Ltil_t[i] + 2.0 * k3.Ltil_t[i] + k4.Ltil_t[i]);
    next.phi[i] = y0.phi[i] + h * (k1.phi[i] + 2.0 * k2.phi[i] + 2.0 * k3.phi[i] + k4.phi[i]);
    next.phi_t[i] =
        y0.phi_t[i] + h * (k1.phi_t[i] + 2.0 * k2.phi_t[i] + 2.0 * k3.phi_t[i] + k4.phi_t[i]);
  }
  check_regular(next, floor);
  return next;
}

}  // namespace

RhsValue rhs(const FieldState& state, const Grid& grid, double singularity_floor) {
  state.validate(grid);
  check_regular(state, singularity_floor);
  const auto Lx = spatial_derivative(state.Ltil, grid);
  const auto px = spatial_derivative(state.phi, grid);
  const int n = grid.nx;
  RhsValue out;
  out.F1.resize(n);
  out.F2.resize(n);
  for (int i = 0; i < n; ++i) {
    const double lam = state.lambda_bg + state.Ltil[i];
    out.F1[i] = -2.0 * std::sinh(2.0 * lam) * (px[i] * px[i] - state.phi_t[i] * state.phi_t[i]);
    out.F2[i] = -2.0 * coth_stable(lam) * (state.phi_t[i] * state.Ltil_t[i] - px[i] * Lx[i]);
    if (!std::isfinite(out.F1[i]) || !std::isfinite(out.F2[i]))
      throw NumericalOverflow("rhs: non-finite value at node " + std::to_string(i), i);
  }
  return out;
}

FieldState step(const FieldState& state, const Grid& grid, const SolverConfig& config) {
  state.validate(grid);
  return step_dt(state, grid, config, grid.dt);
}

RunSummary evolve(const FieldState& initial, const Grid& grid, const SolverConfig& config,
                  const Observer& observer) {
  initial.validate(grid);
  if (config.t_end < initial.t - 1e-12)
    throw InvalidInput("evolve: t_end lies before the initial time");
  check_regular(initial, config.singularity_floor);

  const auto t_start = std::chrono::steady_clock::now();
  RunSummary summary;
  summary.min_lambda = initial.min_lambda();
  summary.max_abs_Ltil = initial.max_abs_Ltil();

  FieldState state = initial;
  if (observer) observer(state);

  const double span = config.t_end - initial.t;
  const double dt = grid.dt;
  const long n_full = static_cast<long>(std::floor(span / dt + 1e-9));
  const double remainder = span - n_full * dt;
  const int cadence = std::max(1, config.record_every);

  bool last_observed = true;
  try {
    for (long i = 0; i < n_full; ++i) {
      state = step_dt(state, grid, config, dt);
      ++summary.steps;
      summary.min_lambda = std::min(summary.min_lambda, state.min_lambda());
      summary.max_abs_Ltil = std::max(summary.max_abs_Ltil, state.max_abs_Ltil());
      last_observed = false;
      if (observer && (i + 1) % cadence == 0) {
        observer(state);
        last_observed = true;
      }
    }
    if (remainder > 1e-12 * dt) {
      state = step_dt(state, grid, config, remainder);
      state.t = config.t_end;  // land exactly
      ++summary.steps;
      summary.min_lambda = std::min(summary.min_lambda, state.min_lambda());
      summary.max_abs_Ltil = std::max(summary.max_abs_Ltil, state.max_abs_Ltil());
      last_observed = false;
    }
    summary.reason = Termination::completed;
  } catch (const SingularityApproach& e) {
    summary.reason = Termination::singularity;
    summary.min_lambda = std::min(summary.min_lambda, e.value);
  } catch (const NumericalOverflow&) {
    summary.reason = Termination::overflow;
  }

  if (observer && !last_observed) observer(state);  // last good state
  summary.final_t = state.t;
  summary.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return summary;
}

}  // namespace pcf
