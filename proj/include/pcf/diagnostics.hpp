#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pcf/densities.hpp"
#include "pcf/field_state.hpp"
#include "pcf/grid.hpp"

namespace pcf {

/// Per-snapshot scalar functionals, one CSV row per record.
struct DiagnosticsRecord {
  double t = 0.0;
  double E = 0.0;                    // conserved energy
  double E_mod = 0.0;                // energy with the (dt Lambda)^2 - 1 renormalization
  double virial_I = 0.0;             // 0 where the weight is undefined (t < 2)
  double window_energy = 0.0;        // sech^4 window at the configured v; 0 for t < 2
  double sup_Ltil = 0.0;
  double min_Lambda = 0.0;
  double continuity_residual = 0.0;  // max |dt p - dx e| from neighboring records
  double ineq_margin = 0.0;          // min (e - |p|)
};

/// Total energy by composite trapezoid of the energy density.
double total_energy(const FieldState& state, const Grid& grid);

/// Modified energy of a grid state: trapezoid of (e - 1/2).
double modified_energy_state(const FieldState& state, const Grid& grid);

/// Closed-form field pair Lambda(t,x), phi(t,x).
struct ClosedFormPair {
  std::function<double(double, double)> Lambda;
  std::function<double(double, double)> phi;
};

/// Modified energy of closed-form fields over [-X, X] with quad_nodes
/// trapezoid nodes; derivatives by 6th-order central differences with
/// step 1e-4 so the quadrature, not the differentiation, limits accuracy.
double modified_energy(const ClosedFormPair& fields, double t, double X, int quad_nodes);

enum class LambdaWeightKind { t_over_log2, t2_over_log };

/// Window half-width lambda(t) = t/log^2 t (default) for t >= 2.
double lambda_weight(double t, LambdaWeightKind kind = LambdaWeightKind::t_over_log2);

/// I(t) = -int tanh((x - v t)/lambda(t)) p dx, |v| < 1, t >= 2.
double virial(const FieldState& state, const Grid& grid, double v, double t,
              LambdaWeightKind kind = LambdaWeightKind::t_over_log2);

/// The four-term right side of the virial identity: with y = (x-vt)/lambda
/// and rho' = sech^2,
///   (lambda'/lambda) int y rho' p
/// + (1/lambda) int rho' (Lx^2/2 + 2 sinh^2(Lambda) pt^2)
/// + (1/lambda) int rho' (Lt^2/2 + 2 sinh^2(Lambda) px^2)
/// + (v/lambda) int rho' p.
double virial_rhs(const FieldState& state, const Grid& grid, double v, double t,
                  LambdaWeightKind kind = LambdaWeightKind::t_over_log2);

enum class WindowWeight { sharp, sech4 };

/// sharp: int over [vt - lambda, vt + lambda] of
///        Lt^2 + Lx^2 + sinh^2(Lambda)(pt^2 + px^2);
/// sech4: int sech^4((x - vt)/lambda) e dx over the whole grid.
double decay_window(const FieldState& state, const Grid& grid, double v, double t,
                    WindowWeight weight,
                    LambdaWeightKind kind = LambdaWeightKind::t_over_log2);

/// Space-time weighted energy norms: slice integrals (E family, evaluated
/// at the latest slice) and sup-over-null-lines integrals (F family,
/// accumulated over the run). delta is the weight exponent in
/// (1 + |u|^2)^(1+delta).
struct WeightedNorms {
  double E0 = 0, E1 = 0, Ebar0 = 0, Ebar1 = 0;
  double F0 = 0, F1 = 0, Fbar0 = 0, Fbar1 = 0;
  double delta = 0.5;

  double total_E() const { return E0 + E1; }
  double total_Ebar() const { return Ebar0 + Ebar1; }
  double total_F() const { return F0 + F1; }
  double total_Fbar() const { return Fbar0 + Fbar1; }
  double monitor() const { return E0 + E1 + F0 + F1; }          // E(t) + F(t)
  double monitor_bar() const { return Ebar0 + Ebar1 + Fbar0 + Fbar1; }
};

/// Incremental accumulator: feed the recorded slices in time order. Null
/// lines are anchored at the grid nodes of the first slice and followed by
/// linear interpolation; line integrals use the trapezoid rule in t.
class WeightedNormAccumulator {
 public:
  WeightedNormAccumulator(const Grid& grid, double delta);

  void add_slice(const FieldState& state);
  int slices() const { return n_slices_; }
  WeightedNorms current() const;

 private:
  Grid grid_;
  double delta_;
  int n_slices_ = 0;
  double t_first_ = 0.0, t_prev_ = 0.0;
  // integrand value at each line position, previous slice (8 channels:
  // {Lb,L} x {Ltil,phi} x {k=0,1})
  std::vector<std::vector<double>> prev_vals_;
  std::vector<std::vector<double>> acc_;  // per-line accumulators
  WeightedNorms latest_;
};

/// Convenience wrapper over a stored history (needs >= 2 slices).
WeightedNorms weighted_norms(const std::vector<FieldState>& history, const Grid& grid,
                             double delta);

/// Empirical constants of the pointwise null-derivative bounds:
/// sup_x (1+u^2)^((1+delta)/2) |L f| / eps and the ub/Lb analogue, for
/// f in {Ltil, phi}.
struct PointwiseBoundReport {
  double L_Ltil = 0, Lb_Ltil = 0, L_phi = 0, Lb_phi = 0;
  double max() const;
};

PointwiseBoundReport pointwise_bound_monitor(const FieldState& state, const Grid& grid,
                                             double delta, double epsilon);

/// Empirical constant of the weighted Sobolev inequalities: the largest of
/// the four ratios  ||w f||_inf / (||w f||_2 + ||w dx f||_2)  with
/// w = (1+ub^2)^((1+d)/2)/(1+u^2)^((1+d)/4) for the Lb channels and the
/// mirrored weight for the L channels. Zero fields give ratio 0.
double weighted_sobolev_ratio(const FieldState& state, const Grid& grid, double delta);

/// Max-norm residuals of the continuity equations (dt p - dx e, dt e - dx p)
/// from three consecutive slices at uniform dt, interior nodes only.
std::pair<double, double> continuity_residuals(const FieldState& before, const FieldState& mid,
                                               const FieldState& after, const Grid& grid);

}  // namespace pcf
