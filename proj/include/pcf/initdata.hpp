#pragma once

#include <array>

#include "pcf/field_state.hpp"
#include "pcf/grid.hpp"
#include "pcf/profiles.hpp"

namespace pcf {

/// One-soliton family parametrized by the pole mu. All derived quantities
/// are recomputed from mu on demand:
///   c = (2 mu / (mu^2 - 1))^2,  v = -(mu^2 + 1)/(2 mu),
///   x0 = ln|mu| / sqrt(c),      beta = (mu + 1)/(mu - 1).
/// mu > 1 gives the superluminal left-moving soliton (v < -1); 0 < mu < 1
/// is the range used by the finite-energy construction.
struct SolitonParams {
  double mu = 2.0;

  explicit SolitonParams(double mu_);

  double c() const;
  double sqrt_c() const;
  double v() const;
  double x0() const;
  double beta() const;
};

enum class BumpShape { smooth_compact, gaussian_truncated };

struct BumpSpec {
  double epsilon = 0.0;
  double center = 0.0;
  double width = 1.0;
  BumpShape shape = BumpShape::smooth_compact;

  Profile profile() const;  // epsilon-scaled profile
};

/// Compactly supported perturbation data at t = 0 with zero initial
/// velocities. Supports must sit strictly inside the grid.
FieldState bump_data(const BumpSpec& spec_L, const BumpSpec& spec_phi, double lambda_bg,
                     const Grid& grid);

enum class Direction { left, right };

/// Exact traveling-wave solution Lambda = lambda_bg + h(x -+ t),
/// phi = k(x -+ t), sampled (with its analytic time derivatives) at time t.
FieldState traveling_wave(const Profile& h, const Profile& k, Direction direction,
                          double lambda_bg, const Grid& grid, double t);

/// Closed-form fields of the singular superluminal soliton together with
/// their analytic first derivatives.
struct SolitonFields {
  double Lambda, phi;
  double Lambda_t, Lambda_x;
  double phi_t, phi_x;
};

/// Requires mu > 1. The angle carries the normalization
/// phi = -pi/4 - arctan(z)/2 with z = sinh(g) cosh(t) + v sqrt(c) sinh(t) cosh(g),
/// g = sqrt(c)(x - v t): this is the branch for which assembling the metric
/// from (Lambda, phi) reproduces the soliton metric entrywise (the
/// pi/4 - arctan/2 branch flips the sign of the off-diagonal entry).
SolitonFields singular_soliton_fields(const SolitonParams& params, double t, double x);

/// Symmetric 2x2 matrix (unit determinant throughout the family).
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;
  double det() const { return a11 * a22 - a12 * a12; }
};

Mat2 singular_soliton_metric(const SolitonParams& params, double t, double x);

/// Soliton state sampled on a grid: lambda_bg is set to the (x-independent)
/// value Lambda(t=0) = arccosh(|v|) and Ltil makes up the difference.
FieldState singular_soliton_state(const SolitonParams& params, double t, const Grid& grid);

/// Finite-energy soliton fields built on the seed lambda_bg + eps*theta(t+x)
/// (requires 0 < mu < 1, lambda_bg > 0):
///   Lambda_hat = arccosh(|v| cosh(g) - tanh(beta g) sinh(g)/sqrt(c)),
///   phi_hat    = pi/4 - arctan(cosh(beta g) cosh(g) (tanh(beta g) + v sqrt(c) tanh(g)))/2,
/// with g = lambda_bg + eps*theta(t+x). Inadmissible inputs (arccosh
/// argument not above 1) are rejected, not clamped.
struct FiniteEnergyFields {
  double Lambda_hat, phi_hat;
  double Lambda_hat_t, phi_hat_t;
};

FiniteEnergyFields finite_energy_soliton(double lambda_bg, double epsilon, const Profile& theta,
                                         const SolitonParams& params, double t, double x);

/// Field state of the finite-energy soliton at time t: lambda_bg of the
/// state is the constant background value C(lambda) attained outside
/// supp theta, so Ltil and phi - C1(lambda) are compactly supported.
FieldState finite_energy_soliton_state(double lambda_bg, double epsilon, const Profile& theta,
                                       const SolitonParams& params, double t, const Grid& grid);

}  // namespace pcf
