#include "pcf/initdata.hpp"

#include <cmath>
#include <string>

#include "pcf/errors.hpp"

namespace pcf {

SolitonParams::SolitonParams(double mu_) : mu(mu_) {
  if (std::abs(mu) < 1e-12 || std::abs(mu - 1.0) < 1e-12 || std::abs(mu + 1.0) < 1e-12)
    throw InvalidInput("SolitonParams: mu must avoid {0, 1, -1}");
}

double SolitonParams::c() const {
  const double r = 2.0 * mu / (mu * mu - 1.0);
  return r * r;
}

double SolitonParams::sqrt_c() const { return std::sqrt(c()); }

double SolitonParams::v() const { return -(mu * mu + 1.0) / (2.0 * mu); }

double SolitonParams::x0() const { return std::log(std::abs(mu)) / sqrt_c(); }

double SolitonParams::beta() const { return (mu + 1.0) / (mu - 1.0); }

Profile BumpSpec::profile() const {
  switch (shape) {
    case BumpShape::smooth_compact: return polynomial_bump(center, width, epsilon);
    default: return gaussian_truncated(center, width, epsilon);
  }
}

FieldState bump_data(const BumpSpec& spec_L, const BumpSpec& spec_phi, double lambda_bg,
                     const Grid& grid) {
  for (const auto* s : {&spec_L, &spec_phi}) {
    if (!(s->width > 0.0)) throw InvalidInput("bump_data: width must be positive");
    if (s->center - s->width <= grid.x_min || s->center + s->width >= grid.x_max)
      throw InvalidInput("bump_data: support must lie strictly inside the grid");
  }
  auto state = FieldState::zero(grid, lambda_bg);
  const Profile pL = spec_L.profile();
  const Profile pP = spec_phi.profile();
  for (int i = 0; i < grid.nx; ++i) {
    state.Ltil[i] = pL(grid.x(i));
    state.phi[i] = pP(grid.x(i));
  }
  return state;
}

FieldState traveling_wave(const Profile& h, const Profile& k, Direction direction,
                          double lambda_bg, const Grid& grid, double t) {
  auto state = FieldState::zero(grid, lambda_bg, t);
  const double sgn = (direction == Direction::right) ? -1.0 : 1.0;  // d/dt of f(x -+ t)
  for (int i = 0; i < grid.nx; ++i) {
    const double s = grid.x(i) + sgn * t;
    state.Ltil[i] = h(s);
    state.Ltil_t[i] = sgn * h.df(s);
    state.phi[i] = k(s);
    state.phi_t[i] = sgn * k.df(s);
  }
  return state;
}

SolitonFields singular_soliton_fields(const SolitonParams& params, double t, double x) {
  if (!(params.mu > 1.0)) throw InvalidInput("singular_soliton_fields: requires mu > 1");
  const double sc = params.sqrt_c();
  const double v = params.v();
  const double g = sc * (x - v * t);
  const double tg = std::tanh(g);

  // cosh(Lambda) = |v| cosh(t) - sinh(t) tanh(g)/sqrt(c); >= 1 with equality
  // only in the limit |g| -> infinity at the critical time.
  const double A = -v * std::cosh(t) - (1.0 / sc) * std::sinh(t) * tg;
  double disc = A * A - 1.0;
  if (disc < -1e-12)
    throw DomainError("singular_soliton_fields: cosh(Lambda) fell below 1 (" +
                      std::to_string(A) + ")");
  if (disc < 0.0) disc = 0.0;
  const double sinhL = std::sqrt(disc);

  SolitonFields out;
  out.Lambda = std::log(A + sinhL);

  const double sech2 = 1.0 - tg * tg;
  out.Lambda_x = -std::sinh(t) * sech2 / sinhL;
  out.Lambda_t = tg * (-v * std::sinh(t) * tg - std::cosh(t) / sc) / sinhL;

  const double z = std::sinh(g) * std::cosh(t) + v * sc * std::sinh(t) * std::cosh(g);
  out.phi = -0.25 * M_PI - 0.5 * std::atan(z);
  const double den = 1.0 + z * z;
  out.phi_x = -0.5 * sc * (std::cosh(t) * std::cosh(g) + v * sc * std::sinh(t) * std::sinh(g)) / den;
  out.phi_t = -0.5 * (1.0 - params.c() * v * v) * std::sinh(t) * std::sinh(g) / den;
  return out;
}

Mat2 singular_soliton_metric(const SolitonParams& params, double t, double x) {
  if (!(params.mu > 1.0)) throw InvalidInput("singular_soliton_metric: requires mu > 1");
  const double sc = params.sqrt_c();
  const double v = params.v();
  const double s = sc * (x - v * t);
  const double ts = std::tanh(s);
  // Q(y)/Q(y -+ x0) = cosh(sc*y -+ ln mu)/cosh(sc*y) = -v -+ tanh(sc*y)/sc,
  // evaluated in the subtracted form so large arguments never overflow.
  Mat2 g;
  g.a11 = std::exp(t) * (-v - ts / sc);
  g.a12 = -(1.0 / sc) / std::cosh(s);
  g.a22 = std::exp(-t) * (-v + ts / sc);
  return g;
}

FieldState singular_soliton_state(const SolitonParams& params, double t, const Grid& grid) {
  const double v = params.v();
  const double bg = std::acosh(-v);  // Lambda(t=0, x), independent of x
  auto state = FieldState::zero(grid, bg, t);
  for (int i = 0; i < grid.nx; ++i) {
    const auto f = singular_soliton_fields(params, t, grid.x(i));
    state.Ltil[i] = f.Lambda - bg;
    state.Ltil_t[i] = f.Lambda_t;
    state.phi[i] = f.phi;
    state.phi_t[i] = f.phi_t;
  }
  return state;
}

namespace {

struct FeCore {
  double Lambda_hat, dLambda_dgamma, phi_hat, dphi_dgamma;
};

FeCore fe_eval(double gamma, const SolitonParams& p) {
  const double sc = p.sqrt_c();
  const double v = p.v();
  const double beta = p.beta();
  const double b = beta * gamma;

  const double arg = -v * std::cosh(gamma) - (1.0 / sc) * std::tanh(b) * std::sinh(gamma);
  if (arg < 1.0)
    throw DomainError("finite_energy_soliton: arccosh argument " + std::to_string(arg) +
                      " below 1 (inadmissible parameters)");
  FeCore out;
  out.Lambda_hat = std::acosh(arg);
  const double sinhL = std::sqrt(arg * arg - 1.0);
  const double sech2b = 1.0 / (std::cosh(b) * std::cosh(b));
  const double dA = -v * std::sinh(gamma) -
                    (1.0 / sc) * (beta * sech2b * std::sinh(gamma) + std::tanh(b) * std::cosh(gamma));
  out.dLambda_dgamma = (sinhL > 0.0) ? dA / sinhL : 0.0;

  const double w = std::sinh(b) * std::cosh(gamma) + v * sc * std::cosh(b) * std::sinh(gamma);
  out.phi_hat = 0.25 * M_PI - 0.5 * std::atan(w);
  const double dw = (beta + v * sc) * std::cosh(b) * std::cosh(gamma) +
                    (1.0 + beta * v * sc) * std::sinh(b) * std::sinh(gamma);
  out.dphi_dgamma = -0.5 * dw / (1.0 + w * w);
  return out;
}

}  // namespace

FiniteEnergyFields finite_energy_soliton(double lambda_bg, double epsilon, const Profile& theta,
                                         const SolitonParams& params, double t, double x) {
  if (!(params.mu > 0.0 && params.mu < 1.0))
    throw InvalidInput("finite_energy_soliton: requires 0 < mu < 1");
  if (!(lambda_bg > 0.0)) throw InvalidInput("finite_energy_soliton: lambda_bg must be positive");
  if (epsilon < 0.0) throw InvalidInput("finite_energy_soliton: epsilon must be nonnegative");

  const double s = t + x;
  const double gamma = lambda_bg + epsilon * theta(s);
  const auto core = fe_eval(gamma, params);
  const double dgamma_dt = epsilon * theta.df(s);

  FiniteEnergyFields out;
  out.Lambda_hat = core.Lambda_hat;
  out.phi_hat = core.phi_hat;
  out.Lambda_hat_t = core.dLambda_dgamma * dgamma_dt;
  out.phi_hat_t = core.dphi_dgamma * dgamma_dt;
  return out;
}

FieldState finite_energy_soliton_state(double lambda_bg, double epsilon, const Profile& theta,
                                       const SolitonParams& params, double t, const Grid& grid) {
  if (!(params.mu > 0.0 && params.mu < 1.0))
    throw InvalidInput("finite_energy_soliton_state: requires 0 < mu < 1");
  const auto background = fe_eval(lambda_bg, params);  // value off the support of theta
  auto state = FieldState::zero(grid, background.Lambda_hat, t);
  for (int i = 0; i < grid.nx; ++i) {
    const auto f = finite_energy_soliton(lambda_bg, epsilon, theta, params, t, grid.x(i));
    state.Ltil[i] = f.Lambda_hat - background.Lambda_hat;
    state.Ltil_t[i] = f.Lambda_hat_t;
    state.phi[i] = f.phi_hat - background.phi_hat;
    state.phi_t[i] = f.phi_hat_t;
  }
  return state;
}

}  // namespace pcf
