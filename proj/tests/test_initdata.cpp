#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pcf/diagnostics.hpp"
#include "pcf/errors.hpp"
#include "pcf/initdata.hpp"
#include "pcf/metric.hpp"
#include "pcf/residual.hpp"
#include "pcf/stencil.hpp"

using namespace pcf;
using namespace pcf::testing;

TEST_CASE("soliton parameter algebra at mu = 2") {
  const SolitonParams p(2.0);
  CHECK(p.c() == doctest::Approx(16.0 / 9.0));
  CHECK(p.sqrt_c() == doctest::Approx(4.0 / 3.0));
  CHECK(p.v() == doctest::Approx(-1.25));
  CHECK(p.x0() == doctest::Approx(0.75 * std::log(2.0)));
  CHECK(p.beta() == doctest::Approx(3.0));
  CHECK_THROWS_AS(SolitonParams(1.0), InvalidInput);
  CHECK_THROWS_AS(SolitonParams(0.0), InvalidInput);
  CHECK_THROWS_AS(SolitonParams(-1.0), InvalidInput);
}

TEST_CASE("bump data with zero amplitude is the zero perturbation") {
  const Grid g(-10.0, 10.0, 256);
  BumpSpec b{0.0, 0.0, 2.0, BumpShape::smooth_compact};
  const auto s = bump_data(b, b, 1.0, g);
  CHECK(s.max_abs_Ltil() == 0.0);
  for (double v : s.phi) CHECK(v == 0.0);
}

TEST_CASE("compact bump vanishes (with stencil derivatives) outside its support") {
  const Grid g(-10.0, 10.0, 512);
  BumpSpec b{0.3, 1.0, 2.0, BumpShape::smooth_compact};
  const auto s = bump_data(b, b, 1.0, g);
  const auto dx = spatial_derivative(s.Ltil, g);
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.x(i);
    if (x < 1.0 - 2.0 - g.dx || x > 1.0 + 2.0 + g.dx) {
      CHECK(s.Ltil[i] == 0.0);
      CHECK(std::abs(dx[i]) < 1e-15);
    }
  }
}

TEST_CASE("bump data rejects supports touching the boundary") {
  const Grid g(-10.0, 10.0, 128);
  BumpSpec inside{0.1, 0.0, 2.0, BumpShape::smooth_compact};
  BumpSpec touching{0.1, 9.5, 2.0, BumpShape::smooth_compact};
  CHECK_THROWS_AS(bump_data(inside, touching, 1.0, g), InvalidInput);
}

TEST_CASE("bump energy scales as eps^2") {
  const Grid g(-20.0, 20.0, 4096);
  auto energy_at = [&](double eps) {
    BumpSpec b{eps, 0.0, 4.0, BumpShape::smooth_compact};
    return total_energy(bump_data(b, b, 1.0, g), g);
  };
  const double r = energy_at(2e-3) / energy_at(1e-3);
  CHECK(std::abs(r - 4.0) < 0.04);  // within 1 percent of the quadratic law
}

TEST_CASE("bump energy matches an independent quadrature of the profile") {
  const Grid g(-20.0, 20.0, 2048);
  const double eps = 0.05, lam = 1.0;
  BumpSpec b{eps, 0.0, 3.0, BumpShape::smooth_compact};
  const auto s = bump_data(b, b, lam, g);
  const double E = total_energy(s, g);

  // dense quadrature with the analytic profile derivative
  const Profile prof = polynomial_bump(0.0, 3.0, eps);
  const int n = 200001;
  const double h = 40.0 / (n - 1);
  double ref = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -20.0 + i * h;
    const double dL = prof.df(x);
    const double val = prof(x);
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    ref += w * h * (0.5 * dL * dL + 2.0 * sinh_sq(lam + val) * dL * dL);
  }
  CHECK(E == doctest::Approx(ref).epsilon(5e-4));  // 2nd-order stencil error only
}

TEST_CASE("traveling wave with empty profiles is the constant background") {
  const Grid g(-10.0, 10.0, 128);
  const auto s = traveling_wave(zero_profile(), zero_profile(), Direction::right, 1.3, g, 2.0);
  CHECK(s.max_abs_Ltil() == 0.0);
  CHECK(s.min_lambda() == doctest::Approx(1.3));
}

TEST_CASE("windowed interior energy of a traveling wave misses the full energy") {
  // the wave rides the light cone: an interior window at fixed |v| < 1
  // holds asymptotically none of it
  const Grid g(-10.0, 120.0, 4096);
  const Profile h = polynomial_bump(0.0, 2.0, 0.3);
  const Profile k = polynomial_bump(0.0, 2.0, 0.3);
  const double t = 100.0;
  const auto s = traveling_wave(h, k, Direction::right, 1.0, g, t);
  const double E = total_energy(s, g);
  const double W = decay_window(s, g, 0.0, t, WindowWeight::sharp);
  CHECK(E > 0.1);
  CHECK(W < 1e-8 * E);
}

TEST_CASE("singular soliton closed forms: t = 0 slice is x-independent") {
  const SolitonParams p(2.0);
  const double expected = std::log(1.25 + std::sqrt(1.25 * 1.25 - 1.0));
  for (double x : {-7.0, -1.0, 0.0, 2.5, 9.0}) {
    const auto f = singular_soliton_fields(p, 0.0, x);
    CHECK(f.Lambda == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("cosh(Lambda) identity of the soliton fields") {
  const SolitonParams p(2.0);
  const double sc = p.sqrt_c(), v = p.v();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(-2.5, 2.5), ux(-8.0, 8.0);
  for (int k = 0; k < 200; ++k) {
    const double t = ut(rng), x = ux(rng);
    const auto f = singular_soliton_fields(p, t, x);
    const double expect = -v * std::cosh(t) - std::sinh(t) * std::tanh(sc * (x - v * t)) / sc;
    CHECK(std::cosh(f.Lambda) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("soliton analytic derivatives match high-order differencing") {
  const SolitonParams p(2.0);
  auto L = [&](double t, double x) { return singular_soliton_fields(p, t, x).Lambda; };
  auto P = [&](double t, double x) { return singular_soliton_fields(p, t, x).phi; };
  const double h = 1e-5;
  auto d6 = [h](auto f, double s) {
    return (-f(s - 3 * h) + 9 * f(s - 2 * h) - 45 * f(s - h) + 45 * f(s + h) - 9 * f(s + 2 * h) +
            f(s + 3 * h)) /
           (60 * h);
  };
  for (auto [t, x] : {std::pair{0.4, 1.2}, {1.5, -2.0}, {2.2, 4.0}}) {
    const auto f = singular_soliton_fields(p, t, x);
    CHECK(f.Lambda_t == doctest::Approx(d6([&](double s) { return L(s, x); }, t)).epsilon(1e-8));
    CHECK(f.Lambda_x == doctest::Approx(d6([&](double s) { return L(t, s); }, x)).epsilon(1e-8));
    CHECK(f.phi_t == doctest::Approx(d6([&](double s) { return P(s, x); }, t)).epsilon(1e-8));
    CHECK(f.phi_x == doctest::Approx(d6([&](double s) { return P(t, s); }, x)).epsilon(1e-8));
  }
}

TEST_CASE("soliton metric is symmetric with unit determinant") {
  const SolitonParams p(2.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ut(-3.0, 3.0), ux(-12.0, 12.0);
  for (int k = 0; k < 2000; ++k) {
    const auto g = singular_soliton_metric(p, ut(rng), ux(rng));
    CHECK(std::abs(g.det() - 1.0) < 1e-12);
  }
}

TEST_CASE("metric assembled from the soliton fields matches the closed-form metric") {
  // fixes the angle normalization: with phi = -pi/4 - arctan(z)/2 the two
  // routes agree entrywise; the +pi/4 branch flips the off-diagonal sign
  const SolitonParams p(2.0);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ut(-2.5, 2.5), ux(-9.0, 9.0);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const double t = ut(rng), x = ux(rng);
    const auto f = singular_soliton_fields(p, t, x);
    const double L[1] = {f.Lambda}, P[1] = {f.phi};
    const auto ga = assemble_g(std::span(L, 1), std::span(P, 1), 1.0);
    const auto gs = singular_soliton_metric(p, t, x);
    worst = std::max({worst, std::abs(ga.g11[0] - gs.a11), std::abs(ga.g12[0] - gs.a12),
                      std::abs(ga.g22[0] - gs.a22)});
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("soliton fields satisfy the field equations at 2nd order") {
  const SolitonParams p(2.0);
  ClosedFormPair fields{
      [&](double t, double x) { return singular_soliton_fields(p, t, x).Lambda; },
      [&](double t, double x) { return singular_soliton_fields(p, t, x).phi; }};
  std::vector<double> dxs{0.04, 0.02, 0.01}, errs;
  for (double dx : dxs) {
    const int nx = static_cast<int>(std::lround(30.0 / dx)) + 1;
    const Grid g(-15.0, 15.0, nx);
    errs.push_back(pde_residual(fields, g, 1.0, dx).max());
  }
  const double order = observed_order(dxs, errs);
  CHECK(order > 1.8);
  CHECK(order < 2.2);
}

TEST_CASE("finite-energy soliton with eps = 0 is a background state") {
  const SolitonParams p(0.5);
  const Profile theta = smooth_exp_bump(0.0, 2.0, 1.0);
  const auto a = finite_energy_soliton(1.0, 0.0, theta, p, 0.0, 0.3);
  const auto b = finite_energy_soliton(1.0, 0.0, theta, p, 1.7, -5.0);
  CHECK(a.Lambda_hat == doctest::Approx(b.Lambda_hat).epsilon(1e-14));
  CHECK(a.Lambda_hat_t == 0.0);
  CHECK(b.phi_hat_t == 0.0);
}

TEST_CASE("finite-energy soliton state has compactly supported perturbations") {
  const Grid g(-15.0, 15.0, 1024);
  const SolitonParams p(0.4);
  const Profile theta = smooth_exp_bump(0.0, 2.0, 1.0);
  const auto s = finite_energy_soliton_state(1.0, 0.05, theta, p, 0.0, g);
  CHECK(s.min_lambda() > 0.0);
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.x(i);
    if (std::abs(x) > 2.0) {
      CHECK(s.Ltil[i] == 0.0);
      CHECK(s.phi[i] == 0.0);
      CHECK(s.Ltil_t[i] == 0.0);
      CHECK(s.phi_t[i] == 0.0);
    }
  }
  CHECK(std::isfinite(total_energy(s, g)));
}

TEST_CASE("finite-energy admissibility: arccosh argument stays above 1") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ulam(0.5, 2.0), ueps(1e-4, 0.1), umu(0.02, 0.98),
      ux(-4.0, 4.0), ut(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const SolitonParams p(umu(rng));
    const double lam = ulam(rng), eps = ueps(rng);
    const Profile theta = smooth_exp_bump(0.0, 2.0, 1.0);  // theta >= 0
    for (int k = 0; k < 20; ++k) {
      const auto f = finite_energy_soliton(lam, eps, theta, p, ut(rng), ux(rng));
      CHECK(std::cosh(f.Lambda_hat) > 1.0 + 1e-12);
      CHECK(f.Lambda_hat > 0.0);
    }
  }
}

TEST_CASE("finite-energy fields are exact left-moving solutions") {
  const SolitonParams p(0.5);
  const Profile theta = smooth_exp_bump(0.0, 2.0, 1.0);
  ClosedFormPair fields{
      [&](double t, double x) { return finite_energy_soliton(1.0, 0.05, theta, p, t, x).Lambda_hat; },
      [&](double t, double x) { return finite_energy_soliton(1.0, 0.05, theta, p, t, x).phi_hat; }};
  std::vector<double> dxs{0.02, 0.01, 0.005}, errs;
  for (double dx : dxs) {
    const int nx = static_cast<int>(std::lround(12.0 / dx)) + 1;
    const Grid g(-6.0, 6.0, nx);
    // dt != dx, else the discrete box annihilates these movers exactly
    errs.push_back(pde_residual(fields, g, 0.4, 0.5 * dx).max());
  }
  const double order = observed_order(dxs, errs);
  CHECK(order > 1.8);
  CHECK(order < 2.2);
}

TEST_CASE("finite-energy constructor rejects out-of-range mu") {
  const Profile theta = smooth_exp_bump(0.0, 2.0, 1.0);
  CHECK_THROWS_AS(finite_energy_soliton(1.0, 0.05, theta, SolitonParams(2.0), 0.0, 0.0),
                  InvalidInput);
}

TEST_CASE("every constructor yields a regular state") {
  const Grid g(-20.0, 20.0, 512);
  BumpSpec b{0.05, 0.0, 3.0, BumpShape::gaussian_truncated};
  CHECK(bump_data(b, b, 1.0, g).min_lambda() > 0.5);
  CHECK(traveling_wave(polynomial_bump(0.0, 2.0, 0.3), zero_profile(), Direction::left, 1.0, g, 0.0)
            .min_lambda() > 0.5);
  CHECK(singular_soliton_state(SolitonParams(2.0), 0.0, g).min_lambda() > 0.1);
  CHECK(finite_energy_soliton_state(1.0, 0.05, smooth_exp_bump(0.0, 2.0, 1.0), SolitonParams(0.5),
                                    0.0, g)
            .min_lambda() > 0.1);
}
