#include "pcf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcf/errors.hpp"
#include "pcf/stencil.hpp"

namespace pcf {

double total_energy(const FieldState& state, const Grid& grid) {
  const auto d = densities(state, grid);
  return trapezoid(d.e, grid);
}

double modified_energy_state(const FieldState& state, const Grid& grid) {
  const auto d = densities(state, grid);
  std::vector<double> m(d.e.size());
  for (size_t i = 0; i < m.size(); ++i) m[i] = d.e[i] - 0.5;
  return trapezoid(m, grid);
}

namespace {

constexpr double kFdStep = 1e-4;

// 6th-order central difference on a closed form.
double fd6(const std::function<double(double)>& f, double s) {
  const double h = kFdStep;
  return (-f(s - 3 * h) + 9 * f(s - 2 * h) - 45 * f(s - h) + 45 * f(s + h) - 9 * f(s + 2 * h) +
          f(s + 3 * h)) /
         (60.0 * h);
}

}  // namespace

double modified_energy(const ClosedFormPair& fields, double t, double X, int quad_nodes) {
  if (quad_nodes < 8) throw InvalidInput("modified_energy: need at least 8 quadrature nodes");
  const Grid q(-X, X, quad_nodes, 0.5);
  std::vector<double> integrand(quad_nodes);
  for (int i = 0; i < quad_nodes; ++i) {
    const double x = q.x(i);
    const double Lt = fd6([&](double s) { return fields.Lambda(s, x); }, t);
    const double Lx = fd6([&](double s) { return fields.Lambda(t, s); }, x);
    const double pt = fd6([&](double s) { return fields.phi(s, x); }, t);
    const double px = fd6([&](double s) { return fields.phi(t, s); }, x);
    integrand[i] =
        0.5 * (Lt * Lt - 1.0 + Lx * Lx) + 2.0 * sinh_sq(fields.Lambda(t, x)) * (pt * pt + px * px);
  }
  return trapezoid(integrand, q);
}

double lambda_weight(double t, LambdaWeightKind kind) {
  if (!(t >= 2.0)) throw InvalidInput("lambda_weight: defined for t >= 2 only");
  const double lg = std::log(t);
  return kind == LambdaWeightKind::t_over_log2 ? t / (lg * lg) : t * t / lg;
}

namespace {

void check_virial_args(double v, double t) {
  if (!(std::abs(v) < 1.0)) throw InvalidInput("virial: requires |v| < 1");
  if (!(t >= 2.0)) throw InvalidInput("virial: requires t >= 2");
}

double sech2(double y) {
  const double c = std::cosh(y);
  return 1.0 / (c * c);
}

}  // namespace

double virial(const FieldState& state, const Grid& grid, double v, double t,
              LambdaWeightKind kind) {
  check_virial_args(v, t);
  const double lam = lambda_weight(t, kind);
  const auto d = densities(state, grid);
  std::vector<double> integrand(grid.nx);
  for (int i = 0; i < grid.nx; ++i)
    integrand[i] = -std::tanh((grid.x(i) - v * t) / lam) * d.p[i];
  return trapezoid(integrand, grid);
}

double virial_rhs(const FieldState& state, const Grid& grid, double v, double t,
                  LambdaWeightKind kind) {
  check_virial_args(v, t);
  const double lam = lambda_weight(t, kind);
  const double lg = std::log(t);
  const double lam_ratio = (kind == LambdaWeightKind::t_over_log2)
                               ? (1.0 - 2.0 / lg) / t  // lambda'/lambda
                               : (2.0 - 1.0 / lg) / t;
  const auto Lx = spatial_derivative(state.Ltil, grid);
  const auto px = spatial_derivative(state.phi, grid);

  std::vector<double> term(grid.nx);
  double total = 0.0;
  for (int pass = 0; pass < 4; ++pass) {
    for (int i = 0; i < grid.nx; ++i) {
      const double y = (grid.x(i) - v * t) / lam;
      const double rp = sech2(y);
      const double s2 = sinh_sq(state.lambda_bg + state.Ltil[i]);
      const double Lt = state.Ltil_t[i];
      const double pt = state.phi_t[i];
      const double p = Lx[i] * Lt + 4.0 * s2 * px[i] * pt;
      switch (pass) {
        case 0: term[i] = lam_ratio * y * rp * p; break;
        case 1: term[i] = (rp / lam) * (0.5 * Lx[i] * Lx[i] + 2.0 * s2 * pt * pt); break;
        case 2: term[i] = (rp / lam) * (0.5 * Lt * Lt + 2.0 * s2 * px[i] * px[i]); break;
        default: term[i] = (v / lam) * rp * p; break;
      }
    }
    total += trapezoid(term, grid);
  }
  return total;
}

double decay_window(const FieldState& state, const Grid& grid, double v, double t,
                    WindowWeight weight, LambdaWeightKind kind) {
  check_virial_args(v, t);
  const double lam = lambda_weight(t, kind);
  if (weight == WindowWeight::sharp) {
    const auto Lx = spatial_derivative(state.Ltil, grid);
    const auto px = spatial_derivative(state.phi, grid);
    std::vector<double> dens(grid.nx);
    for (int i = 0; i < grid.nx; ++i) {
      const double s2 = sinh_sq(state.lambda_bg + state.Ltil[i]);
      dens[i] = state.Ltil_t[i] * state.Ltil_t[i] + Lx[i] * Lx[i] +
                s2 * (state.phi_t[i] * state.phi_t[i] + px[i] * px[i]);
    }
    return trapezoid_interval(dens, grid, v * t - lam, v * t + lam);
  }
  const auto d = densities(state, grid);
  std::vector<double> integrand(grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    const double y = (grid.x(i) - v * t) / lam;
    const double s = sech2(y);
    integrand[i] = s * s * d.e[i];
  }
  return trapezoid(integrand, grid);
}

// ---- weighted norms --------------------------------------------------------

namespace {

// Channel layout: index 0..3 are the Lb channels carried by leftward lines
// (x = x0 - tau), 4..7 the L channels on rightward lines:
//   0: Lb Ltil   1: Lb dx Ltil   2: Lb phi   3: Lb dx phi
//   4: L  Ltil   5: L  dx Ltil   6: L  phi   7: L  dx phi
struct SliceChannels {
  std::vector<double> ch[8];
};

SliceChannels slice_channels(const FieldState& s, const Grid& grid) {
  const auto Lx = spatial_derivative(s.Ltil, grid);
  const auto px = spatial_derivative(s.phi, grid);
  const auto Ltx = spatial_derivative(s.Ltil_t, grid);
  const auto ptx = spatial_derivative(s.phi_t, grid);
  const auto Lxx = spatial_derivative(Lx, grid);
  const auto pxx = spatial_derivative(px, grid);
  SliceChannels out;
  const int n = grid.nx;
  for (auto& c : out.ch) c.resize(n);
  for (int i = 0; i < n; ++i) {
    out.ch[0][i] = s.Ltil_t[i] - Lx[i];
    out.ch[1][i] = Ltx[i] - Lxx[i];
    out.ch[2][i] = s.phi_t[i] - px[i];
    out.ch[3][i] = ptx[i] - pxx[i];
    out.ch[4][i] = s.Ltil_t[i] + Lx[i];
    out.ch[5][i] = Ltx[i] + Lxx[i];
    out.ch[6][i] = s.phi_t[i] + px[i];
    out.ch[7][i] = ptx[i] + pxx[i];
  }
  return out;
}

double wphi(double s, double delta) { return std::pow(1.0 + s * s, 1.0 + delta); }

}  // namespace

WeightedNormAccumulator::WeightedNormAccumulator(const Grid& grid, double delta)
    : grid_(grid), delta_(delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw InvalidInput("weighted norms: delta must lie in (0, 1)");
  prev_vals_.assign(8, std::vector<double>(grid.nx, 0.0));
  acc_.assign(8, std::vector<double>(grid.nx, 0.0));
  latest_.delta = delta;
}

void WeightedNormAccumulator::add_slice(const FieldState& state) {
  state.validate(grid_);
  const auto chans = slice_channels(state, grid_);
  const double t = state.t;

  // E family at this slice.
  std::vector<double> integrand(grid_.nx);
  auto slice_E = [&](int lb_ch, int l_ch) {
    for (int i = 0; i < grid_.nx; ++i) {
      const double u = 0.5 * (t + grid_.x(i));
      const double ub = 0.5 * (t - grid_.x(i));
      integrand[i] = wphi(ub, delta_) * chans.ch[lb_ch][i] * chans.ch[lb_ch][i] +
                     wphi(u, delta_) * chans.ch[l_ch][i] * chans.ch[l_ch][i];
    }
    return trapezoid(integrand, grid_);
  };
  latest_.E0 = slice_E(0, 4);
  latest_.E1 = slice_E(1, 5);
  latest_.Ebar0 = slice_E(2, 6);
  latest_.Ebar1 = slice_E(3, 7);

  // F family: weighted squares at the line positions; trapezoid in t
  // against the previous slice. Lines that have left the grid stop
  // accumulating.
  const double shift = (n_slices_ == 0) ? 0.0 : t - t_first_;
  std::vector<std::vector<double>> cur_vals(8, std::vector<double>(grid_.nx, 0.0));
  for (int line = 0; line < grid_.nx; ++line) {
    const double xl = grid_.x(line) - shift;  // leftward line, carries Lb channels
    const double xr = grid_.x(line) + shift;  // rightward line, carries L channels
    const bool lin = xl >= grid_.x_min && xl <= grid_.x_max;
    const bool rin = xr >= grid_.x_min && xr <= grid_.x_max;
    for (int c = 0; c < 4; ++c) {
      if (lin) {
        const double val = interp_linear(chans.ch[c], grid_, xl);
        cur_vals[c][line] = wphi(0.5 * (t - xl), delta_) * val * val;
      }
    }
    for (int c = 4; c < 8; ++c) {
      if (rin) {
        const double val = interp_linear(chans.ch[c], grid_, xr);
        cur_vals[c][line] = wphi(0.5 * (t + xr), delta_) * val * val;
      }
    }
  }
  if (n_slices_ > 0) {
    const double dtau = t - t_prev_;
    if (!(dtau > 0.0)) throw InvalidInput("weighted norms: slices must advance in time");
    for (int c = 0; c < 8; ++c)
      for (int line = 0; line < grid_.nx; ++line)
        acc_[c][line] += 0.5 * dtau * (prev_vals_[c][line] + cur_vals[c][line]);
  }
  prev_vals_ = std::move(cur_vals);
  t_prev_ = t;
  if (n_slices_ == 0) t_first_ = t;
  ++n_slices_;

  auto line_sup = [&](int c) { return *std::max_element(acc_[c].begin(), acc_[c].end()); };
  latest_.F0 = line_sup(0) + line_sup(4);
  latest_.F1 = line_sup(1) + line_sup(5);
  latest_.Fbar0 = line_sup(2) + line_sup(6);
  latest_.Fbar1 = line_sup(3) + line_sup(7);
}

WeightedNorms WeightedNormAccumulator::current() const { return latest_; }

WeightedNorms weighted_norms(const std::vector<FieldState>& history, const Grid& grid,
                             double delta) {
  if (history.size() < 2) throw InvalidInput("weighted_norms: need at least 2 slices");
  WeightedNormAccumulator acc(grid, delta);
  for (const auto& s : history) acc.add_slice(s);
  return acc.current();
}

double PointwiseBoundReport::max() const {
  return std::max(std::max(L_Ltil, Lb_Ltil), std::max(L_phi, Lb_phi));
}

PointwiseBoundReport pointwise_bound_monitor(const FieldState& state, const Grid& grid,
                                             double delta, double epsilon) {
  state.validate(grid);
  const auto Lx = spatial_derivative(state.Ltil, grid);
  const auto px = spatial_derivative(state.phi, grid);
  PointwiseBoundReport rep;
  const double p = 0.5 * (1.0 + delta);
  for (int i = 0; i < grid.nx; ++i) {
    const double u = 0.5 * (state.t + grid.x(i));
    const double ub = 0.5 * (state.t - grid.x(i));
    const double wu = std::pow(1.0 + u * u, p);
    const double wub = std::pow(1.0 + ub * ub, p);
    rep.L_Ltil = std::max(rep.L_Ltil, wu * std::abs(state.Ltil_t[i] + Lx[i]));
    rep.Lb_Ltil = std::max(rep.Lb_Ltil, wub * std::abs(state.Ltil_t[i] - Lx[i]));
    rep.L_phi = std::max(rep.L_phi, wu * std::abs(state.phi_t[i] + px[i]));
    rep.Lb_phi = std::max(rep.Lb_phi, wub * std::abs(state.phi_t[i] - px[i]));
  }
  if (epsilon > 0.0) {
    rep.L_Ltil /= epsilon;
    rep.Lb_Ltil /= epsilon;
    rep.L_phi /= epsilon;
    rep.Lb_phi /= epsilon;
  }
  return rep;
}

double weighted_sobolev_ratio(const FieldState& state, const Grid& grid, double delta) {
  state.validate(grid);
  const auto chans = slice_channels(state, grid);
  // channel -> derivative channel, and the weight orientation
  struct Entry {
    int f, fx;
    bool ub_major;  // weight (1+ub^2)^((1+d)/2) / (1+u^2)^((1+d)/4)
  };
  const Entry entries[4] = {{0, 1, true}, {4, 5, false}, {2, 3, true}, {6, 7, false}};

  double best = 0.0;
  std::vector<double> sq(grid.nx);
  for (const auto& ent : entries) {
    double sup = 0.0;
    double l2f = 0.0, l2fx = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
      const auto& f = chans.ch[pass == 0 ? ent.f : ent.fx];
      for (int i = 0; i < grid.nx; ++i) {
        const double u = 0.5 * (state.t + grid.x(i));
        const double ub = 0.5 * (state.t - grid.x(i));
        const double maj = ent.ub_major ? ub : u;
        const double min = ent.ub_major ? u : ub;
        const double w = std::pow(1.0 + maj * maj, 0.5 * (1.0 + delta)) /
                         std::pow(1.0 + min * min, 0.25 * (1.0 + delta));
        const double wf = w * f[i];
        if (pass == 0) sup = std::max(sup, std::abs(wf));
        sq[i] = wf * wf;
      }
      (pass == 0 ? l2f : l2fx) = std::sqrt(trapezoid(sq, grid));
    }
    const double den = l2f + l2fx;
    if (den > 0.0) best = std::max(best, sup / den);
  }
  return best;
}

std::pair<double, double> continuity_residuals(const FieldState& before, const FieldState& mid,
                                               const FieldState& after, const Grid& grid) {
  const double dt1 = mid.t - before.t;
  const double dt2 = after.t - mid.t;
  if (!(dt1 > 0.0) || std::abs(dt1 - dt2) > 1e-9 * std::max(dt1, dt2))
    throw InvalidInput("continuity_residuals: slices must be uniformly spaced in time");
  const auto da = densities(before, grid);
  const auto dm = densities(mid, grid);
  const auto dc = densities(after, grid);
  const auto ex = spatial_derivative(dm.e, grid);
  const auto px = spatial_derivative(dm.p, grid);
  double r1 = 0.0, r2 = 0.0;
  for (int i = 1; i + 1 < grid.nx; ++i) {
    const double pt = (dc.p[i] - da.p[i]) / (dt1 + dt2);
    const double et = (dc.e[i] - da.e[i]) / (dt1 + dt2);
    r1 = std::max(r1, std::abs(pt - ex[i]));
    r2 = std::max(r2, std::abs(et - px[i]));
  }
  return {r1, r2};
}

}  // namespace pcf
