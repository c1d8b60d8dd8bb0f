#include "snewton/stationary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "snewton/errors.hpp"
#include "snewton/quadrature.hpp"

namespace snewton {

StationaryRhs stationary_rhs(double r, double u, double v, double energy, double mass) {
  if (r == 0.0) return {0.0, 0.0};
  const double phi = v / r;
  return {2.0 * mass * (mass * phi - energy) * u,
          4.0 * std::numbers::pi * mass * u * u / r};
}

namespace {

// The solver works in w = m*Phi - E, which removes the eigenvalue from the
// system: with q = r*w,
//   u'' = 2 m (q/r) u,   q'' = 4 pi m^2 u^2 / r,
// and the gauge w(0) = -1 leaves the central slope a = u'(0) as the single
// shooting parameter. Outside the support q is linear with slope w(inf),
// so E = -q'(r_cut) once Phi(inf) = 0 is imposed. A solution (u, w) maps to
// another via (lambda u(lambda r), lambda^2 w(lambda r)), scaling the norm by
// lambda and the eigenvalue by lambda^2; that freedom restores unit norm.

struct ShotState {
  double u, up, q, qp;
};

ShotState series_start(double a, double mass, double r) {
  const double w0 = -1.0;
  const double w2 = 2.0 * std::numbers::pi / 3.0 * mass * mass * a * a;
  ShotState y;
  y.u = a * r + mass * w0 * a * r * r * r / 3.0;
  y.up = a + mass * w0 * a * r * r;
  y.q = w0 * r + w2 * r * r * r;
  y.qp = w0 + 3.0 * w2 * r * r;
  return y;
}

std::array<double, 4> shot_rhs(double r, const ShotState& y, double mass) {
  const double w = y.q / r;
  return {y.up, 2.0 * mass * w * y.u, y.qp,
          4.0 * std::numbers::pi * mass * mass * y.u * y.u / r};
}

ShotState rk4_ode_step(double r, const ShotState& y, double h, double mass) {
  const auto k1 = shot_rhs(r, y, mass);
  ShotState y2{y.u + 0.5 * h * k1[0], y.up + 0.5 * h * k1[1], y.q + 0.5 * h * k1[2],
               y.qp + 0.5 * h * k1[3]};
  const auto k2 = shot_rhs(r + 0.5 * h, y2, mass);
  ShotState y3{y.u + 0.5 * h * k2[0], y.up + 0.5 * h * k2[1], y.q + 0.5 * h * k2[2],
               y.qp + 0.5 * h * k2[3]};
  const auto k3 = shot_rhs(r + 0.5 * h, y3, mass);
  ShotState y4{y.u + h * k3[0], y.up + h * k3[1], y.q + h * k3[2], y.qp + h * k3[3]};
  const auto k4 = shot_rhs(r + h, y4, mass);
  return {y.u + h / 6.0 * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]),
          y.up + h / 6.0 * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1]),
          y.q + h / 6.0 * (k1[2] + 2.0 * (k2[2] + k3[2]) + k4[2]),
          y.qp + h / 6.0 * (k1[3] + 2.0 * (k2[3] + k3[3]) + k4[3])};
}

struct ShotOutcome {
  int nodes = 0;
  // Final-pass storage, samples at r = h, 2h, ... up to the stop radius.
  std::vector<double> u, q, qp;
};

ShotOutcome shoot(double a, double mass, double h, double r_max, bool store) {
  ShotOutcome outcome;
  ShotState y = series_start(a, mass, h);
  double r = h;
  if (store) {
    const std::size_t expected = static_cast<std::size_t>(r_max / h) + 2;
    outcome.u.reserve(expected);
    outcome.q.reserve(expected);
    outcome.qp.reserve(expected);
    outcome.u.push_back(y.u);
    outcome.q.push_back(y.q);
    outcome.qp.push_back(y.qp);
  }
  double prev_u = y.u;
  double bulk_peak = std::abs(y.u);
  bool peak_locked = false;
  while (r < r_max) {
    y = rk4_ode_step(r, y, h, mass);
    r += h;
    if (!std::isfinite(y.u) || !std::isfinite(y.q)) break;
    if (store) {
      outcome.u.push_back(y.u);
      outcome.q.push_back(y.q);
      outcome.qp.push_back(y.qp);
    }
    if (y.u * prev_u < 0.0) ++outcome.nodes;
    prev_u = y.u;
    const double mag = std::abs(y.u);
    if (!peak_locked) {
      if (mag > bulk_peak) {
        bulk_peak = mag;
      } else if (mag < 0.99 * bulk_peak) {
        peak_locked = true;
      }
    } else if (mag > 10.0 * bulk_peak) {
      break;  // exponential growth has taken over
    }
    if (mag > 1e15) break;
  }
  return outcome;
}

struct RawSolution {
  double a = 0.0;        // converged central slope
  double energy = 0.0;   // E of the unnormalized solution
  double norm = 0.0;     // 4 pi Int u^2 dr of the unnormalized solution
  double h = 0.0;
  double r_cut = 0.0;
  double kappa = 0.0;    // decay rate at the cut
  std::vector<double> u, v;  // samples at r = 0, h, ..., r_cut
};

RawSolution solve_raw(double mass, double h, double r_max) {
  // Bracket the slope: small a leaves w < 0 everywhere (oscillatory, nodes),
  // large a flips w positive early (nodeless divergence).
  double a_hi = 1.0;
  int guard = 0;
  while (shoot(a_hi, mass, h, r_max, false).nodes != 0) {
    a_hi *= 2.0;
    if (++guard > 200)
      throw bracketing_error("solve_groundstate: no nodeless shot found while raising a");
  }
  double a_lo = 0.5 * a_hi;
  guard = 0;
  while (shoot(a_lo, mass, h, r_max, false).nodes == 0) {
    a_lo *= 0.5;
    if (++guard > 200)
      throw bracketing_error("solve_groundstate: no noded shot found while lowering a");
  }
  for (int it = 0; it < 120 && (a_hi - a_lo) > 1e-15 * a_hi; ++it) {
    const double mid = 0.5 * (a_lo + a_hi);
    if (shoot(mid, mass, h, r_max, false).nodes == 0)
      a_hi = mid;
    else
      a_lo = mid;
  }

  const ShotOutcome fin = shoot(a_hi, mass, h, r_max, true);
  // Cut at the smallest |u| past the first (physical) maximum, before the
  // leftover growing mode takes over.
  std::size_t peak_idx = 1;
  while (peak_idx < fin.u.size() && std::abs(fin.u[peak_idx]) >= std::abs(fin.u[peak_idx - 1]))
    ++peak_idx;
  --peak_idx;
  std::size_t cut_idx = peak_idx;
  for (std::size_t i = peak_idx; i < fin.u.size(); ++i)
    if (std::abs(fin.u[i]) < std::abs(fin.u[cut_idx])) cut_idx = i;
  if (cut_idx <= peak_idx + 8)
    throw bracketing_error("solve_groundstate: shot never entered the decaying tail");

  RawSolution raw;
  raw.a = a_hi;
  raw.h = h;
  raw.r_cut = static_cast<double>(cut_idx + 1) * h;
  raw.energy = -fin.qp[cut_idx];
  const double w_cut = fin.q[cut_idx] / raw.r_cut;
  raw.kappa = std::sqrt(std::max(2.0 * mass * w_cut, 0.0));

  raw.u.resize(cut_idx + 2);
  raw.v.resize(cut_idx + 2);
  raw.u[0] = 0.0;
  raw.v[0] = 0.0;
  for (std::size_t i = 0; i <= cut_idx; ++i) {
    const double r = static_cast<double>(i + 1) * h;
    raw.u[i + 1] = fin.u[i];
    raw.v[i + 1] = (fin.q[i] + raw.energy * r) / mass;
  }
  raw.norm = 4.0 * std::numbers::pi * newton_cotes_integrate(raw.u, h);
  return raw;
}

}  // namespace

StationaryState solve_groundstate(double mass, const RadialGrid& grid) {
  if (!(mass > 0.0)) throw grid_error("solve_groundstate: mass must be positive");
  const double width_scale = 1.0 / (mass * mass * mass);
  if (grid.dr * 200.0 > width_scale)
    throw resolution_error("solve_groundstate: grid must resolve the width 1/m^3 with >= 200 points");

  // Shooting happens in the w-gauge where the natural length is 1/sqrt(2m).
  const double ell = 1.0 / std::sqrt(2.0 * mass);
  const double r_max = 60.0 * ell;
  const double h = ell / 400.0;

  const RawSolution coarse = solve_raw(mass, h, r_max);
  const RawSolution raw = solve_raw(mass, 0.5 * h, r_max);
  const double e_coarse = coarse.energy / (coarse.norm * coarse.norm);
  const double e_fine = raw.energy / (raw.norm * raw.norm);
  if (std::abs(e_coarse - e_fine) > 1e-7 * std::abs(e_fine))
    throw resolution_error("solve_groundstate: eigenvalue did not converge under step halving");

  const double lambda = 1.0 / raw.norm;
  StationaryState gs;
  gs.grid = grid;
  gs.mass = mass;
  gs.energy = lambda * lambda * raw.energy;
  gs.phi_origin = lambda * lambda * (-1.0 + raw.energy) / mass;
  gs.u0.resize(grid.n_points);
  gs.v.resize(grid.n_points);

  const double r_cut_out = raw.r_cut / lambda;
  const double u_cut = lambda * raw.u.back();
  const double v_cut = lambda * raw.v.back();
  const double kappa_out = lambda * raw.kappa;
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double x = lambda * grid.r(j);
    if (x <= raw.r_cut) {
      gs.u0[j] = lambda * interpolate_cubic(raw.u, raw.h, x, true);
      gs.v[j] = lambda * interpolate_cubic(raw.v, raw.h, x, true);
    } else {
      const double arg = kappa_out * (grid.r(j) - r_cut_out);
      gs.u0[j] = arg < 600.0 ? u_cut * std::exp(-arg) : 0.0;
      gs.v[j] = v_cut;
    }
  }
  gs.u0[0] = 0.0;

  std::vector<double> density(gs.u0.size());
  for (std::size_t j = 0; j < gs.u0.size(); ++j) density[j] = gs.u0[j] * gs.u0[j];
  const double captured = 4.0 * std::numbers::pi * newton_cotes_integrate(density, grid.dr);
  if (captured < 0.999)
    throw resolution_error("solve_groundstate: grid outer radius truncates the groundstate");

  const double max_u = *std::max_element(gs.u0.begin(), gs.u0.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
  const double tiny = 1e-12 * std::abs(max_u);
  int nodes = 0;
  double prev = 0.0;
  for (double s : gs.u0) {
    if (std::abs(s) <= tiny) continue;
    if (prev != 0.0 && s * prev < 0.0) ++nodes;
    prev = s;
  }
  gs.node_count = nodes;
  return gs;
}

WaveState to_wave_state(const StationaryState& gs) {
  WaveState state;
  state.grid = gs.grid;
  state.mass = gs.mass;
  state.t = 0.0;
  state.u.resize(gs.u0.size());
  for (std::size_t j = 0; j < gs.u0.size(); ++j) state.u[j] = cdouble(gs.u0[j], 0.0);
  return state;
}

PotentialField potential_of(const StationaryState& gs) {
  PotentialField field;
  field.grid = gs.grid;
  field.phi.resize(gs.grid.n_points);
  field.absorber.assign(gs.grid.n_points, 0.0);
  field.phi[0] = gs.phi_origin;
  for (std::size_t j = 1; j < gs.grid.n_points; ++j) field.phi[j] = gs.v[j] / gs.grid.r(j);
  return field;
}

WaveState fractional_groundstate(const StationaryState& gs, double p) {
  if (!(p > 0.0) || p > 1.0)
    throw grid_error("fractional_groundstate: p must lie in (0, 1]");
  return rescale_mu(to_wave_state(gs), p);
}

}  // namespace snewton
