#include "snewton/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snewton/errors.hpp"

namespace snewton {

void EvolutionParams::validate(const RadialGrid& grid) const {
  if (!(dt_factor > 0.0)) throw grid_error("EvolutionParams: dt_factor must be positive");
  if (dt_factor * kStencilSymbolMax > kRk4ImaginaryStabilityLimit)
    throw grid_error("EvolutionParams: dt_factor " + std::to_string(dt_factor) +
                     " exceeds the RK4 stability cap " +
                     std::to_string(kRk4ImaginaryStabilityLimit / kStencilSymbolMax));
  if (absorber_amplitude < 0.0)
    throw grid_error("EvolutionParams: absorber_amplitude must be >= 0");
  if (absorber_amplitude > 0.0) {
    if (!(absorber_width > 0.0) || !(absorber_steepness > 0.0))
      throw grid_error("EvolutionParams: absorber width and steepness must be positive");
    if (absorber_width >= grid.outer_radius() / 4.0)
      throw grid_error("EvolutionParams: absorber_width must be below R/4");
  }
  if (t_end < 0.0) throw grid_error("EvolutionParams: t_end must be >= 0");
  if (!(snapshot_interval > 0.0))
    throw grid_error("EvolutionParams: snapshot_interval must be positive");
}

namespace {

constexpr double kC0 = -49.0 / 18.0;
constexpr double kC1 = 3.0 / 2.0;
constexpr double kC2 = -3.0 / 20.0;
constexpr double kC3 = 1.0 / 90.0;

}  // namespace

void second_derivative_into(std::span<const cdouble> u, const RadialGrid& grid,
                            std::span<cdouble> out) {
  const std::size_t n = grid.n_points;
  if (n < 8) throw insufficient_points_error("second_derivative: need at least 8 points");
  if (u.size() != n || out.size() != n)
    throw grid_error("second_derivative: field size does not match the grid");
  const double inv_dr2 = 1.0 / (grid.dr * grid.dr);

  // Odd extension about the origin.
  out[0] = kC0 * u[0] * inv_dr2;
  out[1] = (kC3 * (u[4] - u[2]) + kC2 * (u[3] - u[1]) + kC1 * (u[0] + u[2]) + kC0 * u[1]) *
           inv_dr2;
  out[2] = (kC3 * (u[5] - u[1]) + kC2 * (u[0] + u[4]) + kC1 * (u[1] + u[3]) + kC0 * u[2]) *
           inv_dr2;

  for (std::size_t j = 3; j + 3 < n; ++j) {
    out[j] = (kC3 * (u[j - 3] + u[j + 3]) + kC2 * (u[j - 2] + u[j + 2]) +
              kC1 * (u[j - 1] + u[j + 1]) + kC0 * u[j]) *
             inv_dr2;
  }

  // Even (Neumann) extension about the last point.
  const std::size_t m = n - 1;
  out[m - 2] = (kC3 * (u[m - 5] + u[m - 1]) + kC2 * (u[m - 4] + u[m]) +
                kC1 * (u[m - 3] + u[m - 1]) + kC0 * u[m - 2]) *
               inv_dr2;
  out[m - 1] = (kC3 * (u[m - 4] + u[m - 2]) + kC2 * (u[m - 3] + u[m - 1]) +
                kC1 * (u[m - 2] + u[m]) + kC0 * u[m - 1]) *
               inv_dr2;
  out[m] = (2.0 * kC3 * u[m - 3] + 2.0 * kC2 * u[m - 2] + 2.0 * kC1 * u[m - 1] + kC0 * u[m]) *
           inv_dr2;
}

std::vector<cdouble> second_derivative(std::span<const cdouble> u, const RadialGrid& grid) {
  std::vector<cdouble> out(u.size());
  second_derivative_into(u, grid, out);
  return out;
}

std::vector<double> absorber_profile(const RadialGrid& grid, const EvolutionParams& params) {
  std::vector<double> w(grid.n_points, 0.0);
  if (params.absorber_amplitude == 0.0) return w;
  const double edge = grid.outer_radius() - params.absorber_width;
  const double half_amp = 0.5 * params.absorber_amplitude;
  for (std::size_t j = 0; j < grid.n_points; ++j)
    w[j] = -half_amp * (1.0 + std::tanh((grid.r(j) - edge) / params.absorber_steepness));
  return w;
}

namespace {

struct StepWorkspace {
  PoissonWorkspace poisson;
  std::vector<double> phi;
  std::vector<cdouble> d2u, k1, k2, k3, k4, stage;

  void resize(std::size_t n) {
    phi.assign(n, 0.0);
    d2u.resize(n);
    k1.resize(n);
    k2.resize(n);
    k3.resize(n);
    k4.resize(n);
    stage.resize(n);
  }
};

void rhs_into(std::span<const cdouble> u, const RadialGrid& grid, double mass,
              bool self_gravity, std::span<const double> absorber, StepWorkspace& ws,
              std::span<cdouble> out) {
  if (self_gravity) compute_potential_into(u, grid, mass, ws.poisson, ws.phi);
  second_derivative_into(u, grid, ws.d2u);
  const double half_over_m = 0.5 / mass;  // hbar = 1
  const std::size_t n = grid.n_points;
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble herm = half_over_m * ws.d2u[j] - mass * ws.phi[j] * u[j];
    out[j] = cdouble(-herm.imag(), herm.real()) + (mass * absorber[j]) * u[j];
  }
  out[0] = cdouble(0.0, 0.0);
}

void rk4_step_into(std::vector<cdouble>& u, double dt, const RadialGrid& grid, double mass,
                   bool self_gravity, std::span<const double> absorber, StepWorkspace& ws) {
  const std::size_t n = u.size();
  rhs_into(u, grid, mass, self_gravity, absorber, ws, ws.k1);
  const double half_dt = 0.5 * dt;
  for (std::size_t j = 0; j < n; ++j) ws.stage[j] = u[j] + half_dt * ws.k1[j];
  rhs_into(ws.stage, grid, mass, self_gravity, absorber, ws, ws.k2);
  for (std::size_t j = 0; j < n; ++j) ws.stage[j] = u[j] + half_dt * ws.k2[j];
  rhs_into(ws.stage, grid, mass, self_gravity, absorber, ws, ws.k3);
  for (std::size_t j = 0; j < n; ++j) ws.stage[j] = u[j] + dt * ws.k3[j];
  rhs_into(ws.stage, grid, mass, self_gravity, absorber, ws, ws.k4);
  const double sixth_dt = dt / 6.0;
  for (std::size_t j = 0; j < n; ++j)
    u[j] += sixth_dt * (ws.k1[j] + 2.0 * (ws.k2[j] + ws.k3[j]) + ws.k4[j]);
  u[0] = cdouble(0.0, 0.0);
}

void check_finite(const std::vector<cdouble>& u, std::size_t step) {
  double max_abs = 0.0;
  bool bad = false;
  for (const cdouble& z : u) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      bad = true;
    } else {
      max_abs = std::max(max_abs, std::abs(z));
    }
  }
  if (bad)
    throw instability_error("evolve: non-finite samples after step " + std::to_string(step) +
                            ", max finite |u| = " + std::to_string(max_abs));
}

}  // namespace

std::vector<cdouble> rhs(const WaveState& state, const PotentialField& field,
                         std::span<const double> absorber) {
  if (field.grid != state.grid) throw grid_error("rhs: potential grid mismatch");
  if (absorber.size() != state.u.size()) throw grid_error("rhs: absorber size mismatch");
  std::vector<cdouble> out(state.u.size());
  const auto d2u = second_derivative(state.u, state.grid);
  const double half_over_m = 0.5 / state.mass;
  for (std::size_t j = 0; j < state.u.size(); ++j) {
    const cdouble herm = half_over_m * d2u[j] - state.mass * field.phi[j] * state.u[j];
    out[j] = cdouble(-herm.imag(), herm.real()) + (state.mass * absorber[j]) * state.u[j];
  }
  out[0] = cdouble(0.0, 0.0);
  return out;
}

WaveState rk4_step(const WaveState& state, const EvolutionParams& params) {
  params.validate(state.grid);
  WaveState next = state;
  StepWorkspace ws;
  ws.resize(state.u.size());
  const auto absorber = absorber_profile(state.grid, params);
  const double dt = params.time_step(state.grid, state.mass);
  rk4_step_into(next.u, dt, state.grid, state.mass, params.self_gravity, absorber, ws);
  check_finite(next.u, 1);
  next.t += dt;
  return next;
}

EvolutionResult evolve(const WaveState& initial, const EvolutionParams& params,
                       const Observer& observer, const std::atomic<bool>* cancel) {
  params.validate(initial.grid);
  if (!(initial.mass > 0.0)) throw grid_error("evolve: mass must be positive");

  EvolutionResult result;
  result.state = initial;
  WaveState& state = result.state;
  const std::size_t n = state.u.size();

  StepWorkspace ws;
  ws.resize(n);
  const auto absorber = absorber_profile(state.grid, params);

  PotentialField field;
  field.grid = state.grid;
  field.phi.assign(n, 0.0);
  field.absorber = absorber;

  auto record_snapshot = [&]() {
    if (params.self_gravity)
      compute_potential_into(state.u, state.grid, state.mass, ws.poisson, field.phi);
    DiagnosticsRecord rec = diagnose(state, field);
    // Best-effort live velocity; the trajectory gets the centered value below.
    if (!result.trajectory.empty()) {
      const auto& prev = result.trajectory.back();
      if (std::isfinite(prev.r_peak) && std::isfinite(rec.r_peak) && rec.t > prev.t)
        rec.v_peak = (rec.r_peak - prev.r_peak) / (rec.t - prev.t);
    }
    result.trajectory.push_back(rec);
    if (observer) observer(rec, state);
  };

  record_snapshot();

  const double dt_base = params.time_step(state.grid, state.mass);
  const double t_final = initial.t + params.t_end;
  double next_snapshot = initial.t + params.snapshot_interval;
  const double t_eps = 0.5 * dt_base;

  while (state.t < t_final - 1e-15 * std::max(1.0, std::abs(t_final))) {
    if (cancel && cancel->load(std::memory_order_relaxed)) {
      result.cancelled = true;
      break;
    }
    const double dt = std::min(dt_base, t_final - state.t);
    rk4_step_into(state.u, dt, state.grid, state.mass, params.self_gravity, absorber, ws);
    state.t += dt;
    ++result.steps;
    check_finite(state.u, result.steps);
    if (state.t + t_eps >= next_snapshot) {
      record_snapshot();
      while (next_snapshot <= state.t + t_eps) next_snapshot += params.snapshot_interval;
    }
  }

  if (result.trajectory.back().t < state.t) record_snapshot();

  // Replace the live one-sided estimates with centered differences.
  const std::size_t count = result.trajectory.size();
  if (count >= 3) {
    std::vector<double> times(count), radii(count);
    bool all_finite = true;
    for (std::size_t i = 0; i < count; ++i) {
      times[i] = result.trajectory[i].t;
      radii[i] = result.trajectory[i].r_peak;
      all_finite = all_finite && std::isfinite(radii[i]);
    }
    if (all_finite) {
      const auto v = peak_velocity(times, radii);
      for (std::size_t i = 0; i < count; ++i) result.trajectory[i].v_peak = v[i];
    }
  }
  return result;
}

}  // namespace snewton
