#include "snewton/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "snewton/errors.hpp"
#include "snewton/evolve.hpp"
#include "snewton/quadrature.hpp"
#include "snewton/stationary.hpp"

namespace snewton {

namespace {

RadialGrid make_grid(double dr, double domain_radius) {
  const auto n = static_cast<std::size_t>(std::llround(domain_radius / dr)) + 1;
  return RadialGrid(dr, n);
}

}  // namespace

std::string to_string(Fate fate) {
  switch (fate) {
    case Fate::Bound: return "Bound";
    case Fate::Escaping: return "Escaping";
    default: return "Undecided";
  }
}

std::vector<ConvergenceCurve> convergence_poisson(std::span<const double> resolutions,
                                                  double domain_radius, double mass,
                                                  double sigma) {
  if (resolutions.size() < 2)
    throw insufficient_points_error("convergence_poisson: need at least 2 resolutions");
  const double dr_finest = *std::min_element(resolutions.begin(), resolutions.end());
  std::vector<ConvergenceCurve> curves;
  for (double dr : resolutions) {
    const RadialGrid grid = make_grid(dr, domain_radius);
    const WaveState state = gaussian_initial(grid, mass, sigma);
    const PotentialField field = compute_potential(state);
    ConvergenceCurve curve;
    curve.dr = dr;
    const double scale = std::pow(dr / dr_finest, -4.0);
    curve.x.resize(grid.n_points);
    curve.error.resize(grid.n_points);
    curve.scaled_error.resize(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
      const double exact = analytic_gaussian_potential(grid.r(j), mass, sigma);
      const double rel = std::abs(field.phi[j] - exact) / std::abs(exact);
      curve.x[j] = grid.r(j);
      curve.error[j] = rel;
      curve.scaled_error[j] = rel * scale;
      curve.max_error = std::max(curve.max_error, rel);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

cdouble free_gaussian_analytic(double r, double t, double mass, double sigma) {
  const cdouble tau(1.0, t / (mass * sigma * sigma));  // 1 + i hbar t/(m sigma^2)
  const cdouble prefactor =
      std::pow(std::numbers::pi * sigma * sigma, -0.75) * std::pow(tau, -1.5);
  return prefactor * std::exp(-r * r / (2.0 * sigma * sigma * tau));
}

std::vector<ConvergenceCurve> convergence_free_particle(std::span<const double> resolutions,
                                                        double t_end, double domain_radius,
                                                        double mass, double sigma,
                                                        double dt_factor,
                                                        double snapshot_interval) {
  if (resolutions.size() < 2)
    throw insufficient_points_error("convergence_free_particle: need at least 2 resolutions");
  const double dr_finest = *std::min_element(resolutions.begin(), resolutions.end());
  std::vector<ConvergenceCurve> curves;
  for (double dr : resolutions) {
    const RadialGrid grid = make_grid(dr, domain_radius);
    WaveState state = gaussian_initial(grid, mass, sigma);

    EvolutionParams params;
    params.dt_factor = dt_factor;
    params.self_gravity = false;
    params.absorber_amplitude = 0.0;
    params.snapshot_interval = snapshot_interval;

    ConvergenceCurve curve;
    curve.dr = dr;
    const double scale = std::pow(dr / dr_finest, -6.0);
    std::vector<double> numerator(grid.n_points), denominator(grid.n_points);
    auto l1_error = [&](const WaveState& s) {
      // Int |psi_num - psi_exact| dV / Int |psi_exact| dV; the r^2 weight
      // turns both integrands into r |.| of the u-form samples.
      for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double r = grid.r(j);
        const cdouble exact_u = r * free_gaussian_analytic(r, s.t, mass, sigma);
        numerator[j] = r * std::abs(s.u[j] - exact_u);
        denominator[j] = r * std::abs(exact_u);
      }
      return newton_cotes_integrate(numerator, dr) / newton_cotes_integrate(denominator, dr);
    };

    // Segment the run so every sample lands on an exact snapshot time.
    const auto n_snapshots = static_cast<std::size_t>(std::ceil(t_end / snapshot_interval));
    curve.x.push_back(0.0);
    curve.error.push_back(l1_error(state));
    for (std::size_t k = 1; k <= n_snapshots; ++k) {
      const double target = std::min(k * snapshot_interval, t_end);
      params.t_end = target - state.t;
      state = evolve(state, params).state;
      curve.x.push_back(state.t);
      curve.error.push_back(l1_error(state));
    }
    for (double e : curve.error) {
      curve.scaled_error.push_back(e * scale);
      curve.max_error = std::max(curve.max_error, e);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

FateReport classify_fate(double mass, double horizon, const FateConfig& config,
                         std::vector<DiagnosticsRecord>* trajectory) {
  const RunGridConfig& rc = config.run;
  const RadialGrid grid = make_grid(rc.dr, rc.domain_radius);
  WaveState state = gaussian_initial(grid, mass, rc.sigma);

  EvolutionParams params;
  params.dt_factor = rc.dt_factor;
  params.absorber_amplitude = rc.absorber_amplitude;
  params.absorber_width = rc.absorber_width;
  params.absorber_steepness = rc.absorber_steepness;
  params.snapshot_interval = rc.snapshot_interval;
  params.t_end = horizon;

  const double guard_radius = config.domain_guard_fraction * grid.outer_radius();
  Observer guard = [&](const DiagnosticsRecord& rec, const WaveState&) {
    if (std::isfinite(rec.r_peak) && rec.r_peak > guard_radius)
      throw domain_exceeded_error(
          "classify_fate: peak passed r = " + std::to_string(guard_radius) +
          " at m = " + std::to_string(mass) + "; enlarge the domain");
  };

  EvolutionResult result = evolve(state, params, guard);
  const auto& records = result.trajectory;
  if (trajectory) *trajectory = records;

  FateReport report;
  report.mass = mass;
  report.horizon = horizon;
  report.v_peak_final = records.back().v_peak;
  report.v_escape_final = records.back().v_escape;

  std::size_t argmax = 0;
  bool peaks_ok = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    peaks_ok = peaks_ok && std::isfinite(records[i].r_peak);
    if (peaks_ok && records[i].r_peak > records[argmax].r_peak) argmax = i;
  }
  if (!peaks_ok) return report;  // lost the peak: Undecided
  report.r_peak_max = records[argmax].r_peak;

  // Bound: the maximum is followed by a drop of turnaround_drop.
  if (argmax + 1 < records.size()) {
    double after_min = records[argmax].r_peak;
    for (std::size_t i = argmax; i < records.size(); ++i)
      after_min = std::min(after_min, records[i].r_peak);
    if (after_min <= (1.0 - config.turnaround_drop) * records[argmax].r_peak) {
      report.fate = Fate::Bound;
      report.turnaround_time = records[argmax].t;
      return report;
    }
  }

  // Escaping: monotone rise through the final window, faster than escape.
  const auto window_start =
      records.size() - std::max<std::size_t>(3, static_cast<std::size_t>(
                                                    config.tail_fraction * records.size()));
  bool monotone = true;
  double v_peak_sum = 0.0, v_escape_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = window_start; i < records.size(); ++i) {
    if (i > window_start) monotone = monotone && records[i].r_peak > records[i - 1].r_peak;
    if (std::isfinite(records[i].v_peak)) {
      v_peak_sum += records[i].v_peak;
      v_escape_sum += records[i].v_escape;
      ++count;
    }
  }
  if (monotone && count > 0 && v_peak_sum > v_escape_sum &&
      records.back().v_peak > records.back().v_escape) {
    report.fate = Fate::Escaping;
  }
  return report;
}

MassBracket bisect_critical_mass(double lo, double hi, double tol, const FateConfig& config) {
  if (!(lo < hi) || !(tol > 0.0))
    throw bracketing_error("bisect_critical_mass: need lo < hi and tol > 0");
  const double base_horizon = config.horizon;

  auto classify_with_retries = [&](double mass, double horizon) {
    FateReport report = classify_fate(mass, horizon, config);
    for (int k = 0; k < config.max_horizon_doublings && report.fate == Fate::Undecided; ++k) {
      horizon *= 2.0;
      report = classify_fate(mass, horizon, config);
    }
    return report;
  };

  MassBracket bracket;
  const FateReport lo_report = classify_with_retries(lo, base_horizon);
  if (lo_report.fate != Fate::Escaping)
    throw bracketing_error("bisect_critical_mass: lower endpoint m = " + std::to_string(lo) +
                           " is " + to_string(lo_report.fate) + ", not Escaping");
  const FateReport hi_report = classify_with_retries(hi, base_horizon);
  if (hi_report.fate != Fate::Bound)
    throw bracketing_error("bisect_critical_mass: upper endpoint m = " + std::to_string(hi) +
                           " is " + to_string(hi_report.fate) + ", not Bound");

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const FateReport mid_report = classify_with_retries(mid, base_horizon);
    bracket.iterations.push_back({lo, hi, mid, mid_report.fate, mid_report.horizon});
    if (mid_report.fate == Fate::Undecided)
      throw inconclusive_error("bisect_critical_mass: m = " + std::to_string(mid) +
                               " stayed Undecided after horizon doublings");
    if (mid_report.fate == Fate::Bound)
      hi = mid;
    else
      lo = mid;
  }
  bracket.lo = lo;
  bracket.hi = hi;
  return bracket;
}

double gaussian_shell_fraction() {
  // 4 pi Int_0^sigma r^2 (pi sigma^2)^{-3/2} exp(-r^2/sigma^2) dr at sigma = 1.
  const std::size_t n = 4097;
  const double dr = 1.0 / static_cast<double>(n - 1);
  std::vector<double> f(n);
  const double amplitude = 4.0 * std::numbers::pi * std::pow(std::numbers::pi, -1.5);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = static_cast<double>(j) * dr;
    f[j] = amplitude * r * r * std::exp(-r * r);
  }
  return newton_cotes_integrate(f, dr);
}

double force_balance_mass() { return std::cbrt(1.0 / gaussian_shell_fraction()); }

double groundstate_energy(double mass) {
  static std::once_flag flag;
  static double unit_energy = 0.0;
  std::call_once(flag, [] {
    const RadialGrid grid(1.0 / 256, 6145);  // R = 24
    unit_energy = solve_groundstate(1.0, grid).energy;
  });
  return unit_energy * std::pow(mass, 5);
}

ApproachResult groundstate_approach_run(double mass, double horizon,
                                        const RunGridConfig& run) {
  const double e0 = groundstate_energy(mass);
  const RadialGrid grid = make_grid(run.dr, run.domain_radius);
  WaveState state = gaussian_initial(grid, mass, run.sigma);

  EvolutionParams params;
  params.dt_factor = run.dt_factor;
  params.absorber_amplitude = run.absorber_amplitude;
  params.absorber_width = run.absorber_width;
  params.absorber_steepness = run.absorber_steepness;
  params.snapshot_interval = run.snapshot_interval;
  params.t_end = horizon;

  ApproachResult result;
  result.groundstate_energy = e0;
  const EvolutionResult evolved = evolve(state, params);
  for (const auto& rec : evolved.trajectory) {
    const double target = rec.norm * rec.norm * rec.norm * e0;
    result.series.push_back({rec.t, rec.energy_expectation, rec.norm, target});
  }
  result.final_energy = result.series.back().energy;
  result.final_norm = result.series.back().norm;
  const double target = result.series.back().target;
  result.relative_gap = std::abs(result.final_energy - target) / std::abs(target);
  return result;
}

}  // namespace snewton
