#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snewton/diagnostics.hpp"
#include "snewton/state.hpp"

namespace snewton {

// Shared grid/run knobs for the scripted experiments.
struct RunGridConfig {
  double dr = 1.0 / 64;
  double domain_radius = 16.0;
  double sigma = 1.0;
  double dt_factor = 0.1;
  double snapshot_interval = 0.1;
  double absorber_amplitude = 1.0;
  double absorber_width = 1.0;
  double absorber_steepness = 0.25;
};

struct ConvergenceCurve {
  double dr = 0.0;
  std::vector<double> x;             // radius or time
  std::vector<double> error;        // relative error
  std::vector<double> scaled_error; // error * (dr/dr_finest)^{-order}
  double max_error = 0.0;
};

// Relative error of the computed initial-Gaussian potential against the erf
// oracle, one curve per resolution, scaled for 4th-order overlay.
std::vector<ConvergenceCurve> convergence_poisson(std::span<const double> resolutions,
                                                  double domain_radius = 16.0,
                                                  double mass = 1.0, double sigma = 1.0);

// Spreading free Gaussian, psi(r,t) with the standard complex width.
cdouble free_gaussian_analytic(double r, double t, double mass, double sigma);

// L1(t) relative error of gravity-off, absorber-off evolution against the
// analytic free packet, one curve per resolution, scaled for 6th-order
// overlay. Snapshots land on exact multiples of snapshot_interval.
std::vector<ConvergenceCurve> convergence_free_particle(std::span<const double> resolutions,
                                                        double t_end,
                                                        double domain_radius = 16.0,
                                                        double mass = 1.0, double sigma = 1.0,
                                                        double dt_factor = 0.1,
                                                        double snapshot_interval = 0.05);

enum class Fate { Bound, Escaping, Undecided };
std::string to_string(Fate fate);

struct FateReport {
  double mass = 0.0;
  Fate fate = Fate::Undecided;
  double r_peak_max = 0.0;
  std::optional<double> turnaround_time;
  double v_peak_final = 0.0;
  double v_escape_final = 0.0;
  double horizon = 0.0;
};

struct FateConfig {
  RunGridConfig run;
  double horizon = 20.0;          // used by the bisection endpoints/midpoints
  double turnaround_drop = 0.05;  // fractional fall from the maximum
  double tail_fraction = 0.25;    // final window for the escape test
  int max_horizon_doublings = 2;
  double domain_guard_fraction = 0.5;  // abort when the peak passes this * R

  FateConfig() {
    run.domain_radius = 48.0;
    run.dt_factor = 0.25;
  }
};

// Bound when the peak radius turns around and falls by turnaround_drop;
// Escaping when it still rises monotonically through the final window with
// the peak velocity above the escape velocity there; Undecided otherwise.
FateReport classify_fate(double mass, double horizon, const FateConfig& config = {},
                         std::vector<DiagnosticsRecord>* trajectory = nullptr);

struct BisectIteration {
  double lo = 0.0, hi = 0.0, mid = 0.0;
  Fate fate = Fate::Undecided;
  double horizon = 0.0;
};

struct MassBracket {
  double lo = 0.0, hi = 0.0;
  std::vector<BisectIteration> iterations;
};

// Bisection of the Bound/Escaping threshold; Undecided midpoints retry with a
// doubled horizon before counting as failure.
MassBracket bisect_critical_mass(double lo, double hi, double tol,
                                 const FateConfig& config = {});

// Probability of the initial Gaussian inside r = sigma, by quadrature.
double gaussian_shell_fraction();

// Mass at which the initial diffusive acceleration hbar^2/(m^2 r^3) balances
// the gravitational pull of the enclosed fraction f: m = f^{-1/3} code units.
double force_balance_mass();

// Groundstate eigenvalue at the given mass; one unit-mass solve, scaled by
// the exact m^5 law.
double groundstate_energy(double mass);

struct ApproachSample {
  double t = 0.0;
  double energy = 0.0;  // <H>
  double norm = 0.0;    // in-domain probability p(t)
  double target = 0.0;  // p(t)^3 * E0(m)
};

struct ApproachResult {
  std::vector<ApproachSample> series;
  double final_energy = 0.0;
  double final_norm = 0.0;
  double groundstate_energy = 0.0;
  double relative_gap = 0.0;  // |<H> - p^3 E0| / |p^3 E0| at the end
};

// Bound-regime evolution tracking <H> against p^3 E0.
ApproachResult groundstate_approach_run(double mass, double horizon,
                                        const RunGridConfig& run = {});

}  // namespace snewton
