#include "snewton/config.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "snewton/errors.hpp"
#include "snewton/evolve.hpp"
#include "snewton/experiments.hpp"
#include "snewton/io.hpp"
#include "snewton/stationary.hpp"
#include "snewton/version.hpp"

namespace snewton {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kCommands = {"evolve",        "groundstate", "converge-poisson",
                                            "converge-free", "sweep",       "bisect"};

bool needs_mass(const std::string& command) {
  return command == "evolve" || command == "groundstate" || command == "converge-poisson" ||
         command == "converge-free";
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"radial self-gravitating wave-packet simulator"};
  app.set_config("--config")->description("key = value file; flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("command,--command", cfg.command, "one of: evolve, groundstate, converge-poisson, converge-free, sweep, bisect")
      ->check(CLI::IsMember(kCommands));
  app.add_option("--mass", cfg.mass, "particle mass, code units")->check(CLI::PositiveNumber);
  app.add_option("--sigma", cfg.sigma, "initial Gaussian width")->check(CLI::PositiveNumber);
  app.add_option("--dr", cfg.dr, "grid spacing")->check(CLI::PositiveNumber);
  app.add_option("--n-points", cfg.n_points, "grid points")->check(CLI::Range(std::size_t{16}, std::size_t{1} << 30));
  app.add_option("--dt-factor", cfg.dt_factor, "alpha in dt = alpha*2m*dr^2")->check(CLI::PositiveNumber);
  app.add_option("--absorber-amplitude", cfg.absorber_amplitude)->check(CLI::NonNegativeNumber);
  app.add_option("--absorber-width", cfg.absorber_width)->check(CLI::PositiveNumber);
  app.add_option("--absorber-steepness", cfg.absorber_steepness)->check(CLI::PositiveNumber);
  app.add_option("--t-end", cfg.t_end)->check(CLI::NonNegativeNumber);
  app.add_option("--snapshot-interval", cfg.snapshot_interval)->check(CLI::PositiveNumber);
  app.add_option("--output-dir", cfg.output_dir);
  app.add_option("--horizon", cfg.horizon, "fate-run duration")->check(CLI::PositiveNumber);
  app.add_option("--mass-list", cfg.mass_list, "sweep masses")->delimiter(',');
  app.add_option("--bracket", cfg.bracket, "bisect bracket lo,hi")->delimiter(',')->expected(0, 2);
  app.add_option("--tol", cfg.tol, "bisect mass tolerance")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "sweep parallelism")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw help_requested(app.help());
  } catch (const CLI::ParseError& e) {
    throw usage_error(std::string("snewton: ") + e.what());
  }

  if (cfg.command.empty()) throw usage_error("snewton: missing command");
  if (needs_mass(cfg.command) && !(cfg.mass > 0.0))
    throw usage_error("snewton: " + cfg.command + " requires --mass");
  if (cfg.command == "sweep" && cfg.mass_list.empty())
    throw usage_error("snewton: sweep requires --mass-list");
  if (cfg.command == "bisect") {
    if (cfg.bracket.size() != 2 || !(cfg.bracket[0] < cfg.bracket[1]))
      throw usage_error("snewton: bisect requires --bracket lo,hi with lo < hi");
  }
  return cfg;
}

namespace {

void write_manifest(const RunConfig& cfg, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "# snewton " << kVersion << "\n";
  out << "command = " << cfg.command << "\n";
  if (cfg.mass > 0.0) out << "mass = " << format_double(cfg.mass) << "\n";
  out << "sigma = " << format_double(cfg.sigma) << "\n";
  out << "dr = " << format_double(cfg.dr) << "\n";
  out << "n-points = " << cfg.n_points << "\n";
  out << "dt-factor = " << format_double(cfg.dt_factor) << "\n";
  out << "absorber-amplitude = " << format_double(cfg.absorber_amplitude) << "\n";
  out << "absorber-width = " << format_double(cfg.absorber_width) << "\n";
  out << "absorber-steepness = " << format_double(cfg.absorber_steepness) << "\n";
  out << "t-end = " << format_double(cfg.t_end) << "\n";
  out << "snapshot-interval = " << format_double(cfg.snapshot_interval) << "\n";
  out << "output-dir = " << cfg.output_dir << "\n";
  out << "horizon = " << format_double(cfg.horizon) << "\n";
  if (!cfg.mass_list.empty()) {
    out << "mass-list = ";
    for (std::size_t i = 0; i < cfg.mass_list.size(); ++i)
      out << (i ? "," : "") << format_double(cfg.mass_list[i]);
    out << "\n";
  }
  out << "bracket = " << format_double(cfg.bracket[0]) << "," << format_double(cfg.bracket[1])
      << "\n";
  out << "tol = " << format_double(cfg.tol) << "\n";
  out << "jobs = " << cfg.jobs << "\n";
}

EvolutionParams evolution_params(const RunConfig& cfg) {
  EvolutionParams params;
  params.dt_factor = cfg.dt_factor;
  params.absorber_amplitude = cfg.absorber_amplitude;
  params.absorber_width = cfg.absorber_width;
  params.absorber_steepness = cfg.absorber_steepness;
  params.t_end = cfg.t_end;
  params.snapshot_interval = cfg.snapshot_interval;
  return params;
}

FateConfig fate_config(const RunConfig& cfg) {
  FateConfig fc;
  fc.run.dr = cfg.dr;
  fc.run.domain_radius = cfg.dr * static_cast<double>(cfg.n_points - 1);
  fc.run.sigma = cfg.sigma;
  fc.run.dt_factor = cfg.dt_factor;
  fc.run.snapshot_interval = cfg.snapshot_interval;
  fc.run.absorber_amplitude = cfg.absorber_amplitude;
  fc.run.absorber_width = cfg.absorber_width;
  fc.run.absorber_steepness = cfg.absorber_steepness;
  fc.horizon = cfg.horizon;
  return fc;
}

void write_convergence(const std::vector<ConvergenceCurve>& curves, const fs::path& dir,
                       const std::string& stem, const std::string& x_name,
                       const std::string& e_name) {
  std::ofstream summary(dir / "summary.csv", std::ios::binary);
  summary << "dr,max_error,ratio_vs_finest\n";
  double finest_dr = std::numeric_limits<double>::infinity();
  double finest_max = 1.0;
  for (const auto& c : curves)
    if (c.dr < finest_dr) {
      finest_dr = c.dr;
      finest_max = c.max_error;
    }
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    std::ofstream out(dir / (stem + "_" + std::to_string(k) + ".csv"), std::ios::binary);
    out << x_name << "," << e_name << "," << e_name << "_scaled\n";
    for (std::size_t i = 0; i < c.x.size(); ++i)
      out << format_double(c.x[i]) << ',' << format_double(c.error[i]) << ','
          << format_double(c.scaled_error[i]) << '\n';
    summary << format_double(c.dr) << ',' << format_double(c.max_error) << ','
            << format_double(c.max_error / finest_max) << '\n';
  }
}

void run_sweep(const RunConfig& cfg) {
  const FateConfig fc = fate_config(cfg);
  std::vector<double> masses = cfg.mass_list;
  std::sort(masses.begin(), masses.end());
  std::vector<FateReport> reports(masses.size());
  std::vector<std::vector<DiagnosticsRecord>> trajectories(masses.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= masses.size() || failed.load()) return;
      try {
        reports[i] = classify_fate(masses[i], cfg.horizon, fc, &trajectories[i]);
      } catch (const std::exception& e) {
        std::scoped_lock lock(failure_mutex);
        failed.store(true);
        if (failure.empty()) failure = e.what();
      }
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(std::max(1, cfg.jobs), masses.size());
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < n_workers; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) throw std::runtime_error(failure);

  const fs::path dir = cfg.output_dir;
  std::ofstream fates(dir / "fates.csv", std::ios::binary);
  fates << "mass,fate,r_peak_max,turnaround_time,v_peak_final,v_escape_final,horizon\n";
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const auto& rep = reports[i];
    fates << format_double(rep.mass) << ',' << to_string(rep.fate) << ','
          << format_double(rep.r_peak_max) << ','
          << (rep.turnaround_time ? format_double(*rep.turnaround_time) : "") << ','
          << format_double(rep.v_peak_final) << ',' << format_double(rep.v_escape_final) << ','
          << format_double(rep.horizon) << '\n';
    write_timeseries(trajectories[i], dir / ("run_m" + format_double(masses[i])) /
                                          "timeseries.csv");
  }
}

}  // namespace

void run_command(const RunConfig& cfg) {
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  write_manifest(cfg, dir / "manifest");

  if (cfg.command == "evolve") {
    const RadialGrid grid(cfg.dr, cfg.n_points);
    WaveState state = gaussian_initial(grid, cfg.mass, cfg.sigma);
    write_snapshot(state, compute_potential(state), dir / "snapshot_initial.csv");
    const EvolutionResult result = evolve(state, evolution_params(cfg));
    write_timeseries(result.trajectory, dir / "timeseries.csv");
    write_snapshot(result.state, compute_potential(result.state), dir / "snapshot_final.csv");
  } else if (cfg.command == "groundstate") {
    const RadialGrid grid(cfg.dr, cfg.n_points);
    const StationaryState gs = solve_groundstate(cfg.mass, grid);
    const WaveState state = to_wave_state(gs);
    write_snapshot(state, potential_of(gs), dir / "profile.csv");
    std::ofstream summary(dir / "summary.csv", std::ios::binary);
    summary << "energy,node_count,norm\n";
    summary << format_double(gs.energy) << ',' << gs.node_count << ','
            << format_double(total_probability(state)) << '\n';
  } else if (cfg.command == "converge-poisson") {
    const double domain = cfg.dr * static_cast<double>(cfg.n_points - 1);
    const std::vector<double> resolutions = {cfg.dr, 0.5 * cfg.dr};
    const auto curves = convergence_poisson(resolutions, domain, cfg.mass, cfg.sigma);
    write_convergence(curves, dir, "phi_error", "r", "rel_error");
  } else if (cfg.command == "converge-free") {
    const double domain = cfg.dr * static_cast<double>(cfg.n_points - 1);
    const std::vector<double> resolutions = {cfg.dr, 0.5 * cfg.dr};
    const auto curves = convergence_free_particle(resolutions, cfg.t_end, domain, cfg.mass,
                                                  cfg.sigma, cfg.dt_factor,
                                                  cfg.snapshot_interval);
    write_convergence(curves, dir, "l1_error", "t", "l1");
  } else if (cfg.command == "sweep") {
    run_sweep(cfg);
  } else if (cfg.command == "bisect") {
    const MassBracket bracket =
        bisect_critical_mass(cfg.bracket[0], cfg.bracket[1], cfg.tol, fate_config(cfg));
    std::ofstream out(dir / "bisection.csv", std::ios::binary);
    out << "iteration,lo,hi,mid,fate,horizon\n";
    for (std::size_t i = 0; i < bracket.iterations.size(); ++i) {
      const auto& it = bracket.iterations[i];
      out << i << ',' << format_double(it.lo) << ',' << format_double(it.hi) << ','
          << format_double(it.mid) << ',' << to_string(it.fate) << ','
          << format_double(it.horizon) << '\n';
    }
    std::ofstream result(dir / "result.csv", std::ios::binary);
    result << "lo,hi\n"
           << format_double(bracket.lo) << ',' << format_double(bracket.hi) << '\n';
    std::cout << "critical mass bracket: [" << format_double(bracket.lo) << ", "
              << format_double(bracket.hi) << "]\n";
  } else {
    throw usage_error("snewton: unknown command " + cfg.command);
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    const RunConfig cfg = parse_config(args);
    run_command(cfg);
    return 0;
  } catch (const help_requested& h) {
    std::cout << h.what();
    return 0;
  } catch (const usage_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "snewton: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace snewton
