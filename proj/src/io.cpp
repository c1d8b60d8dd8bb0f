#include "snewton/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "snewton/errors.hpp"

namespace snewton {

std::string format_double(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

void write_timeseries(std::span<const DiagnosticsRecord> records,
                      const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "t,norm,energy_expectation,sn_energy,r_peak,peak_value,v_peak,v_escape,m_enclosed\n";
  for (const auto& rec : records) {
    out << format_double(rec.t) << ',' << format_double(rec.norm) << ','
        << format_double(rec.energy_expectation) << ',' << format_double(rec.sn_energy) << ','
        << format_double(rec.r_peak) << ',' << format_double(rec.peak_value) << ','
        << format_double(rec.v_peak) << ',' << format_double(rec.v_escape) << ','
        << format_double(rec.m_enclosed) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_snapshot(const WaveState& state, const PotentialField& field,
                    const std::filesystem::path& path) {
  if (field.grid != state.grid) throw grid_error("write_snapshot: potential grid mismatch");
  auto out = open_for_write(path);
  out << "r,re_u,im_u,prob_density,phi\n";
  for (std::size_t j = 0; j < state.grid.n_points; ++j) {
    const cdouble u = state.u[j];
    out << format_double(state.grid.r(j)) << ',' << format_double(u.real()) << ','
        << format_double(u.imag()) << ',' << format_double(std::norm(u)) << ','
        << format_double(field.phi[j]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace snewton
