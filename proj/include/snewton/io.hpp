#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "snewton/diagnostics.hpp"
#include "snewton/poisson.hpp"
#include "snewton/state.hpp"

namespace snewton {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double x);

// CSV: t,norm,energy_expectation,sn_energy,r_peak,peak_value,v_peak,v_escape,m_enclosed
void write_timeseries(std::span<const DiagnosticsRecord> records,
                      const std::filesystem::path& path);

// CSV: r,re_u,im_u,prob_density,phi  with prob_density = |u|^2 = r^2|psi|^2.
void write_snapshot(const WaveState& state, const PotentialField& field,
                    const std::filesystem::path& path);

}  // namespace snewton
