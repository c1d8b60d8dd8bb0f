#pragma once

namespace snewton {

// CODATA 2018.
inline constexpr double kGravitationalConstantSi = 6.67430e-11;  // m^3 kg^-1 s^-2
inline constexpr double kHBarSi = 1.054571817e-34;               // J s

// Code units G = hbar = 1 with one length unit equal to sigma_si meters.
// The derived time unit is (sigma^5/(G hbar))^{1/3} and the mass unit
// (hbar^2/(G sigma))^{1/3}; everything inside the library works in these
// units and conversion happens only at the I/O boundary.
class CodeUnits {
 public:
  explicit CodeUnits(double sigma_si);

  double sigma_si() const { return sigma_si_; }
  double time_unit_si() const { return time_unit_si_; }
  double mass_unit_si() const { return mass_unit_si_; }
  double energy_unit_si() const { return energy_unit_si_; }

  double length_to_si(double code) const { return code * sigma_si_; }
  double length_from_si(double si) const { return si / sigma_si_; }
  double time_to_si(double code) const { return code * time_unit_si_; }
  double time_from_si(double si) const { return si / time_unit_si_; }
  double mass_to_si(double code) const { return code * mass_unit_si_; }
  double mass_from_si(double si) const { return si / mass_unit_si_; }
  double energy_to_si(double code) const { return code * energy_unit_si_; }
  double energy_from_si(double si) const { return si / energy_unit_si_; }

 private:
  double sigma_si_;
  double time_unit_si_;
  double mass_unit_si_;
  double energy_unit_si_;
};

}  // namespace snewton
