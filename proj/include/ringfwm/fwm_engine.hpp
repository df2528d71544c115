#pragma once

// Stimulated and spontaneous four-wave mixing in a critically coupled ring.
//
// With F = Q·v_g/(ω_p·π·R) and ω_s ≃ ω_p ≃ ω_i:
//
//   P_i,ST = (γ·2πR)²·F⁴·P_s·P_p²                      stimulated idler
//   P_i,SP = (γ·2πR)²·F³·(ħω_p·v_g/(4πR))·P_p²         spontaneous idler
//   P_i,SP / P_i,ST = ħω_p²/(4·Q·P_s)                   independent of R, γ
//
// All powers are on-chip powers integrated over the idler resonance.

#include <optional>
#include <string>
#include <vector>

#include "ringfwm/ring_model.hpp"
#include "ringfwm/units.hpp"

namespace ringfwm {

/// Pump power above which the thermo-optic redshift saturates generation.
inline units::Power validity_pump_limit() { return units::milliwatts(2.0); }

/// Extinction above which the ring is treated as off critical coupling.
inline constexpr double kCriticalCouplingMaxTransmission = 0.05;

units::Power stimulated_idler_power(const RingParams& ring, units::Power pump, units::Power signal);

units::Power spontaneous_idler_power(const RingParams& ring, units::Power pump);

/// Idler photons per second; equal to the pair rate.
units::Rate pair_generation_rate(const RingParams& ring, units::Power pump);

/// ħω_p²/(4·Q·P_s).
units::Dimensionless spontaneous_to_stimulated_ratio(double quality_factor, units::AngularFrequency pump_frequency,
                                                    units::Power signal);

/// ħω_p², the power scale of the spontaneous/stimulated ratio.
units::Power characteristic_power(units::AngularFrequency pump_frequency);

struct SpontaneousEstimate {
  units::Power power;
  units::Rate pair_rate;
};

/// Spontaneous idler power and pair rate from a stimulated idler measurement
/// taken at the same pump power. Needs neither γ nor R nor v_g.
SpontaneousEstimate predict_spontaneous_from_measurement(units::Power measured_stimulated_idler, double quality_factor,
                                                         units::AngularFrequency pump_frequency, units::Power signal);

struct FwmPrediction {
  std::optional<units::Power> stimulated_idler_power;
  units::Power spontaneous_idler_power;
  units::Rate pair_rate;
  std::optional<units::Dimensionless> ratio;

  // Inputs echo. `ring` is absent on the measurement path.
  std::optional<RingParams> ring;
  double quality_factor = 0.0;
  units::Length pump_wavelength;
  std::optional<units::Power> pump_power;
  std::optional<units::Power> signal_power;
  std::optional<units::Power> measured_stimulated_idler_power;

  std::vector<std::string> warnings;
};

/// Model path: everything from the ring description. `signal` enables the
/// stimulated power and the ratio.
FwmPrediction predict(const RingParams& ring, units::Power pump, std::optional<units::Power> signal = std::nullopt);

/// Measurement path: spontaneous output inferred from a stimulated measurement.
FwmPrediction predict_from_measurement(units::Power measured_stimulated_idler, double quality_factor,
                                       units::Length pump_wavelength, units::Power signal);

}  // namespace ringfwm
