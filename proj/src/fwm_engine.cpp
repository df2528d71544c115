#include "ringfwm/fwm_engine.hpp"

#include <cstdio>
#include <type_traits>

namespace ringfwm {

using namespace units;

namespace {

void require_nonnegative(Power p, const char* name) {
  if (p.si() < 0.0) throw DomainError(std::string(name) + " must be nonnegative");
}

// γ·2πR, the single-pass nonlinear phase per watt.
auto nonlinear_coupling(const RingParams& ring) {
  return ring.require_gamma() * (2.0 * constants::pi * ring.radius());
}

// Dimension checks of the three formulas, evaluated by the type system.
using Coupling = decltype(std::declval<NonlinearParameter>() * std::declval<Length>());
using StimulatedExpr = decltype(pow<2>(std::declval<Coupling>()) * pow<4>(std::declval<Dimensionless>()) *
                                std::declval<Power>() * pow<2>(std::declval<Power>()));
using QuantumPower = decltype(std::declval<Action>() * std::declval<AngularFrequency>() *
                              std::declval<Velocity>() / std::declval<Length>());
using SpontaneousExpr = decltype(pow<2>(std::declval<Coupling>()) * pow<3>(std::declval<Dimensionless>()) *
                                 std::declval<QuantumPower>() * pow<2>(std::declval<Power>()));
using RatioExpr = decltype(std::declval<Action>() * pow<2>(std::declval<AngularFrequency>()) /
                           std::declval<Power>());
static_assert(std::is_same_v<StimulatedExpr, Power>);
static_assert(std::is_same_v<QuantumPower, Power>);
static_assert(std::is_same_v<SpontaneousExpr, Power>);
static_assert(std::is_same_v<RatioExpr, Dimensionless>);

}  // namespace

Power stimulated_idler_power(const RingParams& ring, Power pump, Power signal) {
  require_nonnegative(pump, "pump power");
  require_nonnegative(signal, "signal power");
  const Dimensionless f = enhancement_factor(ring);
  return pow<2>(nonlinear_coupling(ring)) * pow<4>(f) * signal * pow<2>(pump);
}

Power spontaneous_idler_power(const RingParams& ring, Power pump) {
  require_nonnegative(pump, "pump power");
  const Dimensionless f = enhancement_factor(ring);
  const Power quantum = constants::reduced_planck() * ring.pump_angular_frequency() * ring.group_velocity() /
                        (4.0 * constants::pi * ring.radius());
  return pow<2>(nonlinear_coupling(ring)) * pow<3>(f) * quantum * pow<2>(pump);
}

Rate pair_generation_rate(const RingParams& ring, Power pump) {
  return spontaneous_idler_power(ring, pump) / photon_energy(ring.pump_angular_frequency());
}

Dimensionless spontaneous_to_stimulated_ratio(double quality_factor, AngularFrequency pump_frequency, Power signal) {
  if (!(quality_factor > 0.0) || !std::isfinite(quality_factor)) {
    throw DomainError("quality factor must be positive");
  }
  if (!(pump_frequency.si() > 0.0)) throw DomainError("pump frequency must be positive");
  if (!(signal.si() > 0.0)) throw DomainError("signal power must be positive for the ratio to be defined");
  return characteristic_power(pump_frequency) / (4.0 * quality_factor * signal);
}

Power characteristic_power(AngularFrequency pump_frequency) {
  if (!(pump_frequency.si() > 0.0)) throw DomainError("pump frequency must be positive");
  return constants::reduced_planck() * pow<2>(pump_frequency);
}

SpontaneousEstimate predict_spontaneous_from_measurement(Power measured_stimulated_idler, double quality_factor,
                                                         AngularFrequency pump_frequency, Power signal) {
  require_nonnegative(measured_stimulated_idler, "measured stimulated idler power");
  const Dimensionless ratio = spontaneous_to_stimulated_ratio(quality_factor, pump_frequency, signal);
  const Power spontaneous = measured_stimulated_idler * value(ratio);
  return {spontaneous, spontaneous / photon_energy(pump_frequency)};
}

namespace {

void add_validity_warnings(FwmPrediction& out, double min_transmission, std::optional<Power> pump) {
  if (min_transmission > kCriticalCouplingMaxTransmission) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "min_transmission %.3g exceeds %.2g: ring is away from critical coupling, predictions assume it",
                  min_transmission, kCriticalCouplingMaxTransmission);
    out.warnings.emplace_back(buf);
  }
  if (pump && *pump > validity_pump_limit()) {
    out.warnings.emplace_back("pump power above 2 mW: thermo-optic saturation is not modeled");
  }
}

}  // namespace

FwmPrediction predict(const RingParams& ring, Power pump, std::optional<Power> signal) {
  FwmPrediction out;
  out.spontaneous_idler_power = spontaneous_idler_power(ring, pump);
  out.pair_rate = out.spontaneous_idler_power / photon_energy(ring.pump_angular_frequency());
  if (signal) {
    out.stimulated_idler_power = stimulated_idler_power(ring, pump, *signal);
    if (signal->si() > 0.0) {
      out.ratio = spontaneous_to_stimulated_ratio(ring.quality_factor(), ring.pump_angular_frequency(), *signal);
    }
  }
  out.ring = ring;
  out.quality_factor = ring.quality_factor();
  out.pump_wavelength = ring.pump_wavelength();
  out.pump_power = pump;
  out.signal_power = signal;
  add_validity_warnings(out, ring.min_transmission(), pump);
  return out;
}

FwmPrediction predict_from_measurement(Power measured_stimulated_idler, double quality_factor, Length pump_wavelength,
                                       Power signal) {
  const AngularFrequency wp = wavelength_to_angular_frequency(pump_wavelength);
  const SpontaneousEstimate est =
      predict_spontaneous_from_measurement(measured_stimulated_idler, quality_factor, wp, signal);
  FwmPrediction out;
  out.stimulated_idler_power = measured_stimulated_idler;
  out.spontaneous_idler_power = est.power;
  out.pair_rate = est.pair_rate;
  out.ratio = spontaneous_to_stimulated_ratio(quality_factor, wp, signal);
  out.quality_factor = quality_factor;
  out.pump_wavelength = pump_wavelength;
  out.signal_power = signal;
  out.measured_stimulated_idler_power = measured_stimulated_idler;
  return out;
}

}  // namespace ringfwm
