#include "ringfwm/ring_model.hpp"

#include <cmath>
#include <string>

namespace ringfwm {

using namespace units;

RingParams::RingParams(Fields fields) : f_(std::move(fields)) {
  if (!(f_.radius.si() > 0.0)) throw DomainError("ring radius must be positive");
  if (!(f_.quality_factor > 1.0) || !std::isfinite(f_.quality_factor)) {
    throw DomainError("quality factor must be finite and greater than 1");
  }
  if (!(f_.effective_index >= 1.0) || !std::isfinite(f_.effective_index)) {
    throw DomainError("effective index must be finite and at least 1");
  }
  if (!(f_.pump_wavelength.si() > 0.0)) throw DomainError("pump wavelength must be positive");
  if (f_.gamma && f_.gamma->si() < 0.0) throw DomainError("nonlinear parameter must be nonnegative");
  if (!(f_.min_transmission >= 0.0 && f_.min_transmission <= 1.0)) {
    throw DomainError("min_transmission must lie in [0, 1]");
  }
}

Velocity RingParams::group_velocity() const { return constants::speed_of_light() / f_.effective_index; }

AngularFrequency RingParams::pump_angular_frequency() const {
  return wavelength_to_angular_frequency(f_.pump_wavelength);
}

NonlinearParameter RingParams::require_gamma() const {
  if (!f_.gamma) {
    throw ConfigError("ring '" + f_.ring_id + "' has no nonlinear parameter gamma; set it or fit it first");
  }
  return *f_.gamma;
}

RingParams RingParams::with_gamma(NonlinearParameter gamma) const {
  Fields f = f_;
  f.gamma = gamma;
  return RingParams(std::move(f));
}

RingParams RingParams::with_radius(Length radius) const {
  Fields f = f_;
  f.radius = radius;
  return RingParams(std::move(f));
}

RingParams RingParams::with_quality_factor(double q) const {
  Fields f = f_;
  f.quality_factor = q;
  return RingParams(std::move(f));
}

ResonanceTriplet ResonanceTriplet::from_frequencies(AngularFrequency signal, AngularFrequency pump,
                                                    AngularFrequency idler, int neighbor_order) {
  if (neighbor_order < 1) throw DomainError("neighbor order must be at least 1");
  if (!(signal.si() > 0.0 && signal < pump && pump < idler)) {
    throw DomainError("triplet must satisfy lambda_s > lambda_p > lambda_i");
  }
  const double mismatch = std::fabs(signal.si() + idler.si() - 2.0 * pump.si());
  if (mismatch > 1e-9 * 2.0 * pump.si()) {
    throw DomainError("triplet violates energy conservation omega_s + omega_i = 2 omega_p");
  }
  return {signal, pump, idler, neighbor_order};
}

ResonanceTriplet ResonanceTriplet::from_wavelengths(Length signal, Length pump, Length idler, int neighbor_order) {
  return from_frequencies(wavelength_to_angular_frequency(signal), wavelength_to_angular_frequency(pump),
                          wavelength_to_angular_frequency(idler), neighbor_order);
}

Length ResonanceTriplet::signal() const { return angular_frequency_to_wavelength(signal_); }
Length ResonanceTriplet::pump() const { return angular_frequency_to_wavelength(pump_); }
Length ResonanceTriplet::idler() const { return angular_frequency_to_wavelength(idler_); }

AngularFrequency free_spectral_range(const RingParams& ring) {
  // 2π rad per round trip of length 2πR.
  return 2.0 * constants::pi * ring.group_velocity() / (2.0 * constants::pi * ring.radius());
}

Length free_spectral_range_wavelength(const RingParams& ring) {
  const Length lp = ring.pump_wavelength();
  return lp * lp * free_spectral_range(ring) / (2.0 * constants::pi * constants::speed_of_light());
}

namespace {

AngularFrequency line_frequency(const RingParams& ring, std::int64_t k) {
  return ring.pump_angular_frequency() + static_cast<double>(k) * free_spectral_range(ring);
}

}  // namespace

Length comb_line(const RingParams& ring, std::int64_t k) {
  if (k == 0) return ring.pump_wavelength();
  const AngularFrequency w = line_frequency(ring, k);
  if (!(w.si() > 0.0)) throw DomainError("comb line index below zero frequency");
  return angular_frequency_to_wavelength(w);
}

std::vector<Length> resonance_comb(const RingParams& ring, Length lo, Length hi) {
  std::vector<Length> lines;
  if (lo > hi) return lines;
  if (!(lo.si() > 0.0)) throw DomainError("wavelength span must be positive");
  if (ring.pump_wavelength() < lo || ring.pump_wavelength() > hi) {
    throw DomainError("wavelength span must contain the pump resonance");
  }
  const AngularFrequency wp = ring.pump_angular_frequency();
  const double fsr = free_spectral_range(ring).si();
  // Short wavelength bound sets the highest index, long bound the lowest.
  const auto k_max = static_cast<std::int64_t>(std::floor((wavelength_to_angular_frequency(lo) - wp).si() / fsr)) + 1;
  const auto k_min = static_cast<std::int64_t>(std::ceil((wavelength_to_angular_frequency(hi) - wp).si() / fsr)) - 1;
  for (std::int64_t k = k_max; k >= k_min; --k) {
    if (!(line_frequency(ring, k).si() > 0.0)) continue;
    const Length l = comb_line(ring, k);
    if (l >= lo && l <= hi) lines.push_back(l);
  }
  return lines;
}

CombLine nearest_resonance(const RingParams& ring, Length wavelength) {
  const AngularFrequency w = wavelength_to_angular_frequency(wavelength);
  const double x = (w - ring.pump_angular_frequency()).si() / free_spectral_range(ring).si();
  const auto k_long = static_cast<std::int64_t>(std::floor(x));
  const std::int64_t k_short = k_long + 1;
  if (!(line_frequency(ring, k_long).si() > 0.0)) return {k_short, comb_line(ring, k_short)};
  const Length l_long = comb_line(ring, k_long);
  const Length l_short = comb_line(ring, k_short);
  const double d_long = std::fabs((wavelength - l_long).si());
  const double d_short = std::fabs((wavelength - l_short).si());
  if (d_long < d_short) return {k_long, l_long};
  return {k_short, l_short};
}

ResonanceTriplet select_triplet(const RingParams& ring, int neighbor_order) {
  if (neighbor_order < 1) {
    throw DomainError("neighbor order must be at least 1 (degenerate FWM is not modeled)");
  }
  const AngularFrequency wp = ring.pump_angular_frequency();
  const AngularFrequency step = static_cast<double>(neighbor_order) * free_spectral_range(ring);
  if (!(wp > step)) throw DomainError("signal resonance would fall below zero frequency");
  return ResonanceTriplet::from_frequencies(wp - step, wp, wp + step, neighbor_order);
}

double lorentzian_dip(double wavelength, double center, double quality_factor, double min_transmission) {
  const double x = 2.0 * quality_factor * (wavelength - center) / center;
  return 1.0 - (1.0 - min_transmission) / (1.0 + x * x);
}

double transmission(const RingParams& ring, Length wavelength) {
  if (!(wavelength.si() > 0.0)) throw DomainError("wavelength must be positive");
  const CombLine line = nearest_resonance(ring, wavelength);
  return lorentzian_dip(wavelength.si(), line.wavelength.si(), ring.quality_factor(), ring.min_transmission());
}

Dimensionless enhancement_factor(const RingParams& ring) {
  return ring.quality_factor() * ring.group_velocity() /
         (ring.pump_angular_frequency() * constants::pi * ring.radius());
}

}  // namespace ringfwm
