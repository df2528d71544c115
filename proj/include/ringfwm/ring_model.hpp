#pragma once

// Bus-coupled micro-ring: resonance comb, free spectral range, Lorentzian
// transmission dips and the field-enhancement factor Q·v_g/(ω_p·π·R).
//
// Conventions:
//   * group velocity v_g = c/n_eff, one index for signal, pump and idler;
//   * Q is the loaded quality factor as measured in transmission;
//   * the transmission of a comb uses only the nearest resonance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringfwm/units.hpp"

namespace ringfwm {

class RingParams {
 public:
  struct Fields {
    std::string ring_id;
    units::Length radius;
    double quality_factor = 0.0;
    double effective_index = 0.0;
    units::Length pump_wavelength;
    std::optional<units::NonlinearParameter> gamma;
    double min_transmission = 0.0;
  };

  /// Validates R > 0, Q > 1, n_eff ≥ 1, λ_p > 0, γ ≥ 0, T_min ∈ [0, 1].
  explicit RingParams(Fields fields);

  [[nodiscard]] const std::string& ring_id() const noexcept { return f_.ring_id; }
  [[nodiscard]] units::Length radius() const noexcept { return f_.radius; }
  [[nodiscard]] double quality_factor() const noexcept { return f_.quality_factor; }
  [[nodiscard]] double effective_index() const noexcept { return f_.effective_index; }
  [[nodiscard]] units::Length pump_wavelength() const noexcept { return f_.pump_wavelength; }
  [[nodiscard]] const std::optional<units::NonlinearParameter>& gamma() const noexcept { return f_.gamma; }
  [[nodiscard]] double min_transmission() const noexcept { return f_.min_transmission; }
  [[nodiscard]] const Fields& fields() const noexcept { return f_; }

  /// c/n_eff.
  [[nodiscard]] units::Velocity group_velocity() const;
  [[nodiscard]] units::AngularFrequency pump_angular_frequency() const;

  /// γ, or ConfigError when it has not been set or fitted yet.
  [[nodiscard]] units::NonlinearParameter require_gamma() const;

  [[nodiscard]] RingParams with_gamma(units::NonlinearParameter gamma) const;
  [[nodiscard]] RingParams with_radius(units::Length radius) const;
  [[nodiscard]] RingParams with_quality_factor(double q) const;

  friend bool operator==(const RingParams&, const RingParams&) = default;

 private:
  Fields f_;
};

/// Signal, pump and idler resonances with ω_s + ω_i = 2ω_p. Frequencies are
/// the stored representation; wavelengths are derived.
class ResonanceTriplet {
 public:
  /// Checks ω_s < ω_p < ω_i (λ_s > λ_p > λ_i) and ω_s + ω_i = 2ω_p to 1e-9 relative.
  static ResonanceTriplet from_frequencies(units::AngularFrequency signal, units::AngularFrequency pump,
                                           units::AngularFrequency idler, int neighbor_order);
  static ResonanceTriplet from_wavelengths(units::Length signal, units::Length pump, units::Length idler,
                                           int neighbor_order);

  [[nodiscard]] units::Length signal() const;
  [[nodiscard]] units::Length pump() const;
  [[nodiscard]] units::Length idler() const;
  [[nodiscard]] int neighbor_order() const noexcept { return order_; }

  [[nodiscard]] units::AngularFrequency signal_frequency() const noexcept { return signal_; }
  [[nodiscard]] units::AngularFrequency pump_frequency() const noexcept { return pump_; }
  [[nodiscard]] units::AngularFrequency idler_frequency() const noexcept { return idler_; }

 private:
  ResonanceTriplet(units::AngularFrequency s, units::AngularFrequency p, units::AngularFrequency i, int order)
      : signal_(s), pump_(p), idler_(i), order_(order) {}

  units::AngularFrequency signal_;
  units::AngularFrequency pump_;
  units::AngularFrequency idler_;
  int order_;
};

/// Angular FSR: one round trip 2πR at v_g, i.e. v_g/R in rad/s.
units::AngularFrequency free_spectral_range(const RingParams& ring);

/// FSR expressed as a wavelength spacing near λ_p: λ_p²·FSR/(2πc).
units::Length free_spectral_range_wavelength(const RingParams& ring);

/// Wavelength of the comb line k (k = 0 is the pump, k > 0 toward higher
/// frequency, i.e. shorter wavelength).
units::Length comb_line(const RingParams& ring, std::int64_t k);

/// Comb lines inside [lo, hi], ascending in wavelength. Empty if lo > hi;
/// DomainError if a non-empty span excludes λ_p.
std::vector<units::Length> resonance_comb(const RingParams& ring, units::Length lo, units::Length hi);

struct CombLine {
  std::int64_t index;
  units::Length wavelength;
};

/// Nearest comb line to λ; an exact tie goes to the shorter wavelength.
CombLine nearest_resonance(const RingParams& ring, units::Length wavelength);

/// Symmetric triplet at ±m FSR around the pump. DomainError for m < 1.
ResonanceTriplet select_triplet(const RingParams& ring, int neighbor_order);

/// Single-dip Lorentzian transmission of the nearest resonance λ_0:
/// T = 1 − (1 − T_min)/(1 + (2Q(λ − λ_0)/λ_0)²).
double transmission(const RingParams& ring, units::Length wavelength);

/// The same line shape around an explicit centre; shared with the Q fitter.
double lorentzian_dip(double wavelength, double center, double quality_factor, double min_transmission);

/// Q·v_g/(ω_p·π·R).
units::Dimensionless enhancement_factor(const RingParams& ring);

}  // namespace ringfwm
