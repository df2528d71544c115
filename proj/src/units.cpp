#include "ringfwm/units.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <span>

namespace ringfwm::units {

AngularFrequency wavelength_to_angular_frequency(Length wavelength) {
  if (!(wavelength.si() > 0.0)) {
    throw DomainError("wavelength must be positive");
  }
  return 2.0 * constants::pi * constants::speed_of_light() / wavelength;
}

Length angular_frequency_to_wavelength(AngularFrequency omega) {
  if (!(omega.si() > 0.0)) {
    throw DomainError("angular frequency must be positive");
  }
  return 2.0 * constants::pi * constants::speed_of_light() / omega;
}

Energy photon_energy(AngularFrequency omega) {
  if (!(omega.si() > 0.0)) {
    throw DomainError("angular frequency must be positive");
  }
  return constants::reduced_planck() * omega;
}

namespace {

struct Prefix {
  double scale;
  const char* symbol;
};

std::string format_scaled(double si, const char* unit, std::span<const Prefix> prefixes, int digits) {
  const Prefix* chosen = &prefixes.back();
  const double mag = std::fabs(si);
  for (const auto& p : prefixes) {
    if (mag >= p.scale) {
      chosen = &p;
      break;
    }
  }
  if (si == 0.0) chosen = nullptr;
  std::array<char, 64> buf{};
  if (chosen == nullptr) {
    std::snprintf(buf.data(), buf.size(), "0 %s", unit);
  } else {
    std::snprintf(buf.data(), buf.size(), "%.*g %s%s", digits, si / chosen->scale, chosen->symbol, unit);
  }
  return buf.data();
}

constexpr std::array<Prefix, 7> kSiPrefixes{{
    {1.0, ""},
    {1e-3, "m"},
    {1e-6, "µ"},
    {1e-9, "n"},
    {1e-12, "p"},
    {1e-15, "f"},
    {1e-18, "a"},
}};

}  // namespace

std::string format_power(Power p, int significant_digits) {
  return format_scaled(p.si(), "W", kSiPrefixes, significant_digits);
}

std::string format_length(Length l, int significant_digits) {
  return format_scaled(l.si(), "m", kSiPrefixes, significant_digits);
}

std::string format_wavelength_nm(Length l, int significant_digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*g nm", significant_digits, to_nanometers(l));
  return buf.data();
}

std::string format_energy_ev(Energy e, int significant_digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*g eV", significant_digits, to_electron_volts(e));
  return buf.data();
}

std::string format_rate(Rate r, int significant_digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*g s^-1", significant_digits, r.si());
  return buf.data();
}

}  // namespace ringfwm::units
