#pragma once

// Dimensioned scalars with compile-time dimension checking.
//
// A Quantity carries an SI magnitude and a dimension expressed as integer
// exponents of (mass, length, time). Adding unlike dimensions does not
// compile; multiplying and dividing produce the combined dimension. Every
// Quantity holds a finite magnitude: constructing one from NaN or inf throws.

#include <cmath>
#include <string>
#include <type_traits>

#include "ringfwm/errors.hpp"

namespace ringfwm::units {

template <int Mass, int Length, int Time>
struct Dimension {
  static constexpr int mass = Mass;
  static constexpr int length = Length;
  static constexpr int time = Time;
};

template <class A, class B>
using DimProduct = Dimension<A::mass + B::mass, A::length + B::length, A::time + B::time>;

template <class A, class B>
using DimQuotient = Dimension<A::mass - B::mass, A::length - B::length, A::time - B::time>;

template <class A, int N>
using DimPower = Dimension<A::mass * N, A::length * N, A::time * N>;

using ringfwm::DomainError;

template <class Dim>
class Quantity {
 public:
  using dimension = Dim;

  constexpr Quantity() = default;

  explicit Quantity(double si_magnitude) : magnitude_(si_magnitude) {
    if (!std::isfinite(magnitude_)) {
      throw DomainError("quantity magnitude must be finite");
    }
  }

  /// Magnitude in canonical SI units.
  [[nodiscard]] constexpr double si() const noexcept { return magnitude_; }

  Quantity& operator+=(Quantity rhs) { return *this = *this + rhs; }
  Quantity& operator-=(Quantity rhs) { return *this = *this - rhs; }
  Quantity& operator*=(double k) { return *this = *this * k; }
  Quantity& operator/=(double k) { return *this = *this / k; }

  friend Quantity operator+(Quantity a, Quantity b) { return Quantity(a.magnitude_ + b.magnitude_); }
  friend Quantity operator-(Quantity a, Quantity b) { return Quantity(a.magnitude_ - b.magnitude_); }
  friend Quantity operator-(Quantity a) { return Quantity(-a.magnitude_); }
  friend Quantity operator*(Quantity a, double k) { return Quantity(a.magnitude_ * k); }
  friend Quantity operator*(double k, Quantity a) { return Quantity(k * a.magnitude_); }
  friend Quantity operator/(Quantity a, double k) { return Quantity(a.magnitude_ / k); }

  friend constexpr auto operator<=>(Quantity a, Quantity b) = default;

 private:
  double magnitude_ = 0.0;
};

using Dimensionless = Quantity<Dimension<0, 0, 0>>;
using Power = Quantity<Dimension<1, 2, -3>>;
using Length = Quantity<Dimension<0, 1, 0>>;
using Energy = Quantity<Dimension<1, 2, -2>>;
using Velocity = Quantity<Dimension<0, 1, -1>>;
using Time = Quantity<Dimension<0, 0, 1>>;
// rad/s and 1/s coincide in SI; the alias names the intent.
using AngularFrequency = Quantity<Dimension<0, 0, -1>>;
using Rate = Quantity<Dimension<0, 0, -1>>;
using NonlinearParameter = Quantity<Dimension<-1, -3, 3>>;  // 1/(W m)
using Action = Quantity<Dimension<1, 2, -1>>;               // J s

template <class A, class B>
Quantity<DimProduct<A, B>> operator*(Quantity<A> a, Quantity<B> b) {
  return Quantity<DimProduct<A, B>>(a.si() * b.si());
}

template <class A, class B>
Quantity<DimQuotient<A, B>> operator/(Quantity<A> a, Quantity<B> b) {
  return Quantity<DimQuotient<A, B>>(a.si() / b.si());
}

template <class A>
Quantity<DimQuotient<Dimension<0, 0, 0>, A>> operator/(double k, Quantity<A> a) {
  return Quantity<DimQuotient<Dimension<0, 0, 0>, A>>(k / a.si());
}

template <int N, class A>
Quantity<DimPower<A, N>> pow(Quantity<A> a) {
  double r = 1.0;
  for (int i = 0; i < (N < 0 ? -N : N); ++i) r *= a.si();
  return Quantity<DimPower<A, N>>(N < 0 ? 1.0 / r : r);
}

template <class A>
  requires(A::mass % 2 == 0 && A::length % 2 == 0 && A::time % 2 == 0)
Quantity<Dimension<A::mass / 2, A::length / 2, A::time / 2>> sqrt(Quantity<A> a) {
  if (a.si() < 0.0) throw DomainError("square root of a negative quantity");
  return Quantity<Dimension<A::mass / 2, A::length / 2, A::time / 2>>(std::sqrt(a.si()));
}

template <class A>
Quantity<A> abs(Quantity<A> a) {
  return Quantity<A>(std::fabs(a.si()));
}

/// Plain value of a dimensionless quantity.
inline double value(Dimensionless d) { return d.si(); }

template <class Q, class Expected>
inline constexpr bool has_dimension_v = std::is_same_v<typename Q::dimension, typename Expected::dimension>;

// ---------------------------------------------------------------------------
// Constants (CODATA 2018; c, h and e are exact by SI definition).

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double c_si = 299792458.0;
inline constexpr double hbar_si = 1.054571817e-34;
inline constexpr double electron_volt_si = 1.602176634e-19;

inline Velocity speed_of_light() { return Velocity(c_si); }
inline Action reduced_planck() { return Action(hbar_si); }
}  // namespace constants

// ---------------------------------------------------------------------------
// Construction from and conversion to reporting units.

inline Length meters(double v) { return Length(v); }
inline Length micrometers(double v) { return Length(v * 1e-6); }
inline Length nanometers(double v) { return Length(v * 1e-9); }
inline Power watts(double v) { return Power(v); }
inline Power milliwatts(double v) { return Power(v * 1e-3); }
inline Power microwatts(double v) { return Power(v * 1e-6); }
inline Power picowatts(double v) { return Power(v * 1e-12); }
inline Energy joules(double v) { return Energy(v); }
inline Energy electron_volts(double v) { return Energy(v * constants::electron_volt_si); }
inline NonlinearParameter per_watt_meter(double v) { return NonlinearParameter(v); }
inline AngularFrequency radians_per_second(double v) { return AngularFrequency(v); }

inline double to_nanometers(Length l) { return l.si() * 1e9; }
inline double to_micrometers(Length l) { return l.si() * 1e6; }
inline double to_milliwatts(Power p) { return p.si() * 1e3; }
inline double to_microwatts(Power p) { return p.si() * 1e6; }
inline double to_picowatts(Power p) { return p.si() * 1e12; }
inline double to_electron_volts(Energy e) { return e.si() / constants::electron_volt_si; }

/// ω = 2πc/λ. Throws DomainError for λ ≤ 0.
AngularFrequency wavelength_to_angular_frequency(Length wavelength);

/// λ = 2πc/ω. Throws DomainError for ω ≤ 0.
Length angular_frequency_to_wavelength(AngularFrequency omega);

/// E = ħω. Throws DomainError for ω ≤ 0.
Energy photon_energy(AngularFrequency omega);

// Human-readable formatting with an auto-selected prefix, e.g. "1.13 pW".
std::string format_power(Power p, int significant_digits = 4);
std::string format_length(Length l, int significant_digits = 6);
std::string format_wavelength_nm(Length l, int significant_digits = 8);
std::string format_energy_ev(Energy e, int significant_digits = 4);
std::string format_rate(Rate r, int significant_digits = 4);

}  // namespace ringfwm::units
