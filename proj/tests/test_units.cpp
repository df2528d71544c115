#include <limits>
#include <random>
#include <type_traits>

#include "doctest.h"
#include "oracle_values.hpp"
#include "ringfwm/units.hpp"
#include "test_support.hpp"

using namespace ringfwm;
using namespace ringfwm::units;
using ringfwm::test::rel_diff;

template <class A, class B>
concept Addable = requires(A a, B b) { a + b; };

TEST_CASE("adding unlike dimensions does not compile") {
  static_assert(Addable<Power, Power>);
  static_assert(!Addable<Power, Length>);
  static_assert(!Addable<AngularFrequency, Energy>);
  static_assert(!Addable<NonlinearParameter, Dimensionless>);
}

TEST_CASE("stimulated-power expression reduces to watts") {
  // (1/(W m) * m)^2 * (1)^4 * W * W^2
  using Expr = decltype(pow<2>(NonlinearParameter(1.0) * Length(1.0)) * pow<4>(Dimensionless(1.0)) * Power(1.0) *
                        pow<2>(Power(1.0)));
  static_assert(std::is_same_v<Expr, Power>);
  // ħω carries energy, P/(ħω) a rate.
  static_assert(std::is_same_v<decltype(Action(1.0) * AngularFrequency(1.0)), Energy>);
  static_assert(std::is_same_v<decltype(Power(1.0) / Energy(1.0)), Rate>);
}

TEST_CASE("non-finite magnitudes are rejected") {
  CHECK_THROWS_AS(Power(std::nan("")), DomainError);
  CHECK_THROWS_AS(Length{std::numeric_limits<double>::infinity()}, DomainError);
  CHECK_THROWS_AS(Power(1e308) * 10.0, DomainError);
  CHECK_NOTHROW(Power(0.0));
}

TEST_CASE("wavelength to angular frequency") {
  const AngularFrequency w = wavelength_to_angular_frequency(nanometers(1558.5));
  CHECK(rel_diff(w.si(), oracle::omega_1558_5nm) < 1e-14);

  const double two_pi_c = 2.0 * constants::pi * constants::c_si;
  CHECK(rel_diff(wavelength_to_angular_frequency(meters(two_pi_c)).si(), 1.0) < 1e-15);

  CHECK_THROWS_AS(wavelength_to_angular_frequency(meters(0.0)), DomainError);
  CHECK_THROWS_AS(wavelength_to_angular_frequency(meters(-1e-6)), DomainError);
  CHECK_THROWS_AS(angular_frequency_to_wavelength(radians_per_second(0.0)), DomainError);
}

TEST_CASE("wavelength round trip property") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const Length l = meters(test::log_uniform(rng, 1e-9, 1.0));
    const Length back = angular_frequency_to_wavelength(wavelength_to_angular_frequency(l));
    REQUIRE(rel_diff(back.si(), l.si()) < 1e-12);
  }
}

TEST_CASE("photon energy") {
  const Energy e = photon_energy(wavelength_to_angular_frequency(nanometers(1558.5)));
  CHECK(rel_diff(to_electron_volts(e), oracle::photon_energy_1558_5nm_eV) < 1e-14);
  CHECK(std::fabs(to_electron_volts(e) - 0.7956) < 1e-4);

  CHECK_THROWS_AS(photon_energy(radians_per_second(0.0)), DomainError);
  const AngularFrequency w = radians_per_second(1.3e15);
  CHECK(rel_diff(photon_energy(2.0 * w).si(), 2.0 * photon_energy(w).si()) < 1e-15);
}

TEST_CASE("eV and joule round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double ev = test::log_uniform(rng, 1e-6, 1e6);
    REQUIRE(rel_diff(to_electron_volts(electron_volts(ev)), ev) < 1e-12);
  }
}

TEST_CASE("sqrt requires an even dimension and a nonnegative value") {
  const Power p = sqrt(pow<2>(milliwatts(3.0)));
  CHECK(rel_diff(p.si(), 3e-3) < 1e-15);
  CHECK_THROWS_AS(sqrt(Dimensionless(-1.0)), DomainError);
}

TEST_CASE("display formatting") {
  CHECK(format_power(picowatts(1.13)) == "1.13 pW");
  CHECK(format_power(microwatts(200.0)) == "200 µW");
  CHECK(format_power(milliwatts(2.0)) == "2 mW");
  CHECK(format_power(watts(0.0)) == "0 W");
  CHECK(format_wavelength_nm(nanometers(1558.5)) == "1558.5 nm");
  CHECK(format_energy_ev(electron_volts(0.8)) == "0.8 eV");
}
