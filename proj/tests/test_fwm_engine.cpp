#include <random>

#include "doctest.h"
#include "oracle_values.hpp"
#include "ringfwm/fwm_engine.hpp"
#include "test_support.hpp"

using namespace ringfwm;
using namespace ringfwm::units;
using ringfwm::test::reference_ring_5um;
using ringfwm::test::rel_diff;

namespace {
const Power kPump = milliwatts(1.0);
const Power kSignal = microwatts(200.0);
}  // namespace

TEST_CASE("stimulated idler power matches the oracle") {
  const RingParams r = reference_ring_5um();
  const Power p = stimulated_idler_power(r, kPump, kSignal);
  CHECK(rel_diff(p.si(), oracle::stimulated_r5_W) < 1e-12);
  CHECK(std::fabs(p.si() - 4.6e-8) < 0.05e-8);

  CHECK(stimulated_idler_power(r, watts(0.0), kSignal).si() == 0.0);
  CHECK(rel_diff(stimulated_idler_power(r, 2.0 * kPump, kSignal).si(), 4.0 * p.si()) < 1e-12);
  CHECK(rel_diff(stimulated_idler_power(r, kPump, 2.0 * kSignal).si(), 2.0 * p.si()) < 1e-12);

  CHECK_THROWS_AS(stimulated_idler_power(r, -kPump, kSignal), DomainError);
  CHECK_THROWS_AS(stimulated_idler_power(r, kPump, -kSignal), DomainError);
  CHECK_THROWS_AS(stimulated_idler_power(reference_ring_5um(false), kPump, kSignal), ConfigError);
}

TEST_CASE("spontaneous idler power matches the oracle") {
  const RingParams r = reference_ring_5um();
  const Power p = spontaneous_idler_power(r, kPump);
  CHECK(rel_diff(p.si(), oracle::spontaneous_r5_W) < 1e-12);
  CHECK(std::fabs(to_picowatts(p) - 1.13) < 0.01);

  CHECK(spontaneous_idler_power(r, watts(0.0)).si() == 0.0);
  const Power twice_r = spontaneous_idler_power(r.with_radius(micrometers(10.0)), kPump);
  CHECK(rel_diff(twice_r.si() / p.si(), 0.25) < 1e-12);
  CHECK_THROWS_AS(spontaneous_idler_power(reference_ring_5um(false), kPump), ConfigError);
}

TEST_CASE("pair generation rate") {
  const RingParams r = reference_ring_5um();
  const Rate rate = pair_generation_rate(r, kPump);
  CHECK(rel_diff(rate.si(), oracle::pair_rate_r5_per_s) < 1e-12);
  CHECK(std::fabs(rate.si() - 8.9e6) < 0.05e6);
  CHECK(pair_generation_rate(r, watts(0.0)).si() == 0.0);
  CHECK(rel_diff(pair_generation_rate(r, 2.0 * kPump).si(), 4.0 * rate.si()) < 1e-12);
}

TEST_CASE("spontaneous to stimulated ratio") {
  const AngularFrequency wp = wavelength_to_angular_frequency(nanometers(1558.5));
  CHECK(rel_diff(value(spontaneous_to_stimulated_ratio(7900.0, wp, kSignal)), oracle::ratio_q7900_ps200uW) < 1e-13);
  CHECK(rel_diff(value(spontaneous_to_stimulated_ratio(15000.0, wp, kSignal)), oracle::ratio_q15000_ps200uW) <
        1e-13);
  CHECK_THROWS_AS(spontaneous_to_stimulated_ratio(7900.0, wp, watts(0.0)), DomainError);
  CHECK_THROWS_AS(spontaneous_to_stimulated_ratio(0.0, wp, kSignal), DomainError);
}

TEST_CASE("characteristic power") {
  const AngularFrequency w08 = electron_volts(0.8) / constants::reduced_planck();
  const Power pc = characteristic_power(w08);
  CHECK(rel_diff(pc.si(), oracle::char_power_0_8eV_W) < 1e-13);
  CHECK(std::fabs(to_microwatts(pc) / 160.0 - 1.0) < 0.03);
  CHECK(rel_diff(characteristic_power(2.0 * w08).si(), 4.0 * pc.si()) < 1e-15);

  const Power p1558 = characteristic_power(wavelength_to_angular_frequency(nanometers(1558.5)));
  CHECK(rel_diff(p1558.si(), oracle::char_power_1558_5nm_W) < 1e-13);
  CHECK_THROWS_AS(characteristic_power(radians_per_second(0.0)), DomainError);
}

TEST_CASE("prediction from a stimulated measurement") {
  const AngularFrequency wp = wavelength_to_angular_frequency(nanometers(1558.5));
  const SpontaneousEstimate est = predict_spontaneous_from_measurement(watts(4.64e-8), 7900.0, wp, kSignal);
  CHECK(std::fabs(to_picowatts(est.power) - 1.13) < 0.01);

  const SpontaneousEstimate exact =
      predict_spontaneous_from_measurement(watts(oracle::stimulated_r5_W), 7900.0, wp, kSignal);
  CHECK(rel_diff(exact.power.si(), oracle::spontaneous_r5_W) < 1e-12);
  CHECK(rel_diff(exact.pair_rate.si(), oracle::pair_rate_r5_per_s) < 1e-12);

  CHECK(predict_spontaneous_from_measurement(watts(0.0), 7900.0, wp, kSignal).power.si() == 0.0);
  const SpontaneousEstimate doubled =
      predict_spontaneous_from_measurement(watts(2.0 * 4.64e-8), 7900.0, wp, 2.0 * kSignal);
  CHECK(rel_diff(doubled.power.si(), est.power.si()) < 1e-15);
  CHECK_THROWS_AS(predict_spontaneous_from_measurement(watts(1e-8), 7900.0, wp, watts(0.0)), DomainError);
}

TEST_CASE("ratio identity holds over random parameter sets") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const RingParams r = test::random_ring(rng);
    const Power pump = watts(test::log_uniform(rng, 1e-6, 1e-2));
    const Power signal = watts(test::log_uniform(rng, 1e-7, 1e-2));
    const double measured = spontaneous_idler_power(r, pump).si() / stimulated_idler_power(r, pump, signal).si();
    const double predicted =
        value(spontaneous_to_stimulated_ratio(r.quality_factor(), r.pump_angular_frequency(), signal));
    REQUIRE(rel_diff(measured, predicted) < 1e-12);
  }
}

TEST_CASE("exact scaling exponents") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const RingParams r = test::random_ring(rng);
    const Power pump = watts(test::log_uniform(rng, 1e-6, 1e-2));
    const Power signal = watts(test::log_uniform(rng, 1e-7, 1e-2));
    for (double k : {2.0, 10.0}) {
      REQUIRE(rel_diff(spontaneous_idler_power(r, k * pump).si() / spontaneous_idler_power(r, pump).si(), k * k) <
              1e-12);
      REQUIRE(rel_diff(stimulated_idler_power(r, k * pump, signal).si() / stimulated_idler_power(r, pump, signal).si(),
                       k * k) < 1e-12);
      REQUIRE(rel_diff(stimulated_idler_power(r, pump, k * signal).si() / stimulated_idler_power(r, pump, signal).si(),
                       k) < 1e-12);
      const RingParams big = r.with_radius(k * r.radius());
      REQUIRE(rel_diff(spontaneous_idler_power(big, pump).si() / spontaneous_idler_power(r, pump).si(), 1.0 / (k * k)) <
              1e-12);
      REQUIRE(rel_diff(stimulated_idler_power(big, pump, signal).si() / stimulated_idler_power(r, pump, signal).si(),
                       1.0 / (k * k)) < 1e-12);
    }
  }
}

TEST_CASE("gamma perturbation leaves the ratio untouched") {
  const RingParams r = reference_ring_5um();
  const RingParams r2 = r.with_gamma(per_watt_meter(250.0));
  CHECK(stimulated_idler_power(r, kPump, kSignal) != stimulated_idler_power(r2, kPump, kSignal));
  const auto p1 = predict(r, kPump, kSignal);
  const auto p2 = predict(r2, kPump, kSignal);
  REQUIRE(p1.ratio);
  REQUIRE(p2.ratio);
  CHECK(p1.ratio->si() == p2.ratio->si());
  CHECK(rel_diff(p2.spontaneous_idler_power.si() / p2.stimulated_idler_power->si(), p1.ratio->si()) < 1e-12);
}

TEST_CASE("ratio is bit-identical for rings differing only in radius") {
  const RingParams r = reference_ring_5um();
  for (double um : {10.0, 20.0, 30.0, 123.4}) {
    const RingParams o = r.with_radius(micrometers(um));
    CHECK(predict(o, kPump, kSignal).ratio->si() == predict(r, kPump, kSignal).ratio->si());
  }
}

TEST_CASE("model-path prediction and its invariants") {
  const RingParams r = reference_ring_5um();
  const FwmPrediction p = predict(r, kPump, kSignal);
  REQUIRE(p.stimulated_idler_power);
  CHECK(rel_diff(p.stimulated_idler_power->si(), oracle::stimulated_r5_W) < 1e-12);
  CHECK(p.pair_rate.si() ==
        (p.spontaneous_idler_power / photon_energy(r.pump_angular_frequency())).si());
  CHECK(rel_diff(p.ratio->si() * p.stimulated_idler_power->si(), p.spontaneous_idler_power.si()) < 1e-12);
  CHECK(p.warnings.empty());

  const FwmPrediction spont_only = predict(r, kPump);
  CHECK_FALSE(spont_only.stimulated_idler_power);
  CHECK_FALSE(spont_only.ratio);

  const FwmPrediction zero = predict(r, watts(0.0), kSignal);
  CHECK(zero.spontaneous_idler_power.si() == 0.0);
  CHECK(zero.pair_rate.si() == 0.0);
}

TEST_CASE("validity warnings") {
  RingParams::Fields f = reference_ring_5um().fields();
  f.min_transmission = 0.2;
  const FwmPrediction off = predict(RingParams(f), kPump, kSignal);
  REQUIRE(off.warnings.size() == 1);
  CHECK(off.warnings[0].find("critical coupling") != std::string::npos);

  const FwmPrediction hot = predict(reference_ring_5um(), milliwatts(3.0), kSignal);
  REQUIRE(hot.warnings.size() == 1);
  CHECK(hot.warnings[0].find("thermo-optic") != std::string::npos);
}

TEST_CASE("measurement path agrees with the model path") {
  const RingParams r = reference_ring_5um();
  const FwmPrediction model = predict(r, kPump, kSignal);
  const FwmPrediction meas =
      predict_from_measurement(*model.stimulated_idler_power, r.quality_factor(), r.pump_wavelength(), kSignal);
  CHECK(rel_diff(meas.spontaneous_idler_power.si(), model.spontaneous_idler_power.si()) < 1e-12);
  CHECK(rel_diff(meas.pair_rate.si(), model.pair_rate.si()) < 1e-12);
  CHECK_FALSE(meas.ring);
}
