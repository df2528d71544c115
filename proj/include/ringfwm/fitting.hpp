#pragma once

// Characterization fits: power calibration through the setup, Lorentzian Q
// extraction, γ from stimulated sweeps, log-log exponents and the
// spontaneous/stimulated ratio check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringfwm/ring_model.hpp"
#include "ringfwm/units.hpp"

namespace ringfwm {

// ---------------------------------------------------------------------------
// Calibration

enum class Direction { into_chip, out_of_chip };

struct ComponentLoss {
  std::string name;
  double loss_db = 0.0;
  /// into_chip components sit between laser and chip, out_of_chip between
  /// chip and detector.
  Direction path = Direction::out_of_chip;

  friend bool operator==(const ComponentLoss&, const ComponentLoss&) = default;
};

/// Losses of the optical setup. The chip facet loss is half the measured
/// fiber-to-fiber insertion loss.
class CalibrationChain {
 public:
  CalibrationChain() = default;
  CalibrationChain(double total_insertion_loss_db, std::vector<ComponentLoss> components, double detector_scale = 1.0);

  [[nodiscard]] double total_insertion_loss_db() const noexcept { return total_db_; }
  [[nodiscard]] double facet_loss_db() const noexcept { return total_db_ / 2.0; }
  [[nodiscard]] const std::vector<ComponentLoss>& components() const noexcept { return components_; }
  [[nodiscard]] double detector_scale() const noexcept { return detector_scale_; }

  /// Facet loss plus every component on the given path, in dB.
  [[nodiscard]] double path_loss_db(Direction d) const;

  friend bool operator==(const CalibrationChain&, const CalibrationChain&) = default;

 private:
  double total_db_ = 0.0;
  std::vector<ComponentLoss> components_;
  double detector_scale_ = 1.0;
};

/// into_chip: laser power → power coupled into the bus waveguide.
/// out_of_chip: detected power → power generated on chip.
units::Power calibrate_to_chip(units::Power raw, const CalibrationChain& chain, Direction direction);

// ---------------------------------------------------------------------------
// Datasets and results

struct SweepRecord {
  units::Power pump;
  std::optional<units::Power> signal;
  units::Power idler;
};

enum class SweepKind { stimulated, spontaneous };

class SweepDataset {
 public:
  /// Rejects empty datasets, negative powers and mixed presence of the
  /// signal column.
  SweepDataset(std::string ring_id, std::vector<SweepRecord> records, bool powers_are_on_chip,
               units::Power pump_cutoff = units::milliwatts(2.0));

  [[nodiscard]] const std::string& ring_id() const noexcept { return ring_id_; }
  [[nodiscard]] const std::vector<SweepRecord>& records() const noexcept { return records_; }
  [[nodiscard]] bool powers_are_on_chip() const noexcept { return on_chip_; }
  [[nodiscard]] units::Power pump_cutoff() const noexcept { return pump_cutoff_; }
  [[nodiscard]] SweepKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }

  [[nodiscard]] SweepDataset with_pump_cutoff(units::Power cutoff) const;

  /// Records at or below the pump cutoff, in their original order.
  [[nodiscard]] std::vector<SweepRecord> usable_records() const;
  /// Indices of records above the pump cutoff.
  [[nodiscard]] std::vector<std::size_t> excluded_indices() const;

 private:
  std::string ring_id_;
  std::vector<SweepRecord> records_;
  bool on_chip_;
  units::Power pump_cutoff_;
  SweepKind kind_;
};

/// Pump and signal through the input path, idler through the output path.
/// An on-chip dataset is returned unchanged.
SweepDataset calibrate_sweep(const SweepDataset& raw, const CalibrationChain& chain);

struct FitResult {
  std::string parameter;
  std::string unit;
  double value = 0.0;
  double uncertainty = 0.0;  // one sigma
  double residual_norm = 0.0;
  std::size_t n_points_used = 0;
  std::size_t n_points_excluded = 0;
  /// Half-width of the two-sided 95% interval, when computed.
  std::optional<double> confidence_95;
};

struct FitOptions {
  /// Bootstrap resamples for the uncertainty; 0 uses the regression covariance.
  int bootstrap_samples = 0;
  std::uint64_t seed = 1;
};

// ---------------------------------------------------------------------------
// Lorentzian Q fit

struct SpectrumSample {
  double wavelength_nm;
  double transmission;
};

struct LorentzianFit {
  FitResult center;  // nm
  FitResult quality_factor;
  FitResult min_transmission;
  int iterations = 0;
};

/// Levenberg-Marquardt fit of the single-dip ring transmission. Needs ≥ 7
/// samples, strictly increasing wavelengths, and a span of at least half a
/// linewidth. Throws FitError on degenerate or unusable fits.
LorentzianFit fit_lorentzian(const std::vector<SpectrumSample>& trace);

/// Comb line of `ring` closest to a fitted centre.
CombLine identify_resonance(const RingParams& ring, units::Length fitted_center);

// ---------------------------------------------------------------------------
// γ from a stimulated sweep

struct GammaFit {
  FitResult gamma;  // W^-1 m^-1
  std::vector<std::size_t> excluded;
};

/// Fits P_i = γ²·K·P_s·P_p² (K from R, Q, n_eff, λ_p) by linear least squares
/// in γ². Records above the pump cutoff are dropped first. The dataset must
/// hold on-chip powers.
GammaFit fit_gamma(const SweepDataset& sweep, const RingParams& ring, const FitOptions& options = {});

/// Same, after calibrating a raw dataset through `chain`.
GammaFit fit_gamma(const SweepDataset& sweep, const RingParams& ring, const CalibrationChain& chain,
                   const FitOptions& options = {});

// ---------------------------------------------------------------------------
// Power laws

struct PowerLawPoint {
  double x;
  double y;
};

struct PowerLawFit {
  FitResult exponent;
  double prefactor = 0.0;
  std::optional<double> expected_exponent;
  /// |exponent − expected| ≤ max(2σ, absolute_tolerance) when expected is set.
  std::optional<bool> consistent;
};

struct PowerLawOptions {
  std::optional<double> expected_exponent;
  double absolute_tolerance = 1e-9;
  FitOptions fit;
};

/// Ordinary least squares of log y on log x.
PowerLawFit fit_power_law(const std::vector<PowerLawPoint>& points, const PowerLawOptions& options = {});

// ---------------------------------------------------------------------------
// Ratio law

struct RatioRow {
  units::Power pump;
  units::Power signal;
  units::Power stimulated_idler;
  units::Power spontaneous_idler;
  double measured_ratio;
  double predicted_ratio;
  double deviation;  // measured/predicted − 1
};

struct RatioLawReport {
  std::string stimulated_id;
  std::string spontaneous_id;
  double quality_factor = 0.0;
  std::vector<RatioRow> rows;
  double max_abs_deviation = 0.0;
  /// mean(measured/predicted) − 1.
  double mean_deviation = 0.0;
  /// (max − min)/mean of measured/predicted across pump powers.
  double pump_spread = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::size_t n_excluded = 0;
};

inline constexpr double kDefaultRatioTolerance = 0.2;

/// Pairs records with bit-equal pump power, compares each measured ratio with
/// ħω_p²/(4QP_s). Passes when |mean_deviation| ≤ tolerance. Spontaneous
/// records sharing a pump power are averaged. Throws FitError when no pump
/// power is common to both datasets.
RatioLawReport verify_ratio_law(const SweepDataset& stimulated, const SweepDataset& spontaneous,
                                const RingParams& ring, double tolerance = kDefaultRatioTolerance);

}  // namespace ringfwm
