#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ringfwm/dataset_io.hpp"

namespace ringfwm::cli {

using Path = std::filesystem::path;

struct SimulateSpectrumOptions {
  Path ring;
  double span_nm = 80.0;
  int points = 2001;
  std::optional<double> center_nm;  // default: pump wavelength
  double noise = 0.0;               // relative, multiplicative
  std::uint64_t seed = 1;
  std::optional<Path> out;
  std::optional<Path> svg;
};

struct FitQOptions {
  Path input;
  std::optional<Path> ring;
  std::optional<double> window_nm;
  std::optional<Path> svg;
};

struct FitGammaOptions {
  Path input;
  Path ring;
  std::optional<Path> calibration;
  double pump_cutoff_mw = 2.0;
  int bootstrap = 0;
  std::uint64_t seed = 1;
  std::optional<Path> ring_out;
  std::optional<Path> svg;
};

struct PredictOptions {
  // Model path.
  std::optional<Path> ring;
  std::optional<double> pump_mw;
  std::optional<double> signal_uw;
  // Measurement path.
  std::optional<Path> stimulated_report;
  std::optional<double> stimulated_idler_pw;
  std::optional<double> q;
  std::optional<double> pump_wavelength_nm;
};

struct ScalingReportOptions {
  std::optional<std::string> synthetic;  // "fixed-q" or "raw"
  std::vector<Path> rings;
  std::vector<Path> inputs;
  std::optional<Path> calibration;
  double pump_cutoff_mw = 2.0;
  double reference_pump_mw = 1.0;
  double tolerance = kDefaultRatioTolerance;
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::optional<Path> svg;
};

struct RatioCheckOptions {
  std::vector<Path> inputs;
  Path ring;
  std::optional<Path> calibration;
  double pump_cutoff_mw = 2.0;
  double tolerance = kDefaultRatioTolerance;
  std::optional<Path> svg;
};

/// Writes the spectrum CSV to `options.out`, or to `out` when unset.
void simulate_spectrum(const SimulateSpectrumOptions& options, std::ostream& out);

Report fit_q(const FitQOptions& options);
Report fit_gamma(const FitGammaOptions& options);
Report predict(const PredictOptions& options);
Report scaling_report(const ScalingReportOptions& options);
Report ratio_check(const RatioCheckOptions& options);

}  // namespace ringfwm::cli
