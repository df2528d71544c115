#pragma once

// File formats.
//
// Spectrum CSV   header `wavelength_nm,transmission`
// Sweep CSV      header `pump_mW,signal_uW,idler_pW`; signal is `NA` in every
//                row of a spontaneous sweep
// Ring JSON      radius_um, q_factor, n_eff, pump_wavelength_nm,
//                gamma_per_W_per_m (optional), min_transmission, ring_id (optional)
// Calibration    total_insertion_loss_dB, components[{name, loss_dB, path}],
// JSON           detector_scale
// Report JSON    schema "ringfwm/1"
//
// CSV files may start with `# key=value` comment lines; they become trace
// metadata, and `ring_id` names the dataset (default: the file stem).
// Units are fixed by the headers and converted to SI on read.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ringfwm/fitting.hpp"
#include "ringfwm/fwm_engine.hpp"
#include "ringfwm/ring_model.hpp"

namespace ringfwm {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ringfwm/1";

// ---------------------------------------------------------------------------
// Spectra

struct SpectrumTrace {
  std::string ring_id;
  std::vector<SpectrumSample> samples;
  std::map<std::string, std::string> metadata;
  /// Samples snapped into [0, 1] from the tolerance band.
  std::vector<std::string> warnings;
};

/// Validates ordering and the transmission band: values in [−0.01, 0) or
/// (1, 1.01] are snapped with a warning, anything further out is rejected.
SpectrumTrace make_spectrum_trace(std::string ring_id, std::vector<SpectrumSample> samples,
                                  std::map<std::string, std::string> metadata = {});

SpectrumTrace parse_spectrum_csv(std::istream& in, const std::string& default_ring_id);
SpectrumTrace read_spectrum_csv(const std::filesystem::path& path);
void write_spectrum_csv(const SpectrumTrace& trace, const std::filesystem::path& path);
void write_spectrum_csv(const SpectrumTrace& trace, std::ostream& out);

// ---------------------------------------------------------------------------
// Sweeps

enum class PowerReference { on_chip, raw };

SweepDataset parse_sweep_csv(std::istream& in, const std::string& default_ring_id, PowerReference reference,
                             units::Power pump_cutoff = units::milliwatts(2.0));
SweepDataset read_sweep_csv(const std::filesystem::path& path, PowerReference reference,
                            units::Power pump_cutoff = units::milliwatts(2.0));
void write_sweep_csv(const SweepDataset& sweep, const std::filesystem::path& path);
void write_sweep_csv(const SweepDataset& sweep, std::ostream& out);

// ---------------------------------------------------------------------------
// Ring and calibration descriptions

RingParams ring_from_json(const Json& j);
Json ring_to_json(const RingParams& ring);
RingParams read_ring_json(const std::filesystem::path& path);
void write_ring_json(const RingParams& ring, const std::filesystem::path& path);

CalibrationChain calibration_from_json(const Json& j);
Json calibration_to_json(const CalibrationChain& chain);
CalibrationChain read_calibration_json(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Reports

struct ExperimentRecord {
  std::optional<RingParams> ring;
  std::optional<CalibrationChain> calibration;
  std::vector<SweepDataset> sweeps;
  std::vector<std::string> provenance;

  /// Every sweep id must be the ring id or `<ring id>-<tag>` when the ring has
  /// an id. Throws ValidationError.
  void validate() const;
};

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  std::optional<ExperimentRecord> record;
  std::vector<Json> results;
  std::vector<Verdict> verdicts;
  std::vector<std::string> warnings;

  [[nodiscard]] bool all_passed() const;
};

Json report_to_json(const Report& report);
/// Pretty-printed JSON with a trailing newline; stable key order.
std::string render_report(const Report& report);
void write_report(const Report& report, const std::filesystem::path& path);
void write_text_file(const std::string& text, const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// JSON views of results. Every number carries a unit.

Json quantity_json(units::Power p);
Json quantity_json(units::Length l);
Json quantity_json(units::Rate r);
Json dimensionless_json(double v);

Json to_json(const FitResult& fit);
Json to_json(const LorentzianFit& fit);
Json to_json(const GammaFit& fit, const SweepDataset& sweep);
Json to_json(const PowerLawFit& fit);
Json to_json(const RatioLawReport& report);
Json to_json(const FwmPrediction& prediction);
Json to_json(const SweepDataset& sweep);
Json to_json(const ExperimentRecord& record);

}  // namespace ringfwm
