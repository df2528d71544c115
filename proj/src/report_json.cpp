#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

#include "ringfwm/dataset_io.hpp"

namespace ringfwm {

using namespace units;

namespace {

const char* direction_name(Direction d) { return d == Direction::into_chip ? "into_chip" : "out_of_chip"; }

// Collects every field problem before failing, so one run reports them all.
class FieldReader {
 public:
  FieldReader(const Json& j, std::string what) : j_(j), what_(std::move(what)) {
    if (!j_.is_object()) throw ConfigError(what_ + ": expected a JSON object");
  }

  std::optional<double> number(const char* key, bool required) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) {
      if (required) problems_.push_back(std::string("missing field '") + key + "'");
      return std::nullopt;
    }
    if (!it->is_number() || !std::isfinite(it->get<double>())) {
      problems_.push_back(std::string("field '") + key + "' must be a finite number");
      return std::nullopt;
    }
    return it->get<double>();
  }

  std::optional<std::string> string(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) {
      problems_.push_back(std::string("field '") + key + "' must be a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  const Json* array(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    if (!it->is_array()) {
      problems_.push_back(std::string("field '") + key + "' must be an array");
      return nullptr;
    }
    return &*it;
  }

  void problem(std::string p) { problems_.push_back(std::move(p)); }

  void finish() {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.contains(k)) problems_.push_back("unknown field '" + k + "'");
    }
    if (problems_.empty()) return;
    std::string msg = what_ + ":";
    for (const auto& p : problems_) msg += "\n  - " + p;
    throw ConfigError(msg);
  }

 private:
  const Json& j_;
  std::string what_;
  std::set<std::string> seen_;
  std::vector<std::string> problems_;
};

// Unit conversion leaves last-bit noise (1558.5 nm → 1558.5000000000002);
// 15 significant digits removes it without touching stored precision.
double tidy(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

Json echo_power(const std::optional<Power>& p) { return p ? quantity_json(*p) : Json(nullptr); }

}  // namespace

// ---------------------------------------------------------------------------
// Ring and calibration

RingParams ring_from_json(const Json& j) {
  FieldReader r(j, "invalid ring description");
  const auto radius = r.number("radius_um", true);
  const auto q = r.number("q_factor", true);
  const auto n_eff = r.number("n_eff", true);
  const auto lambda = r.number("pump_wavelength_nm", true);
  const auto gamma = r.number("gamma_per_W_per_m", false);
  const auto tmin = r.number("min_transmission", true);
  const auto id = r.string("ring_id");
  r.finish();
  try {
    return RingParams({.ring_id = id.value_or(""),
                       .radius = micrometers(*radius),
                       .quality_factor = *q,
                       .effective_index = *n_eff,
                       .pump_wavelength = nanometers(*lambda),
                       .gamma = gamma ? std::optional(per_watt_meter(*gamma)) : std::nullopt,
                       .min_transmission = *tmin});
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid ring description:\n  - ") + e.what());
  }
}

Json ring_to_json(const RingParams& ring) {
  Json j;
  if (!ring.ring_id().empty()) j["ring_id"] = ring.ring_id();
  j["radius_um"] = tidy(to_micrometers(ring.radius()));
  j["q_factor"] = ring.quality_factor();
  j["n_eff"] = ring.effective_index();
  j["pump_wavelength_nm"] = tidy(to_nanometers(ring.pump_wavelength()));
  if (ring.gamma()) j["gamma_per_W_per_m"] = ring.gamma()->si();
  j["min_transmission"] = ring.min_transmission();
  return j;
}

RingParams read_ring_json(const std::filesystem::path& path) {
  try {
    return ring_from_json(read_json_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_ring_json(const RingParams& ring, const std::filesystem::path& path) {
  write_text_file(ring_to_json(ring).dump(2) + "\n", path);
}

CalibrationChain calibration_from_json(const Json& j) {
  FieldReader r(j, "invalid calibration");
  const auto total = r.number("total_insertion_loss_dB", true);
  const auto scale = r.number("detector_scale", false);
  std::vector<ComponentLoss> components;
  if (const Json* arr = r.array("components")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const Json& c = (*arr)[i];
      const std::string where = "components[" + std::to_string(i) + "]";
      if (!c.is_object() || !c.contains("name") || !c["name"].is_string() || !c.contains("loss_dB") ||
          !c["loss_dB"].is_number() || !c.contains("path") || !c["path"].is_string()) {
        r.problem(where + " needs string 'name', number 'loss_dB' and string 'path'");
        continue;
      }
      const auto path = c["path"].get<std::string>();
      if (path != "into_chip" && path != "out_of_chip") {
        r.problem(where + ".path must be 'into_chip' or 'out_of_chip'");
        continue;
      }
      components.push_back({c["name"].get<std::string>(), c["loss_dB"].get<double>(),
                            path == "into_chip" ? Direction::into_chip : Direction::out_of_chip});
    }
  }
  r.finish();
  try {
    return CalibrationChain(*total, std::move(components), scale.value_or(1.0));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid calibration:\n  - ") + e.what());
  }
}

Json calibration_to_json(const CalibrationChain& chain) {
  Json comps = Json::array();
  for (const auto& c : chain.components()) {
    comps.push_back({{"name", c.name}, {"loss_dB", c.loss_db}, {"path", direction_name(c.path)}});
  }
  return {{"total_insertion_loss_dB", chain.total_insertion_loss_db()},
          {"components", comps},
          {"detector_scale", chain.detector_scale()}};
}

CalibrationChain read_calibration_json(const std::filesystem::path& path) {
  try {
    return calibration_from_json(read_json_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

void ExperimentRecord::validate() const {
  if (!ring || ring->ring_id().empty()) return;
  for (const auto& s : sweeps) {
    // `<ring>` itself or a tagged variant such as `<ring>-stim`.
    if (s.ring_id() != ring->ring_id() && !s.ring_id().starts_with(ring->ring_id() + "-")) {
      throw ValidationError("sweep '" + s.ring_id() + "' does not belong to ring '" + ring->ring_id() + "'");
    }
  }
}

bool Report::all_passed() const {
  for (const auto& v : verdicts) {
    if (!v.passed) return false;
  }
  return true;
}

Json report_to_json(const Report& report) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = report.command;
  j["inputs"] = report.inputs;
  if (report.record) j["record"] = to_json(*report.record);
  j["results"] = Json::array();
  for (const auto& r : report.results) j["results"].push_back(r);
  j["verdicts"] = Json::array();
  for (const auto& v : report.verdicts) {
    j["verdicts"].push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  }
  j["all_passed"] = report.all_passed();
  j["warnings"] = report.warnings;
  return j;
}

std::string render_report(const Report& report) { return report_to_json(report).dump(2) + "\n"; }

void write_report(const Report& report, const std::filesystem::path& path) {
  write_text_file(render_report(report), path);
}

// ---------------------------------------------------------------------------
// JSON views

Json quantity_json(Power p) { return {{"value", p.si()}, {"unit", "W"}, {"display", format_power(p)}}; }

Json quantity_json(Length l) { return {{"value", l.si()}, {"unit", "m"}, {"display", format_length(l)}}; }

Json quantity_json(Rate r) { return {{"value", r.si()}, {"unit", "1/s"}, {"display", format_rate(r)}}; }

Json dimensionless_json(double v) { return {{"value", v}, {"unit", "1"}}; }

Json to_json(const FitResult& fit) {
  Json j;
  j["parameter"] = fit.parameter;
  j["unit"] = fit.unit;
  j["value"] = fit.value;
  j["uncertainty"] = fit.uncertainty;
  if (fit.confidence_95) j["confidence_95"] = *fit.confidence_95;
  j["residual_norm"] = fit.residual_norm;
  j["n_points_used"] = fit.n_points_used;
  j["n_points_excluded"] = fit.n_points_excluded;
  return j;
}

Json to_json(const LorentzianFit& fit) {
  const double linewidth_nm = fit.center.value / fit.quality_factor.value;
  return {{"kind", "lorentzian_fit"},
          {"center", to_json(fit.center)},
          {"quality_factor", to_json(fit.quality_factor)},
          {"min_transmission", to_json(fit.min_transmission)},
          {"linewidth", quantity_json(nanometers(linewidth_nm))},
          {"iterations", fit.iterations}};
}

Json to_json(const GammaFit& fit, const SweepDataset& sweep) {
  Json excluded = Json::array();
  for (const auto i : fit.excluded) {
    excluded.push_back({{"row", i + 1}, {"pump", quantity_json(sweep.records()[i].pump)}});
  }
  return {{"kind", "gamma_fit"},
          {"ring_id", sweep.ring_id()},
          {"gamma", to_json(fit.gamma)},
          {"pump_cutoff", quantity_json(sweep.pump_cutoff())},
          {"excluded", excluded}};
}

Json to_json(const PowerLawFit& fit) {
  Json j;
  j["kind"] = "power_law";
  j["exponent"] = to_json(fit.exponent);
  j["prefactor"] = {{"value", fit.prefactor}, {"unit", "y/x^exponent"}};
  j["expected_exponent"] = fit.expected_exponent ? dimensionless_json(*fit.expected_exponent) : Json(nullptr);
  j["consistent"] = fit.consistent ? Json(*fit.consistent) : Json(nullptr);
  return j;
}

Json to_json(const RatioLawReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"pump", quantity_json(r.pump)},
                    {"signal", quantity_json(r.signal)},
                    {"stimulated_idler", quantity_json(r.stimulated_idler)},
                    {"spontaneous_idler", quantity_json(r.spontaneous_idler)},
                    {"measured_ratio", dimensionless_json(r.measured_ratio)},
                    {"predicted_ratio", dimensionless_json(r.predicted_ratio)},
                    {"deviation", dimensionless_json(r.deviation)}});
  }
  return {{"kind", "ratio_law"},
          {"stimulated_id", report.stimulated_id},
          {"spontaneous_id", report.spontaneous_id},
          {"quality_factor", dimensionless_json(report.quality_factor)},
          {"rows", rows},
          {"max_abs_deviation", dimensionless_json(report.max_abs_deviation)},
          {"mean_deviation", dimensionless_json(report.mean_deviation)},
          {"pump_spread", dimensionless_json(report.pump_spread)},
          {"tolerance", dimensionless_json(report.tolerance)},
          {"passed", report.passed},
          {"n_excluded", report.n_excluded}};
}

Json to_json(const FwmPrediction& p) {
  Json inputs;
  inputs["ring"] = p.ring ? ring_to_json(*p.ring) : Json(nullptr);
  inputs["quality_factor"] = dimensionless_json(p.quality_factor);
  inputs["pump_wavelength"] = quantity_json(p.pump_wavelength);
  inputs["pump_power"] = echo_power(p.pump_power);
  inputs["signal_power"] = echo_power(p.signal_power);
  inputs["measured_stimulated_idler_power"] = echo_power(p.measured_stimulated_idler_power);

  Json outputs;
  outputs["stimulated_idler_power"] = echo_power(p.stimulated_idler_power);
  outputs["spontaneous_idler_power"] = quantity_json(p.spontaneous_idler_power);
  outputs["pair_rate"] = quantity_json(p.pair_rate);
  outputs["ratio"] = p.ratio ? dimensionless_json(value(*p.ratio)) : Json(nullptr);
  outputs["characteristic_power"] =
      quantity_json(characteristic_power(wavelength_to_angular_frequency(p.pump_wavelength)));

  return {{"kind", "fwm_prediction"},
          {"path", p.ring ? "model" : "measurement"},
          {"inputs", inputs},
          {"outputs", outputs},
          {"notes",
           {"powers are on-chip idler powers integrated over one resonance",
            "pair_rate is the spontaneous idler photon flux (power / photon energy)",
            "Q is the loaded quality factor; critical coupling is assumed"}},
          {"warnings", p.warnings}};
}

Json to_json(const SweepDataset& sweep) {
  return {{"ring_id", sweep.ring_id()},
          {"kind", sweep.kind() == SweepKind::stimulated ? "stimulated" : "spontaneous"},
          {"powers_are_on_chip", sweep.powers_are_on_chip()},
          {"n_records", sweep.size()},
          {"pump_cutoff", quantity_json(sweep.pump_cutoff())},
          {"excluded_rows", [&] {
             Json rows = Json::array();
             for (const auto i : sweep.excluded_indices()) rows.push_back(i + 1);
             return rows;
           }()}};
}

Json to_json(const ExperimentRecord& record) {
  Json sweeps = Json::array();
  for (const auto& s : record.sweeps) sweeps.push_back(to_json(s));
  return {{"ring", record.ring ? ring_to_json(*record.ring) : Json(nullptr)},
          {"calibration", record.calibration ? calibration_to_json(*record.calibration) : Json(nullptr)},
          {"sweeps", sweeps},
          {"provenance", record.provenance}};
}

}  // namespace ringfwm
