#include "ringfwm/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace ringfwm {

using namespace units;

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line, const char* column) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("malformed number '" + std::string(field) + "' in column " + column, line);
  }
  return v;
}

std::string format12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Shortest text that parses back to the same double.
std::string format_exact(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Reads `# key=value` preamble lines and the header. Leaves `line_no` at the
// header line.
struct CsvPreamble {
  std::map<std::string, std::string> metadata;
  std::size_t line_no = 0;
};

CsvPreamble read_preamble(std::istream& in, std::string_view expected_header) {
  CsvPreamble pre;
  std::string line;
  while (std::getline(in, line)) {
    ++pre.line_no;
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string_view body = trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        pre.metadata.emplace(std::string(trim(body.substr(0, eq))), std::string(trim(body.substr(eq + 1))));
      }
      continue;
    }
    std::string normalized;
    for (const auto f : split_fields(t)) {
      if (!normalized.empty()) normalized += ',';
      normalized += f;
    }
    if (normalized != expected_header) {
      throw ParseError("expected header '" + std::string(expected_header) + "', found '" + std::string(t) + "'",
                       pre.line_no);
    }
    return pre;
  }
  throw ParseError("missing header '" + std::string(expected_header) + "'", pre.line_no);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

constexpr double kSnapBand = 0.01;

}  // namespace

// ---------------------------------------------------------------------------

namespace {

// `where(i)` names sample i in diagnostics: a sample index or a file line.
template <class Where>
SpectrumTrace validated_trace(std::string ring_id, std::vector<SpectrumSample> samples,
                              std::map<std::string, std::string> metadata, Where where) {
  SpectrumTrace trace{std::move(ring_id), std::move(samples), std::move(metadata), {}};
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    auto& s = trace.samples[i];
    if (!std::isfinite(s.wavelength_nm) || !(s.wavelength_nm > 0.0)) {
      throw ValidationError("wavelength must be positive and finite (" + where(i) + ")");
    }
    if (i > 0 && !(s.wavelength_nm > trace.samples[i - 1].wavelength_nm)) {
      throw ValidationError("wavelengths must be strictly increasing (" + where(i) + ")");
    }
    if (!std::isfinite(s.transmission) || s.transmission < -kSnapBand || s.transmission > 1.0 + kSnapBand) {
      throw ValidationError("transmission " + format12(s.transmission) + " outside [0, 1] (" + where(i) + ")");
    }
    if (s.transmission < 0.0 || s.transmission > 1.0) {
      trace.warnings.push_back("transmission " + format12(s.transmission) + " snapped into [0, 1] (" + where(i) +
                               ")");
      s.transmission = s.transmission < 0.0 ? 0.0 : 1.0;
    }
  }
  return trace;
}

}  // namespace

SpectrumTrace make_spectrum_trace(std::string ring_id, std::vector<SpectrumSample> samples,
                                  std::map<std::string, std::string> metadata) {
  return validated_trace(std::move(ring_id), std::move(samples), std::move(metadata),
                         [](std::size_t i) { return "sample " + std::to_string(i + 1); });
}

SpectrumTrace parse_spectrum_csv(std::istream& in, const std::string& default_ring_id) {
  CsvPreamble pre = read_preamble(in, "wavelength_nm,transmission");
  std::vector<SpectrumSample> samples;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t line_no = pre.line_no;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split_fields(t);
    if (fields.size() != 2) throw ParseError("expected 2 columns, found " + std::to_string(fields.size()), line_no);
    samples.push_back({parse_number(fields[0], line_no, "wavelength_nm"),
                       parse_number(fields[1], line_no, "transmission")});
    lines.push_back(line_no);
  }
  std::string id = default_ring_id;
  if (auto it = pre.metadata.find("ring_id"); it != pre.metadata.end()) id = it->second;
  return validated_trace(id, std::move(samples), std::move(pre.metadata),
                         [&lines](std::size_t i) { return "line " + std::to_string(lines[i]); });
}

SpectrumTrace read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return parse_spectrum_csv(in, path.stem().string());
}

void write_spectrum_csv(const SpectrumTrace& trace, std::ostream& out) {
  out << "# ring_id=" << trace.ring_id << '\n';
  for (const auto& [k, v] : trace.metadata) {
    if (k != "ring_id") out << "# " << k << '=' << v << '\n';
  }
  out << "wavelength_nm,transmission\n";
  for (const auto& s : trace.samples) out << format_exact(s.wavelength_nm) << ',' << format_exact(s.transmission) << '\n';
}

void write_spectrum_csv(const SpectrumTrace& trace, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  write_spectrum_csv(trace, out);
  finish_output(out, path);
}

// ---------------------------------------------------------------------------

SweepDataset parse_sweep_csv(std::istream& in, const std::string& default_ring_id, PowerReference reference,
                             Power pump_cutoff) {
  CsvPreamble pre = read_preamble(in, "pump_mW,signal_uW,idler_pW");
  std::vector<SweepRecord> records;
  std::optional<bool> has_signal;
  std::string line;
  std::size_t line_no = pre.line_no;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split_fields(t);
    if (fields.size() != 3) throw ParseError("expected 3 columns, found " + std::to_string(fields.size()), line_no);
    SweepRecord rec;
    const double pump = parse_number(fields[0], line_no, "pump_mW");
    const bool na = fields[1] == "NA";
    if (has_signal && *has_signal == na) {
      throw ValidationError("signal_uW mixes NA and numeric entries (line " + std::to_string(line_no) + ")");
    }
    has_signal = !na;
    std::optional<double> signal;
    if (!na) signal = parse_number(fields[1], line_no, "signal_uW");
    const double idler = parse_number(fields[2], line_no, "idler_pW");
    if (pump < 0.0 || idler < 0.0 || (signal && *signal < 0.0)) {
      throw ValidationError("negative power (line " + std::to_string(line_no) + ")");
    }
    rec.pump = milliwatts(pump);
    if (signal) rec.signal = microwatts(*signal);
    rec.idler = picowatts(idler);
    records.push_back(rec);
  }
  if (records.size() == 0) throw ValidationError("sweep has no data rows");
  std::string id = default_ring_id;
  if (auto it = pre.metadata.find("ring_id"); it != pre.metadata.end()) id = it->second;
  return SweepDataset(id, std::move(records), reference == PowerReference::on_chip, pump_cutoff);
}

SweepDataset read_sweep_csv(const std::filesystem::path& path, PowerReference reference, Power pump_cutoff) {
  std::ifstream in = open_input(path);
  return parse_sweep_csv(in, path.stem().string(), reference, pump_cutoff);
}

void write_sweep_csv(const SweepDataset& sweep, std::ostream& out) {
  out << "# ring_id=" << sweep.ring_id() << '\n';
  out << "pump_mW,signal_uW,idler_pW\n";
  for (const auto& r : sweep.records()) {
    out << format_exact(to_milliwatts(r.pump)) << ',' << (r.signal ? format_exact(to_microwatts(*r.signal)) : "NA")
        << ',' << format_exact(to_picowatts(r.idler)) << '\n';
  }
}

void write_sweep_csv(const SweepDataset& sweep, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  write_sweep_csv(sweep, out);
  finish_output(out, path);
}

// ---------------------------------------------------------------------------

void write_text_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << text;
  finish_output(out, path);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

}  // namespace ringfwm
