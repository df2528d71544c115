#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ringfwm::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 80, kRight = 20, kTop = 36, kBottom = 56;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Axis {
  bool log;
  double lo, hi;  // in plot space (log10 when log)

  double map(double v) const { return log ? std::log10(v) : v; }
  bool accepts(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

Axis make_axis(bool log, double lo, double hi) {
  if (log) {
    lo = std::floor(std::log10(lo));
    hi = std::ceil(std::log10(hi));
    if (hi <= lo) hi = lo + 1;
  } else {
    if (hi <= lo) {
      const double pad = lo == 0.0 ? 1.0 : std::fabs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
    const double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return {log, lo, hi};
}

std::vector<double> ticks(const Axis& a) {
  std::vector<double> t;
  if (a.log) {
    const int step = std::max(1, static_cast<int>((a.hi - a.lo) / 8.0) + 1);
    for (double e = a.lo; e <= a.hi + 1e-9; e += step) t.push_back(e);
    return t;
  }
  const double raw = (a.hi - a.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-12 * step; v += step) {
    t.push_back(std::fabs(v) < 1e-12 * step ? 0.0 : v);
  }
  return t;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  const Axis probe_x{spec.log_x, 0, 0}, probe_y{spec.log_y, 0, 0};
  for (const auto& s : spec.series) {
    for (const auto& [x, y] : s.points) {
      if (!probe_x.accepts(x) || !probe_y.accepts(y)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = ymin = 1.0;
    xmax = ymax = 10.0;
  }
  const Axis ax = make_axis(spec.log_x, xmin, xmax);
  const Axis ay = make_axis(spec.log_y, ymin, ymax);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (ax.map(x) - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (ay.map(y) - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(spec.title)
    << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(ax)) {
    const double x = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw;
    o << "<line x1=\"" << num(x) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(x) << "\" y2=\"" << kTop + ph + 5
      << "\" stroke=\"black\"/>";
    o << "<text x=\"" << num(x) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
      << (ax.log ? "1e" + num(t) : num(t)) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double y = kTop + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph;
    o << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft << "\" y2=\"" << num(y)
      << "\" stroke=\"black\"/>";
    o << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
      << (ay.log ? "1e" + num(t) : num(t)) << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 14 << "\" text-anchor=\"middle\">"
    << escape(spec.x_label) << "</text>\n";
  o << "<text transform=\"translate(16 " << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(spec.y_label) << "</text>\n";

  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const auto& s = spec.series[i];
    const char* color = kColors[i % std::size(kColors)];
    if (s.line) {
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) {
        if (ax.accepts(x) && ay.accepts(y)) o << num(px(x)) << ',' << num(py(y)) << ' ';
      }
      o << "\"/>\n";
    } else {
      for (const auto& [x, y] : s.points) {
        if (!ax.accepts(x) || !ay.accepts(y)) continue;
        o << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3.5\" fill=\"" << color
          << "\"/>\n";
      }
    }
    const double ly = kTop + 16 + 16 * static_cast<double>(i);
    o << "<rect x=\"" << kLeft + pw - 170 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\"" << color
      << "\"/><text x=\"" << kLeft + pw - 154 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace ringfwm::cli
