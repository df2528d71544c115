#include <algorithm>
#include <cmath>
#include <map>

#include "ringfwm/fitting.hpp"
#include "ringfwm/fwm_engine.hpp"

namespace ringfwm {

using namespace units;

RatioLawReport verify_ratio_law(const SweepDataset& stimulated, const SweepDataset& spontaneous,
                                const RingParams& ring, double tolerance) {
  if (stimulated.kind() != SweepKind::stimulated) throw ConfigError("first dataset must be a stimulated sweep");
  if (spontaneous.kind() != SweepKind::spontaneous) throw ConfigError("second dataset must be a spontaneous sweep");
  if (!stimulated.powers_are_on_chip() || !spontaneous.powers_are_on_chip()) {
    throw ConfigError("ratio check needs on-chip powers; calibrate both datasets first");
  }
  if (!(tolerance >= 0.0)) throw DomainError("tolerance must be nonnegative");

  RatioLawReport report;
  report.stimulated_id = stimulated.ring_id();
  report.spontaneous_id = spontaneous.ring_id();
  report.quality_factor = ring.quality_factor();
  report.tolerance = tolerance;
  report.n_excluded = stimulated.excluded_indices().size() + spontaneous.excluded_indices().size();

  // Spontaneous idler averaged per exact pump power.
  std::map<double, std::pair<double, int>> spont_by_pump;
  for (const auto& r : spontaneous.usable_records()) {
    auto& acc = spont_by_pump[r.pump.si()];
    acc.first += r.idler.si();
    acc.second += 1;
  }

  const AngularFrequency wp = ring.pump_angular_frequency();
  for (const auto& r : stimulated.usable_records()) {
    const auto it = spont_by_pump.find(r.pump.si());
    if (it == spont_by_pump.end()) continue;
    if (!(r.idler.si() > 0.0) || !(r.signal->si() > 0.0)) continue;
    const double spont = it->second.first / it->second.second;
    RatioRow row{r.pump, *r.signal, r.idler, watts(spont), 0.0, 0.0, 0.0};
    row.measured_ratio = spont / r.idler.si();
    row.predicted_ratio = value(spontaneous_to_stimulated_ratio(ring.quality_factor(), wp, *r.signal));
    row.deviation = row.measured_ratio / row.predicted_ratio - 1.0;
    report.rows.push_back(row);
  }
  if (report.rows.empty()) {
    throw FitError("no pump power common to '" + stimulated.ring_id() + "' and '" + spontaneous.ring_id() +
                   "' below the cutoff; ratios cannot be paired");
  }

  double sum = 0.0;
  double lo = report.rows.front().deviation;
  double hi = lo;
  for (const auto& row : report.rows) {
    report.max_abs_deviation = std::max(report.max_abs_deviation, std::fabs(row.deviation));
    sum += 1.0 + row.deviation;
    lo = std::min(lo, row.deviation);
    hi = std::max(hi, row.deviation);
  }
  const double mean = sum / static_cast<double>(report.rows.size());
  report.mean_deviation = mean - 1.0;
  report.pump_spread = mean > 0.0 ? (hi - lo) / mean : 0.0;
  report.passed = std::fabs(report.mean_deviation) <= tolerance;
  return report;
}

}  // namespace ringfwm
