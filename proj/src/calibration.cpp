#include <cmath>

#include "ringfwm/fitting.hpp"

namespace ringfwm {

using namespace units;

CalibrationChain::CalibrationChain(double total_insertion_loss_db, std::vector<ComponentLoss> components,
                                   double detector_scale)
    : total_db_(total_insertion_loss_db), components_(std::move(components)), detector_scale_(detector_scale) {
  if (!(total_db_ >= 0.0) || !std::isfinite(total_db_)) {
    throw DomainError("total insertion loss must be a nonnegative dB value");
  }
  for (const auto& c : components_) {
    if (!(c.loss_db >= 0.0) || !std::isfinite(c.loss_db)) {
      throw DomainError("component loss '" + c.name + "' must be a nonnegative dB value");
    }
  }
  if (!(detector_scale_ > 0.0) || !std::isfinite(detector_scale_)) {
    throw DomainError("detector scale must be positive");
  }
}

double CalibrationChain::path_loss_db(Direction d) const {
  double db = facet_loss_db();
  for (const auto& c : components_) {
    if (c.path == d) db += c.loss_db;
  }
  return db;
}

Power calibrate_to_chip(Power raw, const CalibrationChain& chain, Direction direction) {
  if (raw.si() < 0.0) throw DomainError("raw power must be nonnegative");
  const double db = chain.path_loss_db(direction);
  if (direction == Direction::into_chip) {
    return raw * std::pow(10.0, -db / 10.0);
  }
  return raw * (chain.detector_scale() * std::pow(10.0, db / 10.0));
}

SweepDataset::SweepDataset(std::string ring_id, std::vector<SweepRecord> records, bool powers_are_on_chip,
                           Power pump_cutoff)
    : ring_id_(std::move(ring_id)),
      records_(std::move(records)),
      on_chip_(powers_are_on_chip),
      pump_cutoff_(pump_cutoff),
      kind_(SweepKind::spontaneous) {
  if (records_.empty()) throw ValidationError("sweep '" + ring_id_ + "' has no records");
  if (!(pump_cutoff_.si() > 0.0)) throw ValidationError("pump cutoff must be positive");
  const bool has_signal = records_.front().signal.has_value();
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.signal.has_value() != has_signal) {
      throw ValidationError("sweep '" + ring_id_ + "' mixes records with and without signal power (record " +
                            std::to_string(i + 1) + ")");
    }
    if (r.pump.si() < 0.0 || r.idler.si() < 0.0 || (r.signal && r.signal->si() < 0.0)) {
      throw ValidationError("sweep '" + ring_id_ + "' has a negative power (record " + std::to_string(i + 1) + ")");
    }
  }
  kind_ = has_signal ? SweepKind::stimulated : SweepKind::spontaneous;
}

SweepDataset SweepDataset::with_pump_cutoff(Power cutoff) const {
  return SweepDataset(ring_id_, records_, on_chip_, cutoff);
}

std::vector<SweepRecord> SweepDataset::usable_records() const {
  std::vector<SweepRecord> out;
  for (const auto& r : records_) {
    if (r.pump <= pump_cutoff_) out.push_back(r);
  }
  return out;
}

std::vector<std::size_t> SweepDataset::excluded_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].pump > pump_cutoff_) out.push_back(i);
  }
  return out;
}

SweepDataset calibrate_sweep(const SweepDataset& raw, const CalibrationChain& chain) {
  if (raw.powers_are_on_chip()) return raw;
  std::vector<SweepRecord> out;
  out.reserve(raw.size());
  for (const auto& r : raw.records()) {
    SweepRecord c;
    c.pump = calibrate_to_chip(r.pump, chain, Direction::into_chip);
    if (r.signal) c.signal = calibrate_to_chip(*r.signal, chain, Direction::into_chip);
    c.idler = calibrate_to_chip(r.idler, chain, Direction::out_of_chip);
    out.push_back(c);
  }
  return SweepDataset(raw.ring_id(), std::move(out), true, raw.pump_cutoff());
}

}  // namespace ringfwm
