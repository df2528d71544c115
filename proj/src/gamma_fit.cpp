#include <cmath>
#include <numeric>
#include <random>

#include "ringfwm/fitting.hpp"

namespace ringfwm {

using namespace units;

namespace {

// Least-squares slope through the origin of y against x.
struct OriginFit {
  double slope;
  double sxx;
  double rss;
};

OriginFit fit_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - slope * x[i];
    rss += r * r;
  }
  return {slope, sxx, rss};
}

}  // namespace

GammaFit fit_gamma(const SweepDataset& sweep, const RingParams& ring, const FitOptions& options) {
  if (sweep.kind() != SweepKind::stimulated) {
    throw ConfigError("gamma fit needs a stimulated sweep (signal power in every record)");
  }
  if (!sweep.powers_are_on_chip()) {
    throw ConfigError("sweep '" + sweep.ring_id() + "' holds raw powers; calibrate it to on-chip powers first");
  }
  const std::vector<SweepRecord> usable = sweep.usable_records();
  GammaFit out;
  out.excluded = sweep.excluded_indices();
  if (usable.empty()) {
    throw FitError("no records at or below the pump cutoff of " + format_power(sweep.pump_cutoff()));
  }
  if (usable.size() < 3) {
    throw FitError("gamma fit needs at least 3 records below the pump cutoff, got " + std::to_string(usable.size()));
  }

  // P_i = γ²·(2πR)²·F⁴·P_s·P_p²; everything but γ² is known.
  const double two_pi_r = 2.0 * constants::pi * ring.radius().si();
  const double f = value(enhancement_factor(ring));
  const double known = two_pi_r * two_pi_r * f * f * f * f;

  std::vector<double> x;
  std::vector<double> y;
  for (const auto& r : usable) {
    x.push_back(known * r.signal->si() * r.pump.si() * r.pump.si());
    y.push_back(r.idler.si());
  }
  const OriginFit fit = fit_through_origin(x, y);
  if (!(fit.sxx > 0.0)) throw FitError("all usable records have zero pump or signal power");
  if (fit.slope < 0.0) throw FitError("fitted gamma^2 is negative: inconsistent data");

  const double gamma = std::sqrt(fit.slope);
  const std::size_t n = x.size();
  const double slope_sigma = std::sqrt(fit.rss / static_cast<double>(n - 1) / fit.sxx);
  double sigma = gamma > 0.0 ? slope_sigma / (2.0 * gamma) : std::sqrt(slope_sigma);

  if (options.bootstrap_samples > 0) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> samples;
    std::vector<double> bx(n);
    std::vector<double> by(n);
    for (int b = 0; b < options.bootstrap_samples; ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = pick(rng);
        bx[i] = x[j];
        by[i] = y[j];
      }
      const OriginFit bf = fit_through_origin(bx, by);
      if (bf.sxx > 0.0 && bf.slope >= 0.0) samples.push_back(std::sqrt(bf.slope));
    }
    if (samples.size() >= 2) {
      const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
      double var = 0.0;
      for (double s : samples) var += (s - mean) * (s - mean);
      sigma = std::sqrt(var / static_cast<double>(samples.size() - 1));
    }
  }

  out.gamma.parameter = "gamma";
  out.gamma.unit = "W^-1 m^-1";
  out.gamma.value = gamma;
  out.gamma.uncertainty = sigma;
  out.gamma.residual_norm = std::sqrt(fit.rss);
  out.gamma.n_points_used = n;
  out.gamma.n_points_excluded = out.excluded.size();
  return out;
}

GammaFit fit_gamma(const SweepDataset& sweep, const RingParams& ring, const CalibrationChain& chain,
                   const FitOptions& options) {
  return fit_gamma(calibrate_sweep(sweep, chain), ring, options);
}

}  // namespace ringfwm
