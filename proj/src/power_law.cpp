#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <random>

#include "ringfwm/fitting.hpp"

namespace ringfwm {

namespace {

struct LineFit {
  double slope;
  double intercept;
  double rss;
  double sxx;
};

// Centred sums keep the slope exact for points lying on a line.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    rss += r * r;
  }
  return {slope, intercept, rss, sxx};
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<PowerLawPoint>& points, const PowerLawOptions& options) {
  if (points.size() < 3) {
    throw FitError("power-law fit needs at least 3 points, got " + std::to_string(points.size()));
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& p : points) {
    if (!(p.x > 0.0) || !(p.y > 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DomainError("power-law fit needs strictly positive finite x and y");
    }
    lx.push_back(std::log(p.x));
    ly.push_back(std::log(p.y));
  }
  const LineFit fit = fit_line(lx, ly);
  if (!(fit.sxx > 0.0)) throw FitError("power-law fit needs at least two distinct x values");

  const std::size_t n = points.size();
  const auto dof = static_cast<double>(n - 2);
  double sigma = std::sqrt(fit.rss / dof / fit.sxx);

  if (options.fit.bootstrap_samples > 0) {
    std::mt19937_64 rng(options.fit.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> slopes;
    std::vector<double> bx(n);
    std::vector<double> by(n);
    for (int b = 0; b < options.fit.bootstrap_samples; ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = pick(rng);
        bx[i] = lx[j];
        by[i] = ly[j];
      }
      const LineFit bf = fit_line(bx, by);
      if (bf.sxx > 0.0) slopes.push_back(bf.slope);
    }
    if (slopes.size() >= 2) {
      double mean = 0.0;
      for (double s : slopes) mean += s;
      mean /= static_cast<double>(slopes.size());
      double var = 0.0;
      for (double s : slopes) var += (s - mean) * (s - mean);
      sigma = std::sqrt(var / static_cast<double>(slopes.size() - 1));
    }
  }

  PowerLawFit out;
  out.exponent.parameter = "exponent";
  out.exponent.unit = "1";
  out.exponent.value = fit.slope;
  out.exponent.uncertainty = sigma;
  out.exponent.residual_norm = std::sqrt(fit.rss);
  out.exponent.n_points_used = n;
  const boost::math::students_t_distribution<double> t(dof);
  out.exponent.confidence_95 = boost::math::quantile(boost::math::complement(t, 0.025)) * sigma;
  out.prefactor = std::exp(fit.intercept);
  if (options.expected_exponent) {
    out.expected_exponent = options.expected_exponent;
    const double allowed = std::max(2.0 * sigma, options.absolute_tolerance);
    out.consistent = std::fabs(fit.slope - *options.expected_exponent) <= allowed;
  }
  return out;
}

}  // namespace ringfwm
