#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ringfwm/fitting.hpp"

namespace ringfwm {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kStepTolerance = 1e-13;

using Vec3 = Eigen::Vector3d;

// Parameters: centre [nm], Q, T_min.
double residuals(const std::vector<SpectrumSample>& trace, const Vec3& p, Eigen::VectorXd* r,
                 Eigen::MatrixXd* jac) {
  const double l0 = p[0];
  const double q = p[1];
  const double depth = 1.0 - p[2];
  double cost = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double l = trace[i].wavelength_nm;
    const double x = 2.0 * q * (l - l0) / l0;
    const double d = 1.0 + x * x;
    const double model = 1.0 - depth / d;
    const double ri = model - trace[i].transmission;
    cost += ri * ri;
    if (r) (*r)[static_cast<Eigen::Index>(i)] = ri;
    if (jac) {
      const double dmodel_dx = depth * 2.0 * x / (d * d);
      const auto row = static_cast<Eigen::Index>(i);
      (*jac)(row, 0) = dmodel_dx * (-2.0 * q * l / (l0 * l0));
      (*jac)(row, 1) = dmodel_dx * (x / q);
      (*jac)(row, 2) = 1.0 / d;
    }
  }
  return cost;
}

// Half-depth crossing by linear interpolation, searching outward from the
// minimum. Returns NaN when the trace never climbs back above `level`.
double crossing(const std::vector<SpectrumSample>& trace, std::size_t imin, double level, int step) {
  auto i = static_cast<std::ptrdiff_t>(imin);
  const auto n = static_cast<std::ptrdiff_t>(trace.size());
  while (true) {
    const std::ptrdiff_t j = i + step;
    if (j < 0 || j >= n) return std::nan("");
    const auto& a = trace[static_cast<std::size_t>(i)];
    const auto& b = trace[static_cast<std::size_t>(j)];
    if (b.transmission >= level) {
      const double t = (level - a.transmission) / (b.transmission - a.transmission);
      return a.wavelength_nm + t * (b.wavelength_nm - a.wavelength_nm);
    }
    i = j;
  }
}

FitResult make_result(const char* name, const char* unit, double value, double sigma, double rnorm, std::size_t n) {
  FitResult f;
  f.parameter = name;
  f.unit = unit;
  f.value = value;
  f.uncertainty = sigma;
  f.residual_norm = rnorm;
  f.n_points_used = n;
  return f;
}

}  // namespace

LorentzianFit fit_lorentzian(const std::vector<SpectrumSample>& trace) {
  const std::size_t n = trace.size();
  if (n < 7) throw FitError("Lorentzian fit needs at least 7 samples, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(trace[i].wavelength_nm) || !std::isfinite(trace[i].transmission)) {
      throw FitError("trace sample " + std::to_string(i + 1) + " is not finite");
    }
    if (!(trace[i].wavelength_nm > 0.0)) throw FitError("trace wavelengths must be positive");
    if (i > 0 && !(trace[i].wavelength_nm > trace[i - 1].wavelength_nm)) {
      throw FitError("trace wavelengths must be strictly increasing");
    }
  }

  const auto min_it = std::min_element(trace.begin(), trace.end(),
                                       [](const auto& a, const auto& b) { return a.transmission < b.transmission; });
  const auto max_it = std::max_element(trace.begin(), trace.end(),
                                       [](const auto& a, const auto& b) { return a.transmission < b.transmission; });
  if (max_it->transmission - min_it->transmission < 1e-9 || min_it->transmission >= 1.0) {
    throw FitError("trace shows no resonance dip (flat transmission); Q cannot be extracted");
  }

  // Initial guess from the deepest sample and its half-depth crossings.
  const auto imin = static_cast<std::size_t>(min_it - trace.begin());
  const double center0 = min_it->wavelength_nm;
  const double tmin0 = std::clamp(min_it->transmission, 0.0, 1.0);
  const double level = 0.5 * (1.0 + tmin0);
  const double left = crossing(trace, imin, level, -1);
  const double right = crossing(trace, imin, level, +1);
  double fwhm = 0.0;
  if (std::isfinite(left) && std::isfinite(right)) {
    fwhm = right - left;
  } else if (std::isfinite(left)) {
    fwhm = 2.0 * (center0 - left);
  } else if (std::isfinite(right)) {
    fwhm = 2.0 * (right - center0);
  } else {
    throw FitError("insufficient span: trace never rises above the half-depth level on either side of the dip");
  }
  if (!(fwhm > 0.0)) {
    const double spacing = (trace.back().wavelength_nm - trace.front().wavelength_nm) / static_cast<double>(n - 1);
    fwhm = spacing;
  }

  Vec3 p(center0, center0 / fwhm, tmin0);
  Eigen::VectorXd r(static_cast<Eigen::Index>(n));
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(n), 3);
  double cost = residuals(trace, p, &r, &jac);
  double mu = 1e-3;
  bool converged = false;
  int iter = 0;
  for (; iter < kMaxIterations && !converged; ++iter) {
    const Eigen::Matrix3d a = jac.transpose() * jac;
    const Vec3 g = jac.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() == 0.0) {
      converged = true;
      break;
    }
    bool accepted = false;
    while (!accepted) {
      Eigen::Matrix3d damped = a;
      for (int k = 0; k < 3; ++k) damped(k, k) += mu * std::max(a(k, k), 1e-300);
      const Vec3 step = damped.ldlt().solve(-g);
      const Vec3 trial = p + step;
      if (trial[0] > 0.0 && trial[1] > 0.0 && step.allFinite()) {
        const double trial_cost = residuals(trace, trial, nullptr, nullptr);
        if (trial_cost <= cost) {
          const bool small = (step.array().abs() <= kStepTolerance * (trial.array().abs() + 1e-12)).all();
          p = trial;
          cost = residuals(trace, p, &r, &jac);
          mu = std::max(mu * 0.3, 1e-15);
          accepted = true;
          converged = small;
          break;
        }
      }
      mu *= 10.0;
      if (mu > 1e20) {
        // No downhill step exists at working precision: a minimum.
        converged = true;
        break;
      }
    }
  }
  if (!converged) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "Lorentzian fit did not converge after %d iterations (centre %.6f nm, Q %.4g, T_min %.4g, "
                  "residual %.3g)",
                  iter, p[0], p[1], p[2], std::sqrt(cost));
    throw FitError(buf);
  }

  // Equilibrate the columns before inverting; centre and Q sensitivities
  // differ by many decades.
  Vec3 scale;
  for (int k = 0; k < 3; ++k) {
    const double norm = jac.col(k).norm();
    if (!(norm > 0.0)) throw FitError("Lorentzian fit is degenerate: parameters are not identifiable");
    scale[k] = 1.0 / norm;
  }
  const Eigen::MatrixXd scaled_jac = jac * scale.asDiagonal();
  const Eigen::Matrix3d a = scaled_jac.transpose() * scaled_jac;
  const Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
  if (!lu.isInvertible()) throw FitError("Lorentzian fit is degenerate: parameters are not identifiable");
  const double s2 = cost / static_cast<double>(n - 3);
  const Eigen::Matrix3d cov = scale.asDiagonal() * (s2 * lu.inverse()) * scale.asDiagonal();
  const double rnorm = std::sqrt(cost);

  LorentzianFit out;
  out.center = make_result("center", "nm", p[0], std::sqrt(std::max(cov(0, 0), 0.0)), rnorm, n);
  out.quality_factor = make_result("quality_factor", "1", p[1], std::sqrt(std::max(cov(1, 1), 0.0)), rnorm, n);
  out.min_transmission = make_result("min_transmission", "1", p[2], std::sqrt(std::max(cov(2, 2), 0.0)), rnorm, n);
  out.iterations = iter;

  if (!(p[2] < 1.0)) throw FitError("fitted dip has no depth; Q is unusable");
  if (out.quality_factor.uncertainty >= out.quality_factor.value) {
    throw FitError("Q uncertainty spans the estimate; the trace is unusable");
  }
  const double linewidth = p[0] / p[1];
  const double span = trace.back().wavelength_nm - trace.front().wavelength_nm;
  if (span < 0.5 * linewidth) {
    throw FitError("insufficient span: trace covers less than half a linewidth");
  }
  return out;
}

CombLine identify_resonance(const RingParams& ring, units::Length fitted_center) {
  return nearest_resonance(ring, fitted_center);
}

}  // namespace ringfwm
