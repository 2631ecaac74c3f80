// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/math.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "uqcal/errors.hpp"

namespace uqcal::math {

double mean(std::span<const double> v) {
  if (v.empty()) throw InvalidParameter("mean: empty input");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
  if (v.size() < 2) throw InvalidParameter("variance: need at least 2 values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double sd(std::span<const double> v) { return std::sqrt(variance(v)); }

double median(std::span<const double> v) {
  if (v.empty()) throw InvalidParameter("median: empty input");
  std::vector<double> tmp(v.begin(), v.end());
  const std::size_t n = tmp.size();
  const std::size_t mid = n / 2;
  std::nth_element(tmp.begin(), tmp.begin() + mid, tmp.end());
  double hi = tmp[mid];
  if (n % 2 == 1) return hi;
  double lo = *std::max_element(tmp.begin(), tmp.begin() + mid);
  return 0.5 * (lo + hi);
}

double quantile_type7_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InvalidParameter("quantile: empty input");
  const std::size_t n = sorted.size();
  if (p <= 0.0) return sorted.front();
  if (p >= 1.0) return sorted.back();
  const double h = static_cast<double>(n - 1) * p;
  const std::size_t i = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(i);
  if (i + 1 >= n) return sorted.back();
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

double quantile_type7(std::span<const double> v, double p) {
  std::vector<double> tmp(v.begin(), v.end());
  std::sort(tmp.begin(), tmp.end());
  return quantile_type7_sorted(tmp, p);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("normal_quantile: p outside (0,1)");
  static const boost::math::normal_distribution<double> dist(0.0, 1.0);
  return boost::math::quantile(dist, p);
}

double student_t_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("student_t_quantile: p outside (0,1)");
  if (!(dof > 0.0)) throw InvalidParameter("student_t_quantile: dof must be positive");
  const boost::math::students_t_distribution<double> dist(dof);
  return boost::math::quantile(dist, p);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> weights, bool through_origin) {
  const std::size_t n = x.size();
  if (y.size() != n) throw InvalidParameter("fit_line: size mismatch");
  if (!weights.empty() && weights.size() != n) throw InvalidParameter("fit_line: weight size mismatch");
  const std::size_t params = through_origin ? 1 : 2;
  if (n < params + 1) throw InvalidParameter("fit_line: not enough points");

  auto w = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };

  LineFit fit;
  if (through_origin) {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += w(i) * x[i] * x[i];
      sxy += w(i) * x[i] * y[i];
    }
    if (sxx <= 0.0) throw InvalidParameter("fit_line: degenerate regressor");
    fit.slope = sxy / sxx;
    fit.dof = n - 1;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.slope * x[i];
      rss += w(i) * r * r;
    }
    fit.reduced_chi2 = rss / static_cast<double>(fit.dof);
    fit.slope_se = std::sqrt(fit.reduced_chi2 / sxx);
    return fit;
  }

  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w(i);
    sx += w(i) * x[i];
    sy += w(i) * y[i];
    sxx += w(i) * x[i] * x[i];
    sxy += w(i) * x[i] * y[i];
  }
  const double delta = sw * sxx - sx * sx;
  if (delta <= 0.0) throw InvalidParameter("fit_line: degenerate regressor");
  fit.slope = (sw * sxy - sx * sy) / delta;
  fit.intercept = (sxx * sy - sx * sxy) / delta;
  fit.dof = n - 2;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    rss += w(i) * r * r;
  }
  fit.reduced_chi2 = rss / static_cast<double>(fit.dof);
  fit.slope_se = std::sqrt(fit.reduced_chi2 * sw / delta);
  fit.intercept_se = std::sqrt(fit.reduced_chi2 * sxx / delta);
  return fit;
}

}  // namespace uqcal::math
