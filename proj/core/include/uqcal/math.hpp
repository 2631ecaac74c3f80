// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Small numeric helpers shared across the library: moment summaries,
// interpolated quantiles, normal / Student-t quantile functions and a
// weighted line fit.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uqcal::math {

double mean(std::span<const double> v);

/// Sample variance (denominator n-1). Requires n >= 2.
double variance(std::span<const double> v);

/// Sample standard deviation (denominator n-1).
double sd(std::span<const double> v);

/// Median via a sorted copy; even n averages the two middle values.
double median(std::span<const double> v);

/// Linear interpolation between order statistics (R type-7 rule,
/// h = (n-1)p + 1). Input must be sorted ascending; p outside [0,1] clamps
/// to the extremes.
double quantile_type7_sorted(std::span<const double> sorted, double p);

/// Convenience: copies and sorts, then applies the type-7 rule.
double quantile_type7(std::span<const double> v, double p);

double normal_cdf(double x);
double normal_quantile(double p);

/// Two-sided Student-t quantile, p in (0,1), dof > 0.
double student_t_quantile(double p, double dof);

/// Weighted least-squares line y = intercept + slope * x.
///
/// Standard errors are scaled by the reduced chi-square, so for unit
/// weights they reduce to the classic OLS expressions.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  double reduced_chi2 = 0.0;
  std::size_t dof = 0;
};

/// weights empty means unweighted; through_origin forces intercept = 0.
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> weights, bool through_origin);

}  // namespace uqcal::math
