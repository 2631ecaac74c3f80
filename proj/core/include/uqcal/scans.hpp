// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Sensitivity scans, the synthetic scaling-law study and the
// extrapolation-to-zero-bins validation test.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uqcal/generative.hpp"
#include "uqcal/resampling.hpp"
#include "uqcal/sample.hpp"
#include "uqcal/statistics.hpp"

namespace uqcal {

// Reference lines for ENCE/ZMSE against x = sqrt(N/M) on synthetic
// calibrated data (slope, intercept), used for plotting comparisons.
inline constexpr double kEnceNigSlope = 0.56;
inline constexpr double kEnceT6igSlope = 0.779;
inline constexpr double kEnceT6igIntercept = 0.004;
inline constexpr double kZmseNigSlope = 1.14;
inline constexpr double kZmseT6igSlope = 1.577;
inline constexpr double kZmseT6igIntercept = 0.006;

struct NuScanPoint {
  double nu = 0.0;
  double reference = 0.0;
  double reference_se = 0.0;
};

/// Simulated reference of `stat` under t_s(nu) for each nu in the grid
/// (all entries must exceed 2).
std::vector<NuScanPoint> scan_nu(std::span<const double> uncertainties, const Statistic& stat,
                                 std::span<const double> nu_grid, std::size_t n_mc,
                                 std::uint64_t seed, unsigned threads = 0);

struct DatasetScanPoint {
  std::size_t m = 0;
  double reference = 0.0;
  double reference_se = 0.0;
  double reference_sqrt_m = 0.0;  // reference * sqrt(M)
};

/// Per-dataset simulated references with the sqrt(M) size correction.
std::vector<DatasetScanPoint> scan_datasets(const std::vector<PairedSample>& samples,
                                            const Statistic& stat, const GenerativeSpec& d,
                                            std::size_t n_mc, std::uint64_t seed,
                                            unsigned threads = 0);

struct ScalingPoint {
  std::size_t m = 0;
  std::size_t n_bins = 0;
  double nu = 0.0;
  double x = 0.0;  // sqrt(n_bins / m)
  double reference = 0.0;
  double reference_se = 0.0;
};

struct ScalingFit {
  std::vector<ScalingPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  IntervalEstimate intercept_interval;  // analytic t-based, 95%
  bool fit_through_origin = false;
  double reduced_chi2 = 0.0;
  std::vector<double> standardized_residuals;
};

struct ScalingStudy {
  SyntheticModelSpec::Kind model = SyntheticModelSpec::Kind::nig;
  std::size_t n_mc = 0;
  ScalingFit ence;
  ScalingFit zmse;
};

/// Simulated ENCE/ZMSE references over a (M, N, nu) grid of synthetic
/// calibrated datasets, with a weighted fit against sqrt(N/M): through the
/// origin for the NIG model, with an intercept for T6IG. Replicates are
/// shared across N within a grid cell (one synthetic dataset serves every
/// bin count), and weights are 1/se^2.
ScalingStudy scaling_study(SyntheticModelSpec::Kind model, std::span<const std::size_t> m_grid,
                           std::span<const std::size_t> n_grid, std::span<const double> nu_grid,
                           std::size_t n_mc, std::uint64_t seed, unsigned threads = 0);

struct ReferenceLine {
  double slope = 0.0;
  double intercept = 0.0;
};

struct ExtrapolationResult {
  std::vector<std::size_t> bin_counts;
  std::vector<double> x;       // sqrt(N/M)
  std::vector<double> values;  // statistic at each N
  std::size_t fit_point_count = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double intercept_se = 0.0;  // paired-bootstrap standard error
  IntervalEstimate intercept_interval;
  bool consistent = false;  // 0 inside the intercept interval
  ReferenceLine nig_reference;
  ReferenceLine t6ig_reference;
};

/// Estimates the binned statistic for every N in [n_min, n_max] with at
/// least min_bin_size points per bin, fits the points with N >
/// fit_threshold by ordinary least squares against sqrt(N/M), and tests
/// whether the intercept interval contains zero. `kind` must be ence or
/// zmse.
///
/// The per-N values share one error field, so the OLS residual se badly
/// understates the intercept's sampling spread; the interval is therefore
/// intercept +- t-quantile times a paired-bootstrap standard error of the
/// whole procedure (bootstrap_b replicates, deterministic in seed).
/// Throws InsufficientBins when the constraints leave fewer than three
/// fit points.
ExtrapolationResult extrapolate_to_zero_bins(const PairedSample& sample, StatisticKind kind,
                                             std::size_t n_min = 10, std::size_t n_max = 150,
                                             std::size_t min_bin_size = 20,
                                             std::size_t fit_threshold = 20, double level = 0.95,
                                             std::size_t bootstrap_b = 200,
                                             std::uint64_t seed = 1, unsigned threads = 0);

}  // namespace uqcal
