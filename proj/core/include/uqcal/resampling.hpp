// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Bootstrap confidence intervals and Monte-Carlo simulated references.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "uqcal/generative.hpp"
#include "uqcal/sample.hpp"
#include "uqcal/statistics.hpp"

namespace uqcal {

/// Deterministic per-replicate seed stream: injective in the index, so
/// serial and parallel execution see identical streams.
std::uint64_t derive_replicate_seed(std::uint64_t master_seed, std::uint64_t replicate_index);

enum class IntervalMethod { bca, percentile, mc_quantile, analytic_t };

std::string interval_method_name(IntervalMethod m);

struct IntervalEstimate {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  double bias = 0.0;  // mean(replicates) - point for bootstrap methods
  IntervalMethod method = IntervalMethod::bca;
  std::size_t replicate_count = 0;
  bool degenerate = false;           // replicate distribution was a single point
  bool percentile_fallback = false;  // BCa z0 infinite, percentile used instead
};

/// BCa interval from B paired resamples; falls back to the percentile
/// interval (flagged) when every replicate lands on one side of the point
/// estimate. Requires B >= 200. A single-point replicate distribution
/// yields a degenerate [point, point] interval, flagged.
IntervalEstimate bootstrap_ci(const PairedSample& sample, const Statistic& stat, std::size_t b,
                              double level, std::uint64_t seed, unsigned threads = 0);

/// Same, for an arbitrary statistic callback (also the jackknife path).
IntervalEstimate bootstrap_ci(const PairedSample& sample,
                              const std::function<double(const PairedSample&)>& stat_fn,
                              std::size_t b, double level, std::uint64_t seed,
                              unsigned threads = 0);

/// Monte-Carlo reference value of a statistic over synthetic calibrated
/// replicates built from real uncertainties.
struct SimulatedReference {
  double mean = 0.0;
  double standard_error = 0.0;  // sd(replicates) / sqrt(n_mc)
  IntervalEstimate mc_quantile_interval;
  std::vector<double> replicates;
  GenerativeSpec generative = GenerativeSpec::normal();
};

/// n_mc >= 100. Deterministic for a fixed seed at any thread count. The
/// uncertainties are reordered internally by the binning key (then by
/// value), which makes the result exactly permutation-invariant.
/// `bin_key` supplies the feature column when the statistic bins on a
/// feature; empty means bin on the uncertainty.
SimulatedReference simulate_reference(std::span<const double> uncertainties, const Statistic& stat,
                                      const GenerativeSpec& d, std::size_t n_mc,
                                      std::uint64_t seed, unsigned threads = 0,
                                      std::span<const double> bin_key = {});

}  // namespace uqcal
