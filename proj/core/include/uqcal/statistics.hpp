// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Point estimators of the calibration and correlation statistics.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "uqcal/binning.hpp"
#include "uqcal/sample.hpp"

namespace uqcal {

enum class StatisticKind { zms, cc, rce, ence, zmse, nll };

std::string statistic_name(StatisticKind kind);
StatisticKind parse_statistic(const std::string& name);

/// Equal-count binning setup for the conditional-calibration statistics.
/// feature_index < 0 bins on the uncertainty; otherwise on the given
/// feature column ("consistency" vs "adaptivity").
struct BinningConfig {
  std::size_t bin_count = 20;
  std::size_t min_bin_size = 20;
  int feature_index = -1;
};

/// A statistic selection. ENCE and ZMSE require a BinningConfig; the
/// other statistics forbid one.
class Statistic {
 public:
  Statistic(StatisticKind kind, std::optional<BinningConfig> binning);

  static Statistic zms() { return {StatisticKind::zms, std::nullopt}; }
  static Statistic cc() { return {StatisticKind::cc, std::nullopt}; }
  static Statistic rce() { return {StatisticKind::rce, std::nullopt}; }
  static Statistic nll() { return {StatisticKind::nll, std::nullopt}; }
  static Statistic ence(BinningConfig b) { return {StatisticKind::ence, b}; }
  static Statistic zmse(BinningConfig b) { return {StatisticKind::zmse, b}; }

  StatisticKind kind() const { return kind_; }
  const std::optional<BinningConfig>& binning() const { return binning_; }
  bool binned() const { return binning_.has_value(); }

  /// ZMS and NLL have predefined reference values; the others do not.
  bool has_predefined_reference() const {
    return kind_ == StatisticKind::zms || kind_ == StatisticKind::nll;
  }

 private:
  StatisticKind kind_;
  std::optional<BinningConfig> binning_;
};

/// Mean of squared z-scores; 1 for calibrated data.
double zms(const PairedSample& sample);

/// (RMV - RMSE) / RMV.
double rce(const PairedSample& sample);

/// Spearman rank correlation between |E| and u, average ranks for ties.
/// Throws DegenerateRanks when either variable is constant.
double spearman_cc(const PairedSample& sample);

/// Mean over equal-count bins of |RCE_i|.
double ence(const PairedSample& sample, const BinningConfig& binning);

/// Mean over equal-count bins of |ln ZMS_i|. Throws ZeroBinZMS when a
/// bin's errors are all exactly zero.
double zmse(const PairedSample& sample, const BinningConfig& binning);

/// Gaussian negative log-likelihood, 0.5*(<Z^2> + <ln u^2> + ln 2pi).
double nll(const PairedSample& sample);

/// Its analytic reference, 0.5*(1 + <ln u^2> + ln 2pi); the pair obeys
/// nll - nll_ref = (zms - 1)/2 identically.
double nll_ref(const PairedSample& sample);

/// Robust skewness (mean - median) / mean|x - median|, in [-1, 1] and
/// zero for symmetric data. Throws DegenerateSpread when the deviation
/// term vanishes.
double beta_gm(std::span<const double> values);

/// Dispatch on a Statistic selection.
double evaluate(const Statistic& stat, const PairedSample& sample);

namespace detail {

// Bin accumulations for data already arranged in key-sorted order, with
// edges from equal_count_edges. Shared by the public binned statistics
// and the Monte-Carlo hot loops.
double ence_prebinned(std::span<const double> errors, std::span<const double> uncertainties,
                      std::span<const std::size_t> edges);
double zmse_prebinned(std::span<const double> errors, std::span<const double> uncertainties,
                      std::span<const std::size_t> edges);

// Average ranks (1-based, ties averaged).
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of two equal-length vectors; throws DegenerateRanks
// when either has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace detail

}  // namespace uqcal
