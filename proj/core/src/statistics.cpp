// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "uqcal/errors.hpp"
#include "uqcal/math.hpp"

namespace uqcal {

std::string statistic_name(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::zms: return "zms";
    case StatisticKind::cc: return "cc";
    case StatisticKind::rce: return "rce";
    case StatisticKind::ence: return "ence";
    case StatisticKind::zmse: return "zmse";
    case StatisticKind::nll: return "nll";
  }
  throw InvalidParameter("unknown statistic kind");
}

StatisticKind parse_statistic(const std::string& name) {
  if (name == "zms") return StatisticKind::zms;
  if (name == "cc") return StatisticKind::cc;
  if (name == "rce") return StatisticKind::rce;
  if (name == "ence") return StatisticKind::ence;
  if (name == "zmse") return StatisticKind::zmse;
  if (name == "nll") return StatisticKind::nll;
  throw InvalidParameter("unknown statistic '" + name + "'");
}

Statistic::Statistic(StatisticKind kind, std::optional<BinningConfig> binning)
    : kind_(kind), binning_(std::move(binning)) {
  const bool needs_bins = kind_ == StatisticKind::ence || kind_ == StatisticKind::zmse;
  if (needs_bins && !binning_)
    throw InvalidParameter(statistic_name(kind_) + " requires a binning config");
  if (!needs_bins && binning_)
    throw InvalidParameter(statistic_name(kind_) + " does not take a binning config");
}

double zms(const PairedSample& sample) {
  auto e = sample.errors();
  auto u = sample.uncertainties();
  double s = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double z = e[i] / u[i];
    s += z * z;
  }
  return s / static_cast<double>(sample.size());
}

double rce(const PairedSample& sample) {
  auto e = sample.errors();
  auto u = sample.uncertainties();
  double se = 0.0, su = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    se += e[i] * e[i];
    su += u[i] * u[i];
  }
  const double rmse = std::sqrt(se / static_cast<double>(sample.size()));
  const double rmv = std::sqrt(su / static_cast<double>(sample.size()));
  return (rmv - rmse) / rmv;
}

namespace detail {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based mid rank
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double ma = math::mean(a), mb = math::mean(b);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa <= 0.0 || sbb <= 0.0)
    throw DegenerateRanks("correlation undefined: a variable has zero rank variance");
  return sab / std::sqrt(saa * sbb);
}

double ence_prebinned(std::span<const double> errors, std::span<const double> uncertainties,
                      std::span<const std::size_t> edges) {
  const std::size_t n_bins = edges.size() - 1;
  double acc = 0.0;
  for (std::size_t k = 0; k < n_bins; ++k) {
    double se = 0.0, su = 0.0;
    for (std::size_t i = edges[k]; i < edges[k + 1]; ++i) {
      se += errors[i] * errors[i];
      su += uncertainties[i] * uncertainties[i];
    }
    const double count = static_cast<double>(edges[k + 1] - edges[k]);
    const double rmse = std::sqrt(se / count);
    const double rmv = std::sqrt(su / count);
    acc += std::abs((rmv - rmse) / rmv);
  }
  return acc / static_cast<double>(n_bins);
}

double zmse_prebinned(std::span<const double> errors, std::span<const double> uncertainties,
                      std::span<const std::size_t> edges) {
  const std::size_t n_bins = edges.size() - 1;
  double acc = 0.0;
  for (std::size_t k = 0; k < n_bins; ++k) {
    double sz = 0.0;
    for (std::size_t i = edges[k]; i < edges[k + 1]; ++i) {
      const double z = errors[i] / uncertainties[i];
      sz += z * z;
    }
    const double bin_zms = sz / static_cast<double>(edges[k + 1] - edges[k]);
    if (bin_zms <= 0.0)
      throw ZeroBinZMS("zmse: bin " + std::to_string(k) + " has zero ZMS (all errors zero)");
    acc += std::abs(std::log(bin_zms));
  }
  return acc / static_cast<double>(n_bins);
}

}  // namespace detail

double spearman_cc(const PairedSample& sample) {
  if (sample.size() < 3) throw InvalidParameter("spearman_cc: need at least 3 rows");
  std::vector<double> abs_e(sample.size());
  auto e = sample.errors();
  for (std::size_t i = 0; i < sample.size(); ++i) abs_e[i] = std::abs(e[i]);
  const auto ra = detail::average_ranks(abs_e);
  const auto rb = detail::average_ranks(sample.uncertainties());
  return detail::pearson(ra, rb);
}

namespace {

std::span<const double> binning_key(const PairedSample& sample, const BinningConfig& binning) {
  if (binning.feature_index < 0) return sample.uncertainties();
  return sample.feature(static_cast<std::size_t>(binning.feature_index));
}

void check_bin_sizes(std::size_t m, const BinningConfig& binning) {
  if (binning.bin_count > m)
    throw TooManyBins("binning: " + std::to_string(binning.bin_count) + " bins for " +
                      std::to_string(m) + " points");
  if (binning.min_bin_size > 0 && m / binning.bin_count < binning.min_bin_size)
    throw BinTooSmall("binning: " + std::to_string(m) + "/" + std::to_string(binning.bin_count) +
                      " points per bin, need at least " + std::to_string(binning.min_bin_size));
}

// Gather (E, u) into key-sorted order and hand off to the shared bin math.
template <typename Fn>
double binned_statistic(const PairedSample& sample, const BinningConfig& binning, Fn&& fn) {
  check_bin_sizes(sample.size(), binning);
  const auto bins = equal_count_bins(binning_key(sample, binning), binning.bin_count);
  std::vector<double> e(sample.size()), u(sample.size());
  auto se = sample.errors();
  auto su = sample.uncertainties();
  for (std::size_t i = 0; i < bins.order.size(); ++i) {
    e[i] = se[bins.order[i]];
    u[i] = su[bins.order[i]];
  }
  return fn(std::span<const double>(e), std::span<const double>(u),
            std::span<const std::size_t>(bins.edges));
}

}  // namespace

double ence(const PairedSample& sample, const BinningConfig& binning) {
  return binned_statistic(sample, binning, detail::ence_prebinned);
}

double zmse(const PairedSample& sample, const BinningConfig& binning) {
  return binned_statistic(sample, binning, detail::zmse_prebinned);
}

double nll(const PairedSample& sample) {
  auto u = sample.uncertainties();
  double s = 0.0;
  for (double ui : u) s += std::log(ui * ui);
  const double mean_ln_u2 = s / static_cast<double>(sample.size());
  return 0.5 * (zms(sample) + mean_ln_u2 + std::log(2.0 * std::numbers::pi));
}

double nll_ref(const PairedSample& sample) {
  auto u = sample.uncertainties();
  double s = 0.0;
  for (double ui : u) s += std::log(ui * ui);
  const double mean_ln_u2 = s / static_cast<double>(sample.size());
  return 0.5 * (1.0 + mean_ln_u2 + std::log(2.0 * std::numbers::pi));
}

double beta_gm(std::span<const double> values) {
  if (values.size() < 3) throw InvalidParameter("beta_gm: need at least 3 values");
  const double med = math::median(values);
  double mad = 0.0;
  for (double x : values) mad += std::abs(x - med);
  mad /= static_cast<double>(values.size());
  if (mad <= 0.0) throw DegenerateSpread("beta_gm: zero mean absolute deviation");
  const double raw = (math::mean(values) - med) / mad;
  return std::clamp(raw, -1.0, 1.0);
}

double evaluate(const Statistic& stat, const PairedSample& sample) {
  switch (stat.kind()) {
    case StatisticKind::zms: return zms(sample);
    case StatisticKind::cc: return spearman_cc(sample);
    case StatisticKind::rce: return rce(sample);
    case StatisticKind::ence: return ence(sample, *stat.binning());
    case StatisticKind::zmse: return zmse(sample, *stat.binning());
    case StatisticKind::nll: return nll(sample);
  }
  throw InvalidParameter("unknown statistic kind");
}

}  // namespace uqcal
