// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "uqcal/errors.hpp"
#include "uqcal/math.hpp"
#include "uqcal/parallel.hpp"

namespace uqcal {

std::uint64_t derive_replicate_seed(std::uint64_t master_seed, std::uint64_t replicate_index) {
  // splitmix64 finalizer over master + (i+1)*odd-gamma: the state map is
  // injective in the index and the finalizer is a bijection.
  std::uint64_t z = master_seed + (replicate_index + 1) * 0x9E3779B97F4A7C15ULL;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::string interval_method_name(IntervalMethod m) {
  switch (m) {
    case IntervalMethod::bca: return "bca";
    case IntervalMethod::percentile: return "percentile";
    case IntervalMethod::mc_quantile: return "mc-quantile";
    case IntervalMethod::analytic_t: return "analytic-t";
  }
  throw InvalidParameter("unknown interval method");
}

namespace {

constexpr std::size_t kGroupedJackknifeThreshold = 20000;
constexpr std::size_t kJackknifeGroups = 200;

// Jackknife acceleration a = sum(d^3) / (6 (sum(d^2))^{3/2}), d_i =
// mean(theta_(.)) - theta_(i). Leave-one-out up to the threshold, then a
// 200-group delete-group jackknife.
double jackknife_acceleration(const PairedSample& sample,
                              const std::function<double(const PairedSample&)>& stat_fn) {
  const std::size_t m = sample.size();
  std::vector<double> loo;
  if (m <= kGroupedJackknifeThreshold) {
    loo.resize(m);
    // Leave-one-out by replacement: buf holds rows [0, m-2]; removing row
    // i from the sample equals replacing buf[i] with the last row, which
    // keeps every iteration O(1) in mutations.
    std::vector<std::size_t> keep(m - 1);
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    PairedSample buf = PairedSample::gather(sample, keep);
    loo[m - 1] = stat_fn(buf);
    const double last_e = sample.errors()[m - 1];
    const double last_u = sample.uncertainties()[m - 1];
    const std::vector<double> last_f = sample.feature_row(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double save_e = buf.errors()[i];
      const double save_u = buf.uncertainties()[i];
      const std::vector<double> save_f = buf.feature_row(i);
      buf.replace_row(i, last_e, last_u, last_f);
      loo[i] = stat_fn(buf);
      buf.replace_row(i, save_e, save_u, save_f);
    }
  } else {
    const auto edges = equal_count_edges(m, kJackknifeGroups);
    loo.resize(kJackknifeGroups);
    std::vector<std::size_t> keep;
    keep.reserve(m);
    for (std::size_t g = 0; g < kJackknifeGroups; ++g) {
      keep.clear();
      for (std::size_t i = 0; i < m; ++i)
        if (i < edges[g] || i >= edges[g + 1]) keep.push_back(i);
      loo[g] = stat_fn(PairedSample::gather(sample, keep));
    }
  }
  const double center = math::mean(loo);
  double s2 = 0.0, s3 = 0.0;
  for (double v : loo) {
    const double d = center - v;
    s2 += d * d;
    s3 += d * d * d;
  }
  if (s2 <= 0.0) return 0.0;
  return s3 / (6.0 * std::pow(s2, 1.5));
}

}  // namespace

IntervalEstimate bootstrap_ci(const PairedSample& sample, const Statistic& stat, std::size_t b,
                              double level, std::uint64_t seed, unsigned threads) {
  return bootstrap_ci(
      sample, [&stat](const PairedSample& s) { return evaluate(stat, s); }, b, level, seed,
      threads);
}

IntervalEstimate bootstrap_ci(const PairedSample& sample,
                              const std::function<double(const PairedSample&)>& stat_fn,
                              std::size_t b, double level, std::uint64_t seed, unsigned threads) {
  if (b < 200) throw InvalidParameter("bootstrap_ci: need B >= 200");
  if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("bootstrap_ci: level outside (0,1)");

  const std::size_t m = sample.size();
  const double point = stat_fn(sample);

  std::vector<double> replicates(b);
  parallel_for(b, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> rows(m);
    for (std::size_t r = begin; r < end; ++r) {
      std::mt19937_64 engine(derive_replicate_seed(seed, r));
      std::uniform_int_distribution<std::size_t> pick(0, m - 1);
      for (std::size_t i = 0; i < m; ++i) rows[i] = pick(engine);
      try {
        replicates[r] = stat_fn(PairedSample::gather(sample, rows));
      } catch (const Error& err) {
        throw Error("bootstrap replicate " + std::to_string(r) + ": " + err.what());
      }
    }
  });

  IntervalEstimate iv;
  iv.point = point;
  iv.level = level;
  iv.replicate_count = b;
  iv.bias = math::mean(replicates) - point;
  iv.method = IntervalMethod::bca;

  std::vector<double> sorted = replicates;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    iv.lower = iv.upper = point;
    iv.degenerate = true;
    return iv;
  }

  const double alpha = 1.0 - level;
  const std::size_t below =
      static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), point) -
                               sorted.begin());
  if (below == 0 || below == b) {
    // z0 would be infinite; use the plain percentile interval.
    iv.method = IntervalMethod::percentile;
    iv.percentile_fallback = true;
    iv.lower = math::quantile_type7_sorted(sorted, alpha / 2.0);
    iv.upper = math::quantile_type7_sorted(sorted, 1.0 - alpha / 2.0);
    return iv;
  }

  const double z0 = math::normal_quantile(static_cast<double>(below) / static_cast<double>(b));
  const double accel = jackknife_acceleration(sample, stat_fn);
  auto adjusted = [&](double q) {
    const double zq = math::normal_quantile(q);
    const double denom = 1.0 - accel * (z0 + zq);
    if (denom <= 0.0) return zq > 0.0 ? 1.0 : 0.0;
    return math::normal_cdf(z0 + (z0 + zq) / denom);
  };
  iv.lower = math::quantile_type7_sorted(sorted, adjusted(alpha / 2.0));
  iv.upper = math::quantile_type7_sorted(sorted, adjusted(1.0 - alpha / 2.0));
  if (iv.lower > iv.upper) std::swap(iv.lower, iv.upper);
  return iv;
}

namespace {

// A statistic bound to a fixed uncertainty vector (canonical order), so
// per-replicate work touches only the synthetic errors. Values match
// evaluate() on a sample assembled in the same order.
class PreparedStatistic {
 public:
  PreparedStatistic(const Statistic& stat, std::vector<double> uncertainties)
      : stat_(stat), u_(std::move(uncertainties)) {
    const std::size_t m = u_.size();
    switch (stat_.kind()) {
      case StatisticKind::ence:
      case StatisticKind::zmse: {
        const BinningConfig& cfg = *stat_.binning();
        if (cfg.bin_count > m)
          throw TooManyBins("simulate_reference: " + std::to_string(cfg.bin_count) +
                            " bins for " + std::to_string(m) + " points");
        if (cfg.min_bin_size > 0 && m / cfg.bin_count < cfg.min_bin_size)
          throw BinTooSmall("simulate_reference: bins smaller than " +
                            std::to_string(cfg.min_bin_size));
        edges_ = equal_count_edges(m, cfg.bin_count);
        break;
      }
      case StatisticKind::cc:
        u_ranks_ = detail::average_ranks(u_);
        break;
      case StatisticKind::nll: {
        double s = 0.0;
        for (double ui : u_) s += std::log(ui * ui);
        mean_ln_u2_ = s / static_cast<double>(m);
        break;
      }
      default:
        break;
    }
  }

  std::span<const double> uncertainties() const { return u_; }

  double operator()(std::span<const double> errors) const {
    const double m = static_cast<double>(u_.size());
    switch (stat_.kind()) {
      case StatisticKind::zms: {
        double s = 0.0;
        for (std::size_t i = 0; i < u_.size(); ++i) {
          const double z = errors[i] / u_[i];
          s += z * z;
        }
        return s / m;
      }
      case StatisticKind::rce: {
        double se = 0.0, su = 0.0;
        for (std::size_t i = 0; i < u_.size(); ++i) {
          se += errors[i] * errors[i];
          su += u_[i] * u_[i];
        }
        const double rmse = std::sqrt(se / m);
        const double rmv = std::sqrt(su / m);
        return (rmv - rmse) / rmv;
      }
      case StatisticKind::nll: {
        double s = 0.0;
        for (std::size_t i = 0; i < u_.size(); ++i) {
          const double z = errors[i] / u_[i];
          s += z * z;
        }
        return 0.5 * (s / m + mean_ln_u2_ + std::log(2.0 * std::numbers::pi));
      }
      case StatisticKind::cc: {
        std::vector<double> abs_e(errors.size());
        for (std::size_t i = 0; i < errors.size(); ++i) abs_e[i] = std::abs(errors[i]);
        return detail::pearson(detail::average_ranks(abs_e), u_ranks_);
      }
      case StatisticKind::ence:
        return detail::ence_prebinned(errors, u_, edges_);
      case StatisticKind::zmse:
        return detail::zmse_prebinned(errors, u_, edges_);
    }
    throw InvalidParameter("unknown statistic kind");
  }

 private:
  Statistic stat_;
  std::vector<double> u_;
  std::vector<std::size_t> edges_;
  std::vector<double> u_ranks_;
  double mean_ln_u2_ = 0.0;
};

}  // namespace

SimulatedReference simulate_reference(std::span<const double> uncertainties, const Statistic& stat,
                                      const GenerativeSpec& d, std::size_t n_mc,
                                      std::uint64_t seed, unsigned threads,
                                      std::span<const double> bin_key) {
  if (n_mc < 100) throw InvalidParameter("simulate_reference: need n_mc >= 100");
  const std::size_t m = uncertainties.size();
  if (m < 2) throw InvalidParameter("simulate_reference: need at least 2 uncertainties");
  if (!bin_key.empty() && bin_key.size() != m)
    throw InvalidParameter("simulate_reference: bin key length mismatch");
  for (double u : uncertainties)
    if (!(u > 0.0) || !std::isfinite(u))
      throw NonPositiveUncertainty("simulate_reference: uncertainty <= 0 or non-finite");

  // Canonical order: binning key, then uncertainty. Every supported
  // statistic is permutation-invariant in the pairs, so the reference is
  // exactly invariant under permutations of the input.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::span<const double> key = bin_key.empty() ? uncertainties : bin_key;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return uncertainties[a] < uncertainties[b];
  });
  std::vector<double> u_sorted(m);
  for (std::size_t i = 0; i < m; ++i) u_sorted[i] = uncertainties[order[i]];

  const PreparedStatistic prepared(stat, std::move(u_sorted));

  SimulatedReference ref;
  ref.generative = d;
  ref.replicates.resize(n_mc);
  auto& replicates = ref.replicates;
  parallel_for(n_mc, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> errors(m);
    for (std::size_t r = begin; r < end; ++r) {
      std::mt19937_64 engine(derive_replicate_seed(seed, r));
      sample_unit_into(d, errors, engine);
      auto u = prepared.uncertainties();
      for (std::size_t i = 0; i < m; ++i) errors[i] *= u[i];
      try {
        replicates[r] = prepared(errors);
      } catch (const Error& err) {
        throw Error("simulated replicate " + std::to_string(r) + ": " + err.what());
      }
    }
  });

  ref.mean = math::mean(replicates);
  ref.standard_error = math::sd(replicates) / std::sqrt(static_cast<double>(n_mc));

  std::vector<double> sorted = replicates;
  std::sort(sorted.begin(), sorted.end());
  IntervalEstimate& iv = ref.mc_quantile_interval;
  iv.point = ref.mean;
  iv.level = 0.95;
  iv.method = IntervalMethod::mc_quantile;
  iv.replicate_count = n_mc;
  iv.lower = math::quantile_type7_sorted(sorted, 0.025);
  iv.upper = math::quantile_type7_sorted(sorted, 0.975);
  iv.degenerate = sorted.front() == sorted.back();
  return ref;
}

}  // namespace uqcal
