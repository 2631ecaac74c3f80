// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/scans.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "uqcal/errors.hpp"
#include "uqcal/math.hpp"
#include "uqcal/parallel.hpp"

namespace uqcal {

std::vector<NuScanPoint> scan_nu(std::span<const double> uncertainties, const Statistic& stat,
                                 std::span<const double> nu_grid, std::size_t n_mc,
                                 std::uint64_t seed, unsigned threads) {
  if (nu_grid.empty()) throw InvalidParameter("scan_nu: empty grid");
  for (double nu : nu_grid)
    if (!(nu > 2.0)) throw InvalidParameter("scan_nu: grid values must exceed 2");
  std::vector<NuScanPoint> out;
  out.reserve(nu_grid.size());
  for (std::size_t i = 0; i < nu_grid.size(); ++i) {
    const auto ref =
        simulate_reference(uncertainties, stat, GenerativeSpec::scaled_student_t(nu_grid[i]),
                           n_mc, derive_replicate_seed(seed, i), threads);
    out.push_back({nu_grid[i], ref.mean, ref.standard_error});
  }
  return out;
}

std::vector<DatasetScanPoint> scan_datasets(const std::vector<PairedSample>& samples,
                                            const Statistic& stat, const GenerativeSpec& d,
                                            std::size_t n_mc, std::uint64_t seed,
                                            unsigned threads) {
  std::vector<DatasetScanPoint> out;
  out.reserve(samples.size());
  // Every dataset sees the same replicate seed stream, so identical
  // datasets produce identical references.
  for (const PairedSample& sample : samples) {
    const auto ref =
        simulate_reference(sample.uncertainties(), stat, d, n_mc, seed, threads);
    const double root_m = std::sqrt(static_cast<double>(sample.size()));
    out.push_back({sample.size(), ref.mean, ref.standard_error, ref.mean * root_m});
  }
  return out;
}

namespace {

IntervalEstimate t_interval(double center, double se, std::size_t dof, double level) {
  IntervalEstimate iv;
  iv.point = center;
  iv.level = level;
  iv.method = IntervalMethod::analytic_t;
  if (se > 0.0 && dof > 0) {
    const double t = math::student_t_quantile(0.5 * (1.0 + level), static_cast<double>(dof));
    iv.lower = center - t * se;
    iv.upper = center + t * se;
  } else {
    iv.lower = iv.upper = center;
    iv.degenerate = true;
  }
  return iv;
}

ScalingFit fit_scaling_points(std::vector<ScalingPoint> points, bool through_origin) {
  ScalingFit fit;
  fit.fit_through_origin = through_origin;
  std::vector<double> x, y, w;
  x.reserve(points.size());
  for (const ScalingPoint& p : points) {
    x.push_back(p.x);
    y.push_back(p.reference);
    w.push_back(p.reference_se > 0.0 ? 1.0 / (p.reference_se * p.reference_se) : 1.0);
  }
  const math::LineFit line = math::fit_line(x, y, w, through_origin);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.slope_se = line.slope_se;
  fit.intercept_se = line.intercept_se;
  fit.reduced_chi2 = line.reduced_chi2;
  fit.intercept_interval =
      through_origin ? t_interval(0.0, 0.0, 0, 0.95)
                     : t_interval(line.intercept, line.intercept_se, line.dof, 0.95);
  fit.standardized_residuals.reserve(points.size());
  for (const ScalingPoint& p : points) {
    const double predicted = fit.intercept + fit.slope * p.x;
    const double scale = p.reference_se > 0.0 ? p.reference_se : 1.0;
    fit.standardized_residuals.push_back((p.reference - predicted) / scale);
  }
  fit.points = std::move(points);
  return fit;
}

}  // namespace

ScalingStudy scaling_study(SyntheticModelSpec::Kind model, std::span<const std::size_t> m_grid,
                           std::span<const std::size_t> n_grid, std::span<const double> nu_grid,
                           std::size_t n_mc, std::uint64_t seed, unsigned threads) {
  if (m_grid.empty() || n_grid.empty() || nu_grid.empty())
    throw InvalidParameter("scaling_study: empty grid");
  if (n_mc < 100) throw InvalidParameter("scaling_study: need n_mc >= 100");
  for (double nu : nu_grid)
    if (!(nu > 2.0)) throw InvalidParameter("scaling_study: uncertainty nu must exceed 2");
  for (std::size_t m : m_grid)
    for (std::size_t n : n_grid)
      if (n > m) throw TooManyBins("scaling_study: bin count exceeds dataset size");

  const GenerativeSpec d = model == SyntheticModelSpec::Kind::nig
                               ? GenerativeSpec::normal()
                               : GenerativeSpec::scaled_student_t(6.0);

  ScalingStudy study;
  study.model = model;
  study.n_mc = n_mc;

  // One synthetic dataset per replicate serves every bin count and both
  // statistics, so the expensive draws and the sort happen once.
  std::size_t cell = 0;
  for (std::size_t m : m_grid) {
    for (double nu : nu_grid) {
      std::vector<std::vector<std::size_t>> edges_by_n;
      edges_by_n.reserve(n_grid.size());
      for (std::size_t n : n_grid) edges_by_n.push_back(equal_count_edges(m, n));

      std::vector<std::vector<double>> ence_reps(n_grid.size()),
          zmse_reps(n_grid.size());
      for (auto& v : ence_reps) v.resize(n_mc);
      for (auto& v : zmse_reps) v.resize(n_mc);

      const std::uint64_t cell_seed = derive_replicate_seed(seed, cell++);
      parallel_for(n_mc, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> u(m), e(m);
        for (std::size_t r = begin; r < end; ++r) {
          std::mt19937_64 engine(derive_replicate_seed(cell_seed, r));
          // fresh distribution per replicate: gamma keeps internal normal
          // state between calls, which would leak across chunk boundaries
          std::gamma_distribution<double> gamma(nu / 2.0, 2.0 / nu);
          for (double& ui : u) {
            double g = 0.0;
            do {
              g = gamma(engine);
            } while (!(g > 0.0) || !std::isfinite(g));
            ui = std::sqrt(1.0 / g);
          }
          std::sort(u.begin(), u.end());
          sample_unit_into(d, e, engine);
          for (std::size_t i = 0; i < m; ++i) e[i] *= u[i];
          for (std::size_t k = 0; k < edges_by_n.size(); ++k) {
            ence_reps[k][r] = detail::ence_prebinned(e, u, edges_by_n[k]);
            zmse_reps[k][r] = detail::zmse_prebinned(e, u, edges_by_n[k]);
          }
        }
      });

      const double root_n_mc = std::sqrt(static_cast<double>(n_mc));
      for (std::size_t k = 0; k < n_grid.size(); ++k) {
        const double x = std::sqrt(static_cast<double>(n_grid[k]) / static_cast<double>(m));
        study.ence.points.push_back({m, n_grid[k], nu, x, math::mean(ence_reps[k]),
                                     math::sd(ence_reps[k]) / root_n_mc});
        study.zmse.points.push_back({m, n_grid[k], nu, x, math::mean(zmse_reps[k]),
                                     math::sd(zmse_reps[k]) / root_n_mc});
      }
    }
  }

  const bool through_origin = model == SyntheticModelSpec::Kind::nig;
  study.ence = fit_scaling_points(std::move(study.ence.points), through_origin);
  study.zmse = fit_scaling_points(std::move(study.zmse.points), through_origin);
  return study;
}

namespace {

// Per-N statistic values of a sample given in key-sorted order.
void ladder_values(std::span<const double> e, std::span<const double> u, StatisticKind kind,
                   std::size_t n_min, std::size_t n_hi, std::vector<double>* out) {
  const std::size_t m = e.size();
  out->clear();
  for (std::size_t n = n_min; n <= n_hi; ++n) {
    const auto edges = equal_count_edges(m, n);
    out->push_back(kind == StatisticKind::ence ? detail::ence_prebinned(e, u, edges)
                                               : detail::zmse_prebinned(e, u, edges));
  }
}

void sort_by_uncertainty(std::span<const double> e_in, std::span<const double> u_in,
                         std::vector<double>* e, std::vector<double>* u) {
  const std::size_t m = e_in.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (u_in[a] != u_in[b]) return u_in[a] < u_in[b];
    return a < b;
  });
  e->resize(m);
  u->resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    (*e)[i] = e_in[order[i]];
    (*u)[i] = u_in[order[i]];
  }
}

}  // namespace

ExtrapolationResult extrapolate_to_zero_bins(const PairedSample& sample, StatisticKind kind,
                                             std::size_t n_min, std::size_t n_max,
                                             std::size_t min_bin_size, std::size_t fit_threshold,
                                             double level, std::size_t bootstrap_b,
                                             std::uint64_t seed, unsigned threads) {
  if (kind != StatisticKind::ence && kind != StatisticKind::zmse)
    throw InvalidParameter("extrapolate_to_zero_bins: statistic must be ence or zmse");
  if (n_min == 0 || n_max < n_min)
    throw InvalidParameter("extrapolate_to_zero_bins: bad bin range");
  if (bootstrap_b < 50)
    throw InvalidParameter("extrapolate_to_zero_bins: need at least 50 bootstrap replicates");
  const std::size_t m = sample.size();
  const std::size_t n_cap = min_bin_size > 0 ? m / min_bin_size : m;
  const std::size_t n_hi = std::min(n_max, n_cap);
  if (n_hi < n_min)
    throw InsufficientBins("extrapolate_to_zero_bins: no bin count in [" +
                           std::to_string(n_min) + ", " + std::to_string(n_max) +
                           "] keeps bins of at least " + std::to_string(min_bin_size) +
                           " points for M=" + std::to_string(m));

  std::vector<double> e, u;
  sort_by_uncertainty(sample.errors(), sample.uncertainties(), &e, &u);

  ExtrapolationResult result;
  const double dm = static_cast<double>(m);
  std::vector<double> values;
  ladder_values(e, u, kind, n_min, n_hi, &values);
  for (std::size_t n = n_min; n <= n_hi; ++n) {
    result.bin_counts.push_back(n);
    result.x.push_back(std::sqrt(static_cast<double>(n) / dm));
    result.values.push_back(values[n - n_min]);
  }

  std::vector<double> x_fit;
  std::vector<std::size_t> fit_index;
  for (std::size_t i = 0; i < result.bin_counts.size(); ++i) {
    if (result.bin_counts[i] > fit_threshold) {
      x_fit.push_back(result.x[i]);
      fit_index.push_back(i);
    }
  }
  if (x_fit.size() < 3)
    throw InsufficientBins("extrapolate_to_zero_bins: fewer than 3 fit points above N=" +
                           std::to_string(fit_threshold));
  result.fit_point_count = x_fit.size();

  auto fit_intercept = [&](const std::vector<double>& ladder, double* slope) {
    std::vector<double> y_fit(fit_index.size());
    for (std::size_t i = 0; i < fit_index.size(); ++i) y_fit[i] = ladder[fit_index[i]];
    const math::LineFit line = math::fit_line(x_fit, y_fit, {}, false);
    if (slope) *slope = line.slope;
    return line.intercept;
  };

  double slope = 0.0;
  const double intercept = fit_intercept(result.values, &slope);
  result.slope = slope;
  result.intercept = intercept;

  // Paired bootstrap of the whole ladder-and-fit procedure; the OLS
  // residual se is blind to the common-mode noise shared by the per-N
  // values, the bootstrap spread is not.
  std::vector<double> boot(bootstrap_b);
  parallel_for(bootstrap_b, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> eb(m), ub(m), es, us, ladder;
    for (std::size_t b = begin; b < end; ++b) {
      std::mt19937_64 engine(derive_replicate_seed(seed, b));
      std::uniform_int_distribution<std::size_t> pick(0, m - 1);
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = pick(engine);
        eb[i] = e[j];
        ub[i] = u[j];
      }
      sort_by_uncertainty(eb, ub, &es, &us);
      try {
        ladder_values(es, us, kind, n_min, n_hi, &ladder);
      } catch (const Error& err) {
        throw Error("extrapolation bootstrap replicate " + std::to_string(b) + ": " +
                    err.what());
      }
      boot[b] = fit_intercept(ladder, nullptr);
    }
  });

  result.intercept_se = math::sd(boot);
  result.intercept_interval =
      t_interval(intercept, result.intercept_se, x_fit.size() - 2, level);
  result.consistent =
      result.intercept_interval.lower <= 0.0 && 0.0 <= result.intercept_interval.upper;

  if (kind == StatisticKind::ence) {
    result.nig_reference = {kEnceNigSlope, 0.0};
    result.t6ig_reference = {kEnceT6igSlope, kEnceT6igIntercept};
  } else {
    result.nig_reference = {kZmseNigSlope, 0.0};
    result.t6ig_reference = {kZmseT6igSlope, kZmseT6igIntercept};
  }
  return result;
}

}  // namespace uqcal
