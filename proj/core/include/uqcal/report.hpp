// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Run configuration, report assembly and serialization, plot-data and
// SVG emission.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uqcal/sample.hpp"
#include "uqcal/scans.hpp"
#include "uqcal/student_fit.hpp"
#include "uqcal/validation.hpp"

namespace uqcal {

// Screening limits for the robust skewness of the squared-value
// distributions; exceeding them flags reliability problems.
inline constexpr double kBetaGmLimitU2 = 0.6;
inline constexpr double kBetaGmLimitE2 = 0.8;
inline constexpr double kBetaGmLimitZ2 = 0.8;

/// Everything a run needs besides the input data; every field has a
/// default, so (input file, RunConfig) reproduces a run exactly.
struct RunConfig {
  std::vector<std::string> statistics = {"zms", "cc", "ence", "zmse"};
  std::size_t bins = 20;
  std::size_t min_bin_size = 20;
  std::vector<std::string> generative_candidates = {"normal", "t6"};
  std::string constrained_dist;  // empty means D is unconstrained
  std::size_t n_mc = 10000;
  std::size_t bootstrap_b = 1000;
  double level = 0.95;
  std::uint64_t seed = 1;
  double sensitivity_k = 3.0;
  std::string format = "json";
  bool emit_plots = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct BetaSummary {
  double value = 0.0;
  bool degenerate = false;  // spread term vanished, value meaningless
  bool flagged = false;     // exceeds the screening limit
  double limit = 0.0;

  friend bool operator==(const BetaSummary&, const BetaSummary&) = default;
};

struct DatasetSummary {
  std::string path;
  std::size_t m = 0;
  std::size_t blank_skipped = 0;
  BetaSummary beta_u2;
  BetaSummary beta_e2;
  BetaSummary beta_z2;
  bool has_z_fit = false;
  ZFit z_fit;
};

/// Robust-skewness screening of u^2, E^2, Z^2 plus the Student-t z-fit
/// (skipped below the fit's M >= 50 floor).
DatasetSummary summarize(const PairedSample& sample, const std::string& path_label = "");

struct SchemeResult {
  std::string scheme;
  double theta_est = 0.0;
  double theta_ref = 0.0;
  double reference_se = 0.0;
  IntervalEstimate interval;
  double zeta = 0.0;
  bool valid = false;
  bool indeterminate = false;
  std::vector<std::string> warnings;
};

struct SensitivitySummary {
  double ref_normal = 0.0;
  double ref_normal_se = 0.0;
  double ref_student = 0.0;
  double ref_student_se = 0.0;
  double k = 0.0;
  bool over_sensitive = false;
};

struct StatResult {
  std::string statistic;
  std::string verdict;
  std::vector<SchemeResult> schemes;
  bool has_sensitivity = false;
  SensitivitySummary sensitivity;
  std::vector<std::string> warnings;
};

StatResult make_stat_result(const ValidationReport& report);

struct Report {
  RunConfig config;
  DatasetSummary dataset;
  std::vector<StatResult> results;
  std::string version;
  double timing_ms = 0.0;
};

/// Stable, key-sorted JSON; byte-identical for identical content.
std::string to_json_string(const Report& report);
Report report_from_json(const std::string& text);

std::string to_csv_string(const Report& report);

/// format is "json" or "csv".
void write_report(const Report& report, const std::string& path, const std::string& format);

/// Plain-text plot payloads (zeta-score bars per scheme) plus dataset
/// summary rows. `svg` additionally renders a minimal bar chart.
void emit_plot_data(const Report& report, const std::string& directory, bool svg = false);

/// Histogram of the z-scores with the fitted normal and Student-t
/// densities, enough to redraw the z-distribution comparison.
void write_z_histogram(const PairedSample& sample, const DatasetSummary& summary,
                       const std::string& path);

void write_nu_scan(const std::vector<NuScanPoint>& points, const std::string& path);
void write_dataset_scan(const std::vector<DatasetScanPoint>& points,
                        const std::vector<std::string>& labels, const std::string& path);
void write_scaling_study(const ScalingStudy& study, const std::string& directory, bool svg = false);
void write_extrapolation(const ExtrapolationResult& result, const std::string& directory,
                         bool svg = false);

}  // namespace uqcal
