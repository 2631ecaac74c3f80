// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/sample.hpp"

#include <cmath>
#include <utility>

#include "uqcal/errors.hpp"

namespace uqcal {

PairedSample::PairedSample(std::vector<double> errors, std::vector<double> uncertainties,
                           std::vector<std::string> feature_names,
                           std::vector<std::vector<double>> features)
    : errors_(std::move(errors)),
      uncertainties_(std::move(uncertainties)),
      feature_names_(std::move(feature_names)),
      features_(std::move(features)) {
  const std::size_t m = errors_.size();
  if (uncertainties_.size() != m)
    throw InvalidSample("paired sample: errors and uncertainties differ in length");
  if (m < 2) throw InvalidSample("paired sample: need at least 2 rows");
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(errors_[i]))
      throw NonFiniteValue("paired sample: non-finite error at row " + std::to_string(i));
    if (!std::isfinite(uncertainties_[i]))
      throw NonFiniteValue("paired sample: non-finite uncertainty at row " + std::to_string(i));
    if (!(uncertainties_[i] > 0.0))
      throw NonPositiveUncertainty("paired sample: uncertainty <= 0 at row " + std::to_string(i));
  }
  if (feature_names_.size() != features_.size())
    throw InvalidSample("paired sample: feature name/column count mismatch");
  for (std::size_t c = 0; c < features_.size(); ++c) {
    if (features_[c].size() != m)
      throw InvalidSample("paired sample: feature column '" + feature_names_[c] +
                          "' length mismatch");
    for (std::size_t i = 0; i < m; ++i)
      if (!std::isfinite(features_[c][i]))
        throw NonFiniteValue("paired sample: non-finite feature at row " + std::to_string(i));
  }
}

PairedSample::PairedSample(unchecked_tag, std::vector<double> errors,
                           std::vector<double> uncertainties,
                           std::vector<std::string> feature_names,
                           std::vector<std::vector<double>> features)
    : errors_(std::move(errors)),
      uncertainties_(std::move(uncertainties)),
      feature_names_(std::move(feature_names)),
      features_(std::move(features)) {}

std::span<const double> PairedSample::feature(std::size_t column) const {
  if (column >= features_.size())
    throw InvalidParameter("feature column " + std::to_string(column) + " out of range");
  return features_[column];
}

PairedSample PairedSample::gather(const PairedSample& from, std::span<const std::size_t> rows) {
  std::vector<double> e(rows.size()), u(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    e[i] = from.errors_[rows[i]];
    u[i] = from.uncertainties_[rows[i]];
  }
  std::vector<std::vector<double>> cols(from.features_.size());
  for (std::size_t c = 0; c < from.features_.size(); ++c) {
    cols[c].resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) cols[c][i] = from.features_[c][rows[i]];
  }
  return PairedSample(unchecked_tag{}, std::move(e), std::move(u), from.feature_names_,
                      std::move(cols));
}

void PairedSample::replace_row(std::size_t row, double error, double uncertainty,
                               std::span<const double> feature_row) {
  errors_[row] = error;
  uncertainties_[row] = uncertainty;
  for (std::size_t c = 0; c < features_.size() && c < feature_row.size(); ++c)
    features_[c][row] = feature_row[c];
}

std::vector<double> PairedSample::feature_row(std::size_t row) const {
  std::vector<double> out(features_.size());
  for (std::size_t c = 0; c < features_.size(); ++c) out[c] = features_[c][row];
  return out;
}

ZScores z_scores(const PairedSample& sample) {
  ZScores z;
  z.values.resize(sample.size());
  auto e = sample.errors();
  auto u = sample.uncertainties();
  for (std::size_t i = 0; i < sample.size(); ++i) z.values[i] = e[i] / u[i];
  return z;
}

}  // namespace uqcal
