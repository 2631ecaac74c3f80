// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace uqcal {

/// A dataset of paired errors and strictly positive uncertainties,
/// optionally with extra feature columns used for feature binning.
///
/// Invariants are enforced at construction: both vectors share the same
/// length M >= 2, every error is finite and every uncertainty is finite
/// and strictly positive. Feature columns, when present, have length M.
class PairedSample {
 public:
  PairedSample(std::vector<double> errors, std::vector<double> uncertainties,
               std::vector<std::string> feature_names = {},
               std::vector<std::vector<double>> features = {});

  std::size_t size() const { return errors_.size(); }
  std::span<const double> errors() const { return errors_; }
  std::span<const double> uncertainties() const { return uncertainties_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  std::span<const double> feature(std::size_t column) const;
  std::size_t feature_count() const { return features_.size(); }

  /// Row-gather used by resampling: indices may repeat, rows of a valid
  /// sample stay valid, so validation is skipped.
  static PairedSample gather(const PairedSample& from, std::span<const std::size_t> rows);

  /// In-place row overwrite for jackknife loops (values must come from a
  /// valid sample).
  void replace_row(std::size_t row, double error, double uncertainty,
                   std::span<const double> feature_row = {});
  std::vector<double> feature_row(std::size_t row) const;

 private:
  struct unchecked_tag {};
  PairedSample(unchecked_tag, std::vector<double> errors, std::vector<double> uncertainties,
               std::vector<std::string> feature_names, std::vector<std::vector<double>> features);

  std::vector<double> errors_;
  std::vector<double> uncertainties_;
  std::vector<std::string> feature_names_;
  std::vector<std::vector<double>> features_;  // column major
};

/// Scaled errors Z_i = E_i / u_i.
struct ZScores {
  std::vector<double> values;
};

ZScores z_scores(const PairedSample& sample);

}  // namespace uqcal
