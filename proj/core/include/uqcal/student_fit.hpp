// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "uqcal/sample.hpp"

namespace uqcal {

/// Maximum-likelihood fit of z-scores by a location-scale Student-t.
/// b_percent = 100 * mu / sigma (relative bias).
struct ZFit {
  double mu = 0.0;
  double sigma = 1.0;
  double nu = 0.0;
  double b_percent = 0.0;
  double mu_se = 0.0;
  double sigma_se = 0.0;
  double log_likelihood = 0.0;
  bool converged = false;
};

struct FitOptions {
  double tolerance = 1e-8;       // on the log-likelihood spread
  std::size_t max_evals = 20000; // total objective-evaluation budget
};

/// Fits (mu, sigma, nu) by simplex descent over (mu, ln sigma, ln nu),
/// restarted from the best point. Requires M >= 50. Throws NonConvergence
/// (with the last iterate in the message) when the budget is exhausted.
ZFit fit_student_z(const PairedSample& sample, const FitOptions& options = {});

}  // namespace uqcal
