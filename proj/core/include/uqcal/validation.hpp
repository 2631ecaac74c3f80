// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Standardized zeta-scores and the sensitivity-gated validation workflow.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uqcal/resampling.hpp"
#include "uqcal/sample.hpp"
#include "uqcal/statistics.hpp"

namespace uqcal {

/// How a score's interval relates to its reference:
///   BS    predefined reference + bootstrap interval
///   Sim   simulated reference + bootstrap interval
///   Sim2  simulated reference + Monte-Carlo quantile interval
/// N/T mark the generative distribution (normal / unit-variance t(6)).
enum class Scheme { bs, sim_n, sim_t, sim2_n, sim2_t };

std::string scheme_name(Scheme s);

/// The interval is centered on the estimate for BS/Sim schemes and on the
/// reference for Sim2 schemes; denominators are measured from the center.
enum class Centering { on_estimate, on_reference };

/// zeta = (est - ref) / (distance from the center to the interval edge on
/// the side of the deviation). Zero numerator returns 0 regardless of the
/// interval; otherwise a non-positive denominator throws IndeterminateZeta.
double zeta(double theta_est, double theta_ref, const IntervalEstimate& interval,
            Centering centering);

struct ZetaScore {
  Scheme scheme = Scheme::bs;
  double theta_est = 0.0;
  double theta_ref = 0.0;
  double reference_se = 0.0;  // u(theta_ref~) for simulated references, 0 for BS
  IntervalEstimate interval;
  double zeta = 0.0;
  bool valid = false;          // |zeta| <= 1
  bool indeterminate = false;  // zeta undefined (degenerate denominator)
  std::vector<std::string> warnings;
};

struct ValidationConfig {
  std::size_t bootstrap_b = 1000;
  std::size_t n_mc = 10000;
  double level = 0.95;
  double sensitivity_k = 3.0;
  GenerativeSpec sim_n = GenerativeSpec::normal();
  GenerativeSpec sim_t = GenerativeSpec::scaled_student_t(6.0);
  std::optional<GenerativeSpec> constrained;  // set when D is known
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// Benchmark scheme: predefined reference (ZMS -> 1, NLL -> analytic) with
/// the bootstrap interval. Throws NoPredefinedReference otherwise.
ZetaScore zeta_bs(const PairedSample& sample, const Statistic& stat,
                  const ValidationConfig& config);

/// Simulated reference with the bootstrap interval (on-estimate centering).
ZetaScore zeta_sim(const PairedSample& sample, const Statistic& stat, const GenerativeSpec& d,
                   const ValidationConfig& config);

/// Simulated reference with the Monte-Carlo quantile interval
/// (on-reference centering).
ZetaScore zeta_sim2(const PairedSample& sample, const Statistic& stat, const GenerativeSpec& d,
                    const ValidationConfig& config);

/// Compares the simulated references under the two candidate generative
/// distributions; the statistic is over-sensitive when they differ by more
/// than k combined standard errors.
struct SensitivityGate {
  SimulatedReference ref_normal;
  SimulatedReference ref_student;
  double k = 3.0;
  bool over_sensitive = false;
};

SensitivityGate sensitivity_gate(std::span<const double> uncertainties, const Statistic& stat,
                                 const ValidationConfig& config);

/// The gate predicate: |ref_a - ref_b| > k * sqrt(se_a^2 + se_b^2).
bool references_differ(double ref_a, double se_a, double ref_b, double se_b, double k);

enum class Verdict { validated, rejected, cannot_validate, indeterminate };

std::string verdict_name(Verdict v);

struct ValidationReport {
  Statistic statistic = Statistic::zms();
  std::vector<ZetaScore> zeta_scores;
  std::optional<SensitivityGate> sensitivity;
  Verdict verdict = Verdict::indeterminate;
  std::vector<std::string> warnings;  // fitness screening, smallness checks
};

/// Workflow: predefined reference -> BS scheme; else a constrained D ->
/// Sim under that D; else the sensitivity gate decides between
/// cannot-validate and Sim under both candidates. All failure modes are
/// verdicts, never exceptions.
ValidationReport validate(const PairedSample& sample, const Statistic& stat,
                          const ValidationConfig& config);

}  // namespace uqcal
