// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/validation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "uqcal/errors.hpp"

namespace uqcal {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::bs: return "BS";
    case Scheme::sim_n: return "SimN";
    case Scheme::sim_t: return "SimT";
    case Scheme::sim2_n: return "Sim2N";
    case Scheme::sim2_t: return "Sim2T";
  }
  throw InvalidParameter("unknown scheme");
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::validated: return "validated";
    case Verdict::rejected: return "rejected";
    case Verdict::cannot_validate: return "cannot-validate";
    case Verdict::indeterminate: return "indeterminate";
  }
  throw InvalidParameter("unknown verdict");
}

double zeta(double theta_est, double theta_ref, const IntervalEstimate& interval,
            Centering centering) {
  const double diff = theta_est - theta_ref;
  if (diff == 0.0) return 0.0;
  double denom = 0.0;
  if (centering == Centering::on_estimate)
    denom = diff <= 0.0 ? interval.upper - theta_est : theta_est - interval.lower;
  else
    denom = diff <= 0.0 ? theta_ref - interval.lower : interval.upper - theta_ref;
  if (!(denom > 0.0)) {
    std::ostringstream msg;
    msg << "zeta: non-positive denominator " << denom << " (est=" << theta_est
        << ", ref=" << theta_ref << ", interval=[" << interval.lower << ", " << interval.upper
        << "])";
    throw IndeterminateZeta(msg.str());
  }
  return diff / denom;
}

namespace {

// Purpose tags for per-statistic seed sub-streams.
constexpr std::uint64_t kSeedBootstrap = 0;
constexpr std::uint64_t kSeedSimNormal = 1;
constexpr std::uint64_t kSeedSimStudent = 2;

std::uint64_t stat_seed(const ValidationConfig& config, const Statistic& stat) {
  return derive_replicate_seed(config.seed, static_cast<std::uint64_t>(stat.kind()) + 1);
}

std::uint64_t sim_seed(const ValidationConfig& config, const Statistic& stat,
                       const GenerativeSpec& d) {
  const std::uint64_t purpose =
      d.kind() == GenerativeSpec::Kind::normal ? kSeedSimNormal : kSeedSimStudent;
  return derive_replicate_seed(stat_seed(config, stat), purpose);
}

Scheme sim_scheme(const GenerativeSpec& d, bool mc_interval) {
  if (d.kind() == GenerativeSpec::Kind::normal)
    return mc_interval ? Scheme::sim2_n : Scheme::sim_n;
  return mc_interval ? Scheme::sim2_t : Scheme::sim_t;
}

// Assembles a score, converting an indeterminate zeta into a flag rather
// than an exception.
ZetaScore make_score(Scheme scheme, double est, double ref, double ref_se,
                     const IntervalEstimate& interval, Centering centering) {
  ZetaScore score;
  score.scheme = scheme;
  score.theta_est = est;
  score.theta_ref = ref;
  score.reference_se = ref_se;
  score.interval = interval;
  if (interval.percentile_fallback)
    score.warnings.push_back("bootstrap z0 infinite; percentile interval used");
  try {
    score.zeta = zeta(est, ref, interval, centering);
    score.valid = std::abs(score.zeta) <= 1.0;
  } catch (const IndeterminateZeta& err) {
    score.zeta = std::numeric_limits<double>::quiet_NaN();
    score.valid = false;
    score.indeterminate = true;
    score.warnings.push_back(err.what());
  }
  return score;
}

// The Monte-Carlo standard error must be negligible against the
// bootstrap interval half-width for the Sim scheme to ignore it.
void check_smallness(ZetaScore& score, const SimulatedReference& ref,
                     const IntervalEstimate& bootstrap_interval) {
  const double half_width = 0.5 * (bootstrap_interval.upper - bootstrap_interval.lower);
  if (2.0 * ref.standard_error >= 0.1 * half_width) {
    std::ostringstream msg;
    msg << "simulated-reference standard error not negligible: 2*u(ref)=" <<
        2.0 * ref.standard_error << " vs 0.1*half-width=" << 0.1 * half_width
        << "; increase n_mc";
    score.warnings.push_back(msg.str());
  }
}

double predefined_reference(const PairedSample& sample, const Statistic& stat) {
  if (stat.kind() == StatisticKind::zms) return 1.0;
  if (stat.kind() == StatisticKind::nll) return nll_ref(sample);
  throw NoPredefinedReference("no predefined reference for " + statistic_name(stat.kind()));
}

}  // namespace

ZetaScore zeta_bs(const PairedSample& sample, const Statistic& stat,
                  const ValidationConfig& config) {
  const double ref = predefined_reference(sample, stat);
  const double est = evaluate(stat, sample);
  const IntervalEstimate interval =
      bootstrap_ci(sample, stat, config.bootstrap_b, config.level,
                   derive_replicate_seed(stat_seed(config, stat), kSeedBootstrap),
                   config.threads);
  ZetaScore score = make_score(Scheme::bs, est, ref, 0.0, interval, Centering::on_estimate);
  if (score.indeterminate) throw IndeterminateZeta(score.warnings.back());
  return score;
}

ZetaScore zeta_sim(const PairedSample& sample, const Statistic& stat, const GenerativeSpec& d,
                   const ValidationConfig& config) {
  const double est = evaluate(stat, sample);
  const IntervalEstimate interval =
      bootstrap_ci(sample, stat, config.bootstrap_b, config.level,
                   derive_replicate_seed(stat_seed(config, stat), kSeedBootstrap),
                   config.threads);
  const SimulatedReference ref = simulate_reference(
      sample.uncertainties(), stat, d, config.n_mc, sim_seed(config, stat, d), config.threads);
  ZetaScore score = make_score(sim_scheme(d, false), est, ref.mean, ref.standard_error, interval,
                               Centering::on_estimate);
  if (score.indeterminate) throw IndeterminateZeta(score.warnings.back());
  check_smallness(score, ref, interval);
  return score;
}

ZetaScore zeta_sim2(const PairedSample& sample, const Statistic& stat, const GenerativeSpec& d,
                    const ValidationConfig& config) {
  const double est = evaluate(stat, sample);
  const SimulatedReference ref = simulate_reference(
      sample.uncertainties(), stat, d, config.n_mc, sim_seed(config, stat, d), config.threads);
  ZetaScore score = make_score(sim_scheme(d, true), est, ref.mean, ref.standard_error,
                               ref.mc_quantile_interval, Centering::on_reference);
  if (score.indeterminate) throw IndeterminateZeta(score.warnings.back());
  return score;
}

bool references_differ(double ref_a, double se_a, double ref_b, double se_b, double k) {
  return std::abs(ref_a - ref_b) > k * std::hypot(se_a, se_b);
}

SensitivityGate sensitivity_gate(std::span<const double> uncertainties, const Statistic& stat,
                                 const ValidationConfig& config) {
  SensitivityGate gate;
  gate.k = config.sensitivity_k;
  gate.ref_normal = simulate_reference(uncertainties, stat, config.sim_n, config.n_mc,
                                       sim_seed(config, stat, config.sim_n), config.threads);
  gate.ref_student = simulate_reference(uncertainties, stat, config.sim_t, config.n_mc,
                                        sim_seed(config, stat, config.sim_t), config.threads);
  gate.over_sensitive =
      references_differ(gate.ref_normal.mean, gate.ref_normal.standard_error,
                        gate.ref_student.mean, gate.ref_student.standard_error, gate.k);
  return gate;
}

namespace {

Verdict verdict_from_scores(std::span<const ZetaScore> decisive) {
  bool all_valid = true, all_invalid = true;
  for (const ZetaScore& s : decisive) {
    if (s.indeterminate) return Verdict::indeterminate;
    all_valid = all_valid && s.valid;
    all_invalid = all_invalid && !s.valid;
  }
  if (all_valid) return Verdict::validated;
  if (all_invalid) return Verdict::rejected;
  return Verdict::indeterminate;
}

void screen_fitness(const PairedSample& sample, std::vector<std::string>& warnings) {
  const auto z = z_scores(sample);
  std::vector<double> sq(sample.size());
  struct Item {
    const char* name;
    double limit;
  };
  const Item items[3] = {{"u^2", 0.6}, {"E^2", 0.8}, {"Z^2", 0.8}};
  for (int which = 0; which < 3; ++which) {
    auto src = which == 0 ? sample.uncertainties()
               : which == 1 ? sample.errors()
                            : std::span<const double>(z.values);
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = src[i] * src[i];
    try {
      const double b = beta_gm(sq);
      if (b > items[which].limit) {
        std::ostringstream msg;
        msg << "heavy-tailed " << items[which].name << " distribution: beta_gm=" << b << " > "
            << items[which].limit;
        warnings.push_back(msg.str());
      }
    } catch (const DegenerateSpread&) {
      warnings.push_back(std::string("beta_gm degenerate for ") + items[which].name);
    }
  }
}

}  // namespace

ValidationReport validate(const PairedSample& sample, const Statistic& stat,
                          const ValidationConfig& config) {
  ValidationReport report;
  report.statistic = stat;
  screen_fitness(sample, report.warnings);

  auto guarded = [&](auto&& fn) {
    // All failure modes become verdicts; scores keep their flags.
    try {
      fn();
    } catch (const Error& err) {
      report.warnings.push_back(err.what());
      report.verdict = Verdict::indeterminate;
      return false;
    }
    return true;
  };

  if (stat.has_predefined_reference()) {
    guarded([&] {
      ZetaScore score = make_score(
          Scheme::bs, evaluate(stat, sample), predefined_reference(sample, stat), 0.0,
          bootstrap_ci(sample, stat, config.bootstrap_b, config.level,
                       derive_replicate_seed(stat_seed(config, stat), kSeedBootstrap),
                       config.threads),
          Centering::on_estimate);
      report.zeta_scores.push_back(score);
      report.verdict = verdict_from_scores(std::span<const ZetaScore>(&score, 1));
    });
    return report;
  }

  if (config.constrained) {
    guarded([&] {
      const GenerativeSpec& d = *config.constrained;
      const double est = evaluate(stat, sample);
      const IntervalEstimate interval =
          bootstrap_ci(sample, stat, config.bootstrap_b, config.level,
                       derive_replicate_seed(stat_seed(config, stat), kSeedBootstrap),
                       config.threads);
      const SimulatedReference ref =
          simulate_reference(sample.uncertainties(), stat, d, config.n_mc,
                             sim_seed(config, stat, d), config.threads);
      ZetaScore sim = make_score(sim_scheme(d, false), est, ref.mean, ref.standard_error,
                                 interval, Centering::on_estimate);
      check_smallness(sim, ref, interval);
      report.zeta_scores.push_back(sim);
      report.zeta_scores.push_back(make_score(sim_scheme(d, true), est, ref.mean,
                                              ref.standard_error, ref.mc_quantile_interval,
                                              Centering::on_reference));
      report.verdict =
          verdict_from_scores(std::span<const ZetaScore>(&report.zeta_scores[0], 1));
    });
    return report;
  }

  guarded([&] {
    const double est = evaluate(stat, sample);
    SensitivityGate gate = sensitivity_gate(sample.uncertainties(), stat, config);
    const IntervalEstimate interval =
        bootstrap_ci(sample, stat, config.bootstrap_b, config.level,
                     derive_replicate_seed(stat_seed(config, stat), kSeedBootstrap),
                     config.threads);

    auto add_scores = [&](const SimulatedReference& ref, const GenerativeSpec& d) {
      ZetaScore sim = make_score(sim_scheme(d, false), est, ref.mean, ref.standard_error,
                                 interval, Centering::on_estimate);
      check_smallness(sim, ref, interval);
      report.zeta_scores.push_back(sim);
      report.zeta_scores.push_back(make_score(sim_scheme(d, true), est, ref.mean,
                                              ref.standard_error, ref.mc_quantile_interval,
                                              Centering::on_reference));
    };
    add_scores(gate.ref_normal, config.sim_n);
    add_scores(gate.ref_student, config.sim_t);

    const bool over_sensitive = gate.over_sensitive;
    report.sensitivity = std::move(gate);
    if (over_sensitive) {
      report.verdict = Verdict::cannot_validate;
      return;
    }
    // Decision rests on the Sim schemes (bootstrap intervals); the Sim2
    // scores are reported for comparison only.
    const ZetaScore decisive[2] = {report.zeta_scores[0], report.zeta_scores[2]};
    report.verdict = verdict_from_scores(decisive);
  });
  return report;
}

}  // namespace uqcal
