// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/generative.hpp"
#include "uqcal/statistics.hpp"
#include "uqcal/validation.hpp"

using namespace uqcal;
using uqcal_test::make_sample;
using uqcal_test::random_sample;
using Catch::Approx;

namespace {

IntervalEstimate interval(double lo, double hi) {
  IntervalEstimate iv;
  iv.lower = lo;
  iv.upper = hi;
  return iv;
}

}  // namespace

TEST_CASE("zeta arithmetic on table inputs") {
  // on-estimate, negative deviation: denominator is the upper gap
  REQUIRE(zeta(0.96, 1.0, interval(0.87, 1.12), Centering::on_estimate) ==
          Approx(-0.25).margin(1e-12));
  // on-reference, positive deviation: denominator measured from the reference
  REQUIRE(zeta(0.244, 0.045, interval(0.030, 0.062), Centering::on_reference) ==
          Approx(11.7).margin(0.1));
  // Sim2 variant of the first row
  REQUIRE(zeta(0.96, 1.0, interval(0.94, 1.06), Centering::on_reference) ==
          Approx(-0.66).margin(0.01));
}

TEST_CASE("zeta zero numerator short-circuits") {
  IntervalEstimate degenerate = interval(1.0, 1.0);
  degenerate.degenerate = true;
  REQUIRE(zeta(1.0, 1.0, degenerate, Centering::on_estimate) == 0.0);
  REQUIRE(zeta(0.3, 0.3, interval(0.1, 0.6), Centering::on_reference) == 0.0);
}

TEST_CASE("zeta throws on non-positive denominators") {
  // positive deviation with the estimate at or below the lower bound
  REQUIRE_THROWS_AS(zeta(0.7, 0.5, interval(0.8, 1.1), Centering::on_estimate),
                    IndeterminateZeta);
  // negative deviation with the estimate at or above the upper bound
  REQUIRE_THROWS_AS(zeta(1.2, 1.5, interval(0.8, 1.1), Centering::on_estimate),
                    IndeterminateZeta);
  // on-reference centering with the reference outside the MC interval
  REQUIRE_THROWS_AS(zeta(1.5, 1.2, interval(0.8, 1.1), Centering::on_reference),
                    IndeterminateZeta);
  REQUIRE_THROWS_AS(zeta(0.5, 0.7, interval(0.8, 1.1), Centering::on_reference),
                    IndeterminateZeta);
  // degenerate interval collapsed on the estimate, nonzero numerator
  IntervalEstimate deg = interval(1.0, 1.0);
  deg.degenerate = true;
  REQUIRE_THROWS_AS(zeta(1.0, 0.9, deg, Centering::on_estimate), IndeterminateZeta);
}

TEST_CASE("interval test equivalence: |zeta| <= 1 iff reference inside interval") {
  std::mt19937_64 eng(71);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  int checked = 0;
  for (int t = 0; t < 2000; ++t) {
    double lo = unif(eng), hi = unif(eng);
    if (lo > hi) std::swap(lo, hi);
    if (hi - lo < 1e-6) continue;
    std::uniform_real_distribution<double> inside(lo, hi);
    const double est = inside(eng);  // on-estimate centering needs est in I
    const double ref = unif(eng);
    if (est == lo || est == hi) continue;
    const double z = zeta(est, ref, interval(lo, hi), Centering::on_estimate);
    REQUIRE((std::abs(z) <= 1.0) == (lo <= ref && ref <= hi));
    // sign matches the deviation
    if (est != ref) REQUIRE((z > 0.0) == (est > ref));
    ++checked;
  }
  REQUIRE(checked > 1500);
}

TEST_CASE("zeta is invariant under common affine maps") {
  std::mt19937_64 eng(72);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  for (int t = 0; t < 200; ++t) {
    const double lo = -unif(eng), hi = unif(eng);
    const double est = 0.5 * (lo + hi) + 0.3 * unif(eng) * (hi - lo) / 2.0;
    const double ref = unif(eng) - 1.0;
    const double base = zeta(est, ref, interval(lo, hi), Centering::on_estimate);
    const double shift = 10.0 * unif(eng) - 10.0;
    const double scale = unif(eng);
    const double mapped = zeta(shift + scale * est, shift + scale * ref,
                               interval(shift + scale * lo, shift + scale * hi),
                               Centering::on_estimate);
    REQUIRE(mapped == Approx(base).epsilon(1e-9).margin(1e-9));
  }
}

TEST_CASE("zeta_bs covers only predefined-reference statistics") {
  ValidationConfig config;
  config.bootstrap_b = 300;
  config.seed = 5;

  SECTION("ZMS on a perfectly calibrated sample gives zeta 0") {
    std::vector<double> u{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    const auto score = zeta_bs(make_sample(u, u), Statistic::zms(), config);
    REQUIRE(score.zeta == 0.0);
    REQUIRE(score.valid);
    REQUIRE(score.theta_ref == 1.0);
    REQUIRE(score.scheme == Scheme::bs);
  }

  SECTION("no predefined reference for CC / ENCE / ZMSE") {
    auto sample = random_sample(60, 6);
    REQUIRE_THROWS_AS(zeta_bs(sample, Statistic::cc(), config), NoPredefinedReference);
    REQUIRE_THROWS_AS(zeta_bs(sample, Statistic::ence(BinningConfig{4, 1, -1}), config),
                      NoPredefinedReference);
  }

  SECTION("NLL deviation equals half the ZMS deviation") {
    auto sample = random_sample(200, 7);
    const auto score = zeta_bs(sample, Statistic::nll(), config);
    REQUIRE(score.theta_est - score.theta_ref ==
            Approx(0.5 * (zms(sample) - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("sensitivity gate") {
  SECTION("predicate is strict") {
    REQUIRE_FALSE(references_differ(0.5, 0.01, 0.5, 0.01, 3.0));
    REQUIRE(references_differ(0.5, 0.001, 0.6, 0.001, 3.0));
  }

  ValidationConfig config;
  config.n_mc = 600;
  config.bootstrap_b = 300;
  config.seed = 99;

  const auto synthetic =
      gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 2000), 11);

  SECTION("ZMS references agree across generative choices") {
    const auto gate = sensitivity_gate(synthetic.uncertainties(), Statistic::zms(), config);
    REQUIRE_FALSE(gate.over_sensitive);
    REQUIRE(gate.ref_normal.mean == Approx(1.0).margin(0.01));
    REQUIRE(gate.ref_student.mean == Approx(1.0).margin(0.01));
  }

  SECTION("ENCE references split between normal and t6") {
    const auto gate = sensitivity_gate(synthetic.uncertainties(),
                                       Statistic::ence(BinningConfig{20, 20, -1}), config);
    REQUIRE(gate.over_sensitive);
    REQUIRE(gate.ref_student.mean > gate.ref_normal.mean);
  }
}

TEST_CASE("validate follows the workflow routing") {
  ValidationConfig config;
  config.bootstrap_b = 300;
  config.n_mc = 400;
  config.seed = 512;

  const auto synthetic =
      gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 2000), 21);

  SECTION("predefined reference routes to the benchmark scheme") {
    const auto report = validate(synthetic, Statistic::zms(), config);
    REQUIRE(report.zeta_scores.size() == 1);
    REQUIRE(report.zeta_scores[0].scheme == Scheme::bs);
    REQUIRE_FALSE(report.sensitivity.has_value());
    REQUIRE((report.verdict == Verdict::validated || report.verdict == Verdict::rejected));
  }

  SECTION("constrained D routes to a single Sim scheme") {
    config.constrained = GenerativeSpec::normal();
    const auto report =
        validate(synthetic, Statistic::ence(BinningConfig{20, 20, -1}), config);
    REQUIRE(report.zeta_scores.size() == 2);  // Sim + Sim2 under the same D
    REQUIRE(report.zeta_scores[0].scheme == Scheme::sim_n);
    REQUIRE(report.zeta_scores[1].scheme == Scheme::sim2_n);
    REQUIRE_FALSE(report.sensitivity.has_value());
    REQUIRE(report.verdict != Verdict::cannot_validate);
  }

  SECTION("unconstrained over-sensitive statistic cannot be validated") {
    const auto report =
        validate(synthetic, Statistic::ence(BinningConfig{20, 20, -1}), config);
    REQUIRE(report.sensitivity.has_value());
    REQUIRE(report.sensitivity->over_sensitive);
    REQUIRE(report.verdict == Verdict::cannot_validate);
    REQUIRE(report.zeta_scores.size() == 4);  // SimN, Sim2N, SimT, Sim2T
    REQUIRE(report.verdict != Verdict::validated);  // flowchart invariant
  }

  SECTION("unconstrained low-sensitivity statistic reports both candidates") {
    const auto report = validate(synthetic, Statistic::cc(), config);
    REQUIRE(report.sensitivity.has_value());
    if (!report.sensitivity->over_sensitive) {
      REQUIRE(report.zeta_scores.size() == 4);
      REQUIRE(report.verdict != Verdict::cannot_validate);
    } else {
      REQUIRE(report.verdict == Verdict::cannot_validate);
    }
  }

  SECTION("heavy-tailed screening emits warnings, not failures") {
    const auto heavy =
        gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 2.2, 3000), 31);
    const auto report = validate(heavy, Statistic::zms(), config);
    REQUIRE_FALSE(report.warnings.empty());
    REQUIRE((report.verdict == Verdict::validated || report.verdict == Verdict::rejected ||
             report.verdict == Verdict::indeterminate));
  }
}

TEST_CASE("for ZMS the Sim scheme tracks the benchmark scheme") {
  // same bootstrap interval and a simulated reference near the predefined
  // one, so the two zeta values nearly coincide
  ValidationConfig config;
  config.bootstrap_b = 400;
  config.n_mc = 2000;
  config.seed = 2048;
  const auto s = gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 2000), 51);
  const auto bs = zeta_bs(s, Statistic::zms(), config);
  const auto sim = zeta_sim(s, Statistic::zms(), config.sim_n, config);
  REQUIRE(sim.interval.lower == bs.interval.lower);  // shared seed stream
  REQUIRE(sim.interval.upper == bs.interval.upper);
  REQUIRE(sim.theta_ref == Approx(1.0).margin(0.02));
  REQUIRE(sim.zeta == Approx(bs.zeta).margin(0.15));
  REQUIRE(sim.valid == bs.valid);
}

TEST_CASE("zeta_sim coverage on calibrated data") {
  // CC has no predefined reference but a well-behaved bootstrap, so the
  // Sim scheme should validate calibrated data at roughly the interval
  // level.
  ValidationConfig config;
  config.bootstrap_b = 300;
  config.n_mc = 300;
  int valid = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    config.seed = derive_replicate_seed(3000, t);
    const auto s = gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 1000),
                                 derive_replicate_seed(3001, t));
    try {
      const auto score = zeta_sim(s, Statistic::cc(), config.sim_n, config);
      if (score.valid) ++valid;
    } catch (const IndeterminateZeta&) {
    }
  }
  REQUIRE(valid >= trials * 85 / 100);
}

TEST_CASE("binned statistics near the calibrated noise floor surface as indeterminate") {
  // Pair resampling duplicates rows, which inflates within-bin dispersion;
  // for a calibrated sample the ZMSE bootstrap distribution then sits well
  // above the point estimate and the interval need not bracket it. The
  // contract is an IndeterminateZeta (or an off-scale score), never a
  // silently wrong denominator.
  ValidationConfig config;
  config.bootstrap_b = 400;
  config.n_mc = 200;
  int indeterminate = 0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    config.seed = derive_replicate_seed(5000, t);
    const auto s = gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 5000),
                                 derive_replicate_seed(5001, t));
    try {
      (void)zeta_sim(s, Statistic::zmse(BinningConfig{20, 20, -1}), config.sim_n, config);
    } catch (const IndeterminateZeta&) {
      ++indeterminate;
    }
  }
  REQUIRE(indeterminate >= 2);
}

TEST_CASE("the Sim scheme warns when the Monte-Carlo error is not negligible") {
  ValidationConfig config;
  config.bootstrap_b = 300;
  config.n_mc = 100;  // deliberately too small
  config.seed = 77;
  const auto s = gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 4000), 53);
  const auto score = zeta_sim(s, Statistic::cc(), config.sim_n, config);
  bool warned = false;
  for (const auto& w : score.warnings)
    warned = warned || w.find("not negligible") != std::string::npos;
  REQUIRE(warned);

  config.n_mc = 20000;
  const auto quiet = zeta_sim(s, Statistic::cc(), config.sim_n, config);
  for (const auto& w : quiet.warnings)
    REQUIRE(w.find("not negligible") == std::string::npos);
}

TEST_CASE("zeta_sim and zeta_sim2 agree with validate's shared computation") {
  ValidationConfig config;
  config.bootstrap_b = 250;
  config.n_mc = 300;
  config.seed = 1024;

  const auto synthetic =
      gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 1000), 41);
  const Statistic stat = Statistic::zmse(BinningConfig{10, 20, -1});

  const auto report = validate(synthetic, stat, config);
  REQUIRE(report.zeta_scores.size() == 4);
  const auto sim_n = zeta_sim(synthetic, stat, config.sim_n, config);
  const auto sim2_n = zeta_sim2(synthetic, stat, config.sim_n, config);
  const auto sim_t = zeta_sim(synthetic, stat, config.sim_t, config);
  REQUIRE(sim_n.zeta == report.zeta_scores[0].zeta);
  REQUIRE(sim2_n.zeta == report.zeta_scores[1].zeta);
  REQUIRE(sim_t.zeta == report.zeta_scores[2].zeta);
  REQUIRE(sim_n.theta_ref == report.zeta_scores[0].theta_ref);
}
