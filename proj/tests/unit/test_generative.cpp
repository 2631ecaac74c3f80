// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/generative.hpp"
#include "uqcal/math.hpp"
#include "uqcal/statistics.hpp"

using namespace uqcal;
using Catch::Approx;

TEST_CASE("generative spec rejects nu <= 2") {
  REQUIRE_THROWS_AS(GenerativeSpec::scaled_student_t(2.0), InvalidParameter);
  REQUIRE_THROWS_AS(GenerativeSpec::scaled_student_t(1.0), InvalidParameter);
  REQUIRE_NOTHROW(GenerativeSpec::scaled_student_t(2.0001));
  REQUIRE(GenerativeSpec::scaled_student_t(6.0).label() == "t6");
  REQUIRE(GenerativeSpec::normal().label() == "normal");
}

TEST_CASE("fitted-nu resimulation guard clamps to 2.1") {
  bool clamped = false;
  REQUIRE(clamp_student_nu(1.4, &clamped) == Approx(2.1));
  REQUIRE(clamped);
  REQUIRE(clamp_student_nu(6.0, &clamped) == Approx(6.0));
  REQUIRE_FALSE(clamped);

  const auto spec = parse_generative("t:1.5", &clamped);
  REQUIRE(clamped);
  REQUIRE(spec.nu() == Approx(2.1));
  REQUIRE_THROWS_AS(parse_generative("weibull"), InvalidParameter);
}

TEST_CASE("unit samplers have unit variance") {
  const std::size_t n = 1'000'000;
  SECTION("normal") {
    const auto draws = sample_unit(GenerativeSpec::normal(), n, 101);
    const double tol = 3.0 * std::sqrt(2.0 / static_cast<double>(n));
    REQUIRE(math::variance(draws) == Approx(1.0).margin(tol));
    REQUIRE(math::mean(draws) == Approx(0.0).margin(3.0 / std::sqrt(double(n))));
  }
  SECTION("scaled student-t, nu = 6") {
    // var(s^2) ~ (kurtosis - 1)/n with kurtosis 6 for t_s(6)
    const auto draws = sample_unit(GenerativeSpec::scaled_student_t(6.0), n, 202);
    const double tol = 3.0 * std::sqrt(5.0 / static_cast<double>(n));
    REQUIRE(math::variance(draws) == Approx(1.0).margin(tol));
  }
}

TEST_CASE("samplers are deterministic in the seed") {
  const auto a = sample_unit(GenerativeSpec::scaled_student_t(6.0), 512, 77);
  const auto b = sample_unit(GenerativeSpec::scaled_student_t(6.0), 512, 77);
  REQUIRE(a == b);
  const auto c = sample_unit(GenerativeSpec::scaled_student_t(6.0), 512, 78);
  REQUIRE(a != c);
}

TEST_CASE("synth_errors scales unit draws by the uncertainties") {
  SECTION("unit uncertainties reproduce the raw draws") {
    const std::vector<double> u(256, 1.0);
    REQUIRE(synth_errors(u, GenerativeSpec::normal(), 5) ==
            sample_unit(GenerativeSpec::normal(), 256, 5));
  }
  SECTION("constant scale multiplies the variance") {
    const std::vector<double> u(200'000, 2.0);
    const auto e = synth_errors(u, GenerativeSpec::normal(), 6);
    REQUIRE(math::variance(e) == Approx(4.0).epsilon(0.02));
  }
  SECTION("zms of synthetic pairs averages to 1 over replicates") {
    auto base = uqcal_test::random_sample(2000, 31);
    const std::vector<double> u(base.uncertainties().begin(), base.uncertainties().end());
    const int reps = 200;
    std::vector<double> values(reps);
    for (int r = 0; r < reps; ++r) {
      auto e = synth_errors(u, GenerativeSpec::normal(), 1000 + r);
      values[r] = zms(PairedSample(std::move(e), u));
    }
    const double se = math::sd(values) / std::sqrt(double(reps));
    REQUIRE(math::mean(values) == Approx(1.0).margin(3.0 * se));
  }
}

TEST_CASE("gen_synthetic matches the compound-model moment identities") {
  const std::size_t m = 100'000;
  SECTION("NIG nu=6: mean u^2 and mean E^2 near nu/(nu-2) = 1.5") {
    const auto s = gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, m), 404);
    std::vector<double> u2(m), e2(m);
    for (std::size_t i = 0; i < m; ++i) {
      u2[i] = s.uncertainties()[i] * s.uncertainties()[i];
      e2[i] = s.errors()[i] * s.errors()[i];
    }
    const double se_u2 = math::sd(u2) / std::sqrt(double(m));
    const double se_e2 = math::sd(e2) / std::sqrt(double(m));
    REQUIRE(math::mean(u2) == Approx(1.5).margin(3.0 * se_u2));
    REQUIRE(math::mean(e2) == Approx(1.5).margin(3.0 * se_e2));
    // law of total variance: Var(E) ~ mean(u^2)
    REQUIRE(math::variance(s.errors()) == Approx(math::mean(u2)).margin(4.0 * se_e2));
  }
  SECTION("T6IG nu=6: same first moments, heavier tails") {
    const auto s =
        gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::t6ig, 6.0, m), 505);
    std::vector<double> u2(m), e2(m);
    for (std::size_t i = 0; i < m; ++i) {
      u2[i] = s.uncertainties()[i] * s.uncertainties()[i];
      e2[i] = s.errors()[i] * s.errors()[i];
    }
    REQUIRE(math::mean(u2) == Approx(1.5).margin(3.0 * math::sd(u2) / std::sqrt(double(m))));
    REQUIRE(math::mean(e2) == Approx(1.5).margin(3.0 * math::sd(e2) / std::sqrt(double(m))));
  }
  SECTION("deterministic and calibrated z-scores") {
    const SyntheticModelSpec spec(SyntheticModelSpec::Kind::nig, 6.0, 4000);
    const auto a = gen_synthetic(spec, 9);
    const auto b = gen_synthetic(spec, 9);
    REQUIRE(std::equal(a.errors().begin(), a.errors().end(), b.errors().begin()));
    REQUIRE(zms(a) == Approx(1.0).margin(3.0 * std::sqrt(2.0 / 4000.0)));
  }
}

TEST_CASE("inverse-gamma squared uncertainties are right-skewed per beta_gm") {
  const auto s = gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 20000), 7);
  std::vector<double> u2(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    u2[i] = s.uncertainties()[i] * s.uncertainties()[i];
  const double b = beta_gm(u2);
  REQUIRE(b > 0.0);
  REQUIRE(b < 1.0);
}

TEST_CASE("synthetic model spec validation") {
  REQUIRE_THROWS_AS(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 2.0, 100),
                    InvalidParameter);
  REQUIRE_THROWS_AS(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 1), InvalidParameter);
}
