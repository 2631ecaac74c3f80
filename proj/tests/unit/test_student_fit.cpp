// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/generative.hpp"
#include "uqcal/student_fit.hpp"

using namespace uqcal;
using Catch::Approx;

namespace {

// Independent log-likelihood oracle for a location-scale Student-t.
double loglik_oracle(std::span<const double> z, double mu, double sigma, double nu) {
  double ll = 0.0;
  for (double zi : z) {
    const double t = (zi - mu) / sigma;
    ll += std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
          0.5 * std::log(nu * std::numbers::pi) - std::log(sigma) -
          0.5 * (nu + 1.0) * std::log1p(t * t / nu);
  }
  return ll;
}

PairedSample sample_from_z(const std::vector<double>& z) {
  return PairedSample(z, std::vector<double>(z.size(), 1.0));
}

}  // namespace

TEST_CASE("fit recovers the shape of t_s(6) z-scores") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto z = sample_unit(GenerativeSpec::scaled_student_t(6.0), 5000, seed);
    const ZFit fit = fit_student_z(sample_from_z(z));
    REQUIRE(fit.converged);
    REQUIRE(fit.nu > 4.0);
    REQUIRE(fit.nu < 9.5);
    REQUIRE(fit.mu == Approx(0.0).margin(0.08));
  }
}

TEST_CASE("synthetic NIG errors are marginally Student-t") {
  // inverse-gamma squared uncertainties with normal errors compound to a
  // t(nu) marginal; the fit on errors against unit uncertainties should
  // recover nu and the sqrt(nu/(nu-2)) scale
  const auto s = gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 5000), 19);
  const PairedSample as_z(std::vector<double>(s.errors().begin(), s.errors().end()),
                          std::vector<double>(5000, 1.0));
  const ZFit fit = fit_student_z(as_z);
  REQUIRE(fit.converged);
  REQUIRE(fit.nu > 4.5);
  REQUIRE(fit.nu < 8.5);
  REQUIRE(fit.sigma == Approx(1.0).margin(0.1));  // t(6) scale parameter is 1
}

TEST_CASE("near-normal data lands on the large-nu plateau") {
  const auto z = sample_unit(GenerativeSpec::normal(), 5000, 21);
  const ZFit fit = fit_student_z(sample_from_z(z));
  REQUIRE(fit.converged);
  REQUIRE(fit.nu > 20.0);
}

TEST_CASE("relative bias b is 100*mu/sigma") {
  auto z = sample_unit(GenerativeSpec::normal(), 5000, 33);
  for (double& v : z) v += 0.5;
  const ZFit fit = fit_student_z(sample_from_z(z));
  REQUIRE(fit.b_percent == Approx(100.0 * fit.mu / fit.sigma).epsilon(1e-12));
  REQUIRE(fit.b_percent == Approx(50.0).margin(10.0));
}

TEST_CASE("fitted likelihood dominates the generating parameters") {
  for (std::uint64_t seed : {41u, 42u}) {
    const auto z = sample_unit(GenerativeSpec::scaled_student_t(6.0), 3000, seed);
    const ZFit fit = fit_student_z(sample_from_z(z));
    // truth in the fit's parameterization: t_s(6) = location 0, scale
    // 1/sqrt(6/4), shape 6
    const double truth = loglik_oracle(z, 0.0, 1.0 / std::sqrt(1.5), 6.0);
    REQUIRE(fit.log_likelihood >= truth - 1e-6);
    REQUIRE(fit.log_likelihood ==
            Approx(loglik_oracle(z, fit.mu, fit.sigma, fit.nu)).epsilon(1e-9));
  }
}

TEST_CASE("standard errors are plausible at M=5000") {
  const auto z = sample_unit(GenerativeSpec::scaled_student_t(6.0), 5000, 55);
  const ZFit fit = fit_student_z(sample_from_z(z));
  REQUIRE(std::isfinite(fit.mu_se));
  REQUIRE(fit.mu_se > 0.004);
  REQUIRE(fit.mu_se < 0.05);
  REQUIRE(std::isfinite(fit.sigma_se));
  REQUIRE(fit.sigma_se > 0.004);
  REQUIRE(fit.sigma_se < 0.05);
}

TEST_CASE("fit preconditions and budget") {
  const auto z_small = sample_unit(GenerativeSpec::normal(), 10, 1);
  REQUIRE_THROWS_AS(fit_student_z(sample_from_z(z_small)), InvalidParameter);

  const auto z = sample_unit(GenerativeSpec::normal(), 200, 2);
  FitOptions tiny;
  tiny.max_evals = 3;
  REQUIRE_THROWS_AS(fit_student_z(sample_from_z(z), tiny), NonConvergence);
}
