// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <random>

#include "helpers.hpp"
#include "uqcal/dataset_io.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/generative.hpp"
#include "uqcal/report.hpp"

using namespace uqcal;
using uqcal_test::TempDir;
using uqcal_test::spit;
using Catch::Approx;

TEST_CASE("read_dataset parses a simple CSV") {
  TempDir dir("read");
  spit(dir.path("d.csv"), "E,uE\n1.0,0.5\n-2.0,1.0\n");
  const auto data = read_dataset(dir.path("d.csv"));
  REQUIRE(data.sample.size() == 2);
  REQUIRE(data.row_count == 2);
  REQUIRE(data.sample.errors()[0] == 1.0);
  REQUIRE(data.sample.uncertainties()[1] == 1.0);
}

TEST_CASE("read_dataset header handling") {
  TempDir dir("hdr");
  SECTION("case-insensitive names") {
    spit(dir.path("d.csv"), "e,ue\n1.0,0.5\n2.0,0.25\n");
    REQUIRE(read_dataset(dir.path("d.csv")).sample.size() == 2);
  }
  SECTION("missing column") {
    spit(dir.path("d.csv"), "E,sigma\n1.0,0.5\n");
    REQUIRE_THROWS_AS(read_dataset(dir.path("d.csv")), MissingColumn);
  }
  SECTION("feature columns are retained in order") {
    spit(dir.path("d.csv"), "x1,E,uE,x2\n10,1.0,0.5,20\n30,2.0,0.25,40\n");
    const auto data = read_dataset(dir.path("d.csv"));
    REQUIRE(data.sample.feature_count() == 2);
    REQUIRE(data.sample.feature_names() == std::vector<std::string>{"x1", "x2"});
    REQUIRE(data.sample.feature(0)[1] == 30.0);
    REQUIRE(data.sample.feature(1)[0] == 20.0);
  }
}

TEST_CASE("read_dataset row diagnostics") {
  TempDir dir("rows");
  SECTION("zero uncertainty names the row") {
    spit(dir.path("d.csv"), "E,uE\n1.0,0.5\n2.0,0.0\n");
    REQUIRE_THROWS_MATCHES(read_dataset(dir.path("d.csv")), NonPositiveUncertainty,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("row 2")));
  }
  SECTION("non-numeric cell") {
    spit(dir.path("d.csv"), "E,uE\n1.0,abc\n2.0,1.0\n");
    REQUIRE_THROWS_AS(read_dataset(dir.path("d.csv")), NonFiniteValue);
  }
  SECTION("empty file and header-only file") {
    spit(dir.path("e.csv"), "");
    REQUIRE_THROWS_AS(read_dataset(dir.path("e.csv")), EmptyFile);
    spit(dir.path("h.csv"), "E,uE\n");
    REQUIRE_THROWS_AS(read_dataset(dir.path("h.csv")), EmptyFile);
  }
  SECTION("blank lines are skipped and counted") {
    spit(dir.path("d.csv"), "E,uE\n1.0,0.5\n\n2.0,1.0\n\n");
    const auto data = read_dataset(dir.path("d.csv"));
    REQUIRE(data.sample.size() == 2);
    REQUIRE(data.blank_skipped == 2);
  }
  SECTION("CRLF input") {
    spit(dir.path("d.csv"), "E,uE\r\n1.0,0.5\r\n2.0,1.0\r\n");
    REQUIRE(read_dataset(dir.path("d.csv")).sample.size() == 2);
  }
}

TEST_CASE("dataset CSV round-trips 17 significant digits") {
  TempDir dir("rt");
  std::mt19937_64 eng(2024);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-250, 250);
  const std::size_t m = 400;
  std::vector<double> e(m), u(m);
  for (std::size_t i = 0; i < m; ++i) {
    e[i] = mant(eng) * std::pow(10.0, expo(eng));
    u[i] = std::abs(mant(eng)) * std::pow(10.0, expo(eng)) + 1e-300;
  }
  const PairedSample original(e, u);
  write_dataset(original, dir.path("d.csv"));
  const auto back = read_dataset(dir.path("d.csv"));
  REQUIRE(back.sample.size() == m);
  for (std::size_t i = 0; i < m; ++i) {
    REQUIRE(back.sample.errors()[i] == original.errors()[i]);
    REQUIRE(back.sample.uncertainties()[i] == original.uncertainties()[i]);
  }
}

namespace {

Report sample_report() {
  Report report;
  report.config.statistics = {"zms", "ence"};
  report.config.seed = 987654321;
  report.config.constrained_dist = "t:4.5";
  report.version = "0.1.0";
  report.timing_ms = 12.5;

  report.dataset.path = "demo.csv";
  report.dataset.m = 321;
  report.dataset.beta_u2 = {0.42, false, false, 0.6};
  report.dataset.beta_e2 = {0.91, false, true, 0.8};
  report.dataset.beta_z2 = {std::numeric_limits<double>::quiet_NaN(), true, false, 0.8};
  report.dataset.has_z_fit = true;
  report.dataset.z_fit = {0.01, 0.98, 5.7, 1.02, 0.013, 0.02, -123.4, true};

  StatResult r;
  r.statistic = "ence";
  r.verdict = "cannot-validate";
  r.warnings = {"heavy-tailed u^2 distribution: beta_gm=0.91 > 0.8"};
  SchemeResult s;
  s.scheme = "SimN";
  s.theta_est = 0.125;
  s.theta_ref = 0.056;
  s.reference_se = 9.5e-5;
  s.interval.point = 0.125;
  s.interval.lower = 0.084;
  s.interval.upper = 0.153;
  s.interval.bias = 0.016;
  s.interval.method = IntervalMethod::bca;
  s.interval.replicate_count = 1000;
  s.zeta = 1.66;
  s.valid = false;
  r.schemes.push_back(s);
  s.scheme = "Sim2N";
  s.zeta = std::numeric_limits<double>::quiet_NaN();
  s.indeterminate = true;
  s.warnings = {"zeta: non-positive denominator"};
  r.schemes.push_back(s);
  r.has_sensitivity = true;
  r.sensitivity = {0.056, 9.5e-5, 0.082, 1.5e-4, 3.0, true};
  report.results.push_back(r);
  return report;
}

}  // namespace

TEST_CASE("report JSON round-trips losslessly") {
  const Report report = sample_report();
  const std::string text = to_json_string(report);
  const Report parsed = report_from_json(text);
  REQUIRE(to_json_string(parsed) == text);
  REQUIRE(parsed.config == report.config);
  REQUIRE(parsed.results.size() == 1);
  REQUIRE(parsed.results[0].schemes.size() == 2);
  REQUIRE(std::isnan(parsed.results[0].schemes[1].zeta));
  REQUIRE(parsed.dataset.beta_z2.degenerate);
}

TEST_CASE("report CSV view has one row per scheme") {
  const std::string csv = to_csv_string(sample_report());
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 schemes
  REQUIRE(csv.find("ence,SimN,cannot-validate") != std::string::npos);
}

TEST_CASE("write_report and plot emission") {
  TempDir dir("report");
  const Report report = sample_report();
  write_report(report, dir.path("r.json"), "json");
  REQUIRE(report_from_json(uqcal_test::slurp(dir.path("r.json"))).dataset.m == 321);
  write_report(report, dir.path("r.csv"), "csv");
  REQUIRE_THROWS_AS(write_report(report, dir.path("r.xml"), "xml"), InvalidParameter);
  REQUIRE_THROWS_AS(write_report(report, dir.path("missing/r.json"), "json"), Error);

  emit_plot_data(report, dir.path("plots"), true);
  REQUIRE(std::filesystem::exists(dir.path("plots") + "/zeta_scores.tsv"));
  REQUIRE(std::filesystem::exists(dir.path("plots") + "/dataset_summary.tsv"));
  REQUIRE(std::filesystem::exists(dir.path("plots") + "/zeta_scores.svg"));
  const std::string tsv = uqcal_test::slurp(dir.path("plots") + "/zeta_scores.tsv");
  REQUIRE(std::count(tsv.begin(), tsv.end(), '\n') == 3);  // header + 2 scheme rows
}

TEST_CASE("summarize screens the squared distributions") {
  const auto s = gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 4000), 91);
  const auto summary = summarize(s, "synthetic");
  REQUIRE(summary.m == 4000);
  REQUIRE(summary.beta_u2.value > 0.0);
  REQUIRE(summary.has_z_fit);
  REQUIRE(summary.z_fit.converged);
  // calibrated construction: bias near zero
  REQUIRE(std::abs(summary.z_fit.b_percent) < 10.0);

  SECTION("symmetric squared uncertainties keep the flag off") {
    std::mt19937_64 eng(95);
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    std::vector<double> u(2000), e(2000);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = std::sqrt(unif(eng));  // u^2 uniform, symmetric
      e[i] = u[i] * normal(eng);
    }
    const auto sym = summarize(PairedSample(e, u), "sym");
    REQUIRE_FALSE(sym.beta_u2.flagged);
    REQUIRE(std::abs(sym.beta_u2.value) < 0.2);
  }
  SECTION("inverse-gamma(1.5, 1.5) squared uncertainties trip the flag") {
    const auto heavy =
        gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 3.0, 4000), 92);
    const auto s = summarize(heavy, "heavy");
    REQUIRE(s.beta_u2.value > 0.6);
    REQUIRE(s.beta_u2.flagged);
  }
  SECTION("small samples skip the z fit") {
    const auto tiny = uqcal_test::random_sample(20, 93);
    REQUIRE_FALSE(summarize(tiny, "tiny").has_z_fit);
  }
}

TEST_CASE("z histogram payload integrates to one") {
  TempDir dir("zhist");
  const auto s = gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 4000), 94);
  const auto summary = summarize(s, "s");
  write_z_histogram(s, summary, dir.path("z.tsv"));
  std::ifstream in(dir.path("z.tsv"));
  std::string header;
  std::getline(in, header);
  REQUIRE(header == "z_lo\tz_hi\tcount\tdensity\tnormal_fit\tstudent_fit");
  double lo, hi, density, nfit, sfit, mass = 0.0, nmass = 0.0;
  std::size_t count = 0, rows = 0;
  while (in >> lo >> hi >> count >> density >> nfit >> sfit) {
    mass += density * (hi - lo);
    nmass += nfit * (hi - lo);
    ++rows;
  }
  REQUIRE(rows == 60);
  REQUIRE(mass == Approx(1.0).margin(1e-9));    // histogram normalized over its range
  REQUIRE(nmass == Approx(1.0).margin(0.01));   // fitted density mass inside +-4 sd
}

TEST_CASE("scan and scaling writers produce tab-separated payloads") {
  TempDir dir("writers");
  write_nu_scan({{3.0, 1.0, 0.01}, {6.0, 0.99, 0.005}}, dir.path("nu.tsv"));
  const auto nu_text = uqcal_test::slurp(dir.path("nu.tsv"));
  REQUIRE(nu_text.find("nu\treference\treference_se") == 0);

  const auto study = scaling_study(SyntheticModelSpec::Kind::nig, std::vector<std::size_t>{500},
                                   std::vector<std::size_t>{5, 10}, std::vector<double>{6.0},
                                   150, 7);
  write_scaling_study(study, dir.path("scal"), true);
  REQUIRE(std::filesystem::exists(dir.path("scal") + "/scaling_points.tsv"));
  REQUIRE(std::filesystem::exists(dir.path("scal") + "/scaling_fit.tsv"));
  REQUIRE(std::filesystem::exists(dir.path("scal") + "/scaling_ence.svg"));

  const auto sample =
      gen_synthetic(SyntheticModelSpec(SyntheticModelSpec::Kind::nig, 6.0, 2000), 8);
  const auto ext = extrapolate_to_zero_bins(sample, StatisticKind::zmse);
  write_extrapolation(ext, dir.path("ext"), true);
  REQUIRE(std::filesystem::exists(dir.path("ext") + "/extrapolation.tsv"));
  REQUIRE(std::filesystem::exists(dir.path("ext") + "/extrapolation_fit.tsv"));
  REQUIRE(std::filesystem::exists(dir.path("ext") + "/extrapolation.svg"));
}
