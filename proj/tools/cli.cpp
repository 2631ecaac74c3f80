// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uqcal/dataset_io.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/report.hpp"
#include "uqcal/scans.hpp"
#include "uqcal/validation.hpp"
#include "uqcal/version.hpp"

namespace uqcal::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

std::uint64_t seed_from_env() {
  if (const char* env = std::getenv("UQCAL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidParameter(std::string("UQCAL_SEED is not an integer: '") + env + "'");
    }
  }
  return kDefaultSeed;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Options shared by the subcommands that consume a dataset.
struct CommonOptions {
  std::vector<std::string> inputs;
  std::string stat = "zms";
  std::size_t bins = 0;  // per-subcommand default applied later
  std::size_t min_bin_size = 20;
  std::size_t n_mc = 10000;
  std::size_t bootstrap_b = 1000;
  double level = 0.95;
  std::optional<std::uint64_t> seed;
  std::string dist;
  std::string format = "json";
  std::string out;
  std::string plots_dir;
  bool svg = false;
  unsigned threads = 0;
  double sensitivity_k = 3.0;

  std::uint64_t resolved_seed() const { return seed ? *seed : seed_from_env(); }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_input, std::size_t default_bins) {
  opt.bins = default_bins;
  auto* in = cmd->add_option("-i,--input", opt.inputs, "input CSV (columns E,uE[,features])");
  if (needs_input) in->required();
  cmd->add_option("--bins", opt.bins, "equal-count bin count for ENCE/ZMSE");
  cmd->add_option("--min-bin-size", opt.min_bin_size, "minimum points per bin");
  cmd->add_option("--nmc", opt.n_mc, "Monte-Carlo replicates for simulated references");
  cmd->add_option("--boot", opt.bootstrap_b, "bootstrap replicates");
  cmd->add_option("--level", opt.level, "interval level");
  cmd->add_option("--seed", opt.seed, "master seed (falls back to UQCAL_SEED, then 1)");
  cmd->add_option("--dist", opt.dist, "generative distribution: normal, t6 or t:<nu>");
  cmd->add_option("--format", opt.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("-o,--out", opt.out, "report output path");
  cmd->add_option("--plots-dir", opt.plots_dir, "directory for plot data files");
  cmd->add_flag("--svg", opt.svg, "also render minimal SVG plots");
  cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  cmd->add_option("-k,--sensitivity-k", opt.sensitivity_k,
                  "sensitivity gate multiplier on combined standard errors");
}

Statistic make_statistic(const std::string& name, const CommonOptions& opt) {
  const StatisticKind kind = parse_statistic(name);
  if (kind == StatisticKind::ence || kind == StatisticKind::zmse)
    return Statistic(kind, BinningConfig{opt.bins, opt.min_bin_size, -1});
  return Statistic(kind, std::nullopt);
}

ValidationConfig make_validation_config(const CommonOptions& opt, bool* clamped) {
  ValidationConfig config;
  config.bootstrap_b = opt.bootstrap_b;
  config.n_mc = opt.n_mc;
  config.level = opt.level;
  config.sensitivity_k = opt.sensitivity_k;
  config.seed = opt.resolved_seed();
  config.threads = opt.threads;
  if (!opt.dist.empty()) config.constrained = parse_generative(opt.dist, clamped);
  return config;
}

RunConfig make_run_config(const CommonOptions& opt, const std::vector<std::string>& stats) {
  RunConfig rc;
  rc.statistics = stats;
  rc.bins = opt.bins;
  rc.min_bin_size = opt.min_bin_size;
  rc.constrained_dist = opt.dist;
  rc.n_mc = opt.n_mc;
  rc.bootstrap_b = opt.bootstrap_b;
  rc.level = opt.level;
  rc.seed = opt.resolved_seed();
  rc.sensitivity_k = opt.sensitivity_k;
  rc.format = opt.format;
  rc.emit_plots = !opt.plots_dir.empty();
  return rc;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InvalidParameter(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidParameter(std::string("empty ") + what + " list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  for (double v : parse_double_list(text, what)) out.push_back(static_cast<std::size_t>(v));
  return out;
}

// ---- subcommand bodies ----------------------------------------------------

int cmd_stats(const CommonOptions& opt, const std::vector<std::string>& stats) {
  const DatasetRead data = read_dataset(opt.inputs.front());
  const std::uint64_t seed = opt.resolved_seed();
  std::ostringstream csv;
  csv << "statistic,point,lower,upper,level,method,bias,replicates\n";
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const Statistic stat = make_statistic(stats[i], opt);
    const IntervalEstimate iv =
        bootstrap_ci(data.sample, stat, opt.bootstrap_b, opt.level,
                     derive_replicate_seed(seed, static_cast<std::uint64_t>(stat.kind()) + 1),
                     opt.threads);
    std::cout << stats[i] << ": " << fmt(iv.point) << "  I=[" << fmt(iv.lower) << ", "
              << fmt(iv.upper) << "]  bias=" << fmt(iv.bias)
              << (iv.degenerate ? "  (degenerate)" : "") << '\n';
    csv << stats[i] << ',' << fmt(iv.point) << ',' << fmt(iv.lower) << ',' << fmt(iv.upper)
        << ',' << fmt(iv.level) << ',' << interval_method_name(iv.method) << ',' << fmt(iv.bias)
        << ',' << iv.replicate_count << '\n';
  }
  if (!opt.out.empty()) {
    std::ofstream out(opt.out);
    if (!out) throw Error("cannot write '" + opt.out + "'");
    out << csv.str();
  }
  return 0;
}

int cmd_summarize(const CommonOptions& opt) {
  const DatasetRead data = read_dataset(opt.inputs.front());
  const DatasetSummary s = summarize(data.sample, data.path);
  auto beta_line = [&](const char* name, const BetaSummary& b) {
    std::cout << "  beta_gm(" << name << ") = "
              << (b.degenerate ? std::string("degenerate") : fmt(b.value))
              << (b.flagged ? "  [exceeds " + fmt(b.limit) + "]" : "") << '\n';
  };
  std::cout << data.path << ": M=" << s.m << '\n';
  beta_line("u^2", s.beta_u2);
  beta_line("E^2", s.beta_e2);
  beta_line("Z^2", s.beta_z2);
  if (s.has_z_fit) {
    std::cout << "  z-fit: mu=" << fmt(s.z_fit.mu) << " (se " << fmt(s.z_fit.mu_se) << ")"
              << "  sigma=" << fmt(s.z_fit.sigma) << " (se " << fmt(s.z_fit.sigma_se) << ")"
              << "  nu=" << fmt(s.z_fit.nu) << "  b=" << fmt(s.z_fit.b_percent) << "%\n";
  } else {
    std::cout << "  z-fit: skipped (M < 50)\n";
  }
  if (!opt.out.empty()) {
    Report report;
    report.config = make_run_config(opt, {});
    report.dataset = s;
    report.version = kVersion;
    write_report(report, opt.out, opt.format);
  }
  if (!opt.plots_dir.empty()) {
    std::filesystem::create_directories(opt.plots_dir);
    write_z_histogram(data.sample, s,
                      (std::filesystem::path(opt.plots_dir) / "z_histogram.tsv").string());
  }
  return 0;
}

int cmd_validate(const CommonOptions& opt, const std::vector<std::string>& stats) {
  const auto start = std::chrono::steady_clock::now();
  const DatasetRead data = read_dataset(opt.inputs.front());

  bool clamped = false;
  const ValidationConfig config = make_validation_config(opt, &clamped);
  if (clamped)
    std::cerr << "warning: requested nu <= 2 clamped to 2.1 for resimulation\n";

  Report report;
  report.config = make_run_config(opt, stats);
  report.dataset = summarize(data.sample, data.path);
  report.version = kVersion;

  for (const auto& name : stats) {
    const Statistic stat = make_statistic(name, opt);
    const ValidationReport vr = validate(data.sample, stat, config);
    report.results.push_back(make_stat_result(vr));
    const StatResult& row = report.results.back();
    std::cout << name << ": " << row.verdict;
    for (const auto& s : row.schemes) {
      std::cout << "  zeta_" << s.scheme << '='
                << (s.indeterminate ? std::string("indeterminate") : fmt(s.zeta));
    }
    std::cout << '\n';
    for (const auto& w : row.warnings) std::cerr << "  warning: " << w << '\n';
  }

  report.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  if (!opt.out.empty()) write_report(report, opt.out, opt.format);
  if (!opt.plots_dir.empty()) {
    emit_plot_data(report, opt.plots_dir, opt.svg);
    write_z_histogram(data.sample, report.dataset,
                      (std::filesystem::path(opt.plots_dir) / "z_histogram.tsv").string());
  }
  return 0;
}

int cmd_simulate(const CommonOptions& opt) {
  bool clamped = false;
  const GenerativeSpec d = opt.dist.empty() ? GenerativeSpec::normal()
                                            : parse_generative(opt.dist, &clamped);
  if (clamped) std::cerr << "warning: requested nu <= 2 clamped to 2.1 for resimulation\n";
  const Statistic stat = make_statistic(opt.stat, opt);
  const std::uint64_t seed = opt.resolved_seed();

  if (opt.inputs.size() > 1) {
    std::vector<PairedSample> samples;
    std::vector<std::string> labels;
    for (const auto& path : opt.inputs) {
      DatasetRead data = read_dataset(path);
      samples.push_back(std::move(data.sample));
      labels.push_back(path);
    }
    const auto points = scan_datasets(samples, stat, d, opt.n_mc, seed, opt.threads);
    std::cout << "dataset  M  reference  se  reference*sqrt(M)\n";
    for (std::size_t i = 0; i < points.size(); ++i)
      std::cout << labels[i] << "  " << points[i].m << "  " << fmt(points[i].reference) << "  "
                << fmt(points[i].reference_se) << "  " << fmt(points[i].reference_sqrt_m)
                << '\n';
    if (!opt.out.empty()) write_dataset_scan(points, labels, opt.out);
    return 0;
  }

  const DatasetRead data = read_dataset(opt.inputs.front());
  const SimulatedReference ref =
      simulate_reference(data.sample.uncertainties(), stat, d, opt.n_mc, seed, opt.threads);
  std::cout << opt.stat << " reference under " << d.label() << ": " << fmt(ref.mean) << "  se="
            << fmt(ref.standard_error) << "  I_D=[" << fmt(ref.mc_quantile_interval.lower)
            << ", " << fmt(ref.mc_quantile_interval.upper) << "]\n";
  if (!opt.out.empty()) {
    std::ofstream out(opt.out);
    if (!out) throw Error("cannot write '" + opt.out + "'");
    out << "statistic,dist,reference,se,lower,upper,n_mc\n"
        << opt.stat << ',' << d.label() << ',' << fmt(ref.mean) << ','
        << fmt(ref.standard_error) << ',' << fmt(ref.mc_quantile_interval.lower) << ','
        << fmt(ref.mc_quantile_interval.upper) << ',' << ref.replicates.size() << '\n';
  }
  return 0;
}

int cmd_scan_nu(const CommonOptions& opt, const std::string& grid_text) {
  const DatasetRead data = read_dataset(opt.inputs.front());
  const Statistic stat = make_statistic(opt.stat, opt);
  std::vector<double> grid;
  if (grid_text.empty())
    for (int nu = 3; nu <= 20; ++nu) grid.push_back(nu);
  else
    grid = parse_double_list(grid_text, "nu grid");
  const auto points =
      scan_nu(data.sample.uncertainties(), stat, grid, opt.n_mc, opt.resolved_seed(),
              opt.threads);
  std::cout << "nu  reference  se\n";
  for (const auto& p : points)
    std::cout << fmt(p.nu) << "  " << fmt(p.reference) << "  " << fmt(p.reference_se) << '\n';
  if (!opt.out.empty()) write_nu_scan(points, opt.out);
  if (!opt.plots_dir.empty()) {
    std::filesystem::create_directories(opt.plots_dir);
    write_nu_scan(points, (std::filesystem::path(opt.plots_dir) / "nu_scan.tsv").string());
  }
  return 0;
}

int cmd_scaling(const CommonOptions& opt, const std::string& model_text,
                const std::string& m_text, const std::string& n_text,
                const std::string& nu_text) {
  const SyntheticModelSpec::Kind model = model_text == "nig" ? SyntheticModelSpec::Kind::nig
                                                             : SyntheticModelSpec::Kind::t6ig;
  std::vector<std::size_t> m_grid = m_text.empty()
                                        ? std::vector<std::size_t>{2000, 4000, 8000, 12000, 16000}
                                        : parse_size_list(m_text, "M grid");
  std::vector<std::size_t> n_grid =
      n_text.empty() ? std::vector<std::size_t>{10, 20, 30, 40, 50}
                     : parse_size_list(n_text, "N grid");
  std::vector<double> nu_grid = nu_text.empty() ? std::vector<double>{3, 4, 5, 6, 12, 24}
                                                : parse_double_list(nu_text, "nu grid");

  const ScalingStudy study = scaling_study(model, m_grid, n_grid, nu_grid, opt.n_mc,
                                           opt.resolved_seed(), opt.threads);
  auto print_fit = [&](const char* name, const ScalingFit& fit) {
    std::cout << name << ": slope=" << fmt(fit.slope) << " (se " << fmt(fit.slope_se) << ")";
    if (!fit.fit_through_origin)
      std::cout << "  intercept=" << fmt(fit.intercept) << " (se " << fmt(fit.intercept_se)
                << ")";
    std::cout << "  vs sqrt(N/M), " << fit.points.size() << " grid points\n";
  };
  print_fit("ence", study.ence);
  print_fit("zmse", study.zmse);
  const std::string dir = opt.out.empty() ? (opt.plots_dir.empty() ? "." : opt.plots_dir)
                                          : opt.out;
  write_scaling_study(study, dir, opt.svg);
  std::cout << "wrote scaling_points.tsv and scaling_fit.tsv under " << dir << '\n';
  return 0;
}

int cmd_extrapolate(const CommonOptions& opt, std::size_t n_lo, std::size_t n_hi) {
  const DatasetRead data = read_dataset(opt.inputs.front());
  const StatisticKind kind = parse_statistic(opt.stat.empty() ? "zmse" : opt.stat);
  const ExtrapolationResult result = extrapolate_to_zero_bins(
      data.sample, kind, n_lo, n_hi, opt.min_bin_size, 20, opt.level, opt.bootstrap_b,
      opt.resolved_seed(), opt.threads);
  std::cout << statistic_name(kind) << " intercept=" << fmt(result.intercept) << "  I=["
            << fmt(result.intercept_interval.lower) << ", "
            << fmt(result.intercept_interval.upper) << "]  "
            << (result.consistent ? "consistent with 0" : "inconsistent with 0") << "  ("
            << result.fit_point_count << " fit points)\n";
  const std::string dir = opt.out.empty() ? (opt.plots_dir.empty() ? "." : opt.plots_dir)
                                          : opt.out;
  write_extrapolation(result, dir, opt.svg);
  std::cout << "wrote extrapolation.tsv and extrapolation_fit.tsv under " << dir << '\n';
  return 0;
}

int cmd_synth(const CommonOptions& opt, const std::string& model_text, double nu,
              std::size_t size) {
  const SyntheticModelSpec::Kind kind = model_text == "nig" ? SyntheticModelSpec::Kind::nig
                                                            : SyntheticModelSpec::Kind::t6ig;
  const SyntheticModelSpec model(kind, nu, size);
  const PairedSample sample = gen_synthetic(model, opt.resolved_seed());
  const std::string path = opt.out.empty() ? "synthetic.csv" : opt.out;
  write_dataset(sample, path);
  std::cout << "wrote " << sample.size() << " rows (" << model_text << ", nu=" << fmt(nu)
            << ") to " << path << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"validation of ML-UQ calibration statistics with simulated references"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonOptions stats_opt, summ_opt, val_opt, sim_opt, scan_opt, scal_opt, ext_opt, synth_opt;
  std::string stats_list = "zms,cc,ence,zmse";
  std::string val_list = "zms,cc,ence,zmse";
  std::string scan_grid;
  std::string scaling_model = "nig", m_grid, n_grid, nu_grid;
  std::string synth_model = "nig";
  double synth_nu = 6.0;
  std::size_t synth_size = 5000;
  std::size_t ext_lo = 10, ext_hi = 150;

  auto* c_stats = app.add_subcommand("stats", "point estimates with bootstrap intervals");
  add_common(c_stats, stats_opt, true, 20);
  c_stats->add_option("--stat", stats_list, "comma-separated statistics");

  auto* c_summ = app.add_subcommand("summarize", "dataset screening summary and z-score fit");
  add_common(c_summ, summ_opt, true, 20);

  auto* c_val = app.add_subcommand("validate", "sensitivity-gated validation workflow");
  add_common(c_val, val_opt, true, 20);
  c_val->add_option("--stat", val_list, "comma-separated statistics");

  auto* c_sim = app.add_subcommand("simulate", "simulated reference value(s) for a statistic");
  add_common(c_sim, sim_opt, true, 50);
  c_sim->add_option("--stat", sim_opt.stat, "statistic");

  auto* c_scan = app.add_subcommand("scan-nu", "simulated reference vs generative nu");
  add_common(c_scan, scan_opt, true, 50);
  c_scan->add_option("--stat", scan_opt.stat, "statistic");
  c_scan->add_option("--nu-grid", scan_grid, "comma-separated nu values (default 3..20)");

  auto* c_scal = app.add_subcommand("scaling", "synthetic ENCE/ZMSE scaling-law study");
  add_common(c_scal, scal_opt, false, 20);
  scal_opt.n_mc = 1000;  // full study at 5000 takes considerably longer
  c_scal->add_option("--model", scaling_model, "synthetic model: nig or t6ig")
      ->check(CLI::IsMember({"nig", "t6ig"}));
  c_scal->add_option("--m-grid", m_grid, "comma-separated dataset sizes");
  c_scal->add_option("--n-grid", n_grid, "comma-separated bin counts");
  c_scal->add_option("--nu-grid", nu_grid, "comma-separated uncertainty-shape nu values");

  auto* c_ext = app.add_subcommand("extrapolate", "extrapolation-to-zero-bins validation");
  add_common(c_ext, ext_opt, true, 20);
  ext_opt.stat = "zmse";
  ext_opt.bootstrap_b = 200;  // intercept-se bootstrap, not a BCa interval
  c_ext->add_option("--stat", ext_opt.stat, "ence or zmse");
  c_ext->add_option("--nmin", ext_lo, "smallest bin count");
  c_ext->add_option("--nmax", ext_hi, "largest bin count");

  auto* c_synth = app.add_subcommand("synth", "emit a synthetic calibrated dataset CSV");
  add_common(c_synth, synth_opt, false, 20);
  c_synth->add_option("--model", synth_model, "nig or t6ig")
      ->check(CLI::IsMember({"nig", "t6ig"}));
  c_synth->add_option("--nu", synth_nu, "uncertainty-distribution shape (> 2)");
  c_synth->add_option("-M,--size", synth_size, "number of rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (c_stats->parsed()) return cmd_stats(stats_opt, split_list(stats_list));
    if (c_summ->parsed()) return cmd_summarize(summ_opt);
    if (c_val->parsed()) return cmd_validate(val_opt, split_list(val_list));
    if (c_sim->parsed()) return cmd_simulate(sim_opt);
    if (c_scan->parsed()) return cmd_scan_nu(scan_opt, scan_grid);
    if (c_scal->parsed()) return cmd_scaling(scal_opt, scaling_model, m_grid, n_grid, nu_grid);
    if (c_ext->parsed()) return cmd_extrapolate(ext_opt, ext_lo, ext_hi);
    if (c_synth->parsed()) return cmd_synth(synth_opt, synth_model, synth_nu, synth_size);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace uqcal::cli
