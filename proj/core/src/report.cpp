// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>

#include <json.hpp>

#include "uqcal/errors.hpp"
#include "uqcal/math.hpp"

namespace uqcal {

using nlohmann::json;

namespace {

json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

double num_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

IntervalMethod parse_interval_method(const std::string& name) {
  if (name == "bca") return IntervalMethod::bca;
  if (name == "percentile") return IntervalMethod::percentile;
  if (name == "mc-quantile") return IntervalMethod::mc_quantile;
  if (name == "analytic-t") return IntervalMethod::analytic_t;
  throw InvalidParameter("unknown interval method '" + name + "'");
}

json interval_to_json(const IntervalEstimate& iv) {
  return json{{"point", iv.point},
              {"lower", iv.lower},
              {"upper", iv.upper},
              {"level", iv.level},
              {"bias", iv.bias},
              {"method", interval_method_name(iv.method)},
              {"replicates", iv.replicate_count},
              {"degenerate", iv.degenerate},
              {"percentile_fallback", iv.percentile_fallback}};
}

IntervalEstimate interval_from_json(const json& j) {
  IntervalEstimate iv;
  iv.point = j.at("point").get<double>();
  iv.lower = j.at("lower").get<double>();
  iv.upper = j.at("upper").get<double>();
  iv.level = j.at("level").get<double>();
  iv.bias = j.at("bias").get<double>();
  iv.method = parse_interval_method(j.at("method").get<std::string>());
  iv.replicate_count = j.at("replicates").get<std::size_t>();
  iv.degenerate = j.at("degenerate").get<bool>();
  iv.percentile_fallback = j.at("percentile_fallback").get<bool>();
  return iv;
}

json beta_to_json(const BetaSummary& b) {
  return json{{"value", num_or_null(b.value)},
              {"degenerate", b.degenerate},
              {"flagged", b.flagged},
              {"limit", b.limit}};
}

BetaSummary beta_from_json(const json& j) {
  BetaSummary b;
  b.value = num_from(j.at("value"));
  b.degenerate = j.at("degenerate").get<bool>();
  b.flagged = j.at("flagged").get<bool>();
  b.limit = j.at("limit").get<double>();
  return b;
}

json config_to_json(const RunConfig& c) {
  return json{{"statistics", c.statistics},
              {"bins", c.bins},
              {"min_bin_size", c.min_bin_size},
              {"generative_candidates", c.generative_candidates},
              {"constrained_dist", c.constrained_dist},
              {"n_mc", c.n_mc},
              {"bootstrap_b", c.bootstrap_b},
              {"level", c.level},
              {"seed", c.seed},
              {"sensitivity_k", c.sensitivity_k},
              {"format", c.format},
              {"emit_plots", c.emit_plots}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.statistics = j.at("statistics").get<std::vector<std::string>>();
  c.bins = j.at("bins").get<std::size_t>();
  c.min_bin_size = j.at("min_bin_size").get<std::size_t>();
  c.generative_candidates = j.at("generative_candidates").get<std::vector<std::string>>();
  c.constrained_dist = j.at("constrained_dist").get<std::string>();
  c.n_mc = j.at("n_mc").get<std::size_t>();
  c.bootstrap_b = j.at("bootstrap_b").get<std::size_t>();
  c.level = j.at("level").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.sensitivity_k = j.at("sensitivity_k").get<double>();
  c.format = j.at("format").get<std::string>();
  c.emit_plots = j.at("emit_plots").get<bool>();
  return c;
}

json dataset_to_json(const DatasetSummary& d) {
  json j{{"path", d.path},
         {"m", d.m},
         {"blank_skipped", d.blank_skipped},
         {"beta_u2", beta_to_json(d.beta_u2)},
         {"beta_e2", beta_to_json(d.beta_e2)},
         {"beta_z2", beta_to_json(d.beta_z2)}};
  if (d.has_z_fit) {
    j["z_fit"] = json{{"mu", d.z_fit.mu},
                      {"sigma", d.z_fit.sigma},
                      {"nu", d.z_fit.nu},
                      {"b_percent", d.z_fit.b_percent},
                      {"mu_se", num_or_null(d.z_fit.mu_se)},
                      {"sigma_se", num_or_null(d.z_fit.sigma_se)},
                      {"log_likelihood", d.z_fit.log_likelihood},
                      {"converged", d.z_fit.converged}};
  } else {
    j["z_fit"] = json();
  }
  return j;
}

DatasetSummary dataset_from_json(const json& j) {
  DatasetSummary d;
  d.path = j.at("path").get<std::string>();
  d.m = j.at("m").get<std::size_t>();
  d.blank_skipped = j.at("blank_skipped").get<std::size_t>();
  d.beta_u2 = beta_from_json(j.at("beta_u2"));
  d.beta_e2 = beta_from_json(j.at("beta_e2"));
  d.beta_z2 = beta_from_json(j.at("beta_z2"));
  const json& zf = j.at("z_fit");
  d.has_z_fit = !zf.is_null();
  if (d.has_z_fit) {
    d.z_fit.mu = zf.at("mu").get<double>();
    d.z_fit.sigma = zf.at("sigma").get<double>();
    d.z_fit.nu = zf.at("nu").get<double>();
    d.z_fit.b_percent = zf.at("b_percent").get<double>();
    d.z_fit.mu_se = num_from(zf.at("mu_se"));
    d.z_fit.sigma_se = num_from(zf.at("sigma_se"));
    d.z_fit.log_likelihood = zf.at("log_likelihood").get<double>();
    d.z_fit.converged = zf.at("converged").get<bool>();
  }
  return d;
}

json scheme_to_json(const SchemeResult& s) {
  return json{{"scheme", s.scheme},
              {"theta_est", s.theta_est},
              {"theta_ref", s.theta_ref},
              {"reference_se", s.reference_se},
              {"interval", interval_to_json(s.interval)},
              {"zeta", num_or_null(s.zeta)},
              {"valid", s.valid},
              {"indeterminate", s.indeterminate},
              {"warnings", s.warnings}};
}

SchemeResult scheme_from_json(const json& j) {
  SchemeResult s;
  s.scheme = j.at("scheme").get<std::string>();
  s.theta_est = j.at("theta_est").get<double>();
  s.theta_ref = j.at("theta_ref").get<double>();
  s.reference_se = j.at("reference_se").get<double>();
  s.interval = interval_from_json(j.at("interval"));
  s.zeta = num_from(j.at("zeta"));
  s.valid = j.at("valid").get<bool>();
  s.indeterminate = j.at("indeterminate").get<bool>();
  s.warnings = j.at("warnings").get<std::vector<std::string>>();
  return s;
}

json result_to_json(const StatResult& r) {
  json j{{"statistic", r.statistic},
         {"verdict", r.verdict},
         {"warnings", r.warnings}};
  json schemes = json::array();
  for (const auto& s : r.schemes) schemes.push_back(scheme_to_json(s));
  j["schemes"] = schemes;
  if (r.has_sensitivity) {
    j["sensitivity"] = json{{"ref_normal", r.sensitivity.ref_normal},
                            {"ref_normal_se", r.sensitivity.ref_normal_se},
                            {"ref_student", r.sensitivity.ref_student},
                            {"ref_student_se", r.sensitivity.ref_student_se},
                            {"k", r.sensitivity.k},
                            {"over_sensitive", r.sensitivity.over_sensitive}};
  } else {
    j["sensitivity"] = json();
  }
  return j;
}

StatResult result_from_json(const json& j) {
  StatResult r;
  r.statistic = j.at("statistic").get<std::string>();
  r.verdict = j.at("verdict").get<std::string>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& s : j.at("schemes")) r.schemes.push_back(scheme_from_json(s));
  const json& sens = j.at("sensitivity");
  r.has_sensitivity = !sens.is_null();
  if (r.has_sensitivity) {
    r.sensitivity.ref_normal = sens.at("ref_normal").get<double>();
    r.sensitivity.ref_normal_se = sens.at("ref_normal_se").get<double>();
    r.sensitivity.ref_student = sens.at("ref_student").get<double>();
    r.sensitivity.ref_student_se = sens.at("ref_student_se").get<double>();
    r.sensitivity.k = sens.at("k").get<double>();
    r.sensitivity.over_sensitive = sens.at("over_sensitive").get<bool>();
  }
  return r;
}

}  // namespace

DatasetSummary summarize(const PairedSample& sample, const std::string& path_label) {
  DatasetSummary summary;
  summary.path = path_label;
  summary.m = sample.size();

  const ZScores z = z_scores(sample);
  std::vector<double> sq(sample.size());
  auto fill_beta = [&](std::span<const double> src, double limit) {
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = src[i] * src[i];
    BetaSummary b;
    b.limit = limit;
    try {
      b.value = beta_gm(sq);
      b.flagged = b.value > limit;
    } catch (const DegenerateSpread&) {
      b.value = std::numeric_limits<double>::quiet_NaN();
      b.degenerate = true;
    }
    return b;
  };
  summary.beta_u2 = fill_beta(sample.uncertainties(), kBetaGmLimitU2);
  summary.beta_e2 = fill_beta(sample.errors(), kBetaGmLimitE2);
  summary.beta_z2 = fill_beta(z.values, kBetaGmLimitZ2);

  if (sample.size() >= 50) {
    summary.z_fit = fit_student_z(sample);
    summary.has_z_fit = true;
  }
  return summary;
}

StatResult make_stat_result(const ValidationReport& report) {
  StatResult out;
  out.statistic = statistic_name(report.statistic.kind());
  out.verdict = verdict_name(report.verdict);
  out.warnings = report.warnings;
  for (const ZetaScore& score : report.zeta_scores) {
    SchemeResult row;
    row.scheme = scheme_name(score.scheme);
    row.theta_est = score.theta_est;
    row.theta_ref = score.theta_ref;
    row.reference_se = score.reference_se;
    row.interval = score.interval;
    row.zeta = score.zeta;
    row.valid = score.valid;
    row.indeterminate = score.indeterminate;
    row.warnings = score.warnings;
    out.schemes.push_back(std::move(row));
  }
  if (report.sensitivity) {
    out.has_sensitivity = true;
    out.sensitivity.ref_normal = report.sensitivity->ref_normal.mean;
    out.sensitivity.ref_normal_se = report.sensitivity->ref_normal.standard_error;
    out.sensitivity.ref_student = report.sensitivity->ref_student.mean;
    out.sensitivity.ref_student_se = report.sensitivity->ref_student.standard_error;
    out.sensitivity.k = report.sensitivity->k;
    out.sensitivity.over_sensitive = report.sensitivity->over_sensitive;
  }
  return out;
}

std::string to_json_string(const Report& report) {
  json j{{"config", config_to_json(report.config)},
         {"dataset", dataset_to_json(report.dataset)},
         {"version", report.version},
         {"timing_ms", report.timing_ms}};
  json results = json::array();
  for (const auto& r : report.results) results.push_back(result_to_json(r));
  j["results"] = results;
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  const json j = json::parse(text);
  Report report;
  report.config = config_from_json(j.at("config"));
  report.dataset = dataset_from_json(j.at("dataset"));
  report.version = j.at("version").get<std::string>();
  report.timing_ms = j.at("timing_ms").get<double>();
  for (const auto& r : j.at("results")) report.results.push_back(result_from_json(r));
  return report;
}

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string to_csv_string(const Report& report) {
  std::ostringstream out;
  out << "statistic,scheme,verdict,theta_est,theta_ref,reference_se,lower,upper,level,method,"
         "bias,replicates,degenerate,zeta,valid,indeterminate\n";
  for (const auto& r : report.results) {
    for (const auto& s : r.schemes) {
      out << r.statistic << ',' << s.scheme << ',' << r.verdict << ','
          << format_double(s.theta_est) << ',' << format_double(s.theta_ref) << ','
          << format_double(s.reference_se) << ',' << format_double(s.interval.lower) << ','
          << format_double(s.interval.upper) << ',' << format_double(s.interval.level) << ','
          << interval_method_name(s.interval.method) << ',' << format_double(s.interval.bias)
          << ',' << s.interval.replicate_count << ',' << (s.interval.degenerate ? 1 : 0) << ','
          << format_double(s.zeta) << ',' << (s.valid ? 1 : 0) << ','
          << (s.indeterminate ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

void write_report(const Report& report, const std::string& path, const std::string& format) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  if (format == "json")
    out << to_json_string(report);
  else if (format == "csv")
    out << to_csv_string(report);
  else
    throw InvalidParameter("unknown report format '" + format + "'");
  if (!out) throw Error("write failed for '" + path + "'");
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

// Minimal SVG scatter/bars; enough to eyeball a result, not a plotting
// library.
class Svg {
 public:
  Svg(double x_min, double x_max, double y_min, double y_max)
      : x0_(x_min), x1_(x_max), y0_(y_min), y1_(y_max) {
    if (x1_ <= x0_) x1_ = x0_ + 1.0;
    if (y1_ <= y0_) y1_ = y0_ + 1.0;
  }

  double px(double x) const { return kMl + (x - x0_) / (x1_ - x0_) * (kW - kMl - kMr); }
  double py(double y) const { return kH - kMb - (y - y0_) / (y1_ - y0_) * (kH - kMt - kMb); }

  void line(double x_a, double y_a, double x_b, double y_b, const char* color,
            const char* dash = nullptr) {
    body_ << "  <line x1=\"" << px(x_a) << "\" y1=\"" << py(y_a) << "\" x2=\"" << px(x_b)
          << "\" y2=\"" << py(y_b) << "\" stroke=\"" << color << "\"";
    if (dash) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << "/>\n";
  }

  void circle(double x, double y, const char* color) {
    body_ << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
  }

  void bar(double x, double half_width, double y, const char* color) {
    const double x_a = px(x - half_width);
    const double y_base = py(std::clamp(0.0, y0_, y1_));
    const double y_top = py(y);
    body_ << "  <rect x=\"" << x_a << "\" y=\"" << std::min(y_base, y_top) << "\" width=\""
          << px(x + half_width) - x_a << "\" height=\"" << std::abs(y_base - y_top)
          << "\" fill=\"" << color << "\"/>\n";
  }

  void label(double x, double y, const std::string& text, int size = 11) {
    body_ << "  <text x=\"" << px(x) << "\" y=\"" << py(y) << "\" font-size=\"" << size
          << "\" font-family=\"sans-serif\">" << text << "</text>\n";
  }

  std::string finish(const std::string& title) const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
    out << "  <rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    out << "  <text x=\"" << kMl << "\" y=\"18\" font-size=\"13\" font-family=\"sans-serif\">"
        << title << "</text>\n";
    // axes
    out << "  <line x1=\"" << kMl << "\" y1=\"" << kH - kMb << "\" x2=\"" << kW - kMr
        << "\" y2=\"" << kH - kMb << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << kMl << "\" y1=\"" << kMt << "\" x2=\"" << kMl << "\" y2=\""
        << kH - kMb << "\" stroke=\"black\"/>\n";
    out << body_.str();
    out << "</svg>\n";
    return out.str();
  }

  static constexpr double kW = 720, kH = 400, kMl = 60, kMr = 20, kMt = 30, kMb = 45;

 private:
  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

void write_fit_svg(const std::filesystem::path& path, const std::string& title,
                   std::span<const double> x, std::span<const double> y, double slope,
                   double intercept, const ReferenceLine* extra_a, const ReferenceLine* extra_b) {
  double x_max = 0.0, y_max = 0.0;
  for (double v : x) x_max = std::max(x_max, v);
  for (double v : y) y_max = std::max(y_max, v);
  Svg svg(0.0, x_max * 1.05, 0.0, y_max * 1.2);
  svg.line(0.0, intercept, x_max, intercept + slope * x_max, "red");
  if (extra_a)
    svg.line(0.0, extra_a->intercept, x_max, extra_a->intercept + extra_a->slope * x_max, "gray",
             "6,3");
  if (extra_b)
    svg.line(0.0, extra_b->intercept, x_max, extra_b->intercept + extra_b->slope * x_max, "gray",
             "2,3");
  for (std::size_t i = 0; i < x.size(); ++i) svg.circle(x[i], y[i], "steelblue");
  auto out = open_out(path);
  out << svg.finish(title);
}

}  // namespace

void emit_plot_data(const Report& report, const std::string& directory, bool svg) {
  const std::filesystem::path dir(directory);
  std::filesystem::create_directories(dir);

  {
    auto out = open_out(dir / "zeta_scores.tsv");
    out << "dataset\tstatistic\tscheme\tzeta\tvalid\ttheta_est\ttheta_ref\tlower\tupper\n";
    for (const auto& r : report.results)
      for (const auto& s : r.schemes)
        out << report.dataset.path << '\t' << r.statistic << '\t' << s.scheme << '\t'
            << format_double(s.zeta) << '\t' << (s.valid ? 1 : 0) << '\t'
            << format_double(s.theta_est) << '\t' << format_double(s.theta_ref) << '\t'
            << format_double(s.interval.lower) << '\t' << format_double(s.interval.upper)
            << '\n';
  }
  {
    auto out = open_out(dir / "dataset_summary.tsv");
    out << "path\tm\tbeta_gm_u2\tbeta_gm_e2\tbeta_gm_z2\tmu_z\tsigma_z\tb_z_percent\tnu_z\n";
    out << report.dataset.path << '\t' << report.dataset.m << '\t'
        << format_double(report.dataset.beta_u2.value) << '\t'
        << format_double(report.dataset.beta_e2.value) << '\t'
        << format_double(report.dataset.beta_z2.value) << '\t';
    if (report.dataset.has_z_fit)
      out << format_double(report.dataset.z_fit.mu) << '\t'
          << format_double(report.dataset.z_fit.sigma) << '\t'
          << format_double(report.dataset.z_fit.b_percent) << '\t'
          << format_double(report.dataset.z_fit.nu) << '\n';
    else
      out << "nan\tnan\tnan\tnan\n";
  }

  if (svg) {
    // One bar per (statistic, scheme); zeta clipped for display only.
    std::vector<std::pair<std::string, double>> bars;
    for (const auto& r : report.results)
      for (const auto& s : r.schemes)
        bars.emplace_back(r.statistic + "/" + s.scheme, s.indeterminate ? 0.0 : s.zeta);
    double span = 2.0;
    for (const auto& [name, z] : bars) span = std::max(span, std::min(std::abs(z), 12.0) + 0.5);
    Svg canvas(0.0, static_cast<double>(bars.size()), -span, span);
    canvas.line(0.0, 1.0, static_cast<double>(bars.size()), 1.0, "gray", "4,3");
    canvas.line(0.0, -1.0, static_cast<double>(bars.size()), -1.0, "gray", "4,3");
    canvas.line(0.0, 0.0, static_cast<double>(bars.size()), 0.0, "black");
    for (std::size_t i = 0; i < bars.size(); ++i) {
      const double z = std::clamp(bars[i].second, -12.0, 12.0);
      canvas.bar(static_cast<double>(i) + 0.5, 0.35, z,
                 std::abs(bars[i].second) <= 1.0 ? "seagreen" : "indianred");
      canvas.label(static_cast<double>(i) + 0.15, -span * 0.95, bars[i].first, 9);
    }
    auto out = open_out(dir / "zeta_scores.svg");
    out << canvas.finish("zeta scores (" + report.dataset.path + ")");
  }
}

void write_z_histogram(const PairedSample& sample, const DatasetSummary& summary,
                       const std::string& path) {
  const ZScores z = z_scores(sample);
  const double mean = math::mean(z.values);
  const double sd = math::sd(z.values);
  // histogram truncated to +-4 standard deviations
  const int n_bins = 60;
  const double lo = mean - 4.0 * sd, hi = mean + 4.0 * sd;
  const double width = (hi - lo) / n_bins;
  std::vector<std::size_t> counts(n_bins, 0);
  std::size_t in_range = 0;
  for (double v : z.values) {
    if (v < lo || v >= hi) continue;
    ++counts[static_cast<std::size_t>((v - lo) / width)];
    ++in_range;
  }
  auto normal_pdf = [&](double x) {
    const double t = (x - mean) / sd;
    return std::exp(-0.5 * t * t) / (sd * std::sqrt(2.0 * std::numbers::pi));
  };
  auto student_pdf = [&](double x) {
    if (!summary.has_z_fit) return std::numeric_limits<double>::quiet_NaN();
    const ZFit& f = summary.z_fit;
    const double t = (x - f.mu) / f.sigma;
    const double log_norm = std::lgamma(0.5 * (f.nu + 1.0)) - std::lgamma(0.5 * f.nu) -
                            0.5 * std::log(f.nu * std::numbers::pi) - std::log(f.sigma);
    return std::exp(log_norm - 0.5 * (f.nu + 1.0) * std::log1p(t * t / f.nu));
  };

  auto out = open_out(path);
  out << "z_lo\tz_hi\tcount\tdensity\tnormal_fit\tstudent_fit\n";
  const double total = static_cast<double>(std::max<std::size_t>(in_range, 1));
  for (int b = 0; b < n_bins; ++b) {
    const double a = lo + b * width, c = a + width, mid = a + 0.5 * width;
    out << format_double(a) << '\t' << format_double(c) << '\t' << counts[b] << '\t'
        << format_double(counts[b] / (total * width)) << '\t' << format_double(normal_pdf(mid))
        << '\t' << format_double(student_pdf(mid)) << '\n';
  }
}

void write_nu_scan(const std::vector<NuScanPoint>& points, const std::string& path) {
  auto out = open_out(path);
  out << "nu\treference\treference_se\n";
  for (const auto& p : points)
    out << format_double(p.nu) << '\t' << format_double(p.reference) << '\t'
        << format_double(p.reference_se) << '\n';
}

void write_dataset_scan(const std::vector<DatasetScanPoint>& points,
                        const std::vector<std::string>& labels, const std::string& path) {
  auto out = open_out(path);
  out << "dataset\tm\treference\treference_se\treference_sqrt_m\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    out << (i < labels.size() ? labels[i] : std::to_string(i)) << '\t' << points[i].m << '\t'
        << format_double(points[i].reference) << '\t' << format_double(points[i].reference_se)
        << '\t' << format_double(points[i].reference_sqrt_m) << '\n';
}

void write_scaling_study(const ScalingStudy& study, const std::string& directory, bool svg) {
  const std::filesystem::path dir(directory);
  std::filesystem::create_directories(dir);
  const char* model =
      study.model == SyntheticModelSpec::Kind::nig ? "nig" : "t6ig";
  {
    auto out = open_out(dir / "scaling_points.tsv");
    out << "model\tstatistic\tm\tn_bins\tnu\tx\treference\treference_se\n";
    auto rows = [&](const ScalingFit& fit, const char* stat) {
      for (const auto& p : fit.points)
        out << model << '\t' << stat << '\t' << p.m << '\t' << p.n_bins << '\t'
            << format_double(p.nu) << '\t' << format_double(p.x) << '\t'
            << format_double(p.reference) << '\t' << format_double(p.reference_se) << '\n';
    };
    rows(study.ence, "ence");
    rows(study.zmse, "zmse");
  }
  {
    auto out = open_out(dir / "scaling_fit.tsv");
    out << "model\tstatistic\tslope\tslope_se\tintercept\tintercept_se\tintercept_lo\t"
           "intercept_hi\tthrough_origin\treduced_chi2\n";
    auto row = [&](const ScalingFit& fit, const char* stat) {
      out << model << '\t' << stat << '\t' << format_double(fit.slope) << '\t'
          << format_double(fit.slope_se) << '\t' << format_double(fit.intercept) << '\t'
          << format_double(fit.intercept_se) << '\t'
          << format_double(fit.intercept_interval.lower) << '\t'
          << format_double(fit.intercept_interval.upper) << '\t'
          << (fit.fit_through_origin ? 1 : 0) << '\t' << format_double(fit.reduced_chi2) << '\n';
    };
    row(study.ence, "ence");
    row(study.zmse, "zmse");
  }
  if (svg) {
    auto dump = [&](const ScalingFit& fit, const std::string& stat) {
      std::vector<double> x, y;
      for (const auto& p : fit.points) {
        x.push_back(p.x);
        y.push_back(p.reference);
      }
      write_fit_svg(dir / ("scaling_" + stat + ".svg"),
                    stat + " vs sqrt(N/M), model " + model, x, y, fit.slope, fit.intercept,
                    nullptr, nullptr);
    };
    dump(study.ence, "ence");
    dump(study.zmse, "zmse");
  }
}

void write_extrapolation(const ExtrapolationResult& result, const std::string& directory,
                         bool svg) {
  const std::filesystem::path dir(directory);
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "extrapolation.tsv");
    out << "n_bins\tx\tvalue\n";
    for (std::size_t i = 0; i < result.bin_counts.size(); ++i)
      out << result.bin_counts[i] << '\t' << format_double(result.x[i]) << '\t'
          << format_double(result.values[i]) << '\n';
  }
  {
    auto out = open_out(dir / "extrapolation_fit.tsv");
    out << "slope\tintercept\tintercept_se\tintercept_lo\tintercept_hi\tconsistent\t"
           "fit_points\tnig_slope\tnig_intercept\tt6ig_slope\tt6ig_intercept\n";
    out << format_double(result.slope) << '\t' << format_double(result.intercept) << '\t'
        << format_double(result.intercept_se) << '\t'
        << format_double(result.intercept_interval.lower) << '\t'
        << format_double(result.intercept_interval.upper) << '\t' << (result.consistent ? 1 : 0)
        << '\t' << result.fit_point_count << '\t' << format_double(result.nig_reference.slope)
        << '\t' << format_double(result.nig_reference.intercept) << '\t'
        << format_double(result.t6ig_reference.slope) << '\t'
        << format_double(result.t6ig_reference.intercept) << '\n';
  }
  if (svg) {
    write_fit_svg(dir / "extrapolation.svg", "binned statistic vs sqrt(N/M)", result.x,
                  result.values, result.slope, result.intercept, &result.nig_reference,
                  &result.t6ig_reference);
  }
}

}  // namespace uqcal
