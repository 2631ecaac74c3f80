// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/generative.hpp"

#include <cmath>

#include "uqcal/errors.hpp"

namespace uqcal {

GenerativeSpec GenerativeSpec::scaled_student_t(double nu) {
  if (!(nu > 2.0))
    throw InvalidParameter("scaled student-t requires nu > 2 (got " + std::to_string(nu) + ")");
  return GenerativeSpec(Kind::scaled_student_t, nu);
}

std::string GenerativeSpec::label() const {
  if (kind_ == Kind::normal) return "normal";
  if (nu_ == 6.0) return "t6";
  return "t:" + std::to_string(nu_);
}

double clamp_student_nu(double nu, bool* clamped) {
  const bool fire = !(nu > 2.0);
  if (clamped) *clamped = fire;
  return fire ? 2.1 : nu;
}

GenerativeSpec parse_generative(const std::string& text, bool* clamped) {
  if (clamped) *clamped = false;
  if (text == "normal" || text == "n") return GenerativeSpec::normal();
  if (text == "t6") return GenerativeSpec::scaled_student_t(6.0);
  if (text.rfind("t:", 0) == 0) {
    double nu = 0.0;
    try {
      nu = std::stod(text.substr(2));
    } catch (const std::exception&) {
      throw InvalidParameter("cannot parse distribution '" + text + "'");
    }
    return GenerativeSpec::scaled_student_t(clamp_student_nu(nu, clamped));
  }
  throw InvalidParameter("unknown distribution '" + text + "' (expected normal, t6 or t:<nu>)");
}

void sample_unit_into(const GenerativeSpec& d, std::span<double> out, std::mt19937_64& engine) {
  if (d.kind() == GenerativeSpec::Kind::normal) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& x : out) x = normal(engine);
    return;
  }
  std::student_t_distribution<double> student(d.nu());
  const double scale = 1.0 / std::sqrt(d.nu() / (d.nu() - 2.0));
  for (double& x : out) x = student(engine) * scale;
}

std::vector<double> sample_unit(const GenerativeSpec& d, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidParameter("sample_unit: n must be positive");
  std::vector<double> out(n);
  std::mt19937_64 engine(seed);
  sample_unit_into(d, out, engine);
  return out;
}

std::vector<double> synth_errors(std::span<const double> uncertainties, const GenerativeSpec& d,
                                 std::uint64_t seed) {
  for (double u : uncertainties)
    if (!(u > 0.0)) throw NonPositiveUncertainty("synth_errors: uncertainty <= 0");
  std::vector<double> out(uncertainties.size());
  std::mt19937_64 engine(seed);
  sample_unit_into(d, out, engine);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= uncertainties[i];
  return out;
}

SyntheticModelSpec::SyntheticModelSpec(Kind kind_in, double nu_in, std::size_t size_in)
    : kind(kind_in), nu_uncertainty(nu_in), size(size_in) {
  if (!(nu_uncertainty > 2.0))
    throw InvalidParameter("synthetic model requires uncertainty nu > 2");
  if (size < 2) throw InvalidParameter("synthetic model requires size >= 2");
}

PairedSample gen_synthetic(const SyntheticModelSpec& model, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  // u^2 ~ inverse gamma with shape nu/2 and rate nu/2, via the reciprocal
  // of a gamma draw (scale 2/nu).
  std::gamma_distribution<double> gamma(model.nu_uncertainty / 2.0, 2.0 / model.nu_uncertainty);
  std::vector<double> u(model.size);
  for (double& ui : u) {
    double g = 0.0;
    do {
      g = gamma(engine);
    } while (!(g > 0.0) || !std::isfinite(g));
    ui = std::sqrt(1.0 / g);
  }
  const GenerativeSpec d = model.kind == SyntheticModelSpec::Kind::nig
                               ? GenerativeSpec::normal()
                               : GenerativeSpec::scaled_student_t(6.0);
  std::vector<double> e(model.size);
  sample_unit_into(d, e, engine);
  for (std::size_t i = 0; i < model.size; ++i) e[i] *= u[i];
  return PairedSample(std::move(e), std::move(u));
}

}  // namespace uqcal
