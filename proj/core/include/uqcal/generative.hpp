// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Unit-variance generative distributions and synthetic dataset models.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "uqcal/sample.hpp"

namespace uqcal {

/// A zero-mean, unit-variance error-generating distribution D.
/// The Student-t variant is t(nu)/sqrt(nu/(nu-2)), so nu > 2 is required
/// for the variance to exist; construction rejects nu <= 2.
class GenerativeSpec {
 public:
  enum class Kind { normal, scaled_student_t };

  static GenerativeSpec normal() { return GenerativeSpec(Kind::normal, 0.0); }
  static GenerativeSpec scaled_student_t(double nu);

  Kind kind() const { return kind_; }
  double nu() const { return nu_; }
  std::string label() const;  // "normal", "t6", "t:<nu>"

  friend bool operator==(const GenerativeSpec&, const GenerativeSpec&) = default;

 private:
  GenerativeSpec(Kind kind, double nu) : kind_(kind), nu_(nu) {}
  Kind kind_;
  double nu_;
};

/// Fitted-nu guard for resimulation: values <= 2 are clamped to 2.1 so a
/// usable finite-variance spec can still be built. `clamped` reports
/// whether the guard fired.
double clamp_student_nu(double nu, bool* clamped = nullptr);

/// Parse "normal" | "t6" | "t:<nu>" (clamping nu <= 2 as above).
GenerativeSpec parse_generative(const std::string& text, bool* clamped = nullptr);

/// i.i.d. draws from D(0,1); deterministic for a fixed seed.
std::vector<double> sample_unit(const GenerativeSpec& d, std::size_t n, std::uint64_t seed);

/// Hot-loop variant drawing into an existing buffer from a live engine.
void sample_unit_into(const GenerativeSpec& d, std::span<double> out, std::mt19937_64& engine);

/// Synthetic errors E_i = u_i * eps_i with eps ~ D(0,1).
std::vector<double> synth_errors(std::span<const double> uncertainties, const GenerativeSpec& d,
                                 std::uint64_t seed);

/// Fully synthetic calibrated model: squared uncertainties are inverse
/// gamma with shape and rate nu/2, errors are u * eps with eps standard
/// normal (NIG) or unit-variance Student-t(6) (T6IG).
struct SyntheticModelSpec {
  enum class Kind { nig, t6ig };

  SyntheticModelSpec(Kind kind, double nu_uncertainty, std::size_t size);

  Kind kind;
  double nu_uncertainty;
  std::size_t size;
};

PairedSample gen_synthetic(const SyntheticModelSpec& model, std::uint64_t seed);

}  // namespace uqcal
