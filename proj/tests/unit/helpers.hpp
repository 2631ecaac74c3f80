// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "uqcal/sample.hpp"

namespace uqcal_test {

inline uqcal::PairedSample make_sample(std::vector<double> e, std::vector<double> u) {
  return uqcal::PairedSample(std::move(e), std::move(u));
}

// Random sample with distinct positive uncertainties (tie-free keys).
inline uqcal::PairedSample random_sample(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::lognormal_distribution<double> logn(0.0, 0.5);
  std::vector<double> e(m), u(m);
  for (std::size_t i = 0; i < m; ++i) {
    u[i] = logn(eng);
    e[i] = u[i] * normal(eng);
  }
  return make_sample(std::move(e), std::move(u));
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    base_ = std::filesystem::temp_directory_path() /
            ("uqcal_test_" + tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(base_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(base_, ec);
  }
  std::string path(const std::string& name) const { return (base_ / name).string(); }
  const std::filesystem::path& base() const { return base_; }

 private:
  std::filesystem::path base_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace uqcal_test
