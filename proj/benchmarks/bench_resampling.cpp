// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "uqcal/generative.hpp"
#include "uqcal/resampling.hpp"

namespace {

void BM_bootstrap_zms(benchmark::State& state) {
  const auto sample = uqcal::gen_synthetic(
      uqcal::SyntheticModelSpec(uqcal::SyntheticModelSpec::Kind::nig, 6.0,
                                static_cast<std::size_t>(state.range(0))),
      2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        uqcal::bootstrap_ci(sample, uqcal::Statistic::zms(), 200, 0.95, 3, 1));
  }
}
BENCHMARK(BM_bootstrap_zms)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_simulate_reference_ence(benchmark::State& state) {
  const auto sample = uqcal::gen_synthetic(
      uqcal::SyntheticModelSpec(uqcal::SyntheticModelSpec::Kind::nig, 6.0, 5000), 4);
  const auto stat = uqcal::Statistic::ence(uqcal::BinningConfig{50, 20, -1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(uqcal::simulate_reference(
        sample.uncertainties(), stat, uqcal::GenerativeSpec::normal(),
        static_cast<std::size_t>(state.range(0)), 5, 1));
  }
}
BENCHMARK(BM_simulate_reference_ence)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_derive_replicate_seed(benchmark::State& state) {
  std::uint64_t acc = 0, i = 0;
  for (auto _ : state) {
    acc ^= uqcal::derive_replicate_seed(42, i++);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_derive_replicate_seed);

}  // namespace
