// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "uqcal/generative.hpp"
#include "uqcal/statistics.hpp"

namespace {

uqcal::PairedSample make_sample(std::size_t m) {
  return uqcal::gen_synthetic(
      uqcal::SyntheticModelSpec(uqcal::SyntheticModelSpec::Kind::nig, 6.0, m), 1);
}

void BM_zms(benchmark::State& state) {
  const auto sample = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(uqcal::zms(sample));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_zms)->Arg(2000)->Arg(16000);

void BM_spearman_cc(benchmark::State& state) {
  const auto sample = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(uqcal::spearman_cc(sample));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_spearman_cc)->Arg(2000)->Arg(16000);

void BM_ence(benchmark::State& state) {
  const auto sample = make_sample(static_cast<std::size_t>(state.range(0)));
  const uqcal::BinningConfig cfg{50, 20, -1};
  for (auto _ : state) benchmark::DoNotOptimize(uqcal::ence(sample, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ence)->Arg(2000)->Arg(16000);

void BM_zmse(benchmark::State& state) {
  const auto sample = make_sample(static_cast<std::size_t>(state.range(0)));
  const uqcal::BinningConfig cfg{50, 20, -1};
  for (auto _ : state) benchmark::DoNotOptimize(uqcal::zmse(sample, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_zmse)->Arg(2000)->Arg(16000);

}  // namespace
