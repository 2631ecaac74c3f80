// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/binning.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "uqcal/errors.hpp"

namespace uqcal {

std::vector<std::size_t> equal_count_edges(std::size_t m, std::size_t n_bins) {
  if (n_bins == 0) throw InvalidParameter("equal_count_bins: bin count must be positive");
  if (n_bins > m)
    throw TooManyBins("equal_count_bins: " + std::to_string(n_bins) + " bins for " +
                      std::to_string(m) + " points");
  std::vector<std::size_t> edges(n_bins + 1);
  for (std::size_t k = 0; k <= n_bins; ++k) edges[k] = k * m / n_bins;
  edges[n_bins] = m;
  return edges;
}

IndexBins equal_count_bins(std::span<const double> sort_key, std::size_t n_bins) {
  IndexBins bins;
  bins.edges = equal_count_edges(sort_key.size(), n_bins);
  bins.order.resize(sort_key.size());
  std::iota(bins.order.begin(), bins.order.end(), std::size_t{0});
  // Tie-break on the original index: stable and reproducible across runs.
  std::sort(bins.order.begin(), bins.order.end(), [&](std::size_t a, std::size_t b) {
    if (sort_key[a] != sort_key[b]) return sort_key[a] < sort_key[b];
    return a < b;
  });
  return bins;
}

}  // namespace uqcal
