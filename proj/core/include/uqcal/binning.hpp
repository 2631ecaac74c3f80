// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uqcal {

/// Equal-count partition of M points into N bins.
///
/// `order` holds all M indices sorted ascending by the key (ties keep the
/// original index order); bin k covers sorted positions
/// [floor(k*M/N), floor((k+1)*M/N)), so bin sizes differ by at most one.
struct IndexBins {
  std::vector<std::size_t> order;
  std::vector<std::size_t> edges;  // N+1 offsets into order

  std::size_t bin_count() const { return edges.empty() ? 0 : edges.size() - 1; }
  std::span<const std::size_t> bin(std::size_t k) const {
    return std::span<const std::size_t>(order).subspan(edges[k], edges[k + 1] - edges[k]);
  }
};

/// Throws TooManyBins when n_bins > key.size(), InvalidParameter when
/// n_bins == 0.
IndexBins equal_count_bins(std::span<const double> sort_key, std::size_t n_bins);

/// Bin edges alone (floor boundaries), for callers that already hold data
/// in key-sorted order.
std::vector<std::size_t> equal_count_edges(std::size_t m, std::size_t n_bins);

}  // namespace uqcal
