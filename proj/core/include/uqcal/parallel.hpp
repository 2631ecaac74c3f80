// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace uqcal {

/// 0 resolves to the hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Runs fn over contiguous chunks of [0, count) on up to `threads`
/// threads. Work items must be independent; the first exception thrown in
/// any chunk is rethrown on the calling thread after the join.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& fn);

}  // namespace uqcal
