// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>

#include "uqcal/sample.hpp"

namespace uqcal {

struct DatasetRead {
  PairedSample sample;
  std::size_t row_count = 0;      // data rows parsed into the sample
  std::size_t blank_skipped = 0;  // blank lines ignored
  std::string path;
};

/// Reads a CSV with a header row naming columns "E" and "uE"
/// (case-insensitive); any other columns are retained as features.
/// Throws MissingColumn, EmptyFile, NonPositiveUncertainty or
/// NonFiniteValue with the offending row index.
DatasetRead read_dataset(const std::string& path);

/// Writes E,uE(,features) with 17 significant digits, so values
/// round-trip exactly through read_dataset.
void write_dataset(const PairedSample& sample, const std::string& path);

}  // namespace uqcal
