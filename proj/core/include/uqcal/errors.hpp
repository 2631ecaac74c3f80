// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace uqcal {

/// Base class of every uqcal failure. Subclasses identify the condition so
/// callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration value (nu <= 2, B < 200, level outside (0,1), ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// PairedSample structural violations (length mismatch, M < 2).
class InvalidSample : public Error {
 public:
  using Error::Error;
};

class NonPositiveUncertainty : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// Rank correlation undefined: one of the rank vectors has zero variance.
class DegenerateRanks : public Error {
 public:
  using Error::Error;
};

class TooManyBins : public Error {
 public:
  using Error::Error;
};

class BinTooSmall : public Error {
 public:
  using Error::Error;
};

/// A bin's ZMS is exactly zero (all errors in the bin are zero), so
/// |ln ZMS| is undefined. Signals a degenerate dataset.
class ZeroBinZMS : public Error {
 public:
  using Error::Error;
};

/// Mean absolute deviation about the median is zero.
class DegenerateSpread : public Error {
 public:
  using Error::Error;
};

/// Optimizer exhausted its evaluation budget before reaching tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// The selected zeta denominator is not strictly positive.
class IndeterminateZeta : public Error {
 public:
  using Error::Error;
};

/// Benchmark-scheme zeta requested for a statistic without a predefined
/// reference value.
class NoPredefinedReference : public Error {
 public:
  using Error::Error;
};

/// No bin count in the requested range satisfies the size constraints.
class InsufficientBins : public Error {
 public:
  using Error::Error;
};

class MissingColumn : public Error {
 public:
  using Error::Error;
};

class EmptyFile : public Error {
 public:
  using Error::Error;
};

}  // namespace uqcal
