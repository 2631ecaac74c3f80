// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace uqcal::cli {

/// Entry point for the uqcal command-line tool. Returns the process exit
/// code: 0 success, 1 data error, 2 usage error. Validation verdicts are
/// printed, never encoded in the exit code.
int run(int argc, const char* const* argv);

}  // namespace uqcal::cli
