// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace uqcal {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace uqcal
