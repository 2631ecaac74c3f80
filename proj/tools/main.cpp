// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

int main(int argc, char** argv) { return uqcal::cli::run(argc, argv); }
