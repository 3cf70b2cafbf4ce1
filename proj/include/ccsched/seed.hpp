// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <cstdint>
#include <string_view>

namespace ccsched {

/// Per-task seed: splitmix64 over (seed, FNV-1a(label), index). All
/// randomness in the library flows from a global seed through this.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index = 0);

}  // namespace ccsched
