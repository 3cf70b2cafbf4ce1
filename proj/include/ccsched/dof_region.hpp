// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccsched/asymmetric.hpp"
#include "ccsched/core.hpp"
#include "ccsched/symmetric.hpp"

namespace ccsched {

/// A constructed table that realizes one DoF value and passes the symbolic
/// decodability check.
struct DofWitness {
  std::string scheme;  // "symmetric" or "asymmetric"
  int beta = 0;
  int m = 0;
  int dof = 0;
  ScheduleTable table;
};

struct RegionBudget {
  int delta_max = kDefaultDeltaMax;
  int reseeds = 3;           // seeded attempts per (tau, d) besides the canonical one
  int d_limit_factor = 3;    // d may grow up to d_limit_factor * B
  std::uint64_t seed = 0;
};

struct DofRegion {
  int L = 0;
  int G = 0;
  int t = 0;
  int omega = 0;
  std::vector<int> symmetric_dofs;
  std::vector<int> asymmetric_dofs;
  std::vector<DofWitness> symmetric_witnesses;
  std::vector<DofWitness> asymmetric_witnesses;  // one per value, first found
  /// (beta, m) cells within the antenna bound where every attempt failed.
  std::vector<std::pair<int, int>> failed_cells;
};

std::vector<int> symmetric_region(int L, int G, int t, int omega,
                                  int delta_max = kDefaultDeltaMax);

/// Witness-backed exploration over beta in the symmetric feasible set and
/// m from 0 to min(B, (G-beta)*floor(omega/(t+1))).
DofRegion explore_dof_region(int L, int G, int t, int omega, const RegionBudget& budget = {});

std::vector<int> asymmetric_region(int L, int G, int t, int omega,
                                   const RegionBudget& budget = {});

}  // namespace ccsched
