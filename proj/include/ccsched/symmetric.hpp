// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <optional>
#include <vector>

#include "ccsched/core.hpp"

namespace ccsched {

/// Base scheduling parameters for (omega, t): every base column holds
/// B_hat groups and each user appears beta_hat times in it.
struct HatParams {
  int beta_hat = 0;
  int B_hat = 0;
  std::int64_t S_hat = 0;

  auto operator<=>(const HatParams&) const = default;
};

HatParams hat_params(int omega, int t);

struct SymmetricPlan {
  HatParams hat;
  int eta = 0;
  int delta = 0;
  int beta = 0;
  int B = 0;
  std::int64_t S = 0;
};

inline constexpr int kDefaultDeltaMax = 12;

/// Sorted set of admissible symmetric per-user stream counts beta = eta *
/// beta_hat, with delta searched in [1, delta_max].
std::vector<int> feasible_beta_set(int L, int G, int t, int omega,
                                   int delta_max = kDefaultDeltaMax);

/// Plan for a given beta: the smallest delta in [1, delta_max] with
/// delta*S_hat divisible by eta and at least `min_columns` columns.
/// Returns nullopt if beta is not admissible.
std::optional<SymmetricPlan> symmetric_plan(int L, int G, int t, int omega,
                                            int beta, int min_columns = 1,
                                            int delta_max = kDefaultDeltaMax);

/// Partition of all (t+1)-subsets of {1..omega} into S_hat columns of B_hat
/// groups, each user exactly beta_hat times per column. Built one user at a
/// time with an integral max-flow per step; deterministic. Supports omega <= 31.
std::vector<ScheduleColumn> build_base_partition(int omega, int t);

/// True iff `columns` partition the full enumeration with each user exactly
/// beta_hat times per column.
bool is_base_partition(const std::vector<ScheduleColumn>& columns, int omega,
                       int t);

/// Replicates the base columns delta times and merges consecutive runs of
/// eta columns into S = delta*S_hat/eta output columns.
ScheduleTable regroup(const std::vector<ScheduleColumn>& base, int omega, int t,
                      int eta, int delta, int L, int G);

/// build_base_partition + regroup for a plan.
ScheduleTable symmetric_table(const SymmetricPlan& plan, int omega, int t,
                              int L, int G);

}  // namespace ccsched
