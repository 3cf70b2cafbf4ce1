// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccsched/core.hpp"

namespace ccsched {

/// Decomposition-reassignment parameters. Every retained column receives m
/// extra groups; d copies of each baseline column are kept and each donor
/// group is reused r times:
///   m * S_tilde = B * (delta_tilde * S - S_tilde),  r = d*m/B,
///   delta_tilde = (B+m)*d/B,  S_tilde = d*S.
struct AsymPlan {
  int B = 0;
  int S = 0;
  int m = 0;
  int d = 0;
  int r = 0;
  int delta_tilde = 0;
  int S_tilde = 0;
  int tau = 0;
  int I_max = 0;
};

/// Largest m allowed by the receive-antenna budget: (G - beta) * floor(omega/(t+1)).
int max_added_groups(int G, int beta, int omega, int t);

/// Smallest integral plan for the given m. Throws kInfeasibleM when m breaks
/// the antenna bound or exceeds the donor column size B.
AsymPlan solve_plan(int B, int S, int m, int G, int beta, int omega, int t);

/// Same plan with d (and r, delta_tilde, S_tilde) multiplied by `factor`.
AsymPlan scale_plan(const AsymPlan& plan, int factor);

/// Cyclic donor map on 1-based columns: psi(i) = (i mod S) + 1.
int donor_map(int i, int S);

/// Candidates T from the donor groups such that host + pending + {T} keeps
/// every b(k) <= G and every n(T') = c(T') + sum_{k not in T'} b(k) <= L.
/// Order and repeats of `donor_groups` are preserved.
std::vector<MulticastGroup> linear_feasible_check(const ScheduleColumn& host,
                                                  std::span<const MulticastGroup> pending,
                                                  std::span<const MulticastGroup> donor_groups,
                                                  int L, int G,
                                                  std::span<const User> served_users);

/// d sets of m donor groups, each set destined for one copy of the host column.
struct CandidateCollection {
  int host_column = 0;   // 1-based
  int donor_column = 0;  // 1-based
  std::vector<std::vector<MulticastGroup>> sets;
};

struct CollectionCheck {
  bool ok = true;
  std::string reason;
};

/// Checks set sizes, distinctness within a set (bounded by the donor
/// multiplicity), r-regularity over the donor column and the overlap bound.
CollectionCheck validate_collection(const CandidateCollection& collection,
                                    const ScheduleColumn& donor, int d, int m, int r,
                                    int tau);

struct GreedyOptions {
  /// 0 breaks argmin ties lexicographically; any other value breaks them by
  /// a seeded permutation of the donor instances.
  std::uint64_t seed = 0;
  /// Weight on the overlap sum in the selection score. <= 0 means the
  /// baseline per-user stream count.
  double overlap_weight = 0.0;
};

/// Balanced greedy selection with swap repair for 1-based column i.
/// Throws kConstructionFailure when a set stalls below m.
CandidateCollection balanced_greedy(int i, const AsymPlan& plan,
                                    const ScheduleTable& baseline,
                                    const GreedyOptions& options = {});

/// Copies column i of the baseline d times, appending one set of C_i to each
/// copy. Throws kAssemblyFailure if a column breaks C1 or C2. With plan.m
/// == 0 the baseline is returned unchanged.
ScheduleTable assemble_table(const ScheduleTable& baseline,
                             const std::vector<CandidateCollection>& collections,
                             const AsymPlan& plan);

struct AsymmetricResult {
  AsymPlan plan;
  std::vector<CandidateCollection> collections;
  ScheduleTable table;
};

struct AsymmetricOptions {
  std::optional<int> tau;    // default t
  std::optional<int> I_max;  // default 50*m
  int d_factor = 1;
  std::uint64_t seed = 0;
  /// Retry with tau+1 (up to t+1) when a collection cannot be built.
  bool relax_tau = true;
};

/// solve_plan + balanced_greedy for every column + assemble_table.
AsymmetricResult build_asymmetric(const ScheduleTable& baseline, int m,
                                  const AsymmetricOptions& options = {});

struct DofSummary {
  std::optional<int> uniform;
  std::vector<int> per_column;
};

DofSummary dof_of_table(const ScheduleTable& table);

}  // namespace ccsched
