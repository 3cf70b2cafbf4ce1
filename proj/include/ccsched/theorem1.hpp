// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ccsched/core.hpp"

namespace ccsched {

// Symbolic linear-decodability test. A column is decodable with linear
// receivers when, for every scheduled group T,
//   theta_T + sum_{k' not in T} beta_k' <= L        (C1)
// and every served user has beta_k <= G            (C2).

/// Interference load of one scheduled group.
struct C1Term {
  MulticastGroup group;
  int theta = 0;
  int outside_streams = 0;

  int load() const { return theta + outside_streams; }
};

std::vector<C1Term> c1_terms(const ColumnProfile& profile);

enum class Condition { kC1, kC2 };

struct Violation {
  int column = 0;  // 1-based
  Condition condition = Condition::kC1;
  std::optional<MulticastGroup> group;  // C1 witness
  std::optional<User> user;             // C2 witness
  int lhs = 0;
  int rhs = 0;
};

struct ColumnVerdict {
  bool pass = true;
  /// min over scheduled T of L - load(T); negative on C1 failure.
  int min_slack = 0;
  std::vector<Violation> witnesses;
};

struct TableVerdict {
  std::vector<ColumnVerdict> columns;

  bool pass() const;
  std::vector<Violation> witnesses() const;
};

ColumnVerdict check_column(const ScheduleColumn& col,
                           std::span<const User> served_users, int L, int G,
                           int column_index = 1);

TableVerdict theorem1_check(const ScheduleTable& table, int L, int G);

/// Uses the L and G recorded in the table.
TableVerdict theorem1_check(const ScheduleTable& table);

}  // namespace ccsched
