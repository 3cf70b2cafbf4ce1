// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ccsched/error.hpp"

namespace ccsched {

/// 1-based user index.
using User = int;

std::int64_t binomial(int n, int k);

/// Network parameters. t = K*M/N is validated on construction.
struct SystemParams {
  int K = 0;
  int L = 0;
  int G = 0;
  int N = 0;
  int M = 0;
  int t = 0;

  static SystemParams make(int K, int L, int G, int N, int M);
};

int cc_gain(int K, int M, int N);

/// A (t+1)-subset of users carrying one XOR codeword. Stored sorted, so
/// equality and ordering are those of the sorted index list.
class MulticastGroup {
 public:
  MulticastGroup() = default;
  explicit MulticastGroup(std::vector<User> users);
  MulticastGroup(std::initializer_list<User> users)
      : MulticastGroup(std::vector<User>(users)) {}

  const std::vector<User>& users() const noexcept { return users_; }
  int size() const noexcept { return static_cast<int>(users_.size()); }
  bool contains(User k) const;
  int overlap(const MulticastGroup& other) const;
  std::string str() const;

  auto operator<=>(const MulticastGroup&) const = default;

 private:
  std::vector<User> users_;
};

/// Per-column multiplicities: theta_T and beta_k. beta holds every served
/// user, including those with zero streams.
struct ColumnProfile {
  std::map<MulticastGroup, int> theta;
  std::map<User, int> beta;

  int dof() const;
  int group_count() const;
};

/// One transmission interval: a multiset of groups. Insertion order is kept
/// for serialization; all derived quantities are order independent.
struct ScheduleColumn {
  std::vector<MulticastGroup> groups;

  int size() const noexcept { return static_cast<int>(groups.size()); }
};

ColumnProfile column_multiplicities(const ScheduleColumn& col,
                                    std::span<const User> served_users);

/// How a table was obtained from the full group enumeration. A symmetric
/// table has delta_tilde = 1 and m = 0.
struct Replication {
  int delta = 1;
  int eta = 1;
  int beta = 0;
  int delta_tilde = 1;
  int m = 0;
};

struct ScheduleTable {
  SystemParams params;
  std::vector<User> users;
  std::vector<ScheduleColumn> columns;
  Replication replication;

  int omega() const noexcept { return static_cast<int>(users.size()); }
  int column_count() const noexcept { return static_cast<int>(columns.size()); }
  /// Theta contributed by delivery (delta * delta_tilde).
  std::int64_t subpacketization_factor() const;
};

std::vector<MulticastGroup> enumerate_groups(std::span<const User> served_users,
                                             int t);

std::vector<User> user_range(int omega);

std::int64_t total_subpacketization(const ScheduleTable& table);

/// Total occurrences of every group over all columns.
std::map<MulticastGroup, int> group_occurrences(const ScheduleTable& table);

/// True iff every (t+1)-subset of the served users occurs exactly
/// `expected` times and nothing else occurs.
bool is_conserved(const ScheduleTable& table, int expected);

/// Structural validation (group sizes, user membership, sortedness).
/// Throws kMalformedTable.
void validate_table(const ScheduleTable& table);

}  // namespace ccsched
