// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include "ccsched/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ccsched {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRejectedParameters: return "rejected-parameters";
    case ErrorKind::kMalformedTable: return "malformed-table";
    case ErrorKind::kInfeasibleM: return "infeasible-m";
    case ErrorKind::kNoDonor: return "no-donor";
    case ErrorKind::kSearchFailure: return "search-failure";
    case ErrorKind::kConstructionFailure: return "construction-failure";
    case ErrorKind::kAssemblyFailure: return "assembly-failure";
    case ErrorKind::kNullityDeficient: return "nullity-deficient";
    case ErrorKind::kVerificationFailure: return "verification-failure";
  }
  return "unknown";
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // exact at every step: result * (n-k+i) is divisible by i
    result = result * (n - k + i) / i;
  }
  return result;
}

int cc_gain(int K, int M, int N) {
  if (K <= 0 || M <= 0 || N <= 0) {
    throw Error(ErrorKind::kRejectedParameters, "K, M and N must be positive");
  }
  const std::int64_t km = static_cast<std::int64_t>(K) * M;
  if (km % N != 0) {
    throw Error(ErrorKind::kRejectedParameters,
                "K*M/N = " + std::to_string(km) + "/" + std::to_string(N) +
                    " is not an integer");
  }
  return static_cast<int>(km / N);
}

SystemParams SystemParams::make(int K, int L, int G, int N, int M) {
  const int t = cc_gain(K, M, N);
  if (t + 1 > K) {
    throw Error(ErrorKind::kRejectedParameters, "t+1 must not exceed K");
  }
  if (L < 1 || G < 1) {
    throw Error(ErrorKind::kRejectedParameters, "L and G must be >= 1");
  }
  return SystemParams{K, L, G, N, M, t};
}

MulticastGroup::MulticastGroup(std::vector<User> users) : users_(std::move(users)) {
  std::sort(users_.begin(), users_.end());
  if (std::adjacent_find(users_.begin(), users_.end()) != users_.end()) {
    throw Error(ErrorKind::kMalformedTable, "duplicate user in multicast group");
  }
}

bool MulticastGroup::contains(User k) const {
  return std::binary_search(users_.begin(), users_.end(), k);
}

int MulticastGroup::overlap(const MulticastGroup& other) const {
  int count = 0;
  auto a = users_.begin();
  auto b = other.users_.begin();
  while (a != users_.end() && b != other.users_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

std::string MulticastGroup::str() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < users_.size(); ++i) {
    if (i) out << ',';
    out << users_[i];
  }
  out << '}';
  return out.str();
}

int ColumnProfile::dof() const {
  int total = 0;
  for (const auto& [k, b] : beta) total += b;
  return total;
}

int ColumnProfile::group_count() const {
  int total = 0;
  for (const auto& [g, c] : theta) total += c;
  return total;
}

ColumnProfile column_multiplicities(const ScheduleColumn& col,
                                    std::span<const User> served_users) {
  ColumnProfile profile;
  for (User k : served_users) profile.beta[k] = 0;
  for (const auto& group : col.groups) {
    ++profile.theta[group];
    for (User k : group.users()) {
      auto it = profile.beta.find(k);
      if (it == profile.beta.end()) {
        throw Error(ErrorKind::kMalformedTable,
                    "group " + group.str() + " contains user " +
                        std::to_string(k) + " outside the served set");
      }
      ++it->second;
    }
  }
  return profile;
}

std::int64_t ScheduleTable::subpacketization_factor() const {
  return static_cast<std::int64_t>(replication.delta) * replication.delta_tilde;
}

std::vector<User> user_range(int omega) {
  std::vector<User> users(static_cast<std::size_t>(std::max(omega, 0)));
  std::iota(users.begin(), users.end(), 1);
  return users;
}

std::vector<MulticastGroup> enumerate_groups(std::span<const User> served_users,
                                             int t) {
  std::vector<User> sorted(served_users.begin(), served_users.end());
  std::sort(sorted.begin(), sorted.end());
  const int omega = static_cast<int>(sorted.size());
  const int size = t + 1;
  if (t < 0 || omega < size) {
    throw Error(ErrorKind::kRejectedParameters,
                "need omega >= t+1 (omega=" + std::to_string(omega) +
                    ", t=" + std::to_string(t) + ")");
  }
  std::vector<MulticastGroup> groups;
  groups.reserve(static_cast<std::size_t>(binomial(omega, size)));
  std::vector<int> idx(static_cast<std::size_t>(size));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<User> members(static_cast<std::size_t>(size));
  while (true) {
    for (int j = 0; j < size; ++j) members[j] = sorted[idx[j]];
    groups.emplace_back(members);
    int j = size - 1;
    while (j >= 0 && idx[j] == omega - size + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int l = j + 1; l < size; ++l) idx[l] = idx[l - 1] + 1;
  }
  return groups;
}

std::int64_t total_subpacketization(const ScheduleTable& table) {
  return binomial(table.params.K, table.params.t) *
         table.subpacketization_factor();
}

std::map<MulticastGroup, int> group_occurrences(const ScheduleTable& table) {
  std::map<MulticastGroup, int> counts;
  for (const auto& col : table.columns) {
    for (const auto& g : col.groups) ++counts[g];
  }
  return counts;
}

bool is_conserved(const ScheduleTable& table, int expected) {
  const auto counts = group_occurrences(table);
  const auto all = enumerate_groups(table.users, table.params.t);
  if (counts.size() != all.size()) return false;
  return std::all_of(all.begin(), all.end(), [&](const MulticastGroup& g) {
    auto it = counts.find(g);
    return it != counts.end() && it->second == expected;
  });
}

void validate_table(const ScheduleTable& table) {
  const int t = table.params.t;
  if (table.users.empty()) {
    throw Error(ErrorKind::kMalformedTable, "table has no served users");
  }
  std::set<User> served(table.users.begin(), table.users.end());
  if (static_cast<int>(served.size()) != table.omega()) {
    throw Error(ErrorKind::kMalformedTable, "duplicate served user");
  }
  if (table.omega() < t + 1) {
    throw Error(ErrorKind::kMalformedTable, "omega < t+1");
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    for (const auto& g : table.columns[i].groups) {
      if (g.size() != t + 1) {
        throw Error(ErrorKind::kMalformedTable,
                    "column " + std::to_string(i + 1) + ": group " + g.str() +
                        " does not have t+1 users");
      }
      for (User k : g.users()) {
        if (!served.contains(k)) {
          throw Error(ErrorKind::kMalformedTable,
                      "column " + std::to_string(i + 1) + ": user " +
                          std::to_string(k) + " is not served");
        }
      }
    }
  }
}

}  // namespace ccsched
