// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include "ccsched/theorem1.hpp"

#include <algorithm>
#include <limits>

namespace ccsched {

std::vector<C1Term> c1_terms(const ColumnProfile& profile) {
  const int dof = profile.dof();
  std::vector<C1Term> terms;
  terms.reserve(profile.theta.size());
  for (const auto& [group, theta] : profile.theta) {
    int inside = 0;
    for (User k : group.users()) inside += profile.beta.at(k);
    terms.push_back(C1Term{group, theta, dof - inside});
  }
  return terms;
}

ColumnVerdict check_column(const ScheduleColumn& col, std::span<const User> served_users,
                           int L, int G, int column_index) {
  const ColumnProfile profile = column_multiplicities(col, served_users);
  ColumnVerdict verdict;
  verdict.min_slack = std::numeric_limits<int>::max();
  for (const auto& term : c1_terms(profile)) {
    const int slack = L - term.load();
    verdict.min_slack = std::min(verdict.min_slack, slack);
    if (slack < 0) {
      verdict.pass = false;
      verdict.witnesses.push_back(
          Violation{column_index, Condition::kC1, term.group, std::nullopt, term.load(), L});
    }
  }
  if (profile.theta.empty()) verdict.min_slack = L;
  for (const auto& [k, b] : profile.beta) {
    if (b > G) {
      verdict.pass = false;
      verdict.witnesses.push_back(
          Violation{column_index, Condition::kC2, std::nullopt, k, b, G});
    }
  }
  return verdict;
}

bool TableVerdict::pass() const {
  return std::all_of(columns.begin(), columns.end(),
                     [](const ColumnVerdict& v) { return v.pass; });
}

std::vector<Violation> TableVerdict::witnesses() const {
  std::vector<Violation> all;
  for (const auto& v : columns) all.insert(all.end(), v.witnesses.begin(), v.witnesses.end());
  return all;
}

TableVerdict theorem1_check(const ScheduleTable& table, int L, int G) {
  TableVerdict verdict;
  for (int i = 0; i < table.column_count(); ++i) {
    verdict.columns.push_back(check_column(table.columns[i], table.users, L, G, i + 1));
  }
  return verdict;
}

TableVerdict theorem1_check(const ScheduleTable& table) {
  return theorem1_check(table, table.params.L, table.params.G);
}

}  // namespace ccsched
