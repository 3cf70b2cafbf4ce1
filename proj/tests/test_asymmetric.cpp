// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include <doctest.h>

#include <random>
#include <set>

#include "ccsched/asymmetric.hpp"
#include "ccsched/error.hpp"
#include "ccsched/reproduce.hpp"
#include "ccsched/symmetric.hpp"
#include "ccsched/theorem1.hpp"
#include "oracle.hpp"

using namespace ccsched;

namespace {

oracle::Column plain(const std::vector<MulticastGroup>& groups) {
  oracle::Column out;
  for (const auto& g : groups) out.emplace_back(g.users().begin(), g.users().end());
  return out;
}

ScheduleTable pair_baseline() {
  const auto plan = symmetric_plan(10, 3, 1, 5, 2, 2);
  REQUIRE(plan.has_value());
  return symmetric_table(*plan, 5, 1, 10, 3);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kVerificationFailure;
}

}  // namespace

TEST_CASE("solve_plan") {
  SUBCASE("pair example") {
    const auto p = solve_plan(5, 2, 2, 3, 2, 5, 1);
    CHECK(p.d == 5);
    CHECK(p.r == 2);
    CHECK(p.delta_tilde == 7);
    CHECK(p.S_tilde == 10);
    CHECK(p.tau == 1);
    CHECK(p.I_max == 100);
  }
  SUBCASE("triple example") {
    const auto p = solve_plan(5, 2, 3, 6, 3, 5, 2);
    CHECK(p.d == 5);
    CHECK(p.r == 3);
    CHECK(p.delta_tilde == 8);
    CHECK(p.S_tilde == 10);
  }
  SUBCASE("antenna bound") {
    CHECK(max_added_groups(6, 3, 5, 2) == 3);
    CHECK(kind_of([] { solve_plan(5, 2, 4, 6, 3, 5, 2); }) == ErrorKind::kInfeasibleM);
  }
  SUBCASE("donor column size bound") {
    CHECK(kind_of([] { solve_plan(2, 10, 3, 8, 1, 6, 2); }) == ErrorKind::kInfeasibleM);
  }
  CHECK(kind_of([] { solve_plan(5, 2, 0, 3, 2, 5, 1); }) == ErrorKind::kRejectedParameters);
}

TEST_CASE("solve_plan accounting identities") {
  for (int B = 1; B <= 12; ++B) {
    for (int S = 1; S <= 6; ++S) {
      for (int m = 1; m <= B; ++m) {
        const auto p = solve_plan(B, S, m, 100, 1, 100, 1);
        CHECK(p.m * p.d == p.B * p.r);
        CHECK(p.delta_tilde * p.B == (p.B + p.m) * p.d);
        CHECK(p.S_tilde == p.d * p.S);
        CHECK(p.m * p.S_tilde == p.B * (p.delta_tilde * p.S - p.S_tilde));
        CHECK(p.delta_tilde * p.S - p.S_tilde == p.r * p.S);
        for (int d = 1; d < p.d; ++d) CHECK((d * m) % B != 0);
        const auto q = scale_plan(p, 3);
        CHECK(q.m * q.d == q.B * q.r);
        CHECK(q.delta_tilde * q.B == (q.B + q.m) * q.d);
      }
    }
  }
}

TEST_CASE("donor_map") {
  CHECK(donor_map(1, 2) == 2);
  CHECK(donor_map(2, 2) == 1);
  CHECK(donor_map(3, 4) == 4);
  CHECK(kind_of([] { donor_map(1, 1); }) == ErrorKind::kNoDonor);
  for (int S = 2; S <= 20; ++S) {
    std::set<int> image;
    for (int i = 1; i <= S; ++i) {
      CHECK(donor_map(i, S) != i);
      image.insert(donor_map(i, S));
    }
    CHECK(static_cast<int>(image.size()) == S);
  }
}

TEST_CASE("linear_feasible_check on the triple example") {
  const auto base = worked_example_baseline();
  const auto& host = base.columns[0];
  const auto& donor = base.columns[1].groups;
  const auto pass = linear_feasible_check(host, {}, donor, 11, 6, base.users);
  CHECK(std::find(pass.begin(), pass.end(), MulticastGroup{1, 2, 5}) != pass.end());

  std::vector<MulticastGroup> pending;
  for (const MulticastGroup& g : {MulticastGroup{1, 2, 5}, MulticastGroup{1, 3, 4},
                                 MulticastGroup{2, 3, 4}}) {
    const auto ok = linear_feasible_check(host, pending, donor, 11, 6, base.users);
    CHECK(std::find(ok.begin(), ok.end(), g) != ok.end());
    pending.push_back(g);
  }
}

TEST_CASE("linear_feasible_check equals the direct condition") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int omega = 3 + static_cast<int>(rng() % 5);
    const int t = static_cast<int>(rng() % (omega - 1));
    const int L = 3 + static_cast<int>(rng() % 10);
    const int G = 1 + static_cast<int>(rng() % 5);
    const auto users = user_range(omega);
    const auto all = enumerate_groups(users, t);
    ScheduleColumn host;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 5); i < n; ++i) {
      host.groups.push_back(all[rng() % all.size()]);
    }
    std::vector<MulticastGroup> pending;
    for (int i = 0, n = static_cast<int>(rng() % 3); i < n; ++i) {
      pending.push_back(all[rng() % all.size()]);
    }
    const auto got = linear_feasible_check(host, pending, all, L, G, users);
    std::vector<MulticastGroup> want;
    for (const auto& cand : all) {
      auto u = host.groups;
      u.insert(u.end(), pending.begin(), pending.end());
      u.push_back(cand);
      if (oracle::decodable(plain(u), omega, L, G)) want.push_back(cand);
    }
    CHECK(got == want);
  }
}

TEST_CASE("linear_feasible_check edge cases") {
  const std::vector<User> three{1, 2, 3};
  const ScheduleColumn saturated{{{1, 2}, {1, 3}, {2, 3}}};  // beta_k = 2 = G
  const std::vector<MulticastGroup> donors{{1, 2}, {1, 3}, {2, 3}};
  CHECK(linear_feasible_check(saturated, {}, donors, 10, 2, three).empty());

  const std::vector<User> pair{1, 2};
  const std::vector<MulticastGroup> lone{{1, 2}};
  ScheduleColumn copies;
  for (int i = 0; i < 3; ++i) copies.groups.push_back({1, 2});
  CHECK(linear_feasible_check(copies, {}, lone, 4, 8, pair).size() == 1);
  copies.groups.push_back({1, 2});
  CHECK(linear_feasible_check(copies, {}, lone, 4, 8, pair).empty());
}

TEST_CASE("validate_collection") {
  const auto base = worked_example_baseline();
  const auto lists = worked_example_collections();
  for (const auto& c : lists) {
    CHECK(validate_collection(c, base.columns[c.donor_column - 1], 5, 3, 3, 2).ok);
  }
  auto short_one = lists[0];
  short_one.sets.pop_back();
  CHECK_FALSE(validate_collection(short_one, base.columns[1], 5, 3, 3, 2).ok);

  auto repeated = lists[0];
  repeated.sets[0][1] = repeated.sets[0][0];
  CHECK_FALSE(validate_collection(repeated, base.columns[1], 5, 3, 3, 2).ok);

  auto foreign = lists[0];
  foreign.sets[0][0] = MulticastGroup{1, 2, 3};
  CHECK_FALSE(validate_collection(foreign, base.columns[1], 5, 3, 3, 2).ok);

  CHECK_FALSE(validate_collection(lists[0], base.columns[1], 5, 3, 3, 1).ok);
}

TEST_CASE("balanced_greedy on the triple example") {
  const auto base = worked_example_baseline();
  const auto plan = solve_plan(5, 2, 3, 6, 3, 5, 2);
  for (int i = 1; i <= 2; ++i) {
    const auto c = balanced_greedy(i, plan, base);
    CHECK(c.host_column == i);
    CHECK(c.donor_column == donor_map(i, 2));
    CHECK(validate_collection(c, base.columns[c.donor_column - 1], plan.d, plan.m, plan.r,
                              plan.tau)
              .ok);
    for (const auto& set : c.sets) {
      auto u = base.columns[i - 1].groups;
      u.insert(u.end(), set.begin(), set.end());
      CHECK(oracle::decodable(plain(u), 5, 11, 6));
    }
    const auto again = balanced_greedy(i, plan, base);
    CHECK(again.sets == c.sets);
  }
  GreedyOptions seeded;
  seeded.seed = 99;
  const auto a = balanced_greedy(1, plan, base, seeded);
  const auto b = balanced_greedy(1, plan, base, seeded);
  CHECK(a.sets == b.sets);
}

TEST_CASE("balanced_greedy full absorption") {
  auto base = worked_example_baseline();
  base.params.L = 40;  // room for the whole donor column
  // m = B with tau = t+1: every set is the whole donor column.
  AsymPlan plan;
  plan.B = 5;
  plan.S = 2;
  plan.m = 5;
  plan.d = 1;
  plan.r = 1;
  plan.delta_tilde = 2;
  plan.S_tilde = 2;
  plan.tau = 3;
  plan.I_max = 250;
  const auto c = balanced_greedy(1, plan, base);
  REQUIRE(c.sets.size() == 1);
  std::multiset<MulticastGroup> got(c.sets[0].begin(), c.sets[0].end());
  std::multiset<MulticastGroup> donor(base.columns[1].groups.begin(),
                                      base.columns[1].groups.end());
  CHECK(got == donor);
}

TEST_CASE("pair example collections against exhaustive search") {
  const auto base = pair_baseline();
  const auto plan = solve_plan(5, 2, 2, 3, 2, 5, 1);
  for (int i = 1; i <= 2; ++i) {
    const auto& host = base.columns[i - 1];
    const auto& donor = base.columns[donor_map(i, 2) - 1].groups;
    // All 2-sets of distinct donor groups that keep the host decodable.
    std::vector<std::pair<int, int>> ok_pairs;
    for (int a = 0; a < 5; ++a) {
      for (int b = a + 1; b < 5; ++b) {
        auto u = host.groups;
        u.push_back(donor[a]);
        u.push_back(donor[b]);
        if (oracle::decodable(plain(u), 5, 10, 3)) ok_pairs.emplace_back(a, b);
      }
    }
    // Multisets of five such pairs covering every donor group exactly twice.
    std::set<std::multiset<std::pair<int, int>>> regular;
    std::vector<int> pick;
    auto rec = [&](auto& self, std::size_t from) -> void {
      if (pick.size() == 5) {
        std::vector<int> deg(5, 0);
        std::multiset<std::pair<int, int>> ms;
        for (int p : pick) {
          ++deg[ok_pairs[p].first];
          ++deg[ok_pairs[p].second];
          ms.insert(ok_pairs[p]);
        }
        if (std::all_of(deg.begin(), deg.end(), [](int x) { return x == 2; })) {
          regular.insert(ms);
        }
        return;
      }
      for (std::size_t p = from; p < ok_pairs.size(); ++p) {
        pick.push_back(static_cast<int>(p));
        self(self, p);
        pick.pop_back();
      }
    };
    rec(rec, 0);
    REQUIRE_FALSE(regular.empty());

    const auto c = balanced_greedy(i, plan, base);
    std::multiset<std::pair<int, int>> got;
    for (const auto& set : c.sets) {
      REQUIRE(set.size() == 2);
      const int a = static_cast<int>(std::find(donor.begin(), donor.end(), set[0]) - donor.begin());
      const int b = static_cast<int>(std::find(donor.begin(), donor.end(), set[1]) - donor.begin());
      got.insert({std::min(a, b), std::max(a, b)});
    }
    CHECK(regular.count(got) == 1);
  }
}

TEST_CASE("assemble_table") {
  SUBCASE("pair example") {
    const auto base = pair_baseline();
    const auto result = build_asymmetric(base, 2);
    const auto& table = result.table;
    CHECK(table.column_count() == 10);
    for (const auto& col : table.columns) {
      CHECK(col.size() == 7);
      std::vector<int> profile;
      for (const auto& [k, b] : column_multiplicities(col, table.users).beta) profile.push_back(b);
      std::sort(profile.begin(), profile.end());
      CHECK(profile == std::vector<int>{2, 3, 3, 3, 3});
    }
    CHECK(dof_of_table(table).uniform == 14);
    CHECK(is_conserved(table, 7));
    CHECK(theorem1_check(table).pass());
    CHECK(table.replication.delta_tilde == 7);
    CHECK(table.replication.m == 2);
  }
  SUBCASE("triple example from the listed collections") {
    const auto base = worked_example_baseline();
    const auto plan = solve_plan(5, 2, 3, 6, 3, 5, 2);
    const auto table = assemble_table(base, worked_example_collections(), plan);
    CHECK(table.column_count() == 10);
    for (const auto& col : table.columns) {
      CHECK(col.size() == 8);
      CHECK(column_multiplicities(col, table.users).dof() == 24);
    }
    CHECK(is_conserved(table, 8));
    CHECK(dof_of_table(table).uniform == 24);
  }
  SUBCASE("m = 0 keeps the baseline") {
    const auto base = pair_baseline();
    const auto result = build_asymmetric(base, 0);
    CHECK(result.table.columns.size() == base.columns.size());
    CHECK(dof_of_table(result.table).uniform == 10);
  }
  SUBCASE("an undecodable assignment is rejected") {
    const auto base = worked_example_baseline();
    const auto plan = solve_plan(5, 2, 3, 6, 3, 5, 2);
    auto lists = worked_example_collections();
    lists[0].sets[0] = {{1, 2, 5}, {1, 2, 5}, {1, 2, 5}};
    CHECK(kind_of([&] { assemble_table(base, lists, plan); }) == ErrorKind::kAssemblyFailure);
  }
}

TEST_CASE("dof_of_table") {
  const auto base = pair_baseline();
  CHECK(dof_of_table(base).uniform == 10);
  ScheduleTable mixed = base;
  mixed.columns[0].groups.pop_back();
  const auto summary = dof_of_table(mixed);
  CHECK_FALSE(summary.uniform.has_value());
  CHECK(summary.per_column == std::vector<int>{8, 10});
}
