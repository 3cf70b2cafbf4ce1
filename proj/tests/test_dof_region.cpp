// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include <doctest.h>

#include <algorithm>

#include "ccsched/dof_region.hpp"
#include "ccsched/theorem1.hpp"

using namespace ccsched;

TEST_CASE("symmetric regions") {
  CHECK(symmetric_region(11, 8, 1, 4) == std::vector<int>{4, 8, 12, 16});
  CHECK(symmetric_region(11, 8, 2, 6) == std::vector<int>{6, 12, 18});
  CHECK(symmetric_region(11, 8, 3, 8) == std::vector<int>{8, 16});
}

TEST_CASE("pair network region") {
  const auto region = explore_dof_region(10, 3, 1, 5);
  for (int v : {10, 12, 14}) {
    CHECK(std::count(region.asymmetric_dofs.begin(), region.asymmetric_dofs.end(), v) == 1);
  }
  const auto three = explore_dof_region(10, 3, 1, 3);
  CHECK(three.asymmetric_dofs == std::vector<int>{6, 8});
}

TEST_CASE("region invariants") {
  for (auto [omega, t] : {std::pair{4, 1}, std::pair{6, 2}, std::pair{5, 1}}) {
    const auto region = explore_dof_region(11, 8, t, omega);
    CHECK(std::includes(region.asymmetric_dofs.begin(), region.asymmetric_dofs.end(),
                        region.symmetric_dofs.begin(), region.symmetric_dofs.end()));
    CHECK(region.asymmetric_witnesses.size() == region.asymmetric_dofs.size());
    for (const auto& w : region.asymmetric_witnesses) {
      CHECK(theorem1_check(w.table).pass());
      CHECK(dof_of_table(w.table).uniform == w.dof);
      CHECK(w.dof == omega * w.beta + w.m * (t + 1));
      CHECK(w.beta <= 8);
    }
    for (int v : region.symmetric_dofs) CHECK(v % omega == 0);
  }
}
