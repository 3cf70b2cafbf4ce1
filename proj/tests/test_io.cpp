// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include <doctest.h>

#include <set>

#include "ccsched/asymmetric.hpp"
#include "ccsched/error.hpp"
#include "ccsched/seed.hpp"
#include "ccsched/symmetric.hpp"
#include "ccsched/table_json.hpp"

using namespace ccsched;

TEST_CASE("table JSON round trip") {
  const auto plan = symmetric_plan(10, 3, 1, 5, 2, 2);
  const auto table = build_asymmetric(symmetric_table(*plan, 5, 1, 10, 3), 2).table;
  const std::string text = dump_table(table);
  const auto back = parse_table(text);
  CHECK(dump_table(back) == text);
  CHECK(back.columns.size() == table.columns.size());
  CHECK(back.replication.delta_tilde == 7);
  CHECK(back.replication.m == 2);
  CHECK(text.rfind("{\"omega\":5,\"t\":1,\"L\":10,\"G\":3,\"users\":[1,2,3,4,5]", 0) == 0);
}

TEST_CASE("malformed tables are rejected") {
  const auto reject = [](const std::string& text) {
    try {
      parse_table(text);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kMalformedTable;
    }
    return false;
  };
  CHECK(reject("not json"));
  CHECK(reject(R"({"omega":3,"t":1,"L":4,"G":2})"));
  CHECK(reject(R"({"omega":3,"t":1,"L":4,"G":2,"users":[1,2,3],"delta":1,"delta_tilde":1,"m":0,"columns":[[[1,7]]]})"));
  CHECK(reject(R"({"omega":3,"t":1,"L":4,"G":2,"users":[1,2,3],"delta":1,"delta_tilde":1,"m":0,"columns":[[[1,2,3]]]})"));
  CHECK_FALSE(reject(R"({"omega":3,"t":1,"L":4,"G":2,"users":[1,2,3],"delta":1,"delta_tilde":1,"m":0,"columns":[[[1,2]]]})"));
}

TEST_CASE("derive_seed") {
  CHECK(derive_seed(7, "channel", 3) == derive_seed(7, "channel", 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(7, "channel", i));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(7, "channel", 0) != derive_seed(7, "combiner", 0));
  CHECK(derive_seed(7, "channel", 0) != derive_seed(8, "channel", 0));
}
