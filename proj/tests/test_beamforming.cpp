// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include <doctest.h>

#include <random>

#include "ccsched/asymmetric.hpp"
#include "ccsched/beamforming.hpp"
#include "ccsched/error.hpp"
#include "ccsched/linalg.hpp"
#include "ccsched/seed.hpp"
#include "ccsched/symmetric.hpp"
#include "ccsched/theorem1.hpp"

using namespace ccsched;

TEST_CASE("linalg helpers") {
  std::mt19937_64 rng(3);
  const auto a = linalg::gaussian<std::complex<double>>(3, 7, rng);
  CHECK(linalg::numerical_rank(a) == 3);
  const auto n = linalg::nullspace_basis(a);
  CHECK(n.cols() == 4);
  CHECK((a * n).norm() < 1e-12);
  CHECK((n.adjoint() * n - linalg::Matrix<std::complex<double>>::Identity(4, 4)).norm() < 1e-12);

  const auto q = linalg::random_orthonormal<double>(5, 2, rng);
  CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 3.0, 2.0, 0.5;
  CHECK(linalg::smallest_singular_value(d) == doctest::Approx(0.5));
  const auto u = linalg::dominant_left_subspace(d, 2);
  CHECK(std::abs(u(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(u(1, 1)) == doctest::Approx(1.0));

  const Eigen::MatrixXd empty(0, 4);
  CHECK(linalg::nullspace_basis(empty).cols() == 4);
}

TEST_CASE("channel draws are reproducible") {
  const auto users = user_range(4);
  const auto a = ChannelRealization::draw(users, 2, 5, 42);
  const auto b = ChannelRealization::draw(users, 2, 5, 42);
  const auto c = ChannelRealization::draw(users, 2, 5, 43);
  CHECK(a.H.at(3) == b.H.at(3));
  CHECK(a.H.at(3) != c.H.at(3));
  CHECK(a.H.at(1).rows() == 2);
  CHECK(a.H.at(1).cols() == 5);
}

TEST_CASE("interference-free column keeps the full space") {
  const std::vector<User> pair{1, 2};
  const ScheduleColumn col{{{1, 2}, {1, 2}, {1, 2}}};
  const auto ch = ChannelRealization::draw(pair, 3, 4, 1);
  const auto sol = build_beamformers(col, pair, ch);
  CHECK(sol.nullity.at(MulticastGroup{1, 2}) == 4);
  CHECK(sol.streams.size() == 3);
  CHECK(verify_numeric(col, pair, ch, sol).pass());
}

TEST_CASE("two single-user groups") {
  const std::vector<User> users{1, 2};
  const ScheduleColumn col{{{1}, {1}, {2}, {2}}};
  const auto ch = ChannelRealization::draw(users, 2, 4, 9);
  const auto sol = build_beamformers(col, users, ch);
  CHECK(sol.nullity.at(MulticastGroup{1}) == 2);
  CHECK(sol.nullity.at(MulticastGroup{2}) == 2);
  const auto report = verify_numeric(col, users, ch, sol);
  CHECK(report.pass());
  CHECK(report.max_leakage < 1e-12);
}

TEST_CASE("pair example nullities follow rank-nullity") {
  const auto plan = symmetric_plan(10, 3, 1, 5, 2, 2);
  const auto table = build_asymmetric(symmetric_table(*plan, 5, 1, 10, 3), 2).table;
  for (std::uint64_t s = 0; s < 20; ++s) {
    for (const auto& col : table.columns) {
      const auto ch = ChannelRealization::draw(table.users, 3, 10, derive_seed(s, "t", 0));
      for (auto policy : {CombinerPolicy::kRandomOrthonormal, CombinerPolicy::kChannelAligned}) {
        const auto sol = build_beamformers(col, table.users, ch, policy, s);
        const auto profile = column_multiplicities(col, table.users);
        for (const auto& term : c1_terms(profile)) {
          CHECK(sol.nullity.at(term.group) == 10 - term.outside_streams);
        }
        const auto report = verify_numeric(col, table.users, ch, sol);
        CHECK(report.pass());
        CHECK(report.max_leakage <= 1e-9);
        CHECK(report.min_sigma > 1e-6);
      }
    }
  }
}

TEST_CASE("overloaded column is nullity deficient") {
  // Three users with beta = 3 each outside any pair: L = 5 leaves no room.
  const auto users = user_range(4);
  const ScheduleColumn col{{{1, 2}, {3, 4}, {3, 4}, {3, 4}, {1, 2}}};
  CHECK_FALSE(check_column(col, users, 4, 4).pass);
  const auto ch = ChannelRealization::draw(users, 4, 4, 5);
  CHECK_THROWS_AS(build_beamformers(col, users, ch), Error);
}

TEST_CASE("full-rank combiners at beta = G") {
  const auto users = user_range(3);
  const ScheduleColumn col{{{1, 2}, {1, 2}, {1, 3}, {2, 3}}};  // beta = (3, 3, 2)
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto ch = ChannelRealization::draw(users, 3, 8, s);
    const auto sol = build_beamformers(col, users, ch, CombinerPolicy::kRandomOrthonormal, s);
    CHECK(sol.combiners.at(1).cols() == 3);
    CHECK(verify_numeric(col, users, ch, sol).pass());
  }
}

TEST_CASE("verify_numeric is monotone in the tolerance") {
  const auto users = user_range(5);
  const auto plan = symmetric_plan(10, 3, 1, 5, 2);
  const auto table = symmetric_table(*plan, 5, 1, 10, 3);
  const auto ch = ChannelRealization::draw(users, 3, 10, 77);
  const auto sol = build_beamformers(table.columns[0], users, ch);
  const auto tight = verify_numeric(table.columns[0], users, ch, sol, {1e-14, 1e-3});
  const auto loose = verify_numeric(table.columns[0], users, ch, sol, {1e-9, 1e-6});
  if (tight.pass()) CHECK(loose.pass());
  CHECK(loose.failures.size() <= tight.failures.size());
}

TEST_CASE("table-level numeric report") {
  const auto plan = symmetric_plan(10, 3, 1, 5, 2, 2);
  const auto table = symmetric_table(*plan, 5, 1, 10, 3);
  const auto a = verify_table_numeric(table, 5, 1);
  const auto b = verify_table_numeric(table, 5, 1);
  CHECK(a.pass());
  CHECK(a.columns_checked == 10);
  CHECK(a.max_leakage == b.max_leakage);
  CHECK(a.min_sigma == b.min_sigma);
}
