// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include <doctest.h>

#include <cmath>

#include "ccsched/asymmetric.hpp"
#include "ccsched/rate.hpp"
#include "ccsched/symmetric.hpp"

using namespace ccsched;

namespace {

ScheduleTable pair_table(int m) {
  const auto plan = symmetric_plan(10, 3, 1, 5, 2, 2);
  return build_asymmetric(symmetric_table(*plan, 5, 1, 10, 3), m).table;
}

}  // namespace

TEST_CASE("scalar channel SINR") {
  const std::vector<User> one{1};
  const ScheduleColumn col{{{1}}};
  ChannelRealization ch;
  ch.H[1] = CMatrix::Constant(1, 1, std::complex<double>(0.6, 0.8));  // |h| = 1
  const auto sol = build_beamformers(col, one, ch);
  const auto s = stream_sinrs(col, one, ch, sol, 50.0, 2.0);
  REQUIRE(s.size() == 1);
  CHECK(s[0].sinr == doctest::Approx(25.0));
  CHECK(column_rate(s) == doctest::Approx(std::log2(26.0)));
}

TEST_CASE("zero-forcing SINRs") {
  const auto table = pair_table(2);
  const auto& col = table.columns[0];
  const auto ch = ChannelRealization::draw(table.users, 3, 10, 17);
  const auto sol = build_beamformers(col, table.users, ch, CombinerPolicy::kChannelAligned, 17);
  const auto a = stream_sinrs(col, table.users, ch, sol, 100.0, 1.0);
  const auto b = stream_sinrs(col, table.users, ch, sol, 200.0, 1.0);
  const auto c = stream_sinrs(col, table.users, ch, sol, 1000.0, 10.0);
  REQUIRE(a.size() == b.size());
  const double p = 100.0 / col.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].leakage_power <= 1e-12 * p);
    CHECK(b[i].sinr == doctest::Approx(2.0 * a[i].sinr).epsilon(1e-9));
    CHECK(c[i].sinr == doctest::Approx(a[i].sinr).epsilon(1e-9));
  }
  // one entry per (stream, receiving user)
  CHECK(a.size() == static_cast<std::size_t>(col.size() * 2));
}

TEST_CASE("column_rate is the bottleneck") {
  std::vector<StreamSinr> s(3);
  for (auto& x : s) x.sinr = 7.0;
  CHECK(column_rate(s) == doctest::Approx(3.0));
  s[1].sinr = 0.0;
  CHECK(column_rate(s) == 0.0);
}

TEST_CASE("symmetric_rate identities") {
  const std::vector<double> rates{1.0, 2.0, 4.0};
  const double t_total = 1.0 / (6 * 1.0) + 1.0 / (6 * 2.0) + 1.0 / (6 * 4.0);
  CHECK(symmetric_rate(rates, 5, 6) == doctest::Approx(5.0 / t_total));
  const std::vector<double> with_zero{1.0, 0.0};
  CHECK(symmetric_rate(with_zero, 5, 6) == 0.0);
}

TEST_CASE("sweep basics") {
  const auto table = pair_table(0);
  const auto grid = parse_snr_grid("0:10:30");
  CHECK(grid == std::vector<double>{0, 10, 20, 30});
  CHECK(parse_snr_grid("5,7.5") == std::vector<double>{5, 7.5});
  SweepOptions opt;
  opt.trials = 30;
  const auto pts = snr_sweep(table, grid, opt);
  REQUIRE(pts.size() == 4);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].symmetric_rate >= pts[i - 1].symmetric_rate);
  }
  const auto again = snr_sweep(table, grid, opt);
  CHECK(again[3].symmetric_rate == pts[3].symmetric_rate);
  CHECK(trial_symmetric_rate(table, 0.0, 7, 0) == 0.0);
  CHECK(high_snr_slope(pts, 10, 30) > 0.0);
}

TEST_CASE("definitional identity for a single trial") {
  const auto table = pair_table(1);
  const double power = 1000.0;
  const double rsym = trial_symmetric_rate(table, power, 7, 3);
  CHECK(rsym > 0.0);
  CHECK(trial_symmetric_rate(table, power, 7, 3) == rsym);
}
