// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include "ccsched/symmetric.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

namespace ccsched {

HatParams hat_params(int omega, int t) {
  if (t < 0 || omega < t + 1) {
    throw Error(ErrorKind::kRejectedParameters, "hat_params needs omega >= t+1");
  }
  const int g = std::gcd(t + 1, omega);
  HatParams hat;
  hat.beta_hat = (t + 1) / g;
  hat.B_hat = omega / g;
  hat.S_hat = binomial(omega, t + 1) / hat.B_hat;
  return hat;
}

namespace {

// eta * (1 + (omega-t-1) S_hat beta_hat) <= L S_hat  and  eta * beta_hat <= G
bool eta_admissible(const HatParams& hat, int eta, int L, int G, int t, int omega) {
  const std::int64_t denom =
      1 + static_cast<std::int64_t>(omega - t - 1) * hat.S_hat * hat.beta_hat;
  return static_cast<std::int64_t>(eta) * denom <=
             static_cast<std::int64_t>(L) * hat.S_hat &&
         eta * hat.beta_hat <= G;
}

std::optional<int> smallest_delta(const HatParams& hat, int eta, int min_columns,
                                  int delta_max) {
  for (int delta = 1; delta <= delta_max; ++delta) {
    const std::int64_t total = delta * hat.S_hat;
    if (total % eta == 0 && total / eta >= min_columns) return delta;
  }
  return std::nullopt;
}

}  // namespace

std::vector<int> feasible_beta_set(int L, int G, int t, int omega, int delta_max) {
  if (delta_max < 1) {
    throw Error(ErrorKind::kRejectedParameters, "delta_max must be >= 1");
  }
  const HatParams hat = hat_params(omega, t);
  std::vector<int> betas;
  for (int eta = 1; eta * hat.beta_hat <= G; ++eta) {
    if (!eta_admissible(hat, eta, L, G, t, omega)) continue;
    if (smallest_delta(hat, eta, 1, delta_max)) betas.push_back(eta * hat.beta_hat);
  }
  return betas;
}

std::optional<SymmetricPlan> symmetric_plan(int L, int G, int t, int omega, int beta,
                                            int min_columns, int delta_max) {
  const HatParams hat = hat_params(omega, t);
  if (beta <= 0 || beta % hat.beta_hat != 0) return std::nullopt;
  const int eta = beta / hat.beta_hat;
  if (!eta_admissible(hat, eta, L, G, t, omega)) return std::nullopt;
  const auto delta = smallest_delta(hat, eta, min_columns, delta_max);
  if (!delta) return std::nullopt;
  SymmetricPlan plan;
  plan.hat = hat;
  plan.eta = eta;
  plan.delta = *delta;
  plan.beta = beta;
  plan.B = eta * hat.B_hat;
  plan.S = *delta * hat.S_hat / eta;
  return plan;
}

namespace {

using FlowTraits =
    boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, long,
                    boost::property<boost::edge_residual_capacity_t, long,
                                    boost::property<boost::edge_reverse_t,
                                                    FlowTraits::edge_descriptor>>>>;
using FlowEdge = FlowTraits::edge_descriptor;

FlowEdge add_arc(FlowGraph& g, std::size_t from, std::size_t to, long capacity) {
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  const FlowEdge fwd = boost::add_edge(from, to, g).first;
  const FlowEdge back = boost::add_edge(to, from, g).first;
  cap[fwd] = capacity;
  cap[back] = 0;
  rev[fwd] = back;
  rev[back] = fwd;
  return fwd;
}

using Mask = std::uint32_t;

// Baranyai-style construction. Users are added one at a time; every column
// holds B_hat partial groups (bit masks over the users seen so far). Adding
// user v to exactly beta_hat partial groups per column while keeping the
// number of copies of each partial group X equal to C(omega-v, k-|X|) is an
// integral flow problem whose fractional relaxation is feasible, so an
// integral max flow always completes the step.
std::vector<std::vector<Mask>> flow_partition(int omega, int k, const HatParams& hat) {
  std::vector<std::vector<Mask>> columns(static_cast<std::size_t>(hat.S_hat),
                                         std::vector<Mask>(static_cast<std::size_t>(hat.B_hat), 0));
  for (int v = 0; v < omega; ++v) {
    const int remaining = omega - v;  // users not yet placed, v included
    std::map<Mask, std::size_t> partial_index;
    for (const auto& col : columns) {
      for (Mask x : col) {
        if (std::popcount(x) < k) partial_index.emplace(x, 0);
      }
    }
    std::vector<Mask> partials;
    for (auto& [x, idx] : partial_index) {
      idx = partials.size();
      partials.push_back(x);
    }
    const std::size_t source = 0;
    const std::size_t sink = 1;
    const std::size_t first_partial = 2;
    const std::size_t first_column = first_partial + partials.size();
    FlowGraph g(first_column + columns.size());
    for (std::size_t p = 0; p < partials.size(); ++p) {
      const int free_slots = k - std::popcount(partials[p]);
      add_arc(g, source, first_partial + p, static_cast<long>(binomial(remaining - 1, free_slots - 1)));
    }
    std::map<std::pair<std::size_t, std::size_t>, FlowEdge> arcs;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::map<std::size_t, long> copies;
      for (Mask x : columns[c]) {
        if (std::popcount(x) < k) ++copies[partial_index.at(x)];
      }
      for (const auto& [p, n] : copies) {
        arcs.emplace(std::pair{p, c}, add_arc(g, first_partial + p, first_column + c, n));
      }
      add_arc(g, first_column + c, sink, hat.beta_hat);
    }
    const long flow = boost::push_relabel_max_flow(g, source, sink);
    if (flow != static_cast<long>(columns.size()) * hat.beta_hat) {
      throw Error(ErrorKind::kConstructionFailure,
                  "base partition flow step " + std::to_string(v + 1) + " is not saturated");
    }
    auto cap = boost::get(boost::edge_capacity, g);
    auto residual = boost::get(boost::edge_residual_capacity, g);
    for (const auto& [key, arc] : arcs) {
      long grow = cap[arc] - residual[arc];
      const Mask x = partials[key.first];
      for (Mask& slot : columns[key.second]) {
        if (grow == 0) break;
        if (slot == x) {
          slot = x | (Mask{1} << v);
          --grow;
        }
      }
    }
  }
  return columns;
}

}  // namespace

std::vector<ScheduleColumn> build_base_partition(int omega, int t) {
  if (t < 0 || omega < t + 1) {
    throw Error(ErrorKind::kRejectedParameters, "base partition needs omega >= t+1");
  }
  if (omega > 31) {
    throw Error(ErrorKind::kRejectedParameters, "base partition supports omega <= 31");
  }
  const HatParams hat = hat_params(omega, t);
  const auto masks = flow_partition(omega, t + 1, hat);
  std::vector<ScheduleColumn> columns;
  for (const auto& col : masks) {
    ScheduleColumn out;
    for (Mask x : col) {
      std::vector<User> members;
      for (int u = 0; u < omega; ++u) {
        if (x & (Mask{1} << u)) members.push_back(u + 1);
      }
      out.groups.emplace_back(std::move(members));
    }
    std::sort(out.groups.begin(), out.groups.end());
    columns.push_back(std::move(out));
  }
  std::sort(columns.begin(), columns.end(),
            [](const ScheduleColumn& a, const ScheduleColumn& b) { return a.groups < b.groups; });
  if (!is_base_partition(columns, omega, t)) {
    throw Error(ErrorKind::kConstructionFailure, "base partition failed validation");
  }
  return columns;
}

bool is_base_partition(const std::vector<ScheduleColumn>& columns, int omega, int t) {
  const HatParams hat = hat_params(omega, t);
  if (static_cast<std::int64_t>(columns.size()) != hat.S_hat) return false;
  const auto users = user_range(omega);
  std::map<MulticastGroup, int> seen;
  for (const auto& col : columns) {
    if (col.size() != hat.B_hat) return false;
    ColumnProfile profile;
    try {
      profile = column_multiplicities(col, users);
    } catch (const Error&) {
      return false;
    }
    for (const auto& [k, b] : profile.beta) {
      if (b != hat.beta_hat) return false;
    }
    for (const auto& g : col.groups) {
      if (g.size() != t + 1 || ++seen[g] > 1) return false;
    }
  }
  return static_cast<std::int64_t>(seen.size()) == binomial(omega, t + 1);
}

ScheduleTable regroup(const std::vector<ScheduleColumn>& base, int omega, int t,
                      int eta, int delta, int L, int G) {
  const std::int64_t total = static_cast<std::int64_t>(base.size()) * delta;
  if (eta < 1 || delta < 1 || total % eta != 0) {
    throw Error(ErrorKind::kRejectedParameters,
                "delta*S_hat must be divisible by eta (delta=" + std::to_string(delta) +
                    ", eta=" + std::to_string(eta) + ")");
  }
  ScheduleTable table;
  table.users = user_range(omega);
  table.params = SystemParams{omega, L, G, omega, t, t};
  const HatParams hat = hat_params(omega, t);
  table.replication = Replication{delta, eta, eta * hat.beta_hat, 1, 0};
  const std::int64_t out_columns = total / eta;
  for (std::int64_t i = 0; i < out_columns; ++i) {
    ScheduleColumn col;
    for (int j = 0; j < eta; ++j) {
      const auto& src = base[static_cast<std::size_t>((i * eta + j) % base.size())];
      col.groups.insert(col.groups.end(), src.groups.begin(), src.groups.end());
    }
    table.columns.push_back(std::move(col));
  }
  return table;
}

ScheduleTable symmetric_table(const SymmetricPlan& plan, int omega, int t, int L,
                              int G) {
  return regroup(build_base_partition(omega, t), omega, t, plan.eta, plan.delta, L, G);
}

}  // namespace ccsched
