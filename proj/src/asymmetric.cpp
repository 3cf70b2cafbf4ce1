// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include "ccsched/asymmetric.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include "ccsched/seed.hpp"
#include "ccsched/theorem1.hpp"

namespace ccsched {

int max_added_groups(int G, int beta, int omega, int t) {
  return (G - beta) * (omega / (t + 1));
}

AsymPlan solve_plan(int B, int S, int m, int G, int beta, int omega, int t) {
  if (m < 1 || B < 1 || S < 1) {
    throw Error(ErrorKind::kRejectedParameters, "solve_plan needs m, B, S >= 1");
  }
  const int bound = max_added_groups(G, beta, omega, t);
  if (m > bound) {
    throw Error(ErrorKind::kInfeasibleM,
                "m=" + std::to_string(m) + " exceeds (G-beta)*floor(omega/(t+1)) = " +
                    std::to_string(bound));
  }
  if (m > B) {
    throw Error(ErrorKind::kInfeasibleM, "m=" + std::to_string(m) +
                                             " exceeds the donor column size B=" +
                                             std::to_string(B));
  }
  for (int d = 1; d <= B; ++d) {
    if ((d * m) % B != 0 || ((B + m) * d) % B != 0) continue;
    AsymPlan plan;
    plan.B = B;
    plan.S = S;
    plan.m = m;
    plan.d = d;
    plan.r = d * m / B;
    plan.delta_tilde = (B + m) * d / B;
    plan.S_tilde = d * S;
    plan.tau = t;
    plan.I_max = 50 * m;
    return plan;
  }
  throw Error(ErrorKind::kSearchFailure, "no integral (d, r, delta_tilde) with d <= B");
}

AsymPlan scale_plan(const AsymPlan& plan, int factor) {
  if (factor < 1) {
    throw Error(ErrorKind::kRejectedParameters, "plan scale factor must be >= 1");
  }
  AsymPlan scaled = plan;
  scaled.d *= factor;
  scaled.r *= factor;
  scaled.delta_tilde *= factor;
  scaled.S_tilde *= factor;
  return scaled;
}

int donor_map(int i, int S) {
  if (S < 2) {
    throw Error(ErrorKind::kNoDonor,
                "asymmetric construction needs at least two baseline columns");
  }
  if (i < 1 || i > S) {
    throw Error(ErrorKind::kRejectedParameters, "column index out of range");
  }
  return (i % S) + 1;
}

namespace {

// b(k), c(T) and n(T) bookkeeping for one column under construction.
class ColumnLoad {
 public:
  ColumnLoad(const ScheduleColumn& host, std::span<const User> served_users, int L,
             int G)
      : L_(L), G_(G) {
    for (std::size_t idx = 0; idx < served_users.size(); ++idx) {
      index_[served_users[idx]] = static_cast<int>(idx);
    }
    beta_.assign(served_users.size(), 0);
    for (const auto& g : host.groups) add(g);
  }

  void add(const MulticastGroup& g) {
    ++theta_[g];
    for (User k : g.users()) ++beta_[slot(k)];
    dof_ += g.size();
  }

  void remove(const MulticastGroup& g) {
    auto it = theta_.find(g);
    if (--it->second == 0) theta_.erase(it);
    for (User k : g.users()) --beta_[slot(k)];
    dof_ -= g.size();
  }

  bool feasible() const {
    if (*std::max_element(beta_.begin(), beta_.end()) > G_) return false;
    for (const auto& [g, c] : theta_) {
      int inside = 0;
      for (User k : g.users()) inside += beta_[slot(k)];
      if (c + dof_ - inside > L_) return false;
    }
    return true;
  }

  bool feasible_with(const MulticastGroup& g) {
    add(g);
    const bool ok = feasible();
    remove(g);
    return ok;
  }

 private:
  int slot(User k) const {
    auto it = index_.find(k);
    if (it == index_.end()) {
      throw Error(ErrorKind::kMalformedTable,
                  "user " + std::to_string(k) + " outside the served set");
    }
    return it->second;
  }

  int L_;
  int G_;
  int dof_ = 0;
  std::map<User, int> index_;
  std::vector<int> beta_;
  std::map<MulticastGroup, int> theta_;
};

}  // namespace

std::vector<MulticastGroup> linear_feasible_check(const ScheduleColumn& host,
                                                  std::span<const MulticastGroup> pending,
                                                  std::span<const MulticastGroup> donor_groups,
                                                  int L, int G,
                                                  std::span<const User> served_users) {
  ColumnLoad load(host, served_users, L, G);
  for (const auto& g : pending) load.add(g);
  std::vector<MulticastGroup> passing;
  for (const auto& candidate : donor_groups) {
    if (load.feasible_with(candidate)) passing.push_back(candidate);
  }
  return passing;
}

CollectionCheck validate_collection(const CandidateCollection& collection,
                                    const ScheduleColumn& donor, int d, int m, int r,
                                    int tau) {
  auto fail = [](std::string reason) { return CollectionCheck{false, std::move(reason)}; };
  if (static_cast<int>(collection.sets.size()) != d) {
    return fail("expected " + std::to_string(d) + " sets, got " +
                std::to_string(collection.sets.size()));
  }
  std::map<MulticastGroup, int> donor_count;
  for (const auto& g : donor.groups) ++donor_count[g];
  std::map<MulticastGroup, int> used;
  for (std::size_t s = 0; s < collection.sets.size(); ++s) {
    const auto& set = collection.sets[s];
    const std::string where = "set " + std::to_string(s + 1);
    if (static_cast<int>(set.size()) != m) return fail(where + " does not have m groups");
    std::map<MulticastGroup, int> local;
    for (const auto& g : set) {
      auto it = donor_count.find(g);
      if (it == donor_count.end()) return fail(where + ": " + g.str() + " not in donor column");
      if (++local[g] > it->second) return fail(where + ": " + g.str() + " repeated");
      ++used[g];
    }
    for (std::size_t a = 0; a < set.size(); ++a) {
      for (std::size_t b = a + 1; b < set.size(); ++b) {
        if (set[a].overlap(set[b]) > tau) {
          return fail(where + ": overlap of " + set[a].str() + " and " + set[b].str() +
                      " exceeds tau");
        }
      }
    }
  }
  for (const auto& [g, count] : donor_count) {
    if (used[g] != r * count) {
      return fail(g.str() + " appears " + std::to_string(used[g]) + " times, expected " +
                  std::to_string(r * count));
    }
  }
  return {};
}

namespace {

class BalancedGreedy {
 public:
  BalancedGreedy(int i, const AsymPlan& plan, const ScheduleTable& baseline,
                 const GreedyOptions& options)
      : i_(i),
        plan_(plan),
        host_(baseline.columns.at(static_cast<std::size_t>(i - 1))),
        donor_column_(donor_map(i, baseline.column_count())),
        donor_(baseline.columns.at(static_cast<std::size_t>(donor_column_ - 1)).groups),
        base_load_(host_, baseline.users, baseline.params.L, baseline.params.G),
        quota_(donor_.size(), plan.r) {
    if (static_cast<int>(donor_.size()) != plan.B || plan.r * plan.B != plan.d * plan.m) {
      throw Error(ErrorKind::kRejectedParameters,
                  "plan does not match the donor column (B=" + std::to_string(donor_.size()) +
                      ")");
    }
    weight_ = options.overlap_weight;
    if (weight_ <= 0.0) {
      weight_ = baseline.replication.beta;
      if (weight_ <= 0.0) {
        const auto profile = column_multiplicities(host_, baseline.users);
        for (const auto& [k, b] : profile.beta) weight_ = std::max<double>(weight_, b);
      }
    }
    rank_.resize(donor_.size());
    std::iota(rank_.begin(), rank_.end(), 0);
    if (options.seed == 0) {
      std::stable_sort(rank_.begin(), rank_.end(),
                       [&](int a, int b) { return donor_[a] < donor_[b]; });
    } else {
      std::mt19937_64 rng(derive_seed(options.seed, "balanced-greedy",
                                      static_cast<std::uint64_t>(i)));
      std::shuffle(rank_.begin(), rank_.end(), rng);
    }
    // rank_[pos] = instance; invert to priority_[instance] = pos
    priority_.resize(donor_.size());
    for (std::size_t pos = 0; pos < rank_.size(); ++pos) {
      priority_[rank_[pos]] = static_cast<int>(pos);
    }
  }

  CandidateCollection run() {
    while (static_cast<int>(sets_.size()) < plan_.d) {
      std::vector<int> current;
      int iterations = 0;
      while (static_cast<int>(current.size()) < plan_.m && iterations < plan_.I_max) {
        ++iterations;
        const auto candidates = feasible_set(current);
        if (candidates.empty()) {
          if (try_swap(current)) continue;
          break;
        }
        const int chosen = argmin(candidates, current);
        current.push_back(chosen);
        --quota_[chosen];
      }
      if (static_cast<int>(current.size()) < plan_.m) {
        throw Error(ErrorKind::kConstructionFailure,
                    "balanced greedy stalled on column " + std::to_string(i_) + " after " +
                        std::to_string(sets_.size()) + " of " + std::to_string(plan_.d) +
                        " sets (tau=" + std::to_string(plan_.tau) + ")");
      }
      sets_.push_back(std::move(current));
    }
    CandidateCollection collection;
    collection.host_column = i_;
    collection.donor_column = donor_column_;
    for (const auto& set : sets_) {
      std::vector<MulticastGroup> groups;
      for (int idx : set) groups.push_back(donor_[idx]);
      collection.sets.push_back(std::move(groups));
    }
    return collection;
  }

 private:
  bool contains(const std::vector<int>& set, int idx) const {
    return std::find(set.begin(), set.end(), idx) != set.end();
  }

  int max_overlap(const std::vector<int>& set, const MulticastGroup& g) const {
    int worst = 0;
    for (int idx : set) worst = std::max(worst, donor_[idx].overlap(g));
    return worst;
  }

  bool set_is_feasible(const std::vector<int>& set, int extra) {
    ColumnLoad load = base_load_;
    for (int idx : set) load.add(donor_[idx]);
    return load.feasible_with(donor_[extra]);
  }

  std::vector<int> feasible_set(const std::vector<int>& current) {
    ColumnLoad load = base_load_;
    for (int idx : current) load.add(donor_[idx]);
    std::vector<int> out;
    for (int idx = 0; idx < static_cast<int>(donor_.size()); ++idx) {
      if (quota_[idx] <= 0 || contains(current, idx)) continue;
      if (max_overlap(current, donor_[idx]) > plan_.tau) continue;
      if (!load.feasible_with(donor_[idx])) continue;
      out.push_back(idx);
    }
    return out;
  }

  int argmin(const std::vector<int>& candidates, const std::vector<int>& current) const {
    int best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (int idx : candidates) {
      int overlap_sum = 0;
      for (int other : current) overlap_sum += donor_[other].overlap(donor_[idx]);
      const double score = weight_ * overlap_sum - quota_[idx];
      if (best < 0 || score < best_score ||
          (score == best_score && priority_[idx] < priority_[best])) {
        best = idx;
        best_score = score;
      }
    }
    return best;
  }

  // Exchanges T_A in the open set with T_B in an accepted set. Both sets must
  // keep the overlap bound, stay duplicate free and linearly feasible, and
  // the open set must have a feasible extension afterwards.
  bool try_swap(std::vector<int>& current) {
    for (auto& accepted : sets_) {
      for (std::size_t pb = 0; pb < accepted.size(); ++pb) {
        for (std::size_t pa = 0; pa < current.size(); ++pa) {
          const int tb = accepted[pb];
          const int ta = current[pa];
          if (donor_[tb] == donor_[ta]) continue;
          std::vector<int> a_rest = current;
          a_rest.erase(a_rest.begin() + static_cast<std::ptrdiff_t>(pa));
          std::vector<int> b_rest = accepted;
          b_rest.erase(b_rest.begin() + static_cast<std::ptrdiff_t>(pb));
          if (contains(a_rest, tb) || contains(b_rest, ta)) continue;
          if (max_overlap(a_rest, donor_[tb]) > plan_.tau ||
              max_overlap(b_rest, donor_[ta]) > plan_.tau) {
            continue;
          }
          if (!set_is_feasible(a_rest, tb) || !set_is_feasible(b_rest, ta)) continue;
          std::vector<int> swapped = current;
          swapped[pa] = tb;
          if (feasible_set(swapped).empty()) continue;
          current = std::move(swapped);
          accepted[pb] = ta;
          return true;
        }
      }
    }
    return false;
  }

  int i_;
  AsymPlan plan_;
  const ScheduleColumn& host_;
  int donor_column_;
  const std::vector<MulticastGroup>& donor_;
  ColumnLoad base_load_;
  std::vector<int> quota_;
  std::vector<int> rank_;
  std::vector<int> priority_;
  double weight_ = 0.0;
  std::vector<std::vector<int>> sets_;
};

}  // namespace

CandidateCollection balanced_greedy(int i, const AsymPlan& plan,
                                    const ScheduleTable& baseline,
                                    const GreedyOptions& options) {
  return BalancedGreedy(i, plan, baseline, options).run();
}

ScheduleTable assemble_table(const ScheduleTable& baseline,
                             const std::vector<CandidateCollection>& collections,
                             const AsymPlan& plan) {
  if (plan.m == 0) return baseline;
  if (static_cast<int>(collections.size()) != baseline.column_count()) {
    throw Error(ErrorKind::kAssemblyFailure, "need one collection per baseline column");
  }
  ScheduleTable table = baseline;
  table.columns.clear();
  table.replication.delta_tilde = plan.delta_tilde;
  table.replication.m = plan.m;
  for (int i = 0; i < baseline.column_count(); ++i) {
    const auto& collection = collections[i];
    if (static_cast<int>(collection.sets.size()) != plan.d) {
      throw Error(ErrorKind::kAssemblyFailure,
                  "collection for column " + std::to_string(i + 1) + " has " +
                      std::to_string(collection.sets.size()) + " sets, expected d=" +
                      std::to_string(plan.d));
    }
    for (const auto& set : collection.sets) {
      ScheduleColumn col = baseline.columns[i];
      col.groups.insert(col.groups.end(), set.begin(), set.end());
      table.columns.push_back(std::move(col));
    }
  }
  const auto verdict = theorem1_check(table);
  if (!verdict.pass()) {
    const auto w = verdict.witnesses().front();
    throw Error(ErrorKind::kAssemblyFailure,
                "assembled column " + std::to_string(w.column) + " violates " +
                    (w.condition == Condition::kC1 ? "C1 at " + w.group->str()
                                                   : "C2 at user " + std::to_string(*w.user)));
  }
  return table;
}

AsymmetricResult build_asymmetric(const ScheduleTable& baseline, int m,
                                  const AsymmetricOptions& options) {
  AsymmetricResult result;
  const int S = baseline.column_count();
  if (m == 0) {
    result.plan = AsymPlan{S ? baseline.columns[0].size() : 0, S, 0, 1, 0, 1, S,
                           baseline.params.t, 0};
    result.table = baseline;
    return result;
  }
  if (S == 0) throw Error(ErrorKind::kRejectedParameters, "empty baseline");
  const int t = baseline.params.t;
  int beta = baseline.replication.beta;
  if (beta <= 0) {
    const auto profile = column_multiplicities(baseline.columns[0], baseline.users);
    for (const auto& [k, b] : profile.beta) beta = std::max(beta, b);
  }
  AsymPlan plan = solve_plan(baseline.columns[0].size(), S, m, baseline.params.G, beta,
                             baseline.omega(), t);
  plan = scale_plan(plan, options.d_factor);
  if (options.tau) plan.tau = *options.tau;
  if (options.I_max) plan.I_max = *options.I_max;
  donor_map(1, S);

  const int tau_limit = options.relax_tau ? std::max(plan.tau, t + 1) : plan.tau;
  int tau_used = plan.tau;
  for (int i = 1; i <= S; ++i) {
    for (int tau = plan.tau;; ++tau) {
      AsymPlan attempt = plan;
      attempt.tau = tau;
      try {
        result.collections.push_back(
            balanced_greedy(i, attempt, baseline, GreedyOptions{options.seed, 0.0}));
        tau_used = std::max(tau_used, tau);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kConstructionFailure || tau >= tau_limit) throw;
      }
    }
  }
  plan.tau = tau_used;
  result.plan = plan;
  result.table = assemble_table(baseline, result.collections, plan);
  return result;
}

DofSummary dof_of_table(const ScheduleTable& table) {
  DofSummary summary;
  for (const auto& col : table.columns) {
    summary.per_column.push_back(column_multiplicities(col, table.users).dof());
  }
  if (!summary.per_column.empty() &&
      std::adjacent_find(summary.per_column.begin(), summary.per_column.end(),
                         std::not_equal_to<>()) == summary.per_column.end()) {
    summary.uniform = summary.per_column.front();
  }
  return summary;
}

}  // namespace ccsched
