// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include "ccsched/dof_region.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "ccsched/seed.hpp"
#include "ccsched/theorem1.hpp"

namespace ccsched {

std::vector<int> symmetric_region(int L, int G, int t, int omega, int delta_max) {
  std::vector<int> dofs;
  for (int beta : feasible_beta_set(L, G, t, omega, delta_max)) dofs.push_back(omega * beta);
  return dofs;
}

namespace {

std::optional<AsymmetricResult> try_cell(const ScheduleTable& baseline, int m, int t,
                                         const RegionBudget& budget, int beta) {
  const int B = baseline.columns.front().size();
  const AsymPlan base_plan = solve_plan(B, baseline.column_count(), m, baseline.params.G, beta,
                                        baseline.omega(), t);
  for (int factor = 1; base_plan.d * factor <= budget.d_limit_factor * B; ++factor) {
    for (int attempt = 0; attempt <= budget.reseeds; ++attempt) {
      const std::uint64_t seed =
          attempt == 0 ? 0
                       : derive_seed(budget.seed, "region",
                                     static_cast<std::uint64_t>(attempt) * 1000 + factor);
      for (int tau = t; tau <= t + 1; ++tau) {
        AsymmetricOptions options;
        options.tau = tau;
        options.d_factor = factor;
        options.seed = seed;
        options.relax_tau = false;
        try {
          auto result = build_asymmetric(baseline, m, options);
          if (theorem1_check(result.table).pass()) return result;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kConstructionFailure &&
              e.kind() != ErrorKind::kAssemblyFailure) {
            throw;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

DofRegion explore_dof_region(int L, int G, int t, int omega, const RegionBudget& budget) {
  DofRegion region{L, G, t, omega, {}, {}, {}, {}, {}};
  std::set<int> sym;
  std::set<int> asym;

  for (int beta : feasible_beta_set(L, G, t, omega, budget.delta_max)) {
    const auto plan = symmetric_plan(L, G, t, omega, beta, 1, budget.delta_max);
    ScheduleTable table = symmetric_table(*plan, omega, t, L, G);
    if (!theorem1_check(table).pass()) continue;
    const int dof = omega * beta;
    region.symmetric_witnesses.push_back(DofWitness{"symmetric", beta, 0, dof, table});
    sym.insert(dof);
    if (asym.insert(dof).second) {
      region.asymmetric_witnesses.push_back(DofWitness{"asymmetric", beta, 0, dof, table});
    }
  }

  for (int beta : feasible_beta_set(L, G, t, omega, budget.delta_max)) {
    const auto plan = symmetric_plan(L, G, t, omega, beta, 2, budget.delta_max);
    if (!plan) continue;
    const ScheduleTable baseline = symmetric_table(*plan, omega, t, L, G);
    const int m_max = std::min(plan->B, max_added_groups(G, beta, omega, t));
    for (int m = 1; m <= m_max; ++m) {
      const int dof = omega * beta + m * (t + 1);
      const auto result = try_cell(baseline, m, t, budget, beta);
      if (!result) {
        region.failed_cells.emplace_back(beta, m);
        continue;
      }
      if (asym.insert(dof).second) {
        region.asymmetric_witnesses.push_back(
            DofWitness{"asymmetric", beta, m, dof, result->table});
      }
    }
  }
  region.symmetric_dofs.assign(sym.begin(), sym.end());
  region.asymmetric_dofs.assign(asym.begin(), asym.end());
  std::sort(region.asymmetric_witnesses.begin(), region.asymmetric_witnesses.end(),
            [](const DofWitness& a, const DofWitness& b) { return a.dof < b.dof; });
  return region;
}

std::vector<int> asymmetric_region(int L, int G, int t, int omega, const RegionBudget& budget) {
  return explore_dof_region(L, G, t, omega, budget).asymmetric_dofs;
}

}  // namespace ccsched
