// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include "ccsched/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccsched/dof_region.hpp"
#include "ccsched/error.hpp"
#include "ccsched/rate.hpp"
#include "ccsched/symmetric.hpp"
#include "ccsched/theorem1.hpp"

namespace ccsched {

namespace {

std::string brace(const std::vector<int>& values) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << values[i];
  out << '}';
  return out.str();
}

std::vector<int> arithmetic(int first, int step, int last) {
  std::vector<int> values;
  for (int v = first; v <= last; v += step) values.push_back(v);
  return values;
}

class Recorder {
 public:
  explicit Recorder(CaseReport& report) : report_(report) {}

  bool check(std::string name, bool pass, std::string detail) {
    report_.checks.push_back(CheckLine{std::move(name), pass, std::move(detail)});
    return pass;
  }

 private:
  CaseReport& report_;
};

std::vector<int> sorted_beta_profile(const ScheduleColumn& col, std::span<const User> users) {
  std::vector<int> profile;
  for (const auto& [k, b] : column_multiplicities(col, users).beta) profile.push_back(b);
  std::sort(profile.rbegin(), profile.rend());
  return profile;
}

OrderedJson plan_json(const AsymPlan& plan) {
  OrderedJson j;
  j["B"] = plan.B;
  j["S"] = plan.S;
  j["m"] = plan.m;
  j["d"] = plan.d;
  j["r"] = plan.r;
  j["delta_tilde"] = plan.delta_tilde;
  j["S_tilde"] = plan.S_tilde;
  j["tau"] = plan.tau;
  return j;
}

void run_example1(CaseReport& report) {
  Recorder rec(report);
  constexpr int L = 10, G = 3, t = 1, omega = 5, m = 2;
  const auto betas = feasible_beta_set(L, G, t, omega);
  rec.check("feasible-set", betas == std::vector<int>{2}, brace(betas));

  const auto sym = symmetric_plan(L, G, t, omega, 2, 2);
  if (!rec.check("baseline-plan", sym.has_value(), sym ? "S=" + std::to_string(sym->S) : "none")) {
    return;
  }
  const ScheduleTable baseline = symmetric_table(*sym, omega, t, L, G);
  const auto dof_ref = dof_of_table(baseline).uniform.value_or(-1);
  rec.check("dof-ref", dof_ref == 10, std::to_string(dof_ref));

  const AsymPlan plan = solve_plan(sym->B, sym->S, m, G, 2, omega, t);
  rec.check("plan",
            plan.d == 5 && plan.r == 2 && plan.delta_tilde == 7 && plan.S_tilde == 10,
            "d=" + std::to_string(plan.d) + " r=" + std::to_string(plan.r) +
                " delta_tilde=" + std::to_string(plan.delta_tilde) +
                " S_tilde=" + std::to_string(plan.S_tilde));

  const auto result = build_asymmetric(baseline, m);
  const auto& table = result.table;
  const bool shape = table.column_count() == 10 &&
                     std::all_of(table.columns.begin(), table.columns.end(),
                                 [](const ScheduleColumn& c) { return c.size() == 7; });
  rec.check("shape", shape, std::to_string(table.column_count()) + " columns");

  const std::vector<int> want{3, 3, 3, 3, 2};
  bool profiles = true;
  for (const auto& col : table.columns) profiles &= sorted_beta_profile(col, table.users) == want;
  rec.check("beta-profile", profiles, "every column a permutation of (3,3,3,3,2)");

  const auto dof = dof_of_table(table).uniform.value_or(-1);
  rec.check("dof", dof == 14, std::to_string(dof));
  rec.check("theorem1", theorem1_check(table).pass(), "all columns");
  rec.check("conservation", is_conserved(table, 7), "each group 7 times");
  rec.check("subpacketization", total_subpacketization(table) == 35,
            std::to_string(total_subpacketization(table)));

  report.data["plan"] = plan_json(result.plan);
  report.data["table"] = table_to_json(table);
}

void run_example2(CaseReport& report) {
  Recorder rec(report);
  constexpr int L = 11, G = 6, t = 2, omega = 5, m = 3;
  const auto betas = feasible_beta_set(L, G, t, omega);
  rec.check("feasible-set", std::count(betas.begin(), betas.end(), 3) == 1, brace(betas));

  const ScheduleTable literal = worked_example_baseline();
  rec.check("literal-partition", is_base_partition(literal.columns, omega, t),
            "two listed columns");
  const auto dof_ref = dof_of_table(literal).uniform.value_or(-1);
  rec.check("dof-ref", dof_ref == 15, std::to_string(dof_ref));

  const AsymPlan plan = solve_plan(5, 2, m, G, 3, omega, t);
  rec.check("plan",
            plan.d == 5 && plan.r == 3 && plan.delta_tilde == 8 && plan.S_tilde == 10,
            "d=" + std::to_string(plan.d) + " r=" + std::to_string(plan.r) +
                " delta_tilde=" + std::to_string(plan.delta_tilde) +
                " S_tilde=" + std::to_string(plan.S_tilde));

  const auto collections = worked_example_collections();
  for (const auto& c : collections) {
    const auto verdict = validate_collection(c, literal.columns[c.donor_column - 1], plan.d,
                                             plan.m, plan.r, t);
    rec.check("literal-collection-" + std::to_string(c.host_column), verdict.ok,
              verdict.ok ? "regular, distinct, overlap <= 2" : verdict.reason);
  }

  const ScheduleTable assembled = assemble_table(literal, collections, plan);
  const auto dof = dof_of_table(assembled).uniform.value_or(-1);
  rec.check("literal-dof", dof == 24, std::to_string(dof));
  rec.check("literal-theorem1", theorem1_check(assembled).pass(), "all columns");

  std::string slack = "not found";
  for (int i = 0; i < assembled.column_count() && slack == "not found"; ++i) {
    const auto profile = column_multiplicities(assembled.columns[i], assembled.users);
    for (const auto& term : c1_terms(profile)) {
      if (term.theta == 1 && term.outside_streams == 10 && term.load() == L) {
        slack = "column " + std::to_string(i + 1) + " T=" + term.group.str() + ": 10+1 <= 11";
        break;
      }
    }
  }
  rec.check("slack-identity", slack != "not found", slack);

  const auto built = build_asymmetric(literal, m);
  const auto built_dof = dof_of_table(built.table).uniform.value_or(-1);
  rec.check("greedy-dof", built_dof == 24, std::to_string(built_dof));
  rec.check("greedy-theorem1", theorem1_check(built.table).pass(), "all columns");
  rec.check("conservation", is_conserved(built.table, 8), "each group 8 times");

  report.data["plan"] = plan_json(built.plan);
  report.data["literal_table"] = table_to_json(assembled);
  report.data["greedy_table"] = table_to_json(built.table);
}

void run_feasible(CaseReport& report) {
  Recorder rec(report);
  struct Row {
    int L, G, t, omega;
    std::vector<int> expected;
  };
  const std::vector<Row> rows{
      {11, 8, 2, 4, {3, 6}},       {10, 3, 1, 3, {2}},    {10, 3, 1, 5, {2}},
      {10, 3, 1, 10, {1}},         {11, 8, 1, 4, {1, 2, 3, 4}},
      {11, 8, 2, 6, {1, 2, 3}},    {11, 8, 3, 8, {1, 2}},
  };
  OrderedJson sets = OrderedJson::array();
  for (const auto& row : rows) {
    const auto got = feasible_beta_set(row.L, row.G, row.t, row.omega);
    const std::string key = "L=" + std::to_string(row.L) + ",G=" + std::to_string(row.G) +
                            ",t=" + std::to_string(row.t) + ",omega=" + std::to_string(row.omega);
    rec.check(key, got == row.expected, brace(got) + " expected " + brace(row.expected));
    OrderedJson entry;
    entry["L"] = row.L;
    entry["G"] = row.G;
    entry["t"] = row.t;
    entry["omega"] = row.omega;
    entry["beta"] = got;
    sets.push_back(entry);
  }
  report.data["sets"] = sets;
}

void run_fig3(CaseReport& report, std::uint64_t seed) {
  Recorder rec(report);
  struct Row {
    int omega, t;
    std::vector<int> sym, asym;
  };
  const std::vector<Row> rows{
      {4, 1, {4, 8, 12, 16}, arithmetic(4, 2, 20)},
      {6, 2, {6, 12, 18}, arithmetic(6, 3, 30)},
      {8, 3, {8, 16}, arithmetic(8, 4, 40)},
  };
  RegionBudget budget;
  budget.seed = seed;
  OrderedJson regions = OrderedJson::array();
  for (const auto& row : rows) {
    const DofRegion region = explore_dof_region(11, 8, row.t, row.omega, budget);
    const std::string key = "omega=" + std::to_string(row.omega) + ",t=" + std::to_string(row.t);
    rec.check(key + "/symmetric", region.symmetric_dofs == row.sym,
              brace(region.symmetric_dofs) + " expected " + brace(row.sym));
    std::vector<int> missing;
    std::set_difference(row.asym.begin(), row.asym.end(), region.asymmetric_dofs.begin(),
                        region.asymmetric_dofs.end(), std::back_inserter(missing));
    rec.check(key + "/asymmetric", region.asymmetric_dofs == row.asym,
              brace(region.asymmetric_dofs) + " expected " + brace(row.asym) +
                  (missing.empty() ? "" : " missing " + brace(missing)));
    bool witnesses = true;
    for (const auto& w : region.asymmetric_witnesses) witnesses &= theorem1_check(w.table).pass();
    rec.check(key + "/witnesses", witnesses,
              std::to_string(region.asymmetric_witnesses.size()) + " tables");

    OrderedJson entry;
    entry["L"] = 11;
    entry["G"] = 8;
    entry["t"] = row.t;
    entry["omega"] = row.omega;
    entry["symmetric"] = region.symmetric_dofs;
    entry["asymmetric"] = region.asymmetric_dofs;
    OrderedJson failed = OrderedJson::array();
    for (const auto& [beta, m] : region.failed_cells) failed.push_back({beta, m});
    entry["failed_cells"] = failed;
    regions.push_back(entry);
  }
  report.data["regions"] = regions;
}

void run_rates(CaseReport& report, std::uint64_t seed) {
  Recorder rec(report);
  constexpr int L = 10, G = 3, t = 1, omega = 5;
  const auto sym = symmetric_plan(L, G, t, omega, 2, 2);
  const ScheduleTable baseline = symmetric_table(*sym, omega, t, L, G);
  const auto grid = parse_snr_grid("0:5:35");
  SweepOptions options;
  options.seed = seed;

  std::vector<std::vector<RatePoint>> sweeps;
  OrderedJson curves = OrderedJson::array();
  for (int m = 0; m <= 2; ++m) {
    const ScheduleTable table = m == 0 ? baseline : build_asymmetric(baseline, m).table;
    const auto points = snr_sweep(table, grid, options);
    bool monotone = true;
    for (std::size_t i = 1; i < points.size(); ++i) {
      monotone &= points[i].symmetric_rate >= points[i - 1].symmetric_rate;
    }
    const int dof = dof_of_table(table).uniform.value_or(-1);
    rec.check("monotone/dof=" + std::to_string(dof), monotone, "0..35 dB");
    OrderedJson curve;
    curve["dof"] = dof;
    std::vector<double> means;
    for (const auto& p : points) means.push_back(p.symmetric_rate);
    curve["mean_rsym"] = means;
    curves.push_back(curve);
    sweeps.push_back(points);
  }
  const auto at30 = [&](const std::vector<RatePoint>& pts) {
    for (const auto& p : pts) {
      if (std::abs(p.snr_db - 30.0) < 1e-9) return p.symmetric_rate;
    }
    return 0.0;
  };
  const double r10 = at30(sweeps[0]);
  const double r14 = at30(sweeps[2]);
  std::ostringstream order;
  order << "dof14=" << r14 << " dof10=" << r10;
  rec.check("ordering-30dB", r14 > r10, order.str());

  const double ratio = high_snr_slope(sweeps[2], 25, 35) / high_snr_slope(sweeps[0], 25, 35);
  std::ostringstream slope;
  slope << "ratio=" << ratio << " target 1.4 +/- 15%";
  rec.check("slope-ratio", std::abs(ratio - 1.4) <= 0.15 * 1.4, slope.str());

  report.data["snr_db"] = grid;
  report.data["curves"] = curves;
  report.data["slope_ratio"] = ratio;
}

}  // namespace

bool CaseReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

const std::vector<std::string>& reproduce_cases() {
  static const std::vector<std::string> cases{"example1", "example2", "feasible", "fig3",
                                              "rates"};
  return cases;
}

CaseReport reproduce_case(const std::string& name, std::uint64_t seed) {
  CaseReport report;
  report.name = name;
  report.data = OrderedJson::object();
  if (name == "example1") {
    run_example1(report);
  } else if (name == "example2") {
    run_example2(report);
  } else if (name == "feasible") {
    run_feasible(report);
  } else if (name == "fig3") {
    run_fig3(report, seed);
  } else if (name == "rates") {
    run_rates(report, seed);
  } else {
    throw Error(ErrorKind::kRejectedParameters, "unknown case '" + name + "'");
  }
  return report;
}

OrderedJson report_to_json(const CaseReport& report) {
  OrderedJson j;
  j["case"] = report.name;
  j["pass"] = report.pass();
  OrderedJson checks = OrderedJson::array();
  for (const auto& c : report.checks) {
    OrderedJson line;
    line["name"] = c.name;
    line["pass"] = c.pass;
    line["detail"] = c.detail;
    checks.push_back(line);
  }
  j["checks"] = checks;
  j["data"] = report.data;
  return j;
}

std::string report_summary(const CaseReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << report.name << '/' << c.name << ": " << c.detail
        << '\n';
  }
  return out.str();
}

ScheduleTable worked_example_baseline() {
  ScheduleTable table;
  table.params = SystemParams{5, 11, 6, 5, 2, 2};
  table.users = user_range(5);
  table.columns = {
      ScheduleColumn{{{1, 2, 3}, {1, 2, 4}, {3, 4, 5}, {2, 3, 5}, {1, 4, 5}}},
      ScheduleColumn{{{1, 2, 5}, {1, 3, 4}, {2, 3, 4}, {2, 4, 5}, {1, 3, 5}}},
  };
  table.replication = Replication{1, 1, 3, 1, 0};
  return table;
}

std::vector<CandidateCollection> worked_example_collections() {
  using Set = std::vector<MulticastGroup>;
  CandidateCollection first{1, 2, {}};
  first.sets = {
      Set{{1, 2, 5}, {1, 3, 4}, {2, 3, 4}}, Set{{1, 2, 5}, {2, 3, 4}, {1, 3, 5}},
      Set{{1, 3, 4}, {2, 4, 5}, {1, 2, 5}}, Set{{1, 3, 4}, {2, 4, 5}, {1, 3, 5}},
      Set{{2, 3, 4}, {1, 3, 5}, {2, 4, 5}},
  };
  CandidateCollection second{2, 1, {}};
  second.sets = {
      Set{{1, 2, 3}, {3, 4, 5}, {1, 2, 4}}, Set{{1, 2, 3}, {1, 4, 5}, {2, 3, 5}},
      Set{{1, 2, 4}, {3, 4, 5}, {2, 3, 5}}, Set{{1, 2, 4}, {2, 3, 5}, {1, 4, 5}},
      Set{{3, 4, 5}, {1, 2, 3}, {1, 4, 5}},
  };
  return {first, second};
}

}  // namespace ccsched
