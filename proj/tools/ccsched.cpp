// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors
//
// ccsched: build, verify and evaluate multicast scheduling tables.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ccsched/asymmetric.hpp"
#include "ccsched/beamforming.hpp"
#include "ccsched/dof_region.hpp"
#include "ccsched/error.hpp"
#include "ccsched/rate.hpp"
#include "ccsched/reproduce.hpp"
#include "ccsched/symmetric.hpp"
#include "ccsched/table_json.hpp"
#include "ccsched/theorem1.hpp"

namespace fs = std::filesystem;
using namespace ccsched;

namespace {

constexpr int kExitParams = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitVerification = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRejectedParameters:
    case ErrorKind::kMalformedTable:
    case ErrorKind::kInfeasibleM:
    case ErrorKind::kNoDonor:
      return kExitParams;
    case ErrorKind::kSearchFailure:
    case ErrorKind::kConstructionFailure:
    case ErrorKind::kAssemblyFailure:
      return kExitConstruction;
    case ErrorKind::kNullityDeficient:
    case ErrorKind::kVerificationFailure:
      return kExitVerification;
  }
  return 1;
}

void emit_error(std::string_view reason, const std::string& message) {
  OrderedJson err;
  err["error"] = reason;
  err["message"] = message;
  std::cerr << err.dump() << '\n';
}

/// Writes `text` to `path`, or to stdout when the path is empty or "-".
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::kRejectedParameters, "cannot write " + path);
  out << text;
}

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

CombinerPolicy parse_policy(const std::string& name) {
  if (name == "random") return CombinerPolicy::kRandomOrthonormal;
  if (name == "aligned") return CombinerPolicy::kChannelAligned;
  throw Error(ErrorKind::kRejectedParameters, "unknown combiner policy '" + name + "'");
}

struct Network {
  int L = 0;
  int G = 0;
  int t = 0;
  int omega = 0;
  int delta_max = kDefaultDeltaMax;
};

void add_network(CLI::App* cmd, Network& net) {
  cmd->add_option("--L", net.L, "transmit antennas")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--G", net.G, "receive antennas per user")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--t", net.t, "coded caching gain")->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--omega", net.omega, "served users")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--delta-max", net.delta_max, "replication cap for the feasible set")
      ->check(CLI::PositiveNumber);
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? " " : "") + std::to_string(values[i]);
  return out;
}

/// Resolved settings of the selected subcommand, in the --config format.
std::string resolved_config(const CLI::App& app) {
  const std::string prefix = app.get_subcommands().front()->get_name() + ".";
  std::istringstream all(app.config_to_str(true, false));
  std::string out;
  for (std::string line; std::getline(all, line);) {
    if (line.rfind(prefix, 0) == 0) out += line + "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicast scheduling tables for cache-aided MIMO delivery", "ccsched"};
  app.set_version_flag("--version", std::string("ccsched ") + CCSCHED_VERSION);
  app.set_config("--config", "", "TOML-style configuration file; flags override it");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Network net;

  auto* feasible = app.add_subcommand("feasible-beta", "list the symmetric per-user stream counts");
  add_network(feasible, net);

  std::string mode = "sym";
  int beta = 0;
  int m = 0;
  std::optional<int> tau;
  std::optional<int> imax;
  std::uint64_t seed = 0;
  std::string output;
  auto* schedule = app.add_subcommand("schedule", "build a schedule table");
  add_network(schedule, net);
  schedule->add_option("--mode", mode, "sym or asym")->check(CLI::IsMember({"sym", "asym"}));
  schedule->add_option("--beta", beta, "baseline streams per user")->required();
  schedule->add_option("--m", m, "groups added per retained column")->check(CLI::NonNegativeNumber);
  schedule->add_option("--tau", tau, "pairwise overlap threshold");
  schedule->add_option("--imax", imax, "greedy iteration cap");
  schedule->add_option("--seed", seed, "greedy tie-break seed (0 = lexicographic)");
  schedule->add_option("-o,--output", output, "table file")->required();

  std::string table_path;
  bool numeric = false;
  int trials = 100;
  double tol = 1e-9;
  double sigma_tol = 1e-6;
  std::string policy = "random";
  auto* verify = app.add_subcommand("verify", "check linear decodability of a table");
  verify->add_option("--table", table_path, "table file")->required()->check(CLI::ExistingFile);
  verify->add_flag("--numeric", numeric, "also run the channel-draw oracle");
  verify->add_option("--trials", trials, "channel draws per column")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "channel seed");
  verify->add_option("--tol", tol, "interference leakage tolerance");
  verify->add_option("--sigma-tol", sigma_tol, "smallest singular value tolerance");
  verify->add_option("--policy", policy, "combiner policy: random or aligned")
      ->check(CLI::IsMember({"random", "aligned"}));
  verify->add_option("-o,--output", output, "report file (default stdout)");

  int reseeds = 3;
  std::string witness_dir;
  auto* region = app.add_subcommand("dof-region", "enumerate achievable DoF values");
  add_network(region, net);
  region->add_option("--reseeds", reseeds, "seeded greedy attempts per cell")
      ->check(CLI::NonNegativeNumber);
  region->add_option("--seed", seed, "seed for greedy reseeds");
  region->add_option("-o,--output", output, "CSV file")->required();
  region->add_option("--witness-dir", witness_dir, "directory for witness tables");

  std::string snr = "0:5:35";
  int sweep_trials = 200;
  std::uint64_t sweep_seed = 7;
  std::string sweep_policy = "aligned";
  auto* sweep = app.add_subcommand("rate-sweep", "symmetric rate over an SNR grid");
  sweep->add_option("--table", table_path, "table file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--snr", snr, "grid as start:step:stop or a comma list (dB)");
  sweep->add_option("--trials", sweep_trials, "channel draws per point")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_seed, "channel seed");
  sweep->add_option("--policy", sweep_policy, "combiner policy: random or aligned")
      ->check(CLI::IsMember({"random", "aligned"}));
  sweep->add_option("-o,--output", output, "CSV file (default stdout)");

  std::string case_name = "all";
  std::uint64_t repro_seed = 7;
  auto* reproduce = app.add_subcommand("reproduce", "run the reference cases");
  reproduce->add_option("--case", case_name, "all, or one of the case names");
  reproduce->add_option("--seed", repro_seed, "seed for rate draws and greedy reseeds");
  reproduce->add_option("-o,--output", output, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    emit_error("usage", e.what());
    return kExitParams;
  }

  const std::string config = resolved_config(app);

  try {
    if (*feasible) {
      std::cout << join(feasible_beta_set(net.L, net.G, net.t, net.omega, net.delta_max)) << '\n';
      return 0;
    }

    if (*schedule) {
      const auto plan = symmetric_plan(net.L, net.G, net.t, net.omega, beta,
                                       mode == "asym" ? 2 : 1, net.delta_max);
      if (!plan) {
        throw Error(ErrorKind::kRejectedParameters,
                    "beta=" + std::to_string(beta) + " is not in the feasible set");
      }
      ScheduleTable table = symmetric_table(*plan, net.omega, net.t, net.L, net.G);
      if (mode == "asym") {
        AsymmetricOptions options;
        options.tau = tau;
        options.I_max = imax;
        options.seed = seed;
        options.relax_tau = !tau.has_value();
        table = build_asymmetric(table, m, options).table;
      }
      write_table(output, table);
      OrderedJson report;
      report["command"] = "schedule";
      report["config"] = config;
      report["output"] = output;
      report["columns"] = table.column_count();
      const auto dof = dof_of_table(table);
      report["dof"] = dof.uniform ? OrderedJson(*dof.uniform) : OrderedJson(dof.per_column);
      report["theta"] = total_subpacketization(table);
      std::cout << report.dump(2) << '\n';
      return 0;
    }

    if (*verify) {
      const ScheduleTable table = read_table(table_path);
      const auto verdict = theorem1_check(table);
      OrderedJson report;
      report["command"] = "verify";
      report["config"] = config;
      report["symbolic"] = verdict.pass() ? "PASS" : "FAIL";
      OrderedJson witnesses = OrderedJson::array();
      for (const auto& w : verdict.witnesses()) {
        OrderedJson j;
        j["column"] = w.column;
        j["condition"] = w.condition == Condition::kC1 ? "C1" : "C2";
        if (w.group) j["group"] = w.group->users();
        if (w.user) j["user"] = *w.user;
        j["lhs"] = w.lhs;
        j["rhs"] = w.rhs;
        witnesses.push_back(j);
      }
      report["witnesses"] = witnesses;
      bool ok = verdict.pass();
      if (numeric) {
        const auto num = verify_table_numeric(table, trials, seed, NumericTolerance{tol, sigma_tol},
                                              parse_policy(policy));
        OrderedJson j;
        j["trials"] = num.trials;
        j["policy"] = to_string(parse_policy(policy));
        j["columns_checked"] = num.columns_checked;
        j["failed_columns"] = num.failed_columns;
        j["nullity_deficient"] = num.nullity_deficient;
        j["nullity_mismatches"] = num.nullity_mismatches;
        j["max_leakage"] = num.max_leakage;
        j["min_sigma"] = num.min_sigma;
        if (!num.failures.empty()) {
          const auto& f = num.failures.front();
          OrderedJson first;
          first["trial"] = f.trial;
          first["column"] = f.column;
          if (f.user) first["user"] = f.user;
          if (f.group.size()) first["group"] = f.group.users();
          first["what"] = f.what;
          j["first_failure"] = first;
        }
        j["status"] = num.pass() ? "PASS" : "FAIL";
        report["numeric"] = j;
        ok = ok && num.pass();
      }
      write_output(output, report.dump(2) + "\n");
      return ok ? 0 : kExitVerification;
    }

    if (*region) {
      RegionBudget budget;
      budget.delta_max = net.delta_max;
      budget.reseeds = reseeds;
      budget.seed = seed;
      const DofRegion result = explore_dof_region(net.L, net.G, net.t, net.omega, budget);
      const fs::path csv_path(output);
      const fs::path dir = witness_dir.empty()
                               ? csv_path.parent_path() / (csv_path.stem().string() + "_witnesses")
                               : fs::path(witness_dir);
      fs::create_directories(dir);
      std::ostringstream csv;
      csv << "scheme,omega,t,beta,m,dof,witness_file\n";
      auto emit = [&](const DofWitness& w) {
        const std::string name = w.scheme + "_omega" + std::to_string(net.omega) + "_t" +
                                 std::to_string(net.t) + "_beta" + std::to_string(w.beta) +
                                 "_m" + std::to_string(w.m) + ".json";
        write_table(dir / name, w.table);
        csv << w.scheme << ',' << net.omega << ',' << net.t << ',' << w.beta << ',' << w.m << ','
            << w.dof << ',' << (dir / name).string() << '\n';
      };
      for (const auto& w : result.symmetric_witnesses) emit(w);
      for (const auto& w : result.asymmetric_witnesses) emit(w);
      write_output(output, csv.str());
      write_output(output + ".config.toml", config);
      std::cout << "symmetric: " << join(result.symmetric_dofs) << '\n'
                << "asymmetric: " << join(result.asymmetric_dofs) << '\n';
      return 0;
    }

    if (*sweep) {
      const ScheduleTable table = read_table(table_path);
      const auto grid = parse_snr_grid(snr);
      SweepOptions options;
      options.trials = sweep_trials;
      options.seed = sweep_seed;
      options.policy = parse_policy(sweep_policy);
      const auto points = snr_sweep(table, grid, options);
      const auto dof = dof_of_table(table);
      std::ostringstream csv;
      csv << "snr_db,mean_rsym,std_rsym,min_column_rate,dof,theta\n";
      for (const auto& p : points) {
        csv << fmt(p.snr_db) << ',' << fmt(p.symmetric_rate) << ',' << fmt(p.std_symmetric_rate)
            << ',' << fmt(p.min_column_rate) << ','
            << (dof.uniform ? std::to_string(*dof.uniform) : std::string("mixed")) << ','
            << total_subpacketization(table) << '\n';
      }
      write_output(output, csv.str());
      if (!output.empty() && output != "-") write_output(output + ".config.toml", config);
      return 0;
    }

    if (*reproduce) {
      std::vector<std::string> names;
      if (case_name == "all") {
        names = reproduce_cases();
      } else {
        names.push_back(case_name);
      }
      OrderedJson doc;
      doc["command"] = "reproduce";
      doc["config"] = config;
      doc["version"] = CCSCHED_VERSION;
      OrderedJson cases = OrderedJson::array();
      bool ok = true;
      for (const auto& name : names) {
        const CaseReport report = reproduce_case(name, repro_seed);
        std::cout << report_summary(report);
        ok = ok && report.pass();
        cases.push_back(report_to_json(report));
      }
      doc["pass"] = ok;
      doc["cases"] = cases;
      if (!output.empty()) write_output(output, doc.dump(2) + "\n");
      std::cout << (ok ? "PASS" : "FAIL") << " reproduce (" << names.size() << " cases)\n";
      return ok ? 0 : kExitVerification;
    }
  } catch (const Error& e) {
    emit_error(to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return 0;
}
