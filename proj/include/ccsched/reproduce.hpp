// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsched/asymmetric.hpp"
#include "ccsched/core.hpp"
#include "ccsched/table_json.hpp"

namespace ccsched {

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CaseReport {
  std::string name;
  std::vector<CheckLine> checks;
  OrderedJson data;

  bool pass() const;
};

/// Reference cases in execution order.
const std::vector<std::string>& reproduce_cases();

/// Runs one case. Throws kRejectedParameters for an unknown name.
CaseReport reproduce_case(const std::string& name, std::uint64_t seed);

OrderedJson report_to_json(const CaseReport& report);

/// One "PASS|FAIL case/check: detail" line per check.
std::string report_summary(const CaseReport& report);

/// The two-column baseline of the Omega=5, t=2 worked example, as printed.
ScheduleTable worked_example_baseline();

/// Hand-listed collections for the worked example, hosts 1 and 2.
std::vector<CandidateCollection> worked_example_collections();

}  // namespace ccsched
