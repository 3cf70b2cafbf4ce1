// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "ccsched/core.hpp"

namespace ccsched {

using OrderedJson = nlohmann::ordered_json;

// Schema:
//   {"omega":5,"t":1,"L":10,"G":3,"users":[1,2,3,4,5],"delta":1,
//    "delta_tilde":7,"m":2,"eta":1,"beta":2,"columns":[[[1,2],[3,4],...],...]}
// "eta", "beta" and the network keys "K","N","M" are optional on input.
OrderedJson table_to_json(const ScheduleTable& table);
ScheduleTable table_from_json(const nlohmann::json& doc);

std::string dump_table(const ScheduleTable& table);
ScheduleTable parse_table(const std::string& text);

ScheduleTable read_table(const std::filesystem::path& path);
void write_table(const std::filesystem::path& path, const ScheduleTable& table);

}  // namespace ccsched
