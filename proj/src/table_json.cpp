// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include "ccsched/table_json.hpp"

#include <fstream>
#include <sstream>

namespace ccsched {

namespace {

template <typename T>
T required(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw Error(ErrorKind::kMalformedTable, std::string("missing key \"") + key + "\"");
  }
  return doc.at(key).get<T>();
}

}  // namespace

OrderedJson table_to_json(const ScheduleTable& table) {
  OrderedJson doc;
  doc["omega"] = table.omega();
  doc["t"] = table.params.t;
  doc["L"] = table.params.L;
  doc["G"] = table.params.G;
  doc["users"] = table.users;
  doc["delta"] = table.replication.delta;
  doc["delta_tilde"] = table.replication.delta_tilde;
  doc["m"] = table.replication.m;
  doc["eta"] = table.replication.eta;
  doc["beta"] = table.replication.beta;
  const auto& p = table.params;
  if (p.K != table.omega() || p.N != table.omega() || p.M != p.t) {
    doc["K"] = p.K;
    doc["N"] = p.N;
    doc["M"] = p.M;
  }
  OrderedJson columns = OrderedJson::array();
  for (const auto& col : table.columns) {
    OrderedJson groups = OrderedJson::array();
    for (const auto& g : col.groups) groups.push_back(g.users());
    columns.push_back(std::move(groups));
  }
  doc["columns"] = std::move(columns);
  return doc;
}

ScheduleTable table_from_json(const nlohmann::json& doc) {
  try {
    ScheduleTable table;
    table.users = required<std::vector<User>>(doc, "users");
    const int omega = required<int>(doc, "omega");
    if (omega != table.omega()) {
      throw Error(ErrorKind::kMalformedTable, "omega does not match |users|");
    }
    auto& p = table.params;
    p.t = required<int>(doc, "t");
    p.L = required<int>(doc, "L");
    p.G = required<int>(doc, "G");
    p.K = doc.value("K", omega);
    p.N = doc.value("N", omega);
    p.M = doc.value("M", p.t);
    auto& r = table.replication;
    r.delta = required<int>(doc, "delta");
    r.delta_tilde = required<int>(doc, "delta_tilde");
    r.m = required<int>(doc, "m");
    r.eta = doc.value("eta", 1);
    r.beta = doc.value("beta", 0);
    for (const auto& col : required<nlohmann::json>(doc, "columns")) {
      ScheduleColumn column;
      for (const auto& g : col) {
        column.groups.emplace_back(g.get<std::vector<User>>());
      }
      table.columns.push_back(std::move(column));
    }
    validate_table(table);
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kMalformedTable, e.what());
  }
}

std::string dump_table(const ScheduleTable& table) {
  return table_to_json(table).dump() + "\n";
}

ScheduleTable parse_table(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kMalformedTable, e.what());
  }
  return table_from_json(doc);
}

ScheduleTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kRejectedParameters, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_table(buffer.str());
}

void write_table(const std::filesystem::path& path, const ScheduleTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::kRejectedParameters, "cannot write " + path.string());
  }
  out << dump_table(table);
}

}  // namespace ccsched
