// Copyright 2026 The xxquench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace xxq::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("row width does not match the " + schema + " columns");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

nlohmann::json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, c);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

void write_table(const Table& table, const std::string& path, Format format) {
  std::ofstream out = open_output(path);
  if (format == Format::Csv) {
    for (std::size_t k = 0; k < table.columns.size(); ++k)
      out << (k ? "," : "") << table.columns[k];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_cell(row[k]);
      out << '\n';
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
      nlohmann::json r = nlohmann::json::array();
      for (const Cell& c : row) r.push_back(json_cell(c));
      rows.push_back(std::move(r));
    }
    out << nlohmann::json{{"schema", table.schema}, {"columns", table.columns}, {"rows", rows}}
               .dump(1)
        << '\n';
  }
  finish(out, path);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string manifest_path(const std::string& output) { return output + ".manifest.json"; }

void write_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream out = open_output(path);
  out << nlohmann::json{{"command", m.command},
                        {"parameters", m.parameters},
                        {"seed", m.seed},
                        {"tool_version", m.tool_version},
                        {"timestamp", m.timestamp},
                        {"outputs", m.outputs},
                        {"schemas", m.schemas}}
             .dump(1)
      << '\n';
  finish(out, path);
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / p.stem();
  out += "." + suffix;
  out += p.extension();
  return out.string();
}

}  // namespace xxq::cli
