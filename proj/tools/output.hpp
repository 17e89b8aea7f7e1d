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

#ifndef XXQ_TOOLS_OUTPUT_HPP
#define XXQ_TOOLS_OUTPUT_HPP

#include "json.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace xxq::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Rectangular result table; every command emits one or more.
struct Table {
  std::string schema;  // "<name>/<version>", bumped on any column change
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class Format { Csv, Json };

/// CSV (header line, LF endings, '.' decimals, 15 significant digits) or a
/// JSON object {schema, columns, rows}. Throws std::runtime_error on I/O failure.
void write_table(const Table& table, const std::string& path, Format format);

/**
  Everything needed to repeat a run: the command, the effective parameters
  after config merging, the seed, the tool version, a UTC timestamp and the
  files written. Stored as <first output>.manifest.json.
*/
struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;
  std::vector<std::string> outputs;
  std::vector<std::string> schemas;
};

std::string utc_timestamp();
std::string manifest_path(const std::string& output);
void write_manifest(const RunManifest& manifest, const std::string& path);

/// "results.csv" -> "results.<suffix>.csv".
std::string sibling_path(const std::string& path, const std::string& suffix);

}  // namespace xxq::cli

#endif  // XXQ_TOOLS_OUTPUT_HPP
