// Copyright 2026 The Deckforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace deckforge {

/// Material alias -> canonical material name. Loaded from a JSON object file
/// such as `data/aliases.json`; the defaults match that file.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::map<std::string, std::string> entries) : entries_(std::move(entries)) {}

  static const AliasTable& defaults() {
    static const AliasTable table({{"Oxide", "SiO2"}, {"Nitride", "Si3N4"}, {"Poly", "PolySi"}});
    return table;
  }

  static AliasTable from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("alias table must be a JSON object");
    std::map<std::string, std::string> entries;
    for (const auto& [k, v] : j.items()) entries[k] = v.get<std::string>();
    return AliasTable(std::move(entries));
  }

  static AliasTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open alias table '" + path + "'");
    return from_json(nlohmann::json::parse(in));
  }

  const std::string& canonical(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? name : it->second;
  }

  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace deckforge
