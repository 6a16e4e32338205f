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

#include <iomanip>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "deckforge/eval/evaluate.hpp"

namespace deckforge {

inline std::string report_table(const EvalSummary& s) {
  std::ostringstream out;
  if (s.cases == 0) {
    out << "no cases\n";
    return out.str();
  }
  out << std::left << std::setw(10) << "";
  for (const auto& k : s.per_k) out << std::right << std::setw(10) << ("k=" + std::to_string(k.k));
  out << "\n";
  auto row = [&](const char* label, auto&& cell) {
    out << std::left << std::setw(10) << label;
    for (const auto& k : s.per_k) out << std::right << std::setw(10) << cell(k);
    out << "\n";
  };
  row("Direct", [](const KSummary& k) { return std::to_string(k.direct); });
  row("Resolved", [](const KSummary& k) { return std::to_string(k.resolved); });
  row("Fail", [](const KSummary& k) { return std::to_string(k.fail); });
  row("Pass@k", [](const KSummary& k) { return k.pass.percent(); });
  out << "cases: " << s.cases << "\n";
  return out.str();
}

inline nlohmann::json summary_to_json(const EvalSummary& s) {
  nlohmann::json j;
  j["cases"] = s.cases;
  j["per_k"] = nlohmann::json::array();
  for (const auto& k : s.per_k) {
    const std::string key = std::to_string(k.k);
    j["pass_at_" + key] = k.pass.value();
    j["pass_at_" + key + "_percent"] = k.pass.percent();
    j["direct_at_" + key] = k.direct;
    j["resolved_at_" + key] = k.resolved;
    j["fail_at_" + key] = k.fail;
    j["per_k"].push_back({{"k", k.k},
                          {"direct", k.direct},
                          {"resolved", k.resolved},
                          {"fail", k.fail},
                          {"passed", k.pass.num}});
  }
  j["per_case"] = nlohmann::json::array();
  for (const auto& c : s.per_case) {
    nlohmann::json pc = {{"case_id", c.case_id}};
    nlohmann::json verdicts = nlohmann::json::array();
    for (auto v : c.candidate_verdicts) verdicts.push_back(to_string(v));
    pc["candidates"] = verdicts;
    for (const auto& [k, v] : c.best) {
      pc["best_at_" + std::to_string(k)] = to_string(v);
      const auto& at = c.at.at(k);
      pc["candidate_at_" + std::to_string(k)] = at ? nlohmann::json(*at) : nlohmann::json(nullptr);
    }
    j["per_case"].push_back(pc);
  }
  j["warnings"] = s.warnings;
  return j;
}

}  // namespace deckforge
