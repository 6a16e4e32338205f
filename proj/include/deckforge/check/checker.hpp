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

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "deckforge/check/rules.hpp"
#include "deckforge/deck/parser.hpp"
#include "deckforge/ir/extract.hpp"

namespace deckforge {

enum class Verdict { kDirectPass, kResolvedPass, kFail };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kDirectPass: return "direct_pass";
    case Verdict::kResolvedPass: return "placeholder_resolved_pass";
    case Verdict::kFail: return "fail";
  }
  return "fail";
}

inline bool is_pass(Verdict v) { return v != Verdict::kFail; }

enum class CheckMode { kStrict, kPermissive };

using ConstantMap = std::map<std::string, Decimal>;

struct CheckReport {
  Verdict verdict = Verdict::kDirectPass;
  std::vector<Diagnostic> diagnostics;
  std::set<std::string> placeholders;        // every @name@, strings included
  std::set<std::string> value_placeholders;  // those in value positions
  ConstantMap resolution;                    // substitutions that produced a resolved pass

  bool has_rule(std::string_view id) const {
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::kError && d.code == id) return true;
    }
    return false;
  }
};

/// Grammar, extraction and rule checks. Placeholders inside string literals
/// (such as `n@node@.tdr`) are workbench-level and never block a pass.
inline CheckReport check_syntax(std::string_view code, CheckMode mode = CheckMode::kStrict) {
  CheckReport report;
  TokenStream tokens = tokenize(code);
  for (const auto& t : tokens.tokens) {
    if (t.kind == TokenKind::kPlaceholder) report.placeholders.insert(t.text);
    for (const auto& p : t.placeholders) report.placeholders.insert(p);
  }
  ParseResult parsed = parse_tokens(tokens);
  for (auto& d : parsed.diagnostics) {
    if (d.code == rule::kUnknownCommand) continue;  // re-emitted below according to mode
    report.diagnostics.push_back(std::move(d));
  }
  if (!parsed.ok()) {
    report.verdict = Verdict::kFail;
    return report;
  }

  for (const auto& n : parsed.commands) {
    if (!is_known_command(n.head)) {
      const std::string msg = "unknown command '" + n.head + "'";
      report.diagnostics.push_back(mode == CheckMode::kStrict
                                       ? make_error(std::string(rule::kUnknownCommand), msg, n.span)
                                       : make_warning(std::string(rule::kUnknownCommand), msg, n.span));
    }
    std::set<std::string> names;
    for_each_value_placeholder(n, [&](const Placeholder& p) { names.insert(p.name); });
    for (const auto& name : names) {
      report.value_placeholders.insert(name);
      report.diagnostics.push_back(make_error(std::string(rule::kUnresolvedPlaceholder),
                                              "template variable '@" + name + "@' has no value", n.span));
    }
  }
  if (report.value_placeholders.empty()) {
    ExtractResult ex = extract_ir(parsed.commands);
    for (auto& d : ex.diagnostics) report.diagnostics.push_back(std::move(d));
    for (auto& d : apply_rules(ex.ir, parsed.commands)) report.diagnostics.push_back(std::move(d));
  }
  report.verdict = has_errors(report.diagnostics) ? Verdict::kFail : Verdict::kDirectPass;
  return report;
}

struct ResolveResult {
  std::string text;
  std::vector<std::string> missing;  // value placeholders with no constant

  bool ok() const { return missing.empty(); }
};

/// Replaces value-position `@name@` atoms by canonical numerals. String
/// contents, including filename placeholders, are left untouched.
inline ResolveResult resolve_placeholders(std::string_view code, const ConstantMap& constants) {
  ResolveResult out;
  TokenStream tokens = tokenize(code);
  std::set<std::string> missing;
  std::size_t copied = 0;
  for (const auto& t : tokens.tokens) {
    if (t.kind != TokenKind::kPlaceholder) continue;
    auto it = constants.find(t.text);
    if (it == constants.end()) {
      missing.insert(t.text);
      continue;
    }
    out.text.append(code.substr(copied, t.span.offset - copied));
    out.text += it->second.str();
    copied = t.span.end_offset;
  }
  out.text.append(code.substr(copied));
  out.missing.assign(missing.begin(), missing.end());
  return out;
}

/// Direct check, then one resolution attempt when value placeholders block an
/// otherwise checkable deck. Resolution never downgrades a verdict.
inline CheckReport check_with_resolution(std::string_view code, const ConstantMap& constants,
                                         CheckMode mode = CheckMode::kStrict) {
  CheckReport direct = check_syntax(code, mode);
  if (direct.verdict != Verdict::kFail || direct.value_placeholders.empty()) return direct;
  ResolveResult resolved = resolve_placeholders(code, constants);
  if (!resolved.ok()) return direct;
  CheckReport again = check_syntax(resolved.text, mode);
  if (again.verdict != Verdict::kDirectPass) return direct;
  again.verdict = Verdict::kResolvedPass;
  again.placeholders = direct.placeholders;
  again.value_placeholders = direct.value_placeholders;
  for (const auto& name : direct.value_placeholders) again.resolution[name] = constants.at(name);
  return again;
}

inline nlohmann::json report_to_json(const CheckReport& r) {
  nlohmann::json j;
  j["rule_set"] = kRuleSetVersion;
  j["verdict"] = to_string(r.verdict);
  j["diagnostics"] = nlohmann::json::array();
  for (const auto& d : r.diagnostics) {
    j["diagnostics"].push_back({{"severity", to_string(d.severity)},
                                {"code", d.code},
                                {"message", d.message},
                                {"line", d.span.line},
                                {"column", d.span.column}});
  }
  j["placeholders"] = r.placeholders;
  j["value_placeholders"] = r.value_placeholders;
  j["resolution"] = nlohmann::json::object();
  for (const auto& [k, v] : r.resolution) j["resolution"][k] = v.str();
  return j;
}

}  // namespace deckforge
