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

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deckforge/core/hash.hpp"
#include "deckforge/diversify/diversify.hpp"
#include "deckforge/dpo/mutate.hpp"
#include "deckforge/dpo/validate.hpp"
#include "deckforge/dpo/violation.hpp"
#include "deckforge/ir/flatten.hpp"
#include "deckforge/ir/json.hpp"
#include "deckforge/render/paraphrase.hpp"

namespace deckforge {

inline constexpr const char* kDpoSchema = "deckforge.dpo/1";

struct RejectedEntry {
  std::string code;
  ViolationKind violation;
  ValidationVerdict verdict;
  std::string detail;
  friend bool operator==(const RejectedEntry&, const RejectedEntry&) = default;
};

struct Lineage {
  std::string parent_id;
  std::string source;
  std::vector<TransformRecord> transforms;
  std::vector<ViolationKind> plan;
  friend bool operator==(const Lineage&, const Lineage&) = default;
};

struct DpoRecord {
  std::string id;
  std::string instruction;
  std::string cot;
  std::string chosen;
  std::vector<RejectedEntry> rejected;
  std::vector<StyledText> variants;
  Lineage lineage;
  friend bool operator==(const DpoRecord&, const DpoRecord&) = default;
};

inline std::string plan_string(const std::vector<ViolationKind>& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.size(); ++i) out += (i ? "," : "") + to_string(plan[i]);
  return out;
}

inline nlohmann::json transforms_to_json(const std::vector<TransformRecord>& ts) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& t : ts) j.push_back(transform_to_json(t));
  return j;
}

/// `dpo-` + 16 hex digits of a domain-separated hash over the flattened IR,
/// the transform log and the violation plan.
inline std::string record_id(const DeckIR& ir, const std::vector<TransformRecord>& transforms,
                             const std::vector<ViolationKind>& plan) {
  const std::string ir_doc = ir_to_json(flatten_ir(ir)).dump();
  const std::string log = transforms_to_json(transforms).dump();
  return "dpo-" + tagged_hash(kDpoSchema, {ir_doc, log, plan_string(plan)}).substr(0, 16);
}

inline nlohmann::json verdict_to_json(const ValidationVerdict& v) {
  return {{"numeric", to_string(v.numeric)},
          {"structural", to_string(v.structural)},
          {"notes", v.notes},
          {"accepted", v.accepted}};
}

inline ValidationVerdict verdict_from_json(const nlohmann::json& j) {
  ValidationVerdict v;
  const std::string n = j.at("numeric").get<std::string>();
  v.numeric = n == "fail_as_intended" ? NumericCheck::kFailAsIntended
              : n == "weak_accept"    ? NumericCheck::kWeakAccept
                                      : NumericCheck::kClean;
  v.structural = j.at("structural").get<std::string>() == "fail_as_intended" ? StructuralCheck::kFailAsIntended
                                                                            : StructuralCheck::kClean;
  v.notes = j.at("notes").get<std::string>();
  v.accepted = j.at("accepted").get<bool>();
  return v;
}

inline nlohmann::json record_to_json(const DpoRecord& r) {
  nlohmann::json j;
  j["schema"] = kDpoSchema;
  j["id"] = r.id;
  j["instruction"] = r.instruction;
  j["cot"] = r.cot;
  j["chosen"] = r.chosen;
  j["rejected"] = nlohmann::json::array();
  for (const auto& e : r.rejected) {
    j["rejected"].push_back({{"code", e.code},
                             {"violation", violation_to_json(e.violation)},
                             {"verdict", verdict_to_json(e.verdict)},
                             {"detail", e.detail}});
  }
  j["variants"] = nlohmann::json::array();
  for (const auto& v : r.variants) j["variants"].push_back({{"style", v.style}, {"text", v.text}});
  nlohmann::json plan = nlohmann::json::array();
  for (const auto& p : r.lineage.plan) plan.push_back(to_string(p));
  j["lineage"] = {{"parent_id", r.lineage.parent_id},
                  {"source", r.lineage.source},
                  {"transforms", transforms_to_json(r.lineage.transforms)},
                  {"plan", plan}};
  return j;
}

inline DpoRecord record_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != kDpoSchema) throw DpoError("unsupported DPO record schema");
  DpoRecord r;
  r.id = j.at("id").get<std::string>();
  r.instruction = j.at("instruction").get<std::string>();
  r.cot = j.at("cot").get<std::string>();
  r.chosen = j.at("chosen").get<std::string>();
  for (const auto& e : j.at("rejected")) {
    r.rejected.push_back({e.at("code").get<std::string>(), violation_from_json(e.at("violation")),
                          verdict_from_json(e.at("verdict")), e.value("detail", "")});
  }
  for (const auto& v : j.at("variants")) {
    r.variants.push_back({v.at("style").get<std::string>(), v.at("text").get<std::string>()});
  }
  const auto& l = j.at("lineage");
  r.lineage.parent_id = l.at("parent_id").get<std::string>();
  r.lineage.source = l.at("source").get<std::string>();
  for (const auto& t : l.at("transforms")) r.lineage.transforms.push_back(transform_from_json(t));
  for (const auto& p : l.at("plan")) r.lineage.plan.push_back(parse_violation(p.get<std::string>()));
  return r;
}

struct PairValidation {
  bool chosen_passes = false;
  std::vector<ValidationVerdict> verdicts;
  std::vector<std::string> warnings;

  bool ok() const {
    return chosen_passes && std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.accepted; });
  }
};

/// Both validation stages for every rejected sample. The chosen code must
/// pass the checker directly and be clean against itself.
inline PairValidation validate_pair(const DpoRecord& record) {
  PairValidation out;
  const ParseResult parsed = parse_deck(record.chosen);
  const ExtractResult ex = extract_ir(parsed.commands);
  const CheckReport report = check_syntax(record.chosen);
  const bool self_clean = validate_numeric(record.chosen, record.chosen) == NumericCheck::kClean &&
                          validate_structural(ex.ir, record.chosen).check == StructuralCheck::kClean;
  out.chosen_passes = parsed.ok() && ex.ok() && report.verdict == Verdict::kDirectPass && self_clean;
  if (record.rejected.empty()) out.warnings.push_back("record " + record.id + " has no rejected samples");
  for (const auto& e : record.rejected) {
    out.verdicts.push_back(validate_rejected(record.chosen, ex.ir, e.code, e.violation));
  }
  return out;
}

struct SerializedDpo {
  std::string jsonl;
  nlohmann::json manifest;
};

/// JSON lines sorted by id plus a manifest of counts per violation family.
/// Distinct records sharing an id are an error.
inline SerializedDpo serialize_dpo(std::vector<DpoRecord> records) {
  std::sort(records.begin(), records.end(), [](const DpoRecord& a, const DpoRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].id == records[i - 1].id && !(records[i] == records[i - 1])) {
      throw DpoError("id collision between distinct records: " + records[i].id);
    }
  }
  records.erase(std::unique(records.begin(), records.end()), records.end());
  SerializedDpo out;
  std::map<std::string, int> families = {{"numeric", 0}, {"procedural", 0}, {"impostor", 0}};
  std::map<std::string, int> kinds;
  for (const auto& r : records) {
    out.jsonl += record_to_json(r).dump() + "\n";
    for (const auto& e : r.rejected) {
      ++families[to_string(e.violation.family)];
      std::string k = to_string(e.violation.family);
      if (e.violation.mode) k += ":" + std::string(to_string(*e.violation.mode));
      if (e.violation.kind) k += ":" + std::string(to_string(*e.violation.kind));
      ++kinds[k];
    }
  }
  out.manifest = {{"schema", kDpoSchema}, {"records", records.size()}, {"families", families}, {"violations", kinds}};
  return out;
}

inline std::vector<DpoRecord> parse_dpo_jsonl(const std::string& text) {
  std::vector<DpoRecord> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

}  // namespace deckforge
