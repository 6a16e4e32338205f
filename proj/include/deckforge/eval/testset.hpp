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

#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deckforge/check/checker.hpp"
#include "deckforge/core/hash.hpp"
#include "deckforge/core/rng.hpp"
#include "deckforge/ir/json.hpp"
#include "deckforge/render/sample.hpp"

namespace deckforge {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstructionCase {
  std::string case_id;
  std::string instruction;
  std::string style;  // "canonical" or a paraphrase style
  DeckIR source_ir;
  std::set<std::string> tags;
  friend bool operator==(const InstructionCase&, const InstructionCase&) = default;
};

inline std::set<std::string> derive_tags(const DeckIR& ir) {
  std::set<std::string> tags;
  tags.insert(to_string(ir.dimension));
  tags.insert(to_string(ir.boolean_mode));
  for (const auto& d : ir.dopings) tags.insert(to_string(d.kind));
  if (ir.materials.size() > 1) tags.insert("multi-material");
  if (!ir.contacts.empty()) tags.insert("contacts");
  if (!ir.windows.empty()) tags.insert("windows");
  for (const auto& r : ir.refinements) tags.insert(r.is_global() ? "global-refinement" : "local-refinement");
  return tags;
}

namespace detail {

inline Decimal extent(const Decimal& lo, const Decimal& hi) {
  return Decimal::from_double(hi.to_double() - lo.to_double(), 12);
}

}  // namespace detail

/// Placeholder constants for a case, taken from its reference IR: `width`,
/// `height`, `depth` of the device bounds and `<region>_width` etc. per region.
inline ConstantMap case_constants(const DeckIR& ir) {
  ConstantMap out;
  if (const auto b = device_bounds(ir)) {
    out["width"] = detail::extent(b->first.x, b->second.x);
    out["height"] = detail::extent(b->first.y, b->second.y);
    if (ir.dimension == Dimension::k3D) out["depth"] = detail::extent(b->first.z, b->second.z);
  }
  for (const auto& r : ir.regions) {
    out[r.name + "_width"] = detail::extent(r.min.x, r.max.x);
    out[r.name + "_height"] = detail::extent(r.min.y, r.max.y);
    if (ir.dimension == Dimension::k3D) out[r.name + "_depth"] = detail::extent(r.min.z, r.max.z);
  }
  return out;
}

/// One case per IR. The seed picks the phrasing (canonical or a paraphrase
/// style) per case; ids hash the IR so they do not depend on input order.
inline std::vector<InstructionCase> render_testset(const std::vector<DeckIR>& irs, std::uint64_t seed,
                                                   const StyleLibrary& styles = StyleLibrary::builtin()) {
  std::vector<InstructionCase> out;
  std::set<std::string> seen;
  for (const auto& ir : irs) {
    if (ir.regions.empty()) throw EvalError("test case IR has no regions");
    const std::string doc = ir_to_json(ir).dump();
    const std::string id = "case-" + tagged_hash("deckforge.case", {doc}).substr(0, 12);
    if (!seen.insert(id).second) throw EvalError("duplicate test case content: " + id);
    const RenderedSample s = render_sample(ir, styles);
    Rng rng = Rng::stream(seed, "testset/" + id, 0);
    const std::size_t pick = rng.below(s.variants.size() + 1);
    InstructionCase c;
    c.case_id = id;
    c.style = pick == 0 ? "canonical" : s.variants[pick - 1].style;
    c.instruction = pick == 0 ? s.instruction : s.variants[pick - 1].text;
    c.source_ir = ir;
    c.tags = derive_tags(ir);
    out.push_back(std::move(c));
  }
  return out;
}

inline nlohmann::json case_to_json(const InstructionCase& c) {
  return {{"case_id", c.case_id},
          {"instruction", c.instruction},
          {"style", c.style},
          {"tags", c.tags},
          {"source_ir", ir_to_json(c.source_ir)}};
}

inline InstructionCase case_from_json(const nlohmann::json& j) {
  InstructionCase c;
  c.case_id = j.at("case_id").get<std::string>();
  c.instruction = j.at("instruction").get<std::string>();
  c.style = j.value("style", "canonical");
  c.source_ir = ir_from_json(j.at("source_ir"));
  for (const auto& t : j.value("tags", nlohmann::json::array())) c.tags.insert(t.get<std::string>());
  return c;
}

struct GenerationSet {
  std::string case_id;
  std::vector<std::string> candidates;  // sampling order
  std::string provenance;
};

inline nlohmann::json generation_to_json(const GenerationSet& g) {
  return {{"case_id", g.case_id}, {"candidates", g.candidates}, {"provenance", g.provenance}};
}

inline GenerationSet generation_from_json(const nlohmann::json& j) {
  return {j.at("case_id").get<std::string>(), j.at("candidates").get<std::vector<std::string>>(),
          j.value("provenance", "")};
}

/// Parses JSON lines with `f`, skipping blank lines.
template <class F>
auto read_jsonl(const std::string& text, F&& f) {
  std::vector<decltype(f(nlohmann::json()))> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(f(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw EvalError("line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace deckforge
