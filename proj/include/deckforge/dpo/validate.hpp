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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deckforge/check/checker.hpp"
#include "deckforge/dpo/violation.hpp"
#include "deckforge/ir/diff.hpp"
#include "deckforge/ir/extract.hpp"
#include "deckforge/ir/fact_card.hpp"
#include "deckforge/render/numerals.hpp"

namespace deckforge {

enum class NumericCheck { kFailAsIntended, kWeakAccept, kClean };
enum class StructuralCheck { kFailAsIntended, kClean };

inline const char* to_string(NumericCheck c) {
  switch (c) {
    case NumericCheck::kFailAsIntended: return "fail_as_intended";
    case NumericCheck::kWeakAccept: return "weak_accept";
    case NumericCheck::kClean: return "clean";
  }
  return "clean";
}

inline const char* to_string(StructuralCheck c) {
  return c == StructuralCheck::kFailAsIntended ? "fail_as_intended" : "clean";
}

struct ValidationVerdict {
  NumericCheck numeric = NumericCheck::kClean;
  StructuralCheck structural = StructuralCheck::kClean;
  std::string notes;
  bool accepted = false;

  friend bool operator==(const ValidationVerdict&, const ValidationVerdict&) = default;
};

/// Keyed numeral slots of a command list. A slot key is the command head, its
/// string arguments, the occurrence number of that (head, strings) pair, and
/// the argument path of the number, so moving or deleting whole commands
/// leaves the remaining keys intact.
inline std::map<std::string, std::string> numeral_slots(const std::vector<CommandNode>& nodes) {
  std::map<std::string, std::string> out;
  std::map<std::string, int> occurrences;
  auto walk = [&](auto&& self, const CommandNode& n, const std::string& prefix) -> void {
    std::string id = n.head;
    for (const Arg& a : n.args) {
      if (const auto* s = as_string(a)) id += "|" + s->value;
    }
    const std::string base = prefix + id + "#" + std::to_string(occurrences[prefix + id]++);
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      const Arg& a = n.args[i];
      const std::string at = base + "/" + std::to_string(i);
      if (const auto* d = as_number(a)) {
        out[at] = d->str();
      } else if (const auto* p = as_position(a)) {
        for (std::size_t k = 0; k < 3; ++k) {
          if (const auto* v = std::get_if<Decimal>(&p->coords[k])) out[at + "." + std::to_string(k)] = v->str();
        }
      } else if (const auto* child = as_node(a)) {
        self(self, *child, at + ">");
      }
    }
  };
  for (const auto& n : nodes) walk(walk, n, "");
  return out;
}

/// Multiset test on numerals with a slot-alignment fallback.
inline NumericCheck validate_numeric(std::string_view chosen, std::string_view rejected) {
  const ParseResult c = parse_deck(chosen);
  const ParseResult r = parse_deck(rejected);
  if (!c.ok() || !r.ok()) {
    return is_sub_multiset(scan_numerals(rejected), scan_numerals(chosen)) ? NumericCheck::kClean
                                                                           : NumericCheck::kFailAsIntended;
  }
  if (!is_sub_multiset(code_numerals(r.commands), code_numerals(c.commands))) return NumericCheck::kFailAsIntended;
  const auto cs = numeral_slots(c.commands);
  for (const auto& [key, value] : numeral_slots(r.commands)) {
    auto it = cs.find(key);
    if (it == cs.end() || it->second != value) return NumericCheck::kWeakAccept;
  }
  return NumericCheck::kClean;
}

namespace detail {

inline std::optional<int> last_refinement_order(const DeckIR& ir) {
  std::optional<int> last;
  for (const auto& r : ir.refinements) {
    last = std::max(last.value_or(r.size_order), r.size_order);
    if (r.placement_order) last = std::max(*last, *r.placement_order);
  }
  return last;
}

inline bool contact_precedes_refinement(const DeckIR& ir) {
  const auto last = last_refinement_order(ir);
  if (!last) return false;
  for (const auto& c : ir.contacts) {
    if ((c.define_order && *c.define_order < *last) || (c.attach_order && *c.attach_order < *last)) return true;
  }
  return false;
}

}  // namespace detail

struct StructuralResult {
  StructuralCheck check = StructuralCheck::kClean;
  std::vector<std::string> rules;  // targeted rules that fired
};

/// Extracts the rejected IR and looks for targeted structural changes.
inline StructuralResult validate_structural(const DeckIR& chosen_ir, std::string_view rejected_code) {
  StructuralResult out;
  const ParseResult parsed = parse_deck(rejected_code);
  if (!parsed.ok()) {
    out.check = StructuralCheck::kFailAsIntended;
    out.rules.push_back("unparseable");
    return out;
  }
  const ExtractResult ex = extract_ir(parsed.commands);
  if (!ex.ok()) {
    out.check = StructuralCheck::kFailAsIntended;
    out.rules.push_back("unextractable");
    return out;
  }
  const DeckIR& rej = ex.ir;
  const IrDiff diff = diff_ir(chosen_ir, rej);
  if (diff.classification != DiffClass::kStructural) return out;

  int swapped = 0;
  for (const auto& c : diff.changes) {
    if (c.left && c.right && c.path.rfind("regions[", 0) == 0 &&
        c.path.size() > 17 && c.path.compare(c.path.size() - 17, 17, ".boolean_op_index") == 0) {
      ++swapped;
    }
  }
  if (swapped >= 2) out.rules.push_back("boolean-order-swap");
  if (detail::contact_precedes_refinement(rej) && !detail::contact_precedes_refinement(chosen_ir)) {
    out.rules.push_back("contact-before-refinement");
  }
  if (chosen_ir.exports.build_mesh && !rej.exports.build_mesh) out.rules.push_back("missing-build-mesh");
  if (chosen_ir.exports.any_save() && !rej.exports.any_save()) out.rules.push_back("missing-export");
  if (compute_fact_card(chosen_ir) != compute_fact_card(rej)) out.rules.push_back("fact-card-conflict");
  if (!out.rules.empty()) out.check = StructuralCheck::kFailAsIntended;
  return out;
}

/// Both stages on one rejected sample; `accepted` holds when the failure lies
/// in exactly the declared family's dimension.
inline ValidationVerdict validate_rejected(const std::string& chosen_code, const DeckIR& chosen_ir,
                                           const std::string& rejected_code, const ViolationKind& declared) {
  ValidationVerdict v;
  v.numeric = validate_numeric(chosen_code, rejected_code);
  const StructuralResult s = validate_structural(chosen_ir, rejected_code);
  v.structural = s.check;
  for (std::size_t i = 0; i < s.rules.size(); ++i) v.notes += (i ? "," : "") + s.rules[i];
  if (declared.family == ViolationFamily::kNumeric) {
    v.accepted = v.numeric != NumericCheck::kClean && v.structural == StructuralCheck::kClean;
  } else {
    v.accepted = v.structural == StructuralCheck::kFailAsIntended && v.numeric != NumericCheck::kFailAsIntended;
  }
  return v;
}

}  // namespace deckforge
