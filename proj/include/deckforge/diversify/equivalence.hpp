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

#include <string>

#include "deckforge/check/checker.hpp"
#include "deckforge/diversify/bands.hpp"
#include "deckforge/ir/diff.hpp"
#include "deckforge/ir/fact_card.hpp"
#include "deckforge/render/code.hpp"

namespace deckforge {

struct Equivalence {
  bool ok = true;
  std::string reason;  // empty, a fact-card field, "numeric_band" or "checker"
  std::string detail;
};

/// Fact cards equal, every shared numeric leaf within the band or on its step
/// grid, and the rendered variant passes the checker directly.
inline Equivalence verify_equivalence(const DeckIR& parent, const DeckIR& variant, const JitterConfig& cfg = {}) {
  const FactCard a = compute_fact_card(parent);
  const FactCard b = compute_fact_card(variant);
  if (a.region_count != b.region_count) return {false, "region_count", to_string(a) + " vs " + to_string(b)};
  if (a.boolean_order != b.boolean_order) return {false, "boolean_order", a.boolean_order + " vs " + b.boolean_order};
  if (a.contacts_present != b.contacts_present) return {false, "contacts_present", to_string(a) + " vs " + to_string(b)};
  if (a.expected_outputs != b.expected_outputs) return {false, "expected_outputs", to_string(a) + " vs " + to_string(b)};

  for (const auto& change : diff_ir(parent, variant).changes) {
    if (!change.numeric) continue;
    const Decimal before = *Decimal::parse(*change.left);
    const Decimal after = *Decimal::parse(*change.right);
    if (!equivalent_value(before, after, quantity_of_path(change.path), cfg)) {
      return {false, "numeric_band", change.path + ": " + *change.left + " -> " + *change.right};
    }
  }

  const CheckReport report = check_syntax(render_code(variant));
  if (report.verdict != Verdict::kDirectPass) {
    std::string first = report.diagnostics.empty() ? "" : report.diagnostics.front().code;
    return {false, "checker", first};
  }
  return {};
}

}  // namespace deckforge
