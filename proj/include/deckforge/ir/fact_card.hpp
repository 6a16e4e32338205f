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
#include <string>
#include <vector>

#include "deckforge/ir/ir.hpp"

namespace deckforge {

struct FactCard {
  int region_count = 0;
  std::string boolean_order;              // "ABA:substrate>gate"
  bool contacts_present = false;
  std::vector<std::string> expected_outputs;  // subset of {"bnd", "tdr"}, sorted

  friend bool operator==(const FactCard&, const FactCard&) = default;
};

inline FactCard compute_fact_card(const DeckIR& ir) {
  FactCard card;
  card.region_count = static_cast<int>(ir.regions.size());
  std::vector<const RegionSpec*> ordered;
  for (const auto& r : ir.regions) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const RegionSpec* a, const RegionSpec* b) { return a->boolean_op_index < b->boolean_op_index; });
  card.boolean_order = ordered.empty() ? "" : to_string(ir.boolean_mode);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    card.boolean_order += (i == 0 ? ":" : ">") + ordered[i]->name;
  }
  card.contacts_present = !ir.contacts.empty();
  if (ir.exports.save_bnd) card.expected_outputs.push_back("bnd");
  if (ir.exports.save_tdr) card.expected_outputs.push_back("tdr");
  return card;
}

inline std::string to_string(const FactCard& c) {
  std::string out = "regions=" + std::to_string(c.region_count) + " boolean=" + c.boolean_order +
                    " contacts=" + (c.contacts_present ? "yes" : "no") + " outputs=";
  for (std::size_t i = 0; i < c.expected_outputs.size(); ++i) out += (i ? "," : "") + c.expected_outputs[i];
  return out;
}

}  // namespace deckforge
