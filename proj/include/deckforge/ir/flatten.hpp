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
#include <tuple>

#include "deckforge/ir/aliases.hpp"
#include "deckforge/ir/ir.hpp"
#include "deckforge/ir/layout.hpp"

namespace deckforge {

/// Canonical form of an IR: material aliases resolved, doping and refinement
/// entries sorted by (target, species/name), order fields renumbered to the
/// canonical layout. Region order is semantic and never changes.
inline DeckIR flatten_ir(const DeckIR& ir, const AliasTable& aliases = AliasTable::defaults()) {
  DeckIR out = ir;
  for (auto& r : out.regions) r.material = aliases.canonical(r.material);
  refresh_materials(out);

  std::stable_sort(out.dopings.begin(), out.dopings.end(), [](const DopingSpec& a, const DopingSpec& b) {
    return std::tie(a.target, a.species) < std::tie(b.target, b.species);
  });
  auto refinement_key = [](const RefinementSpec& r) {
    return std::make_pair(r.is_global() ? std::string("global") : r.target, r.name);
  };
  std::stable_sort(out.refinements.begin(), out.refinements.end(),
                   [&](const RefinementSpec& a, const RefinementSpec& b) { return refinement_key(a) < refinement_key(b); });
  return relayout(out);
}

}  // namespace deckforge
