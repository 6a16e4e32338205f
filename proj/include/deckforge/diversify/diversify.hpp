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
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "deckforge/core/hash.hpp"
#include "deckforge/core/rng.hpp"
#include "deckforge/diversify/bands.hpp"
#include "deckforge/diversify/equivalence.hpp"
#include "deckforge/ir/aliases.hpp"
#include "deckforge/ir/json.hpp"
#include "deckforge/ir/layout.hpp"

namespace deckforge {

/// One applied transform with its parameters, e.g. kind `numeric_jitter`,
/// params {mode: near, path: ..., from: ..., to: ...}.
struct TransformRecord {
  std::string kind;
  std::map<std::string, std::string> params;
  friend bool operator==(const TransformRecord&, const TransformRecord&) = default;
};

struct Variant {
  DeckIR ir;
  std::vector<TransformRecord> transforms;
  int attempt = 0;
};

struct DiversificationBatch {
  std::string parent_id;
  int multiplier = 0;
  std::uint64_t seed = 0;
  std::vector<Variant> variants;
  std::vector<std::string> warnings;
};

struct DiversifyOptions {
  JitterConfig jitter;
  int max_attempts = 64;  // per requested variant
  int max_transforms = 3;
  const AliasTable* aliases = nullptr;  // defaults when null
};

/// Stable identifier of an IR: hash of its JSON document.
inline std::string ir_id(const DeckIR& ir) {
  return "ir-" + tagged_hash("deckforge.ir", {ir_to_json(ir).dump()}).substr(0, 16);
}

inline constexpr const char* kOptionalWindow = "RW.opt";
inline constexpr const char* kOptionalRefinement = "opt.refine";
inline constexpr const char* kOptionalPlacement = "RP.opt";

namespace detail {

struct JitterTarget {
  std::string path;
  Quantity quantity;
  Decimal* value;
};

inline std::vector<JitterTarget> jitter_targets(DeckIR& ir) {
  std::vector<JitterTarget> out;
  for (auto& d : ir.dopings) {
    const std::string p = "dopings[" + d.profile_name + "]";
    out.push_back({p + ".concentration", Quantity::kConcentration, &d.concentration});
    if (d.kind == ProfileKind::kGaussian) out.push_back({p + ".length", Quantity::kLength, &d.length});
  }
  for (auto& r : ir.refinements) {
    const std::string p = "refinements[" + r.name + "]";
    for (auto [suffix, pt] : {std::pair{".max_sizes", &r.max_sizes}, std::pair{".min_sizes", &r.min_sizes}}) {
      out.push_back({p + suffix + ".x", Quantity::kLength, &pt->x});
      out.push_back({p + suffix + ".y", Quantity::kLength, &pt->y});
      out.push_back({p + suffix + ".z", Quantity::kLength, &pt->z});
    }
  }
  return out;
}

inline std::vector<std::pair<std::string, std::size_t>> commutable_pairs(const DeckIR& ir) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < ir.dopings.size(); ++i) {
    if (ir.dopings[i].target != ir.dopings[i + 1].target) out.emplace_back("dopings", i);
  }
  for (std::size_t i = 0; i + 1 < ir.refinements.size(); ++i) out.emplace_back("refinements", i);
  return out;
}

inline const RefinementSpec* first_global(const DeckIR& ir) {
  for (const auto& r : ir.refinements) {
    if (r.is_global()) return &r;
  }
  return nullptr;
}

inline bool has_optional(const DeckIR& ir) {
  if (!ir.find_window(kOptionalWindow)) return false;
  for (const auto& r : ir.refinements) {
    if (r.name == kOptionalRefinement && r.target == kOptionalWindow) return true;
  }
  return false;
}

inline bool optional_removable(const DeckIR& ir) {
  if (!has_optional(ir)) return false;
  for (const auto& d : ir.dopings) {
    if (d.target == kOptionalWindow) return false;
  }
  for (const auto& r : ir.refinements) {
    if (r.target == kOptionalWindow && r.name != kOptionalRefinement) return false;
  }
  return true;
}

inline bool optional_addable(const DeckIR& ir) {
  if (ir.regions.empty() || !first_global(ir) || ir.find_region(kOptionalWindow) || ir.find_window(kOptionalWindow)) {
    return false;
  }
  for (const auto& r : ir.refinements) {
    if (r.name == kOptionalRefinement) return false;
  }
  return true;
}

enum class TransformKind { kReorder, kJitter, kAlias, kToggle };

class TransformApplier {
 public:
  TransformApplier(Rng& rng, const DiversifyOptions& opt, const AliasTable& aliases)
      : rng_(rng), opt_(opt), aliases_(aliases) {}

  std::vector<TransformKind> applicable(DeckIR& ir) const {
    std::vector<TransformKind> kinds;
    if (!commutable_pairs(ir).empty()) kinds.push_back(TransformKind::kReorder);
    if (!jitter_targets(ir).empty()) kinds.push_back(TransformKind::kJitter);
    kinds.push_back(TransformKind::kAlias);
    if (optional_removable(ir) || optional_addable(ir)) kinds.push_back(TransformKind::kToggle);
    return kinds;
  }

  TransformRecord apply(DeckIR& ir, TransformKind kind) {
    switch (kind) {
      case TransformKind::kReorder: return reorder(ir);
      case TransformKind::kJitter: return jitter(ir);
      case TransformKind::kAlias: return alias(ir);
      case TransformKind::kToggle: return toggle(ir);
    }
    return {};
  }

 private:
  TransformRecord reorder(DeckIR& ir) {
    const auto pairs = commutable_pairs(ir);
    const auto& [group, i] = pairs[rng_.below(pairs.size())];
    TransformRecord t{"reorder_commutable", {{"group", group}}};
    if (group == "dopings") {
      t.params["first"] = ir.dopings[i].profile_name;
      t.params["second"] = ir.dopings[i + 1].profile_name;
      std::swap(ir.dopings[i], ir.dopings[i + 1]);
    } else {
      t.params["first"] = ir.refinements[i].name;
      t.params["second"] = ir.refinements[i + 1].name;
      std::swap(ir.refinements[i], ir.refinements[i + 1]);
    }
    return t;
  }

  TransformRecord jitter(DeckIR& ir) {
    auto targets = jitter_targets(ir);
    JitterTarget& target = targets[rng_.below(targets.size())];
    const bool near = rng_.below(4) != 0;  // step snaps are rarer
    const Decimal before = *target.value;
    *target.value = near ? near_jitter(before, rng_, opt_.jitter) : step_snap(before, target.quantity);
    return {"numeric_jitter",
            {{"mode", near ? "near" : "step"}, {"path", target.path}, {"from", before.str()}, {"to", target.value->str()}}};
  }

  TransformRecord alias(DeckIR& ir) {
    int changed = 0;
    for (auto& r : ir.regions) {
      const std::string& canonical = aliases_.canonical(r.material);
      if (canonical != r.material) {
        r.material = canonical;
        ++changed;
      }
    }
    refresh_materials(ir);
    return {"alias_canonicalize", {{"changed", std::to_string(changed)}}};
  }

  TransformRecord toggle(DeckIR& ir) {
    if (optional_removable(ir)) {
      std::erase_if(ir.windows, [](const WindowSpec& w) { return w.name == kOptionalWindow; });
      std::erase_if(ir.refinements, [](const RefinementSpec& r) { return r.name == kOptionalRefinement; });
      return {"toggle_optional", {{"statement", "refinement_placement"}, {"action", "remove"}}};
    }
    const auto bounds = *device_bounds(ir);
    const RefinementSpec& g = *first_global(ir);
    WindowSpec w;
    w.name = kOptionalWindow;
    w.shape = ir.dimension == Dimension::k3D ? Shape::kCuboid : Shape::kRectangle;
    w.min = bounds.first;
    w.max = bounds.second;
    RefinementSpec r;
    r.name = kOptionalRefinement;
    r.max_sizes = g.max_sizes;
    r.min_sizes = g.min_sizes;
    r.placement_name = kOptionalPlacement;
    r.target = kOptionalWindow;
    r.placement_order = 0;  // renumbered by relayout
    ir.windows.push_back(std::move(w));
    ir.refinements.push_back(std::move(r));
    return {"toggle_optional", {{"statement", "refinement_placement"}, {"action", "add"}}};
  }

  Rng& rng_;
  const DiversifyOptions& opt_;
  const AliasTable& aliases_;
};

}  // namespace detail

/// Expands an IR into `multiplier` distinct, fact-card-equal variants. Each
/// slot retries with fresh streams; a slot that never yields a new valid
/// variant is dropped with a warning.
inline DiversificationBatch diversify(const DeckIR& ir, int multiplier, std::uint64_t seed,
                                      const DiversifyOptions& opt = {}) {
  if (multiplier < 1) throw std::invalid_argument("diversify: multiplier must be at least 1");
  const AliasTable& aliases = opt.aliases ? *opt.aliases : AliasTable::defaults();
  DiversificationBatch batch;
  batch.parent_id = ir_id(ir);
  batch.multiplier = multiplier;
  batch.seed = seed;
  const DeckIR parent = relayout(ir);

  for (int slot = 0; slot < multiplier; ++slot) {
    bool placed = false;
    for (int attempt = 0; attempt < opt.max_attempts && !placed; ++attempt) {
      Rng rng = Rng::stream(seed, batch.parent_id + "/" + std::to_string(slot), static_cast<std::uint64_t>(attempt));
      detail::TransformApplier applier(rng, opt, aliases);
      Variant v{parent, {}, attempt};
      const int count = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(std::max(1, opt.max_transforms))));
      for (int t = 0; t < count; ++t) {
        const auto kinds = applier.applicable(v.ir);
        v.transforms.push_back(applier.apply(v.ir, kinds[rng.below(kinds.size())]));
      }
      v.ir = relayout(v.ir);
      if (v.ir == parent) continue;
      bool duplicate = false;
      for (const auto& other : batch.variants) duplicate = duplicate || other.ir == v.ir;
      if (duplicate) continue;
      if (!verify_equivalence(parent, v.ir, opt.jitter).ok) continue;
      batch.variants.push_back(std::move(v));
      placed = true;
    }
    if (!placed) {
      batch.warnings.push_back("slot " + std::to_string(slot) + ": no new equivalent variant after " +
                               std::to_string(opt.max_attempts) + " attempts");
    }
  }
  return batch;
}

inline nlohmann::json transform_to_json(const TransformRecord& t) {
  nlohmann::json j = {{"kind", t.kind}};
  for (const auto& [k, v] : t.params) j[k] = v;
  return j;
}

inline TransformRecord transform_from_json(const nlohmann::json& j) {
  TransformRecord t;
  for (const auto& [k, v] : j.items()) {
    if (k == "kind") {
      t.kind = v.get<std::string>();
    } else {
      t.params[k] = v.get<std::string>();
    }
  }
  return t;
}

inline nlohmann::json batch_to_json(const DiversificationBatch& b) {
  nlohmann::json j = {{"parent_id", b.parent_id},
                      {"multiplier", b.multiplier},
                      {"seed", b.seed},
                      {"warnings", b.warnings},
                      {"variants", nlohmann::json::array()}};
  for (const auto& v : b.variants) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& rec : v.transforms) t.push_back(transform_to_json(rec));
    j["variants"].push_back({{"ir", ir_to_json(v.ir)}, {"transforms", t}, {"attempt", v.attempt}});
  }
  return j;
}

}  // namespace deckforge
