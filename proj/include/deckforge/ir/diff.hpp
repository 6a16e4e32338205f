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
#include <utility>
#include <vector>

#include "deckforge/deck/parser.hpp"
#include "deckforge/ir/ir.hpp"

namespace deckforge {

/// One leaf of the IR field tree. Numeric leaves carry their value.
struct IrLeaf {
  std::string text;
  std::optional<Decimal> number;
};

using LeafMap = std::map<std::string, IrLeaf>;

namespace detail {

inline void put(LeafMap& m, const std::string& path, std::string text) { m[path] = {std::move(text), std::nullopt}; }
inline void put(LeafMap& m, const std::string& path, const Decimal& d) { m[path] = {d.str(), d}; }

inline void put(LeafMap& m, const std::string& path, const std::optional<int>& v) {
  put(m, path, v ? std::to_string(*v) : std::string("absent"));
}

inline void put_point(LeafMap& m, const std::string& path, const Point3& p) {
  put(m, path + ".x", p.x);
  put(m, path + ".y", p.y);
  put(m, path + ".z", p.z);
}

}  // namespace detail

/// Enumerates every IR leaf under a stable, name-keyed path such as
/// `regions[gate].max.y` or `dopings[p_body].position`.
inline LeafMap ir_leaves(const DeckIR& ir) {
  using detail::put;
  using detail::put_point;
  LeafMap m;
  put(m, "dimension", to_string(ir.dimension));
  put(m, "up_direction", to_string(ir.up_direction));
  put(m, "boolean_mode", to_string(ir.boolean_mode));
  for (const auto& mat : ir.materials) put(m, "materials[" + mat + "]", "present");
  for (const auto& r : ir.regions) {
    const std::string p = "regions[" + r.name + "]";
    put(m, p, "present");
    put(m, p + ".material", r.material);
    put(m, p + ".shape", to_string(r.shape));
    put_point(m, p + ".min", r.min);
    put_point(m, p + ".max", r.max);
    put(m, p + ".boolean_op_index", std::to_string(r.boolean_op_index));
  }
  for (const auto& w : ir.windows) {
    const std::string p = "windows[" + w.name + "]";
    put(m, p, "present");
    put(m, p + ".shape", to_string(w.shape));
    put_point(m, p + ".min", w.min);
    put_point(m, p + ".max", w.max);
    put(m, p + ".position", std::to_string(w.order));
  }
  for (const auto& d : ir.dopings) {
    const std::string p = "dopings[" + d.profile_name + "]";
    put(m, p, "present");
    put(m, p + ".kind", to_string(d.kind));
    put(m, p + ".species", d.species);
    put(m, p + ".concentration", d.concentration);
    if (d.kind == ProfileKind::kGaussian) put(m, p + ".length", d.length);
    put(m, p + ".placement", d.name);
    put(m, p + ".target", d.target);
    put(m, p + ".position", std::to_string(d.profile_order));
    put(m, p + ".placement.position", d.placement_order);
  }
  for (const auto& r : ir.refinements) {
    const std::string p = "refinements[" + r.name + "]";
    put(m, p, "present");
    put_point(m, p + ".max_sizes", r.max_sizes);
    put_point(m, p + ".min_sizes", r.min_sizes);
    put(m, p + ".placement", r.placement_name);
    put(m, p + ".target", r.is_global() ? std::string("global") : r.target);
    put(m, p + ".position", std::to_string(r.size_order));
    put(m, p + ".placement.position", r.placement_order);
  }
  for (const auto& c : ir.contacts) {
    const std::string p = "contacts[" + c.name + "]";
    put(m, p, "present");
    put(m, p + ".kind", to_string(c.kind));
    if (c.kind == ContactKind::kEdge) {
      put(m, p + ".region", c.region);
    } else {
      put_point(m, p + ".point", c.position);
    }
    put(m, p + ".define.position", c.define_order);
    put(m, p + ".attach.position", c.attach_order);
  }
  const ExportSpec& e = ir.exports;
  put(m, "exports.build_mesh", e.build_mesh ? "true" : "false");
  put(m, "exports.mesh_name", e.mesh_name);
  put(m, "exports.build_mesh.position", e.build_mesh_order);
  put(m, "exports.save_tdr", e.save_tdr ? "true" : "false");
  put(m, "exports.save_bnd", e.save_bnd ? "true" : "false");
  put(m, "exports.tdr_name", e.tdr_name);
  put(m, "exports.bnd_name", e.bnd_name);
  put(m, "exports.export.position", e.export_order);
  for (std::size_t i = 0; i < ir.unrecognized.size(); ++i) {
    const std::string p = "unrecognized[" + std::to_string(i) + "]";
    put(m, p, unparse(ir.unrecognized[i].node));
    put(m, p + ".position", std::to_string(ir.unrecognized[i].order));
  }
  return m;
}

/// Numeric leaves in path order.
inline std::vector<std::pair<std::string, Decimal>> numeric_leaves(const DeckIR& ir) {
  std::vector<std::pair<std::string, Decimal>> out;
  for (const auto& [path, leaf] : ir_leaves(ir)) {
    if (leaf.number) out.emplace_back(path, *leaf.number);
  }
  return out;
}

enum class DiffClass { kIdentical, kNumericOnly, kStructural };

inline const char* to_string(DiffClass c) {
  switch (c) {
    case DiffClass::kIdentical: return "identical";
    case DiffClass::kNumericOnly: return "numeric_only";
    case DiffClass::kStructural: return "structural";
  }
  return "structural";
}

struct IrChange {
  std::string path;
  std::optional<std::string> left;  // nullopt: path absent on that side
  std::optional<std::string> right;
  bool numeric = false;
};

struct IrDiff {
  std::vector<IrChange> changes;
  DiffClass classification = DiffClass::kIdentical;

  bool identical() const { return changes.empty(); }
  bool touches(std::string_view path_prefix) const {
    for (const auto& c : changes) {
      if (c.path.compare(0, path_prefix.size(), path_prefix) == 0) return true;
    }
    return false;
  }
};

inline IrDiff diff_ir(const DeckIR& a, const DeckIR& b) {
  const LeafMap la = ir_leaves(a);
  const LeafMap lb = ir_leaves(b);
  IrDiff d;
  auto ia = la.begin();
  auto ib = lb.begin();
  while (ia != la.end() || ib != lb.end()) {
    if (ib == lb.end() || (ia != la.end() && ia->first < ib->first)) {
      d.changes.push_back({ia->first, ia->second.text, std::nullopt, false});
      ++ia;
    } else if (ia == la.end() || ib->first < ia->first) {
      d.changes.push_back({ib->first, std::nullopt, ib->second.text, false});
      ++ib;
    } else {
      if (ia->second.text != ib->second.text) {
        const bool numeric = ia->second.number.has_value() && ib->second.number.has_value();
        d.changes.push_back({ia->first, ia->second.text, ib->second.text, numeric});
      }
      ++ia;
      ++ib;
    }
  }
  if (d.changes.empty()) {
    d.classification = DiffClass::kIdentical;
  } else {
    bool all_numeric = true;
    for (const auto& c : d.changes) all_numeric = all_numeric && c.numeric;
    d.classification = all_numeric ? DiffClass::kNumericOnly : DiffClass::kStructural;
  }
  return d;
}

}  // namespace deckforge
