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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deckforge/deck/ast.hpp"
#include "deckforge/deck/diagnostic.hpp"
#include "deckforge/ir/ir.hpp"

namespace deckforge {

/// Bumped whenever a rule is added, removed or changes meaning.
inline constexpr std::string_view kRuleSetVersion = "deckforge-rules/1";

struct OrderRule {
  std::string_view id;
  std::string_view description;
};

namespace rule {
inline constexpr std::string_view kMissingBuildMesh = "missing-build-mesh";
inline constexpr std::string_view kMissingExport = "missing-export";
inline constexpr std::string_view kExportBeforeBuildMesh = "export-before-build-mesh";
inline constexpr std::string_view kContactBeforeRefinement = "contact-before-refinement";
inline constexpr std::string_view kContactSetUndefined = "contact-set-undefined";
inline constexpr std::string_view kBooleanOrder = "boolean-order";
inline constexpr std::string_view kVirtualContactOutside = "virtual-contact-outside";
inline constexpr std::string_view kGeometryInvalid = "geometry-invalid";
inline constexpr std::string_view kRefinementInvalid = "refinement-invalid";
inline constexpr std::string_view kDopingInvalid = "doping-invalid";
inline constexpr std::string_view kUnknownCommand = "unknown-command";
inline constexpr std::string_view kUnresolvedPlaceholder = "unresolved-placeholder";
}  // namespace rule

inline const std::vector<OrderRule>& order_rules() {
  static const std::vector<OrderRule> rules = {
      {rule::kMissingBuildMesh, "an export requires an earlier sde:build-mesh"},
      {rule::kMissingExport, "a built mesh must be saved with sdeio:save-tdr-bnd"},
      {rule::kExportBeforeBuildMesh, "sde:build-mesh must precede the export"},
      {rule::kContactBeforeRefinement, "contacts are defined after all refinement commands"},
      {rule::kContactSetUndefined, "set-contact needs an earlier define-contact-set"},
      {rule::kBooleanOrder, "no region may be swallowed whole by the Boolean mode"},
      {rule::kVirtualContactOutside, "virtual contact points lie inside some region"},
      {rule::kGeometryInvalid, "boxes are non-degenerate with min < max; 2D decks keep z = 0"},
      {rule::kRefinementInvalid, "refinement sizes are positive with min <= max"},
      {rule::kDopingInvalid, "concentrations and Gaussian lengths are positive"},
      {rule::kUnknownCommand, "commands outside the registry (error in strict mode)"},
      {rule::kUnresolvedPlaceholder, "template variables in value positions must be resolved"},
  };
  return rules;
}

namespace detail {

inline bool box_within(const Point3& inner_lo, const Point3& inner_hi, const Point3& outer_lo, const Point3& outer_hi) {
  return box_contains(outer_lo, outer_hi, inner_lo) && box_contains(outer_lo, outer_hi, inner_hi);
}

inline bool degenerate_box(const Point3& lo, const Point3& hi, Dimension dim) {
  if (!(lo.x < hi.x) || !(lo.y < hi.y)) return true;
  return dim == Dimension::k3D && !(lo.z < hi.z);
}

}  // namespace detail

/// Evaluates the semantic rules over an extracted IR. `commands` supplies
/// spans for the diagnostics; it may be empty.
inline std::vector<Diagnostic> apply_rules(const DeckIR& ir, const std::vector<CommandNode>& commands = {}) {
  std::vector<Diagnostic> out;
  auto span_of = [&](std::optional<int> order) -> SourceSpan {
    if (!order || *order < 0 || static_cast<std::size_t>(*order) >= commands.size()) return {};
    return commands[static_cast<std::size_t>(*order)].span;
  };
  auto fail = [&](std::string_view id, std::string msg, std::optional<int> order = std::nullopt) {
    out.push_back(make_error(std::string(id), std::move(msg), span_of(order)));
  };
  const ExportSpec& x = ir.exports;

  if (x.any_save() && !x.build_mesh) fail(rule::kMissingBuildMesh, "export without sde:build-mesh", x.export_order);
  if (x.build_mesh && !x.any_save()) fail(rule::kMissingExport, "mesh is built but never saved", x.build_mesh_order);
  if (x.build_mesh_order && x.export_order && *x.export_order < *x.build_mesh_order) {
    fail(rule::kExportBeforeBuildMesh, "save-tdr-bnd appears before build-mesh", x.export_order);
  }

  std::optional<int> last_refinement;
  for (const auto& r : ir.refinements) {
    last_refinement = std::max(last_refinement.value_or(r.size_order), r.size_order);
    if (r.placement_order) last_refinement = std::max(*last_refinement, *r.placement_order);
  }
  for (const auto& c : ir.contacts) {
    for (const auto& order : {c.define_order, c.attach_order}) {
      if (order && last_refinement && *order < *last_refinement) {
        fail(rule::kContactBeforeRefinement, "contact '" + c.name + "' precedes a refinement command", order);
        break;
      }
    }
    if (c.attach_order && (!c.define_order || *c.define_order > *c.attach_order)) {
      fail(rule::kContactSetUndefined, "contact '" + c.name + "' is set before define-contact-set", c.attach_order);
    }
    if (c.kind == ContactKind::kPoint && c.attach_order) {
      const bool inside = std::any_of(ir.regions.begin(), ir.regions.end(),
                                      [&](const RegionSpec& r) { return box_contains(r.min, r.max, c.position); });
      if (!inside) fail(rule::kVirtualContactOutside, "contact '" + c.name + "' lies outside every region", c.attach_order);
    }
  }

  // Under ABA a later region replaces what it overlaps, so an earlier region
  // fully inside a later one disappears; BAB is the mirror image.
  std::vector<const RegionSpec*> ordered;
  for (const auto& r : ir.regions) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const RegionSpec* a, const RegionSpec* b) { return a->boolean_op_index < b->boolean_op_index; });
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    for (std::size_t j = i + 1; j < ordered.size(); ++j) {
      const RegionSpec& early = *ordered[i];
      const RegionSpec& late = *ordered[j];
      if (ir.boolean_mode == BooleanMode::kABA && detail::box_within(early.min, early.max, late.min, late.max)) {
        fail(rule::kBooleanOrder, "region '" + early.name + "' is fully replaced by later region '" + late.name + "' (ABA)");
      } else if (ir.boolean_mode == BooleanMode::kBAB && detail::box_within(late.min, late.max, early.min, early.max)) {
        fail(rule::kBooleanOrder, "region '" + late.name + "' is fully hidden by earlier region '" + early.name + "' (BAB)");
      }
    }
  }

  for (const auto& r : ir.regions) {
    if (detail::degenerate_box(r.min, r.max, ir.dimension)) {
      fail(rule::kGeometryInvalid, "region '" + r.name + "' has an empty or inverted box");
    } else if (ir.dimension == Dimension::k2D && (!r.min.z.is_zero() || !r.max.z.is_zero())) {
      fail(rule::kGeometryInvalid, "2D region '" + r.name + "' has a non-zero z extent");
    }
  }
  for (const auto& w : ir.windows) {
    if (detail::degenerate_box(w.min, w.max, ir.dimension)) {
      fail(rule::kGeometryInvalid, "window '" + w.name + "' has an empty or inverted box", w.order);
    } else if (ir.dimension == Dimension::k2D && (!w.min.z.is_zero() || !w.max.z.is_zero())) {
      fail(rule::kGeometryInvalid, "2D window '" + w.name + "' has a non-zero z extent", w.order);
    }
  }

  const Decimal zero;
  for (const auto& r : ir.refinements) {
    const Point3& hi = r.max_sizes;
    const Point3& lo = r.min_sizes;
    const bool positive = zero < hi.x && zero < hi.y && zero < hi.z && zero < lo.x && zero < lo.y && zero < lo.z;
    if (!positive || hi.x < lo.x || hi.y < lo.y || hi.z < lo.z) {
      fail(rule::kRefinementInvalid, "refinement '" + r.name + "' sizes must be positive with min <= max", r.size_order);
    }
  }
  for (const auto& d : ir.dopings) {
    if (!(zero < d.concentration)) {
      fail(rule::kDopingInvalid, "profile '" + d.profile_name + "' has a non-positive concentration", d.profile_order);
    }
    if (d.kind == ProfileKind::kGaussian && !(zero < d.length)) {
      fail(rule::kDopingInvalid, "profile '" + d.profile_name + "' has a non-positive length", d.profile_order);
    }
  }
  return out;
}

}  // namespace deckforge
