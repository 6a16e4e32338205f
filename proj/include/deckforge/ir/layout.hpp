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

#include <set>
#include <string>
#include <vector>

#include "deckforge/deck/ast.hpp"
#include "deckforge/deck/registry.hpp"
#include "deckforge/ir/ir.hpp"

namespace deckforge {

// Canonical command layout shared by the code renderer and by flattening:
//
//   up-direction (only when not the dimension default)
//   set-default-boolean (when regions exist)
//   regions, in Boolean-operation order
//   refeval windows
//   doping profiles, each followed by its placement
//   refinement sizes, each followed by its placement
//   contacts (define-contact-set, then set-contact)
//   unrecognized commands
//   build-mesh
//   save-tdr-bnd

namespace detail {

inline Arg str(std::string s) { return StringLit{std::move(s)}; }

inline Arg pos(const Point3& p) { return Position{{Scalar{p.x}, Scalar{p.y}, Scalar{p.z}}}; }

inline CommandNode node(std::string_view head, std::vector<Arg> args) {
  CommandNode n;
  n.head = std::string(head);
  n.args = std::move(args);
  return n;
}

}  // namespace detail

/// Lowers an IR to commands in canonical layout. When `reindexed` is given it
/// receives a copy of `ir` whose order fields match the emitted positions.
inline std::vector<CommandNode> lower_ir(const DeckIR& ir, DeckIR* reindexed = nullptr) {
  using detail::node;
  using detail::pos;
  using detail::str;
  std::vector<CommandNode> out;
  if (reindexed) *reindexed = ir;
  auto next = [&out]() { return static_cast<int>(out.size()); };

  if (ir.up_direction != default_up(ir.dimension)) {
    out.push_back(node(cmd::kSetUpDirection, {str(to_string(ir.up_direction))}));
  }
  if (!ir.regions.empty()) {
    out.push_back(node(cmd::kSetDefaultBoolean, {str(to_string(ir.boolean_mode))}));
  }
  for (std::size_t i = 0; i < ir.regions.size(); ++i) {
    const auto& r = ir.regions[i];
    const auto head = r.shape == Shape::kRectangle ? cmd::kCreateRectangle : cmd::kCreateCuboid;
    out.push_back(node(head, {pos(r.min), pos(r.max), str(r.material), str(r.name)}));
    if (reindexed) reindexed->regions[i].boolean_op_index = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < ir.windows.size(); ++i) {
    const auto& w = ir.windows[i];
    if (reindexed) reindexed->windows[i].order = next();
    out.push_back(node(cmd::kRefevalWindow,
                       {str(w.name), str(w.shape == Shape::kRectangle ? "Rectangle" : "Cuboid"), pos(w.min), pos(w.max)}));
  }
  for (std::size_t i = 0; i < ir.dopings.size(); ++i) {
    const auto& d = ir.dopings[i];
    if (reindexed) reindexed->dopings[i].profile_order = next();
    if (d.kind == ProfileKind::kConstant) {
      out.push_back(node(cmd::kConstantProfile, {str(d.profile_name), str(d.species), d.concentration}));
    } else {
      out.push_back(node(cmd::kGaussianProfile, {str(d.profile_name), str(d.species), d.concentration, d.length}));
    }
    if (d.placement_order) {
      if (reindexed) reindexed->dopings[i].placement_order = next();
      const auto head = d.kind == ProfileKind::kConstant ? cmd::kConstantPlacement : cmd::kAnalyticalPlacement;
      out.push_back(node(head, {str(d.name), str(d.profile_name), str(d.target)}));
    }
  }
  for (std::size_t i = 0; i < ir.refinements.size(); ++i) {
    const auto& r = ir.refinements[i];
    if (reindexed) reindexed->refinements[i].size_order = next();
    out.push_back(node(cmd::kRefinementSize, {str(r.name), r.max_sizes.x, r.max_sizes.y, r.max_sizes.z, r.min_sizes.x,
                                              r.min_sizes.y, r.min_sizes.z}));
    if (r.placement_order) {
      if (reindexed) reindexed->refinements[i].placement_order = next();
      out.push_back(node(cmd::kRefinementPlacement, {str(r.placement_name), str(r.name), str(r.target)}));
    }
  }
  for (std::size_t i = 0; i < ir.contacts.size(); ++i) {
    const auto& c = ir.contacts[i];
    if (c.define_order) {
      if (reindexed) reindexed->contacts[i].define_order = next();
      out.push_back(node(cmd::kDefineContactSet, {str(c.name)}));
    }
    if (c.attach_order) {
      if (reindexed) reindexed->contacts[i].attach_order = next();
      if (c.kind == ContactKind::kEdge) {
        out.push_back(node(cmd::kSetContact, {str(c.name), str(c.region)}));
      } else {
        out.push_back(node(cmd::kSetContact, {str(c.name), pos(c.position)}));
      }
    }
  }
  for (std::size_t i = 0; i < ir.unrecognized.size(); ++i) {
    if (reindexed) reindexed->unrecognized[i].order = next();
    out.push_back(ir.unrecognized[i].node);
  }
  if (ir.exports.build_mesh) {
    if (reindexed) reindexed->exports.build_mesh_order = next();
    std::vector<Arg> args;
    if (!ir.exports.mesh_name.empty()) args.push_back(str(ir.exports.mesh_name));
    out.push_back(node(cmd::kBuildMesh, std::move(args)));
  }
  if (ir.exports.any_save()) {
    if (reindexed) reindexed->exports.export_order = next();
    std::vector<Arg> args;
    if (ir.exports.save_tdr) args.push_back(str(ir.exports.tdr_name));
    if (ir.exports.save_bnd) args.push_back(str(ir.exports.bnd_name));
    out.push_back(node(cmd::kSaveTdrBnd, std::move(args)));
  }
  return out;
}

/// Rewrites every order field to its canonical layout position.
inline DeckIR relayout(const DeckIR& ir) {
  DeckIR out;
  lower_ir(ir, &out);
  return out;
}

}  // namespace deckforge
