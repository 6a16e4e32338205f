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

#include <optional>
#include <string>
#include <vector>

#include "deckforge/deck/parser.hpp"
#include "deckforge/deck/registry.hpp"
#include "deckforge/ir/aliases.hpp"
#include "deckforge/ir/ir.hpp"

namespace deckforge {

struct ExtractResult {
  DeckIR ir;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

namespace detail {

enum class ArgKind { kNumber, kString, kPosition };

inline bool arg_is(const Arg& a, ArgKind k) {
  switch (k) {
    case ArgKind::kNumber: return std::holds_alternative<Decimal>(a);
    case ArgKind::kString: return std::holds_alternative<StringLit>(a);
    case ArgKind::kPosition: {
      const auto* p = as_position(a);
      if (!p) return false;
      for (const auto& s : p->coords) {
        if (!std::holds_alternative<Decimal>(s)) return false;
      }
      return true;
    }
  }
  return false;
}

inline bool args_match(const CommandNode& n, std::initializer_list<ArgKind> kinds) {
  if (n.args.size() != kinds.size()) return false;
  std::size_t i = 0;
  for (ArgKind k : kinds) {
    if (!arg_is(n.args[i++], k)) return false;
  }
  return true;
}

inline const std::string& str_arg(const CommandNode& n, std::size_t i) { return std::get<StringLit>(n.args[i]).value; }
inline const Decimal& num_arg(const CommandNode& n, std::size_t i) { return std::get<Decimal>(n.args[i]); }

inline Point3 point_arg(const CommandNode& n, std::size_t i) {
  const auto& p = std::get<Position>(n.args[i]);
  return {std::get<Decimal>(p.coords[0]), std::get<Decimal>(p.coords[1]), std::get<Decimal>(p.coords[2])};
}

inline bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

class Extractor {
 public:
  ExtractResult run(const std::vector<CommandNode>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      order_ = static_cast<int>(i);
      visit(nodes[i]);
    }
    finish();
    return std::move(out_);
  }

 private:
  void error(const CommandNode& n, std::string code, std::string msg) {
    out_.diagnostics.push_back(make_error(std::move(code), std::move(msg), n.span));
  }

  void bad_args(const CommandNode& n, std::string_view expected) {
    error(n, "bad-arguments", "'" + n.head + "' expects " + std::string(expected));
  }

  bool name_taken(const std::string& name) const {
    return out_.ir.find_region(name) != nullptr || out_.ir.find_window(name) != nullptr;
  }

  void visit(const CommandNode& n) {
    DeckIR& ir = out_.ir;
    const std::string_view h = n.head;
    if (h == cmd::kSetUpDirection) {
      if (!args_match(n, {ArgKind::kString})) return bad_args(n, "an axis string such as \"+z\"");
      auto axis = parse_axis(str_arg(n, 0));
      if (!axis) return error(n, "bad-arguments", "unknown axis '" + str_arg(n, 0) + "'");
      if (up_ && *up_ != *axis) return error(n, "conflicting-up-direction", "up direction set twice with different axes");
      up_ = axis;
    } else if (h == cmd::kSetDefaultBoolean) {
      if (!args_match(n, {ArgKind::kString})) return bad_args(n, "\"ABA\" or \"BAB\"");
      auto mode = parse_boolean_mode(str_arg(n, 0));
      if (!mode) return error(n, "bad-arguments", "unknown Boolean mode '" + str_arg(n, 0) + "'");
      if (boolean_ && *boolean_ != *mode) {
        return error(n, "conflicting-boolean", "set-default-boolean conflicts with an earlier setting");
      }
      boolean_ = mode;
      ir.boolean_mode = *mode;
    } else if (h == cmd::kCreateRectangle || h == cmd::kCreateCuboid) {
      if (!args_match(n, {ArgKind::kPosition, ArgKind::kPosition, ArgKind::kString, ArgKind::kString})) {
        return bad_args(n, "two positions, a material and a region name");
      }
      RegionSpec r;
      r.shape = h == cmd::kCreateRectangle ? Shape::kRectangle : Shape::kCuboid;
      r.min = point_arg(n, 0);
      r.max = point_arg(n, 1);
      r.material = str_arg(n, 2);
      r.name = str_arg(n, 3);
      r.boolean_op_index = static_cast<int>(ir.regions.size());
      if (name_taken(r.name)) return error(n, "duplicate-name", "region '" + r.name + "' already defined");
      if (!note_shape(n, r.shape)) return;
      ir.regions.push_back(std::move(r));
    } else if (h == cmd::kRefevalWindow) {
      if (!args_match(n, {ArgKind::kString, ArgKind::kString, ArgKind::kPosition, ArgKind::kPosition})) {
        return bad_args(n, "a name, \"Rectangle\" or \"Cuboid\", and two positions");
      }
      WindowSpec w;
      w.name = str_arg(n, 0);
      const std::string& shape = str_arg(n, 1);
      if (shape != "Rectangle" && shape != "Cuboid") return error(n, "bad-arguments", "unknown window shape '" + shape + "'");
      w.shape = shape == "Rectangle" ? Shape::kRectangle : Shape::kCuboid;
      w.min = point_arg(n, 2);
      w.max = point_arg(n, 3);
      w.order = order_;
      if (name_taken(w.name)) return error(n, "duplicate-name", "window '" + w.name + "' already defined");
      if (!note_shape(n, w.shape)) return;
      ir.windows.push_back(std::move(w));
    } else if (h == cmd::kConstantProfile || h == cmd::kGaussianProfile) {
      DopingSpec d;
      if (h == cmd::kConstantProfile) {
        if (!args_match(n, {ArgKind::kString, ArgKind::kString, ArgKind::kNumber})) {
          return bad_args(n, "a profile name, a species and a concentration");
        }
        d.kind = ProfileKind::kConstant;
      } else {
        if (!args_match(n, {ArgKind::kString, ArgKind::kString, ArgKind::kNumber, ArgKind::kNumber})) {
          return bad_args(n, "a profile name, a species, a peak concentration and a length");
        }
        d.kind = ProfileKind::kGaussian;
        d.length = num_arg(n, 3);
      }
      d.profile_name = str_arg(n, 0);
      d.species = str_arg(n, 1);
      d.concentration = num_arg(n, 2);
      d.profile_order = order_;
      if (find_doping(d.profile_name)) {
        return error(n, "duplicate-name", "profile '" + d.profile_name + "' already defined");
      }
      ir.dopings.push_back(std::move(d));
    } else if (h == cmd::kConstantPlacement || h == cmd::kAnalyticalPlacement) {
      if (!args_match(n, {ArgKind::kString, ArgKind::kString, ArgKind::kString})) {
        return bad_args(n, "a placement name, a profile name and a target");
      }
      DopingSpec* d = find_doping(str_arg(n, 1));
      if (!d) return error(n, "undefined-reference", "profile '" + str_arg(n, 1) + "' is not defined");
      const ProfileKind expected = h == cmd::kConstantPlacement ? ProfileKind::kConstant : ProfileKind::kGaussian;
      if (d->kind != expected) {
        return error(n, "profile-kind-mismatch", "profile '" + d->profile_name + "' is " + to_string(d->kind));
      }
      if (d->placement_order) return error(n, "duplicate-placement", "profile '" + d->profile_name + "' placed twice");
      if (!name_taken(str_arg(n, 2))) {
        return error(n, "undefined-reference", "placement target '" + str_arg(n, 2) + "' is not defined");
      }
      d->name = str_arg(n, 0);
      d->target = str_arg(n, 2);
      d->placement_order = order_;
    } else if (h == cmd::kRefinementSize) {
      if (!args_match(n, {ArgKind::kString, ArgKind::kNumber, ArgKind::kNumber, ArgKind::kNumber, ArgKind::kNumber,
                          ArgKind::kNumber, ArgKind::kNumber})) {
        return bad_args(n, "a name and six sizes");
      }
      RefinementSpec r;
      r.name = str_arg(n, 0);
      r.max_sizes = {num_arg(n, 1), num_arg(n, 2), num_arg(n, 3)};
      r.min_sizes = {num_arg(n, 4), num_arg(n, 5), num_arg(n, 6)};
      r.size_order = order_;
      if (find_refinement(r.name)) return error(n, "duplicate-name", "refinement '" + r.name + "' already defined");
      ir.refinements.push_back(std::move(r));
    } else if (h == cmd::kRefinementPlacement) {
      if (!args_match(n, {ArgKind::kString, ArgKind::kString, ArgKind::kString})) {
        return bad_args(n, "a placement name, a refinement name and a target");
      }
      RefinementSpec* r = find_refinement(str_arg(n, 1));
      if (!r) return error(n, "undefined-reference", "refinement '" + str_arg(n, 1) + "' is not defined");
      if (r->placement_order) return error(n, "duplicate-placement", "refinement '" + r->name + "' placed twice");
      if (!name_taken(str_arg(n, 2))) {
        return error(n, "undefined-reference", "placement target '" + str_arg(n, 2) + "' is not defined");
      }
      r->placement_name = str_arg(n, 0);
      r->target = str_arg(n, 2);
      r->placement_order = order_;
    } else if (h == cmd::kDefineContactSet) {
      if (!args_match(n, {ArgKind::kString})) return bad_args(n, "a contact name");
      ContactSpec& c = contact(str_arg(n, 0));
      if (c.define_order) return error(n, "duplicate-name", "contact set '" + c.name + "' already defined");
      c.define_order = order_;
    } else if (h == cmd::kSetContact) {
      const bool edge = args_match(n, {ArgKind::kString, ArgKind::kString});
      const bool point = args_match(n, {ArgKind::kString, ArgKind::kPosition});
      if (!edge && !point) return bad_args(n, "a contact name and a region name or a position");
      if (edge && !ir.find_region(str_arg(n, 1))) {
        return error(n, "undefined-reference", "region '" + str_arg(n, 1) + "' is not defined");
      }
      ContactSpec& c = contact(str_arg(n, 0));
      if (c.attach_order) return error(n, "duplicate-placement", "contact '" + c.name + "' attached twice");
      c.attach_order = order_;
      if (edge) {
        c.kind = ContactKind::kEdge;
        c.region = str_arg(n, 1);
      } else {
        c.kind = ContactKind::kPoint;
        c.position = point_arg(n, 1);
      }
    } else if (h == cmd::kBuildMesh) {
      const bool named = args_match(n, {ArgKind::kString});
      if (!named && !n.args.empty()) return bad_args(n, "an optional mesh name");
      if (ir.exports.build_mesh) return error(n, "duplicate-command", "build-mesh appears twice");
      ir.exports.build_mesh = true;
      ir.exports.mesh_name = named ? str_arg(n, 0) : "";
      ir.exports.build_mesh_order = order_;
    } else if (h == cmd::kSaveTdrBnd) {
      if (n.args.empty() || n.args.size() > 2) return bad_args(n, "one or two file names");
      if (ir.exports.any_save()) return error(n, "duplicate-command", "save-tdr-bnd appears twice");
      ExportSpec& e = ir.exports;
      for (const Arg& a : n.args) {
        const auto* s = as_string(a);
        if (s && ends_with(s->value, ".tdr") && !e.save_tdr) {
          e.save_tdr = true;
          e.tdr_name = s->value;
        } else if (s && ends_with(s->value, ".bnd") && !e.save_bnd) {
          e.save_bnd = true;
          e.bnd_name = s->value;
        } else {
          e.save_tdr = e.save_bnd = false;
          e.tdr_name.clear();
          e.bnd_name.clear();
          return bad_args(n, "distinct '.tdr' and '.bnd' file names");
        }
      }
      e.export_order = order_;
    } else {
      ir.unrecognized.push_back({n, order_});
    }
  }

  bool note_shape(const CommandNode& n, Shape s) {
    if (shape_ && *shape_ != s) {
      error(n, "mixed-dimension", "rectangles and cuboids cannot be mixed in one deck");
      return false;
    }
    shape_ = s;
    return true;
  }

  DopingSpec* find_doping(const std::string& profile) {
    for (auto& d : out_.ir.dopings) {
      if (d.profile_name == profile) return &d;
    }
    return nullptr;
  }

  RefinementSpec* find_refinement(const std::string& name) {
    for (auto& r : out_.ir.refinements) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }

  ContactSpec& contact(const std::string& name) {
    for (auto& c : out_.ir.contacts) {
      if (c.name == name) return c;
    }
    out_.ir.contacts.push_back({});
    out_.ir.contacts.back().name = name;
    return out_.ir.contacts.back();
  }

  void finish() {
    DeckIR& ir = out_.ir;
    ir.dimension = shape_ == Shape::kCuboid ? Dimension::k3D : Dimension::k2D;
    ir.up_direction = up_.value_or(default_up(ir.dimension));
    refresh_materials(ir);
    for (const auto& r : ir.regions) {
      if (!is_known_material(r.material) && !AliasTable::defaults().contains(r.material)) {
        out_.diagnostics.push_back(make_warning("unknown-material", "material '" + r.material + "' is not in the known table"));
      }
    }
  }

  ExtractResult out_;
  int order_ = 0;
  std::optional<Axis> up_;
  std::optional<BooleanMode> boolean_;
  std::optional<Shape> shape_;
};

}  // namespace detail

/// Builds the semantic record of a parsed deck. Every supported command
/// contributes to one IR field; anything else lands in `unrecognized`.
inline ExtractResult extract_ir(const std::vector<CommandNode>& nodes) { return detail::Extractor().run(nodes); }

}  // namespace deckforge
