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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "deckforge/deck/parser.hpp"
#include "deckforge/ir/ir.hpp"
#include "deckforge/ir/layout.hpp"
#include "deckforge/render/numerals.hpp"

namespace deckforge {

enum class Section { kGeometry, kContacts, kDoping, kMesh, kExports, kOther };

inline constexpr std::array<Section, 6> kSections = {Section::kGeometry, Section::kContacts, Section::kDoping,
                                                     Section::kMesh,     Section::kExports,  Section::kOther};

inline const char* to_string(Section s) {
  switch (s) {
    case Section::kGeometry: return "geometry";
    case Section::kContacts: return "contacts";
    case Section::kDoping: return "doping";
    case Section::kMesh: return "mesh";
    case Section::kExports: return "exports";
    case Section::kOther: return "other";
  }
  return "other";
}

/// The facts of an IR phrased two ways: full imperative sentences and terse
/// clauses. Every IR numeral appears at most once in either form.
struct InstructionParts {
  std::array<std::vector<std::string>, 6> sentences;
  std::array<std::vector<std::string>, 6> clauses;

  const std::vector<std::string>& full(Section s) const { return sentences[static_cast<std::size_t>(s)]; }
  const std::vector<std::string>& terse(Section s) const { return clauses[static_cast<std::size_t>(s)]; }
  bool empty(Section s) const { return full(s).empty(); }
};

namespace detail {

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

inline std::string coords(const Point3& p) { return "(" + p.x.str() + ", " + p.y.str() + ", " + p.z.str() + ")"; }

inline std::string size_list(const RefinementSpec& r) {
  return "[" + r.max_sizes.x.str() + ", " + r.max_sizes.y.str() + ", " + r.max_sizes.z.str() + ", " +
         r.min_sizes.x.str() + ", " + r.min_sizes.y.str() + ", " + r.min_sizes.z.str() + "]";
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline const char* shape_adjective(Shape s) { return s == Shape::kRectangle ? "rectangular" : "cuboid"; }

}  // namespace detail

inline InstructionParts instruction_parts(const DeckIR& ir) {
  using detail::coords;
  using detail::quoted;
  InstructionParts p;
  auto add = [&p](Section s, std::string full, std::string terse) {
    p.sentences[static_cast<std::size_t>(s)].push_back(std::move(full));
    p.clauses[static_cast<std::size_t>(s)].push_back(std::move(terse));
  };

  const bool custom_up = ir.up_direction != default_up(ir.dimension);
  if (!ir.regions.empty() || !ir.windows.empty() || custom_up) {
    const std::string dim = ir.dimension == Dimension::k2D ? "two-dimensional" : "three-dimensional";
    std::string full = "Set up a " + dim + " structure";
    std::string terse = ir.dimension == Dimension::k2D ? "2D structure" : "3D structure";
    if (!ir.regions.empty()) {
      full += std::string(" with the ") + to_string(ir.boolean_mode) + " Boolean mode";
      terse += std::string(", ") + to_string(ir.boolean_mode);
    }
    if (custom_up) {
      full += std::string(" and ") + to_string(ir.up_direction) + " as the up direction";
      terse += std::string(", up ") + to_string(ir.up_direction);
    }
    add(Section::kGeometry, full + ".", terse);
  }
  for (const auto& r : ir.regions) {
    add(Section::kGeometry,
        std::string("Construct a ") + detail::shape_adjective(r.shape) + " " + r.material + " region " + quoted(r.name) +
            " from coordinates " + coords(r.min) + " to " + coords(r.max) + ".",
        r.material + " " + to_string(r.shape) + " " + quoted(r.name) + " " + coords(r.min) + " to " + coords(r.max));
  }
  for (const auto& w : ir.windows) {
    add(Section::kGeometry,
        std::string("Define a ") + detail::shape_adjective(w.shape) + " window " + quoted(w.name) + " from coordinates " +
            coords(w.min) + " to " + coords(w.max) + ".",
        "window " + quoted(w.name) + " " + coords(w.min) + " to " + coords(w.max));
  }

  for (const auto& c : ir.contacts) {
    if (!c.attach_order) {
      add(Section::kContacts, "Define the contact set " + quoted(c.name) + " without attaching it.",
          "contact set " + quoted(c.name) + " unattached");
    } else if (c.kind == ContactKind::kPoint) {
      add(Section::kContacts, "Place a virtual contact point " + quoted(c.name) + " at " + coords(c.position) + ".",
          "point contact " + quoted(c.name) + " at " + coords(c.position));
    } else {
      add(Section::kContacts, "Attach the contact " + quoted(c.name) + " to region " + quoted(c.region) + ".",
          "contact " + quoted(c.name) + " on " + quoted(c.region));
    }
  }

  for (const auto& d : ir.dopings) {
    const std::string where = d.placement_order ? ", placed as " + quoted(d.name) + " inside " + quoted(d.target)
                                                : ", left unplaced";
    const std::string terse_where =
        d.placement_order ? " as " + quoted(d.name) + " in " + quoted(d.target) : " unplaced";
    if (d.kind == ProfileKind::kConstant) {
      add(Section::kDoping,
          "Perform constant " + d.species + " doping " + quoted(d.profile_name) + " with a concentration of " +
              d.concentration.str() + where + ".",
          "constant " + d.species + " " + quoted(d.profile_name) + " " + d.concentration.str() + terse_where);
    } else {
      add(Section::kDoping,
          "Perform Gaussian " + d.species + " doping " + quoted(d.profile_name) + " with a peak concentration of " +
              d.concentration.str() + " and a characteristic length of " + d.length.str() + where + ".",
          "Gaussian " + d.species + " " + quoted(d.profile_name) + " peak " + d.concentration.str() + " length " +
              d.length.str() + terse_where);
    }
  }

  for (const auto& r : ir.refinements) {
    const std::string params = detail::size_list(r);
    if (r.is_global() && r.name == "global") {
      add(Section::kMesh, "Refine the global mesh with parameters " + params + ".", "global refinement " + params);
    } else if (r.is_global()) {
      add(Section::kMesh, "Refine the global mesh with refinement " + quoted(r.name) + " and parameters " + params + ".",
          "global refinement " + quoted(r.name) + " " + params);
    } else {
      add(Section::kMesh,
          "Refine " + quoted(r.target) + " with refinement " + quoted(r.name) + " placed as " + quoted(r.placement_name) +
              " using parameters " + params + ".",
          "refinement " + quoted(r.name) + " on " + quoted(r.target) + " as " + quoted(r.placement_name) + " " + params);
    }
  }
  if (ir.exports.build_mesh) {
    const std::string name = ir.exports.mesh_name.empty() ? "" : " " + quoted(ir.exports.mesh_name);
    add(Section::kMesh, "Build the mesh" + name + ".", "build mesh" + name);
  }

  const ExportSpec& x = ir.exports;
  if (x.save_bnd && x.save_tdr) {
    add(Section::kExports,
        "Finally, export both BND and TDR files as " + quoted(x.bnd_name) + " and " + quoted(x.tdr_name) + ".",
        "export BND " + quoted(x.bnd_name) + " and TDR " + quoted(x.tdr_name));
  } else if (x.save_bnd) {
    add(Section::kExports, "Finally, export the BND file " + quoted(x.bnd_name) + ".", "export BND " + quoted(x.bnd_name));
  } else if (x.save_tdr) {
    add(Section::kExports, "Finally, export the TDR file " + quoted(x.tdr_name) + ".", "export TDR " + quoted(x.tdr_name));
  }

  for (const auto& u : ir.unrecognized) {
    const std::string text = unparse(u.node);
    add(Section::kOther, "Also keep the command " + text + ".", "keep " + text);
  }
  return p;
}

/// One-paragraph English instruction: geometry, contacts, doping, mesh,
/// exports, in that order.
inline std::string render_instruction(const DeckIR& ir) {
  const InstructionParts parts = instruction_parts(ir);
  std::vector<std::string> all;
  for (Section s : kSections) {
    for (const auto& sentence : parts.full(s)) all.push_back(sentence);
  }
  return detail::join(all, " ");
}

struct RenderedInstruction {
  std::string text;
  NumericWhitelist whitelist;
};

inline RenderedInstruction render_instruction_with_whitelist(const DeckIR& ir) {
  return {render_instruction(ir), build_whitelist(ir, lower_ir(ir))};
}

/// Numbered step list, one step per non-empty section. Shared verbatim by
/// the chosen and rejected samples of a record.
inline std::string render_cot(const DeckIR& ir) {
  using detail::join;
  std::vector<std::string> steps;
  if (!ir.regions.empty() || !ir.windows.empty() || ir.up_direction != default_up(ir.dimension)) {
    std::string s = std::string("Geometry: ") + (ir.dimension == Dimension::k2D ? "2D" : "3D") + " layout";
    if (!ir.regions.empty()) {
      std::vector<std::string> names;
      for (const auto& r : ir.regions) names.push_back(r.name + " (" + r.material + ")");
      s += std::string(" in ") + to_string(ir.boolean_mode) + " order: " + join(names, ", ");
    }
    if (!ir.windows.empty()) {
      std::vector<std::string> names;
      for (const auto& w : ir.windows) names.push_back(w.name);
      s += "; windows " + join(names, ", ");
    }
    steps.push_back(s + ".");
  }
  if (!ir.contacts.empty()) {
    std::vector<std::string> names;
    for (const auto& c : ir.contacts) {
      names.push_back(c.name + (c.kind == ContactKind::kPoint ? " (virtual point)" : " (on " + c.region + ")"));
    }
    steps.push_back("Contacts: define " + join(names, ", ") + ".");
  }
  if (!ir.dopings.empty()) {
    std::vector<std::string> items;
    for (const auto& d : ir.dopings) {
      items.push_back(d.profile_name + " " + to_string(d.kind) + " " + d.species +
                      (d.placement_order ? " in " + d.target : std::string(" unplaced")));
    }
    steps.push_back("Doping: " + join(items, ", ") + ".");
  }
  if (!ir.refinements.empty() || ir.exports.build_mesh) {
    std::vector<std::string> items;
    for (const auto& r : ir.refinements) {
      items.push_back(r.is_global() ? "refine the whole device with " + r.name : "refine " + r.target + " with " + r.name);
    }
    if (ir.exports.build_mesh) items.push_back("build the mesh");
    steps.push_back("Mesh: " + join(items, ", ") + ".");
  }
  if (ir.exports.any_save()) {
    std::vector<std::string> items;
    if (ir.exports.save_bnd) items.push_back("BND");
    if (ir.exports.save_tdr) items.push_back("TDR");
    steps.push_back("Export: save " + join(items, " and ") + ".");
  }
  if (!ir.unrecognized.empty()) steps.push_back("Other: keep the custom commands.");
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) out += std::to_string(i + 1) + ". " + steps[i] + "\n";
  return out;
}

}  // namespace deckforge
