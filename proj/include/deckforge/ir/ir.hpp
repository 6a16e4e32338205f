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
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deckforge/core/decimal.hpp"
#include "deckforge/deck/ast.hpp"

namespace deckforge {

enum class Dimension { k2D, k3D };
enum class Axis { kPosX, kPosY, kPosZ, kNegX, kNegY, kNegZ };

/// Overlap resolution: ABA lets a new region replace the overlapped part of
/// older ones; BAB keeps the older material.
enum class BooleanMode { kABA, kBAB };

enum class Shape { kRectangle, kCuboid };
enum class ContactKind { kEdge, kPoint };
enum class ProfileKind { kConstant, kGaussian };

inline const char* to_string(Dimension d) { return d == Dimension::k2D ? "2D" : "3D"; }
inline const char* to_string(BooleanMode m) { return m == BooleanMode::kABA ? "ABA" : "BAB"; }
inline const char* to_string(Shape s) { return s == Shape::kRectangle ? "rectangle" : "cuboid"; }
inline const char* to_string(ContactKind k) { return k == ContactKind::kEdge ? "edge" : "point"; }
inline const char* to_string(ProfileKind k) { return k == ProfileKind::kConstant ? "constant" : "gaussian"; }

inline const char* to_string(Axis a) {
  switch (a) {
    case Axis::kPosX: return "+x";
    case Axis::kPosY: return "+y";
    case Axis::kPosZ: return "+z";
    case Axis::kNegX: return "-x";
    case Axis::kNegY: return "-y";
    case Axis::kNegZ: return "-z";
  }
  return "+z";
}

inline std::optional<Axis> parse_axis(std::string_view s) {
  for (Axis a : {Axis::kPosX, Axis::kPosY, Axis::kPosZ, Axis::kNegX, Axis::kNegY, Axis::kNegZ}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

inline std::optional<BooleanMode> parse_boolean_mode(std::string_view s) {
  if (s == "ABA") return BooleanMode::kABA;
  if (s == "BAB") return BooleanMode::kBAB;
  return std::nullopt;
}

inline Axis default_up(Dimension d) { return d == Dimension::k3D ? Axis::kPosZ : Axis::kPosY; }

struct Point3 {
  Decimal x, y, z;
  friend bool operator==(const Point3&, const Point3&) = default;
};

struct RegionSpec {
  std::string name;
  std::string material;
  Shape shape = Shape::kRectangle;
  Point3 min, max;
  int boolean_op_index = 0;  // ordinal among geometry operations
  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

/// `sdedr:define-refeval-window` placement target.
struct WindowSpec {
  std::string name;
  Shape shape = Shape::kRectangle;
  Point3 min, max;
  int order = 0;
  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

struct ContactSpec {
  std::string name;
  ContactKind kind = ContactKind::kEdge;
  std::string region;  // edge contacts
  Point3 position;     // virtual point contacts
  std::optional<int> define_order;
  std::optional<int> attach_order;
  friend bool operator==(const ContactSpec&, const ContactSpec&) = default;
};

/// A doping profile and its placement.
struct DopingSpec {
  std::string name;  // placement name; empty when the profile is never placed
  std::string profile_name;
  std::string species;
  ProfileKind kind = ProfileKind::kConstant;
  Decimal concentration;  // constant value, or Gaussian peak (cm^-3)
  Decimal length;         // Gaussian characteristic length; zero for constant
  std::string target;     // region or window
  int profile_order = 0;
  std::optional<int> placement_order;
  friend bool operator==(const DopingSpec&, const DopingSpec&) = default;
};

/// Refinement size definition; without a placement it applies globally.
struct RefinementSpec {
  std::string name;
  Point3 max_sizes;
  Point3 min_sizes;
  std::string placement_name;
  std::string target;
  int size_order = 0;
  std::optional<int> placement_order;

  bool is_global() const { return target.empty(); }
  friend bool operator==(const RefinementSpec&, const RefinementSpec&) = default;
};

struct ExportSpec {
  bool build_mesh = false;
  std::string mesh_name;
  std::optional<int> build_mesh_order;
  bool save_tdr = false;
  bool save_bnd = false;
  std::string tdr_name;
  std::string bnd_name;
  std::optional<int> export_order;

  bool any_save() const { return save_tdr || save_bnd; }
  friend bool operator==(const ExportSpec&, const ExportSpec&) = default;
};

/// A command outside the supported registry, kept verbatim.
struct UnrecognizedCommand {
  CommandNode node;
  int order = 0;
  friend bool operator==(const UnrecognizedCommand&, const UnrecognizedCommand&) = default;
};

/// Semantic record of a deck. Order fields are positions among all deck
/// commands; after flattening they equal the rendered layout positions.
struct DeckIR {
  Dimension dimension = Dimension::k2D;
  Axis up_direction = Axis::kPosY;
  BooleanMode boolean_mode = BooleanMode::kABA;
  std::vector<std::string> materials;  // sorted, unique
  std::vector<RegionSpec> regions;     // in Boolean-operation order
  std::vector<WindowSpec> windows;
  std::vector<ContactSpec> contacts;
  std::vector<DopingSpec> dopings;
  std::vector<RefinementSpec> refinements;
  ExportSpec exports;
  std::vector<UnrecognizedCommand> unrecognized;

  friend bool operator==(const DeckIR&, const DeckIR&) = default;

  const RegionSpec* find_region(std::string_view name) const {
    for (const auto& r : regions) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }

  const WindowSpec* find_window(std::string_view name) const {
    for (const auto& w : windows) {
      if (w.name == name) return &w;
    }
    return nullptr;
  }

  bool empty() const {
    return regions.empty() && windows.empty() && contacts.empty() && dopings.empty() &&
           refinements.empty() && !exports.build_mesh && !exports.any_save() && unrecognized.empty();
  }
};

inline void refresh_materials(DeckIR& ir) {
  ir.materials.clear();
  for (const auto& r : ir.regions) ir.materials.push_back(r.material);
  std::sort(ir.materials.begin(), ir.materials.end());
  ir.materials.erase(std::unique(ir.materials.begin(), ir.materials.end()), ir.materials.end());
}

/// Axis-aligned box covering all regions, or nullopt without regions.
inline std::optional<std::pair<Point3, Point3>> device_bounds(const DeckIR& ir) {
  if (ir.regions.empty()) return std::nullopt;
  Point3 lo = ir.regions.front().min;
  Point3 hi = ir.regions.front().max;
  for (const auto& r : ir.regions) {
    lo.x = std::min(lo.x, r.min.x);
    lo.y = std::min(lo.y, r.min.y);
    lo.z = std::min(lo.z, r.min.z);
    hi.x = std::max(hi.x, r.max.x);
    hi.y = std::max(hi.y, r.max.y);
    hi.z = std::max(hi.z, r.max.z);
  }
  return std::make_pair(lo, hi);
}

inline bool box_contains(const Point3& lo, const Point3& hi, const Point3& p) {
  return lo.x <= p.x && p.x <= hi.x && lo.y <= p.y && p.y <= hi.y && lo.z <= p.z && p.z <= hi.z;
}

/// Known materials; aliases resolve through the flatten alias table.
inline constexpr std::array<std::string_view, 6> kKnownMaterials = {"Silicon", "SiO2", "PolySi",
                                                                    "Si3N4",   "GaN",  "AlGaN"};

inline bool is_known_material(std::string_view m) {
  return std::find(kKnownMaterials.begin(), kKnownMaterials.end(), m) != kKnownMaterials.end();
}

}  // namespace deckforge
