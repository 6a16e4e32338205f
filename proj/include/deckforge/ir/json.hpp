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
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "deckforge/deck/parser.hpp"
#include "deckforge/ir/fact_card.hpp"
#include "deckforge/ir/ir.hpp"

// IR documents (`ir_version: 1`). Numbers are stored as canonical decimal
// strings so that values survive the trip exactly.

namespace deckforge {

inline constexpr int kIrVersion = 1;

namespace detail {

using nlohmann::json;

inline json num(const Decimal& d) { return d.str(); }

inline Decimal num_from(const json& j) {
  auto d = Decimal::parse(j.get<std::string>());
  if (!d) throw std::invalid_argument("bad number '" + j.get<std::string>() + "' in IR document");
  return *d;
}

inline json point(const Point3& p) { return json::array({num(p.x), num(p.y), num(p.z)}); }

inline Point3 point_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("IR point must be a 3-element array");
  return {num_from(j[0]), num_from(j[1]), num_from(j[2])};
}

inline json opt(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

inline std::optional<int> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

template <typename E, typename F>
E enum_from(const json& j, F&& parse, const char* what) {
  auto v = parse(j.get<std::string>());
  if (!v) throw std::invalid_argument(std::string("bad ") + what + " '" + j.get<std::string>() + "'");
  return *v;
}

inline std::optional<Shape> parse_shape(std::string_view s) {
  if (s == "rectangle") return Shape::kRectangle;
  if (s == "cuboid") return Shape::kCuboid;
  return std::nullopt;
}

inline std::optional<Dimension> parse_dimension(std::string_view s) {
  if (s == "2D") return Dimension::k2D;
  if (s == "3D") return Dimension::k3D;
  return std::nullopt;
}

inline std::optional<ContactKind> parse_contact_kind(std::string_view s) {
  if (s == "edge") return ContactKind::kEdge;
  if (s == "point") return ContactKind::kPoint;
  return std::nullopt;
}

inline std::optional<ProfileKind> parse_profile_kind(std::string_view s) {
  if (s == "constant") return ProfileKind::kConstant;
  if (s == "gaussian") return ProfileKind::kGaussian;
  return std::nullopt;
}

}  // namespace detail

inline nlohmann::json ir_to_json(const DeckIR& ir) {
  using detail::json;
  using detail::num;
  using detail::opt;
  using detail::point;
  json j;
  j["ir_version"] = kIrVersion;
  j["dimension"] = to_string(ir.dimension);
  j["up_direction"] = to_string(ir.up_direction);
  j["boolean_mode"] = to_string(ir.boolean_mode);
  j["materials"] = ir.materials;
  j["regions"] = json::array();
  for (const auto& r : ir.regions) {
    j["regions"].push_back({{"name", r.name},
                            {"material", r.material},
                            {"shape", to_string(r.shape)},
                            {"min", point(r.min)},
                            {"max", point(r.max)},
                            {"boolean_op_index", r.boolean_op_index}});
  }
  j["windows"] = json::array();
  for (const auto& w : ir.windows) {
    j["windows"].push_back(
        {{"name", w.name}, {"shape", to_string(w.shape)}, {"min", point(w.min)}, {"max", point(w.max)}, {"order", w.order}});
  }
  j["contacts"] = json::array();
  for (const auto& c : ir.contacts) {
    json e = {{"name", c.name}, {"kind", to_string(c.kind)}, {"define_order", opt(c.define_order)},
              {"attach_order", opt(c.attach_order)}};
    if (c.kind == ContactKind::kEdge) {
      e["region"] = c.region;
    } else {
      e["position"] = point(c.position);
    }
    j["contacts"].push_back(std::move(e));
  }
  j["dopings"] = json::array();
  for (const auto& d : ir.dopings) {
    json e = {{"profile", d.profile_name},     {"species", d.species},
              {"kind", to_string(d.kind)},     {"concentration", num(d.concentration)},
              {"placement", d.name},           {"target", d.target},
              {"profile_order", d.profile_order}, {"placement_order", opt(d.placement_order)}};
    if (d.kind == ProfileKind::kGaussian) e["length"] = num(d.length);
    j["dopings"].push_back(std::move(e));
  }
  j["refinements"] = json::array();
  for (const auto& r : ir.refinements) {
    j["refinements"].push_back({{"name", r.name},
                                {"max_sizes", point(r.max_sizes)},
                                {"min_sizes", point(r.min_sizes)},
                                {"placement", r.placement_name},
                                {"target", r.target},
                                {"size_order", r.size_order},
                                {"placement_order", opt(r.placement_order)}});
  }
  const ExportSpec& x = ir.exports;
  j["exports"] = {{"build_mesh", x.build_mesh},         {"mesh_name", x.mesh_name},
                  {"build_mesh_order", opt(x.build_mesh_order)}, {"save_tdr", x.save_tdr},
                  {"save_bnd", x.save_bnd},             {"tdr_name", x.tdr_name},
                  {"bnd_name", x.bnd_name},             {"export_order", opt(x.export_order)}};
  j["unrecognized"] = json::array();
  for (const auto& u : ir.unrecognized) j["unrecognized"].push_back({{"text", unparse(u.node)}, {"order", u.order}});
  return j;
}

inline DeckIR ir_from_json(const nlohmann::json& j) {
  using namespace detail;
  if (!j.is_object() || j.value("ir_version", 0) != kIrVersion) {
    throw std::invalid_argument("not an ir_version 1 document");
  }
  DeckIR ir;
  ir.dimension = enum_from<Dimension>(j.at("dimension"), parse_dimension, "dimension");
  ir.up_direction = enum_from<Axis>(j.at("up_direction"), parse_axis, "axis");
  ir.boolean_mode = enum_from<BooleanMode>(j.at("boolean_mode"), parse_boolean_mode, "Boolean mode");
  ir.materials = j.at("materials").get<std::vector<std::string>>();
  for (const auto& e : j.at("regions")) {
    RegionSpec r;
    r.name = e.at("name").get<std::string>();
    r.material = e.at("material").get<std::string>();
    r.shape = enum_from<Shape>(e.at("shape"), parse_shape, "shape");
    r.min = point_from(e.at("min"));
    r.max = point_from(e.at("max"));
    r.boolean_op_index = e.at("boolean_op_index").get<int>();
    ir.regions.push_back(std::move(r));
  }
  for (const auto& e : j.at("windows")) {
    WindowSpec w;
    w.name = e.at("name").get<std::string>();
    w.shape = enum_from<Shape>(e.at("shape"), parse_shape, "shape");
    w.min = point_from(e.at("min"));
    w.max = point_from(e.at("max"));
    w.order = e.at("order").get<int>();
    ir.windows.push_back(std::move(w));
  }
  for (const auto& e : j.at("contacts")) {
    ContactSpec c;
    c.name = e.at("name").get<std::string>();
    c.kind = enum_from<ContactKind>(e.at("kind"), parse_contact_kind, "contact kind");
    if (c.kind == ContactKind::kEdge) {
      c.region = e.at("region").get<std::string>();
    } else {
      c.position = point_from(e.at("position"));
    }
    c.define_order = opt_from(e.at("define_order"));
    c.attach_order = opt_from(e.at("attach_order"));
    ir.contacts.push_back(std::move(c));
  }
  for (const auto& e : j.at("dopings")) {
    DopingSpec d;
    d.profile_name = e.at("profile").get<std::string>();
    d.species = e.at("species").get<std::string>();
    d.kind = enum_from<ProfileKind>(e.at("kind"), parse_profile_kind, "profile kind");
    d.concentration = num_from(e.at("concentration"));
    if (d.kind == ProfileKind::kGaussian) d.length = num_from(e.at("length"));
    d.name = e.at("placement").get<std::string>();
    d.target = e.at("target").get<std::string>();
    d.profile_order = e.at("profile_order").get<int>();
    d.placement_order = opt_from(e.at("placement_order"));
    ir.dopings.push_back(std::move(d));
  }
  for (const auto& e : j.at("refinements")) {
    RefinementSpec r;
    r.name = e.at("name").get<std::string>();
    r.max_sizes = point_from(e.at("max_sizes"));
    r.min_sizes = point_from(e.at("min_sizes"));
    r.placement_name = e.at("placement").get<std::string>();
    r.target = e.at("target").get<std::string>();
    r.size_order = e.at("size_order").get<int>();
    r.placement_order = opt_from(e.at("placement_order"));
    ir.refinements.push_back(std::move(r));
  }
  const auto& x = j.at("exports");
  ir.exports.build_mesh = x.at("build_mesh").get<bool>();
  ir.exports.mesh_name = x.at("mesh_name").get<std::string>();
  ir.exports.build_mesh_order = opt_from(x.at("build_mesh_order"));
  ir.exports.save_tdr = x.at("save_tdr").get<bool>();
  ir.exports.save_bnd = x.at("save_bnd").get<bool>();
  ir.exports.tdr_name = x.at("tdr_name").get<std::string>();
  ir.exports.bnd_name = x.at("bnd_name").get<std::string>();
  ir.exports.export_order = opt_from(x.at("export_order"));
  for (const auto& e : j.at("unrecognized")) {
    auto parsed = parse_deck(e.at("text").get<std::string>());
    if (!parsed.ok() || parsed.commands.size() != 1) throw std::invalid_argument("bad unrecognized command text");
    ir.unrecognized.push_back({std::move(parsed.commands.front()), e.at("order").get<int>()});
  }
  return ir;
}

inline nlohmann::json fact_card_to_json(const FactCard& c) {
  return {{"region_count", c.region_count},
          {"boolean_order", c.boolean_order},
          {"contacts_present", c.contacts_present},
          {"expected_outputs", c.expected_outputs}};
}

}  // namespace deckforge
