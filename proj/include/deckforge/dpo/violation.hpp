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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace deckforge {

enum class ViolationFamily { kNumeric, kProcedural, kImpostor };

enum class NumericMode { kNear, kStep, kMag, kWide, kScale10Up, kScale10Down };

enum class ProceduralKind { kSwapBooleanOrder, kContactBeforeRefinement, kOmitBuildMesh, kOmitExport };

inline constexpr std::array<NumericMode, 6> kNumericModes = {NumericMode::kNear, NumericMode::kStep,
                                                             NumericMode::kMag,  NumericMode::kWide,
                                                             NumericMode::kScale10Up, NumericMode::kScale10Down};

inline constexpr std::array<ProceduralKind, 4> kProceduralKinds = {
    ProceduralKind::kSwapBooleanOrder, ProceduralKind::kContactBeforeRefinement, ProceduralKind::kOmitBuildMesh,
    ProceduralKind::kOmitExport};

inline const char* to_string(ViolationFamily f) {
  switch (f) {
    case ViolationFamily::kNumeric: return "numeric";
    case ViolationFamily::kProcedural: return "procedural";
    case ViolationFamily::kImpostor: return "impostor";
  }
  return "numeric";
}

inline const char* to_string(NumericMode m) {
  switch (m) {
    case NumericMode::kNear: return "near";
    case NumericMode::kStep: return "step";
    case NumericMode::kMag: return "mag";
    case NumericMode::kWide: return "wide";
    case NumericMode::kScale10Up: return "scale10_up";
    case NumericMode::kScale10Down: return "scale10_down";
  }
  return "near";
}

inline const char* to_string(ProceduralKind k) {
  switch (k) {
    case ProceduralKind::kSwapBooleanOrder: return "swap_boolean_order";
    case ProceduralKind::kContactBeforeRefinement: return "contact_before_refinement";
    case ProceduralKind::kOmitBuildMesh: return "omit_build_mesh";
    case ProceduralKind::kOmitExport: return "omit_export";
  }
  return "omit_export";
}

/// One rejected-variant recipe. Plans may leave the numeric mode or the
/// procedural kind open (`any`); the builder then draws one.
struct ViolationKind {
  ViolationFamily family = ViolationFamily::kNumeric;
  std::optional<NumericMode> mode;
  std::optional<ProceduralKind> kind;
  std::string source;  // impostor: id of the record the code came from

  static ViolationKind numeric(std::optional<NumericMode> m = std::nullopt) {
    return {ViolationFamily::kNumeric, m, std::nullopt, {}};
  }
  static ViolationKind procedural(std::optional<ProceduralKind> k = std::nullopt) {
    return {ViolationFamily::kProcedural, std::nullopt, k, {}};
  }
  static ViolationKind impostor(std::string source = {}) {
    return {ViolationFamily::kImpostor, std::nullopt, std::nullopt, std::move(source)};
  }

  friend bool operator==(const ViolationKind&, const ViolationKind&) = default;
};

/// `numeric:near`, `procedural:any`, `impostor`, `impostor:dpo-...`.
inline std::string to_string(const ViolationKind& v) {
  std::string out = to_string(v.family);
  switch (v.family) {
    case ViolationFamily::kNumeric: out += std::string(":") + (v.mode ? to_string(*v.mode) : "any"); break;
    case ViolationFamily::kProcedural: out += std::string(":") + (v.kind ? to_string(*v.kind) : "any"); break;
    case ViolationFamily::kImpostor:
      if (!v.source.empty()) out += ":" + v.source;
      break;
  }
  return out;
}

inline ViolationKind parse_violation(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view family = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view("any") : text.substr(colon + 1);
  if (family == "numeric") {
    if (rest == "any") return ViolationKind::numeric();
    for (auto m : kNumericModes) {
      if (rest == to_string(m)) return ViolationKind::numeric(m);
    }
  } else if (family == "procedural") {
    if (rest == "any") return ViolationKind::procedural();
    for (auto k : kProceduralKinds) {
      if (rest == to_string(k)) return ViolationKind::procedural(k);
    }
  } else if (family == "impostor") {
    return ViolationKind::impostor(rest == "any" ? std::string() : std::string(rest));
  }
  throw std::invalid_argument("unknown violation '" + std::string(text) + "'");
}

/// Comma-separated plan such as `numeric,procedural,impostor`.
inline std::vector<ViolationKind> parse_plan(std::string_view text) {
  std::vector<ViolationKind> plan;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) plan.push_back(parse_violation(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return plan;
}

inline std::vector<ViolationKind> default_plan() {
  return {ViolationKind::numeric(), ViolationKind::procedural(), ViolationKind::impostor()};
}

inline nlohmann::json violation_to_json(const ViolationKind& v) {
  nlohmann::json j = {{"family", to_string(v.family)}};
  if (v.mode) j["mode"] = to_string(*v.mode);
  if (v.kind) j["kind"] = to_string(*v.kind);
  if (!v.source.empty()) j["source"] = v.source;
  return j;
}

inline ViolationKind violation_from_json(const nlohmann::json& j) {
  std::string text = j.at("family").get<std::string>();
  if (j.contains("mode")) text += ":" + j.at("mode").get<std::string>();
  if (j.contains("kind")) text += ":" + j.at("kind").get<std::string>();
  if (j.contains("source")) text += ":" + j.at("source").get<std::string>();
  return parse_violation(text);
}

}  // namespace deckforge
