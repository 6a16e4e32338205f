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
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deckforge/render/instruction.hpp"
#include "deckforge/render/numerals.hpp"

// Style templates. A template is a list of lines; `%join space` or
// `%join newline` picks how surviving lines are joined. `{{section}}` expands
// to that section's sentences, `{{section:short}}` to its terse clauses, and
// `{{instruction}}` to the canonical instruction. A line whose placeholders
// all expand to nothing is dropped.

namespace deckforge {

inline constexpr std::array<std::string_view, 5> kStyles = {"research", "engineering", "concise", "stepwise",
                                                            "conversational"};

struct StyledText {
  std::string style;
  std::string text;
  friend bool operator==(const StyledText&, const StyledText&) = default;
};

class StyleLibrary {
 public:
  static const StyleLibrary& builtin() {
    static const StyleLibrary lib = [] {
      StyleLibrary l;
      l.templates_["research"] =
          "%join space\n"
          "For a device simulation study, prepare the following structure.\n"
          "{{geometry}}\n{{contacts}}\n{{doping}}\n{{mesh}}\n{{exports}}\n{{other}}\n";
      l.templates_["engineering"] =
          "%join newline\n"
          "Task: write the structure editor script for this device.\n"
          "Geometry: {{geometry}}\nContacts: {{contacts}}\nDoping: {{doping}}\nMeshing: {{mesh}}\n"
          "Outputs: {{exports}}\nOther: {{other}}\n";
      l.templates_["concise"] =
          "%join newline\n"
          "Deck spec.\n"
          "Geometry: {{geometry:short}}.\nContacts: {{contacts:short}}.\nDoping: {{doping:short}}.\n"
          "Mesh: {{mesh:short}}.\nOutputs: {{exports:short}}.\nOther: {{other:short}}.\n";
      l.templates_["stepwise"] =
          "%join newline\n"
          "Follow these steps:\n"
          "- {{geometry}}\n- {{contacts}}\n- {{doping}}\n- {{mesh}}\n- {{exports}}\n- {{other}}\n";
      l.templates_["conversational"] =
          "%join space\n"
          "Hi! Could you help me write a structure editor script?\n"
          "{{geometry}}\n{{contacts}}\n{{doping}}\n{{mesh}}\n{{exports}}\n{{other}}\n"
          "Thanks a lot!\n";
      return l;
    }();
    return lib;
  }

  /// Built-in templates overridden by `<dir>/<style>.txt` where present.
  static StyleLibrary load(const std::filesystem::path& dir) {
    StyleLibrary l = builtin();
    for (auto style : kStyles) {
      const auto path = dir / (std::string(style) + ".txt");
      if (!std::filesystem::exists(path)) continue;
      std::ifstream in(path);
      std::stringstream ss;
      ss << in.rdbuf();
      l.templates_[std::string(style)] = ss.str();
    }
    return l;
  }

  const std::string& get(std::string_view style) const {
    auto it = templates_.find(std::string(style));
    if (it == templates_.end()) throw std::invalid_argument("unknown style '" + std::string(style) + "'");
    return it->second;
  }

  void set(std::string style, std::string text) { templates_[std::move(style)] = std::move(text); }

 private:
  std::map<std::string, std::string> templates_;
};

namespace detail {

inline std::string expand_placeholder(std::string_view key, const InstructionParts& parts, const std::string& canonical) {
  if (key == "instruction") return canonical;
  bool terse = false;
  if (key.size() > 6 && key.substr(key.size() - 6) == ":short") {
    terse = true;
    key = key.substr(0, key.size() - 6);
  }
  for (Section s : kSections) {
    if (key == to_string(s)) return terse ? join(parts.terse(s), "; ") : join(parts.full(s), " ");
  }
  throw std::invalid_argument("unknown template field '{{" + std::string(key) + "}}'");
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline std::string apply_template(const std::string& tmpl, const InstructionParts& parts, const std::string& canonical) {
  std::string joiner = " ";
  std::vector<std::string> lines;
  std::istringstream in(tmpl);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("%join", 0) == 0) {
      joiner = detail::trim(line.substr(5)) == "newline" ? "\n" : " ";
      continue;
    }
    std::string out;
    bool had_field = false;
    bool any_filled = false;
    std::size_t pos = 0;
    while (true) {
      const auto open = line.find("{{", pos);
      if (open == std::string::npos) break;
      const auto close = line.find("}}", open + 2);
      if (close == std::string::npos) break;
      out.append(line, pos, open - pos);
      const std::string value = detail::expand_placeholder(std::string_view(line).substr(open + 2, close - open - 2),
                                                           parts, canonical);
      had_field = true;
      any_filled = any_filled || !value.empty();
      out += value;
      pos = close + 2;
    }
    out.append(line, pos, std::string::npos);
    out = detail::trim(out);
    if (out.empty() || (had_field && !any_filled)) continue;
    lines.push_back(std::move(out));
  }
  return detail::join(lines, joiner);
}

/// Lead-in line of a template: its first line without fields.
inline std::string template_lead(const std::string& tmpl) {
  std::istringstream in(tmpl);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("%", 0) == 0 || line.find("{{") != std::string::npos) continue;
    std::string t = detail::trim(line);
    if (!t.empty()) return t;
  }
  return "";
}

/// Five style realizations of the same facts, each checked against the
/// whitelist. A failing template falls back to its lead-in followed by the
/// canonical instruction; if that also fails the call throws.
inline std::vector<StyledText> render_paraphrases(const std::string& instruction, const DeckIR& ir,
                                                  const NumericWhitelist& wl,
                                                  const StyleLibrary& styles = StyleLibrary::builtin()) {
  const InstructionParts parts = instruction_parts(ir);
  std::vector<StyledText> out;
  for (auto style : kStyles) {
    const std::string& tmpl = styles.get(style);
    std::string text = apply_template(tmpl, parts, instruction);
    if (!check_whitelist(text, wl).ok) {
      const std::string lead = template_lead(StyleLibrary::builtin().get(style));
      text = instruction.empty() ? lead : lead + " " + instruction;
      if (!check_whitelist(text, wl).ok) {
        throw std::runtime_error("style '" + std::string(style) + "' cannot satisfy the numeric whitelist");
      }
    }
    out.push_back({std::string(style), std::move(text)});
  }
  return out;
}

}  // namespace deckforge
