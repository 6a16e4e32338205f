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

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace deckforge {

/// Instruction / input / output, the Alpaca fine-tuning triple.
struct QaTriple {
  std::string instruction;
  std::string input;
  std::string output;
  friend bool operator==(const QaTriple&, const QaTriple&) = default;
};

inline nlohmann::json triple_to_json(const QaTriple& t) {
  nlohmann::json j = nlohmann::json::object();
  j["instruction"] = t.instruction;
  j["input"] = t.input;
  j["output"] = t.output;
  return j;
}

/// Removes a surrounding Markdown code fence (with optional language tag).
inline std::string strip_code_fence(std::string_view raw) {
  std::string s(raw);
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  s = s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
  if (s.rfind("```", 0) != 0) return s;
  const auto nl = s.find('\n');
  if (nl == std::string::npos) return {};
  s = s.substr(nl + 1);
  const auto close = s.rfind("```");
  if (close != std::string::npos) s = s.substr(0, close);
  return s;
}

struct AlpacaResult {
  std::optional<QaTriple> triple;
  std::string reason;  // set when rejected

  bool ok() const { return triple.has_value(); }
};

inline AlpacaResult validate_alpaca_json(const nlohmann::json& j) {
  if (!j.is_object()) return {std::nullopt, "not-object"};
  for (const char* key : {"instruction", "input", "output"}) {
    if (!j.contains(key)) return {std::nullopt, std::string("missing-") + key};
    if (!j.at(key).is_string()) return {std::nullopt, std::string("non-string-") + key};
  }
  if (j.size() != 3) return {std::nullopt, "unexpected-field"};
  QaTriple t{j.at("instruction").get<std::string>(), j.at("input").get<std::string>(),
             j.at("output").get<std::string>()};
  auto blank = [](const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; };
  if (blank(t.instruction)) return {std::nullopt, "empty-instruction"};
  if (blank(t.output)) return {std::nullopt, "empty-output"};
  return {std::move(t), {}};
}

/// One triple from raw model text. Inline `$...$` formulas are kept as is.
inline AlpacaResult validate_alpaca(std::string_view raw) {
  const auto j = nlohmann::json::parse(strip_code_fence(raw), nullptr, false);
  if (j.is_discarded()) return {std::nullopt, "invalid-json"};
  return validate_alpaca_json(j);
}

struct AlpacaRejection {
  std::size_t index = 0;
  std::string reason;
};

struct AlpacaBatch {
  std::vector<QaTriple> accepted;
  std::vector<AlpacaRejection> rejections;
};

/// A JSON array of triples (a lone object counts as a one-element array).
/// Each element is validated independently.
inline AlpacaBatch validate_alpaca_array(std::string_view raw) {
  AlpacaBatch out;
  const auto j = nlohmann::json::parse(strip_code_fence(raw), nullptr, false);
  if (j.is_discarded()) {
    out.rejections.push_back({0, "invalid-json"});
    return out;
  }
  const nlohmann::json items = j.is_array() ? j : nlohmann::json::array({j});
  for (std::size_t i = 0; i < items.size(); ++i) {
    AlpacaResult r = validate_alpaca_json(items[i]);
    if (r.ok()) {
      out.accepted.push_back(std::move(*r.triple));
    } else {
      out.rejections.push_back({i, r.reason});
    }
  }
  return out;
}

/// `["q1", 'q2', ...]` as JSON or as a Python list literal.
inline std::optional<std::vector<std::string>> parse_string_list(std::string_view raw) {
  const std::string text = strip_code_fence(raw);
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (!j.is_discarded()) {
    if (!j.is_array()) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& e : j) {
      if (!e.is_string()) return std::nullopt;
      out.push_back(e.get<std::string>());
    }
    return out;
  }
  std::vector<std::string> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '[') return std::nullopt;
  ++i;
  skip_ws();
  if (i < text.size() && text[i] == ']') return out;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size() || (text[i] != '\'' && text[i] != '"')) return std::nullopt;
    const char quote = text[i++];
    std::string item;
    bool closed = false;
    while (i < text.size()) {
      const char c = text[i++];
      if (c == '\\' && i < text.size()) {
        const char e = text[i++];
        item.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
      } else if (c == quote) {
        closed = true;
        break;
      } else {
        item.push_back(c);
      }
    }
    if (!closed) return std::nullopt;
    out.push_back(std::move(item));
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      skip_ws();
      if (i < text.size() && text[i] == ']') break;  // trailing comma
      continue;
    }
    if (i < text.size() && text[i] == ']') break;
    return std::nullopt;
  }
  if (i >= text.size() || text[i] != ']') return std::nullopt;
  return out;
}

/// `{"keywords": [...]}`; an empty list marks a non-technical passage.
inline std::optional<std::vector<std::string>> parse_keywords(std::string_view raw) {
  const auto j = nlohmann::json::parse(strip_code_fence(raw), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("keywords") || !j.at("keywords").is_array()) {
    return std::nullopt;
  }
  std::vector<std::string> out;
  for (const auto& k : j.at("keywords")) {
    if (!k.is_string()) return std::nullopt;
    out.push_back(k.get<std::string>());
  }
  return out;
}

/// Lowercased, whitespace-collapsed, trimmed.
inline std::string normalize_text(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

/// Keeps the first of every group of items whose normalized instruction and
/// output coincide. `get` maps an item to its QaTriple.
template <class T, class Get>
std::vector<T> dedup_by(std::vector<T> items, Get&& get) {
  std::set<std::string> seen;
  std::vector<T> out;
  for (auto& item : items) {
    const QaTriple& t = get(item);
    if (seen.insert(normalize_text(t.instruction) + '\x1f' + normalize_text(t.output)).second) {
      out.push_back(std::move(item));
    }
  }
  return out;
}

inline std::vector<QaTriple> dedup(std::vector<QaTriple> triples) {
  return dedup_by(std::move(triples), [](const QaTriple& t) -> const QaTriple& { return t; });
}

}  // namespace deckforge
