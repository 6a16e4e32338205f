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
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "deckforge/core/decimal.hpp"
#include "deckforge/deck/parser.hpp"
#include "deckforge/ir/diff.hpp"

namespace deckforge {

namespace detail {

inline bool digit_at(std::string_view s, std::size_t i) {
  return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

inline bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// True when the digits at `i` open a line as a list marker (`2. ` or `2) `).
inline bool list_marker_at(std::string_view s, std::size_t i) {
  std::size_t b = i;
  while (b > 0 && (s[b - 1] == ' ' || s[b - 1] == '\t')) --b;
  if (b > 0 && s[b - 1] != '\n') return false;
  std::size_t j = i;
  while (digit_at(s, j)) ++j;
  if (j == i || j >= s.size() || (s[j] != '.' && s[j] != ')')) return false;
  return j + 1 == s.size() || s[j + 1] == ' ' || s[j + 1] == '\n';
}

}  // namespace detail

/// Numerals in free text: `[+-]?digits(.digits)?(e[+-]?digits)?` not glued
/// to an identifier, a dotted name or a placeholder on the left, and not
/// followed by a word character. Line-leading list markers are skipped.
/// Returns the raw lexemes.
inline std::vector<std::string> scan_numeral_lexemes(std::string_view text) {
  using detail::digit_at;
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const bool sign = (c == '+' || c == '-') && digit_at(text, i + 1);
    if (!sign && !digit_at(text, i)) {
      ++i;
      continue;
    }
    if (!sign && detail::list_marker_at(text, i)) {
      while (digit_at(text, i)) ++i;
      continue;
    }
    const char before = i == 0 ? ' ' : text[i - 1];
    const bool glued = detail::word_char(before) || before == '.' || before == '@' ||
                       (!sign && (before == '+' || before == '-'));
    std::size_t j = sign ? i + 1 : i;
    while (digit_at(text, j)) ++j;
    if (j < text.size() && text[j] == '.' && digit_at(text, j + 1)) {
      ++j;
      while (digit_at(text, j)) ++j;
    }
    if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
      if (digit_at(text, k)) {
        while (digit_at(text, k)) ++k;
        j = k;
      }
    }
    const bool trailing = j < text.size() && detail::word_char(text[j]);
    if (!glued && !trailing) out.emplace_back(text.substr(i, j - i));
    // Skip the whole run so a rejected lexeme cannot yield a suffix match.
    i = j;
    while (i < text.size() && (detail::word_char(text[i]) || text[i] == '.')) ++i;
  }
  return out;
}

/// Canonical numeral multiset of free text.
inline std::map<std::string, int> scan_numerals(std::string_view text) {
  std::map<std::string, int> out;
  for (const auto& lex : scan_numeral_lexemes(text)) {
    auto d = Decimal::parse(lex);
    ++out[d ? d->str() : lex];
  }
  return out;
}

/// Numbers of a command list (positions and nested forms included).
inline std::map<std::string, int> code_numerals(const std::vector<CommandNode>& nodes) {
  std::map<std::string, int> out;
  for (const auto& n : nodes) for_each_number(n, [&](const Decimal& d) { ++out[d.str()]; });
  return out;
}

inline std::map<std::string, int> ir_numerals(const DeckIR& ir) {
  std::map<std::string, int> out;
  for (const auto& [path, value] : numeric_leaves(ir)) ++out[value.str()];
  return out;
}

/// Constants an instruction may show, as a canonical-text multiset.
struct NumericWhitelist {
  std::map<std::string, int> values;

  bool contains(const std::string& canonical) const { return values.count(canonical) != 0; }
};

inline NumericWhitelist build_whitelist(const DeckIR& ir, const std::vector<CommandNode>& code) {
  NumericWhitelist wl;
  wl.values = ir_numerals(ir);
  for (const auto& [value, count] : code_numerals(code)) {
    int& slot = wl.values[value];
    slot = std::max(slot, count);
  }
  return wl;
}

struct WhitelistResult {
  bool ok = true;
  std::vector<std::string> offending;  // canonical text, one entry per excess occurrence
};

inline WhitelistResult check_whitelist(std::string_view text, const NumericWhitelist& wl) {
  WhitelistResult r;
  for (const auto& [value, count] : scan_numerals(text)) {
    auto it = wl.values.find(value);
    const int allowed = it == wl.values.end() ? 0 : it->second;
    for (int k = allowed; k < count; ++k) r.offending.push_back(value);
  }
  r.ok = r.offending.empty();
  return r;
}

/// True when every count in `sub` is at most the matching count in `super`.
inline bool is_sub_multiset(const std::map<std::string, int>& sub, const std::map<std::string, int>& super) {
  for (const auto& [k, n] : sub) {
    auto it = super.find(k);
    if (it == super.end() || it->second < n) return false;
  }
  return true;
}

}  // namespace deckforge
