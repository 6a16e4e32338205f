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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deckforge {

enum class SourceKind { kUserGuide, kTrainingDoc, kTextbook };

inline const char* to_string(SourceKind k) {
  switch (k) {
    case SourceKind::kUserGuide: return "user_guide";
    case SourceKind::kTrainingDoc: return "training_doc";
    case SourceKind::kTextbook: return "textbook";
  }
  return "user_guide";
}

inline std::optional<SourceKind> parse_source_kind(std::string_view s) {
  if (s == "user_guide") return SourceKind::kUserGuide;
  if (s == "training_doc") return SourceKind::kTrainingDoc;
  if (s == "textbook") return SourceKind::kTextbook;
  return std::nullopt;
}

struct DocumentSegment {
  std::string doc_id;
  int segment_index = 0;
  std::string text;
  SourceKind source_kind = SourceKind::kUserGuide;
  friend bool operator==(const DocumentSegment&, const DocumentSegment&) = default;
};

struct SegmentOptions {
  std::size_t max_chars = 1500;  // longer paragraphs are split at whitespace
  std::size_t min_chars = 0;     // shorter trailing pieces join their predecessor
};

namespace detail {

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Markdown headings, numbered section titles ("2.3 Meshing") and short
/// upper-case title lines.
inline bool is_heading(std::string_view line) {
  const std::string_view t = trim_view(line);
  if (t.empty() || t.size() > 80) return false;
  if (t.front() == '#') return true;
  std::size_t i = 0;
  while (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '.')) ++i;
  if (i > 0 && std::isdigit(static_cast<unsigned char>(t[0])) && i < t.size() && t[i] == ' ' && t.back() != '.' &&
      i + 1 < t.size() && std::isupper(static_cast<unsigned char>(t[i + 1]))) {
    return true;
  }
  bool letters = false;
  for (char c : t) {
    if (std::islower(static_cast<unsigned char>(c))) return false;
    letters = letters || std::isupper(static_cast<unsigned char>(c));
  }
  return letters && t.size() >= 3 && t.back() != '.';
}

}  // namespace detail

/// Splits at heading lines and groups blank-line separated paragraphs into
/// segments of at most `max_chars`. Segment texts are trimmed substrings of
/// the document, so their concatenation covers all of its non-blank content.
inline std::vector<DocumentSegment> segment_text(std::string_view doc, const std::string& doc_id,
                                                 SourceKind kind = SourceKind::kUserGuide,
                                                 const SegmentOptions& opt = {},
                                                 std::vector<std::string>* warnings = nullptr) {
  if (opt.max_chars == 0) throw std::invalid_argument("segment_text: max_chars must be positive");
  std::vector<DocumentSegment> out;
  if (detail::trim_view(doc).empty()) {
    if (warnings) warnings->push_back(doc_id + ": empty document");
    return out;
  }

  // Paragraph spans, each tagged with whether it opens a new section.
  struct Para {
    std::size_t begin, end;
    bool heading;
  };
  std::vector<Para> paras;
  std::optional<std::size_t> open;
  std::size_t para_end = 0;
  auto close = [&] {
    if (open) paras.push_back({*open, para_end, false});
    open.reset();
  };
  std::size_t pos = 0;
  while (pos <= doc.size()) {
    std::size_t nl = doc.find('\n', pos);
    if (nl == std::string_view::npos) nl = doc.size();
    const std::string_view line = doc.substr(pos, nl - pos);
    if (detail::trim_view(line).empty()) {
      close();
    } else if (detail::is_heading(line)) {
      close();
      paras.push_back({pos, nl, true});
    } else {
      if (!open) open = pos;
      para_end = nl;
    }
    if (nl == doc.size()) break;
    pos = nl + 1;
  }
  close();

  // Pieces: paragraphs no longer than max_chars, split at whitespace.
  std::vector<Para> pieces;
  for (const auto& p : paras) {
    std::size_t b = p.begin;
    bool heading = p.heading;
    while (p.end - b > opt.max_chars) {
      std::size_t cut = b + opt.max_chars;
      while (cut > b && !std::isspace(static_cast<unsigned char>(doc[cut]))) --cut;
      if (cut == b) cut = b + opt.max_chars;
      pieces.push_back({b, cut, heading});
      heading = false;
      b = cut;
      while (b < p.end && std::isspace(static_cast<unsigned char>(doc[b]))) ++b;
    }
    if (b < p.end) pieces.push_back({b, p.end, heading});
  }

  // Segments never cross a heading; the text after a heading stays with it.
  std::vector<Para> spans;
  for (const auto& piece : pieces) {
    const bool fits = !spans.empty() && piece.end - spans.back().begin <= opt.max_chars;
    if (piece.heading || !fits) {
      spans.push_back(piece);
    } else {
      spans.back().end = piece.end;
    }
  }
  if (opt.min_chars > 0) {
    std::vector<Para> merged;
    for (const auto& s : spans) {
      if (!merged.empty() && !s.heading && s.end - s.begin < opt.min_chars) {
        merged.back().end = s.end;
      } else {
        merged.push_back(s);
      }
    }
    spans = std::move(merged);
  }
  for (const auto& span : spans) {
    const std::string_view t = detail::trim_view(doc.substr(span.begin, span.end - span.begin));
    if (t.empty()) continue;
    out.push_back({doc_id, static_cast<int>(out.size()), std::string(t), kind});
  }
  return out;
}

}  // namespace deckforge
