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

#include <stdexcept>
#include <string>

namespace deckforge {

enum class DeckOrigin { kVerifiedCorpus, kModelOutput, kRendered };

/// A deck as text. Line endings are normalized to LF on construction.
struct SourceDeck {
  std::string name;
  std::string body;
  DeckOrigin origin = DeckOrigin::kVerifiedCorpus;

  SourceDeck() = default;
  SourceDeck(std::string deck_name, std::string text, DeckOrigin o = DeckOrigin::kVerifiedCorpus)
      : name(std::move(deck_name)), body(normalize_newlines(std::move(text))), origin(o) {}

  static std::string normalize_newlines(std::string text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\r') {
        out.push_back('\n');
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      } else {
        out.push_back(text[i]);
      }
    }
    return out;
  }
};

}  // namespace deckforge
