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


// Fixture access shared by the unit suites and the acceptance runner.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "deckforge/deckforge.hpp"

namespace deckforge::fixtures {

namespace fs = std::filesystem;

inline fs::path root() { return fs::path(DECKFORGE_FIXTURE_DIR); }
inline fs::path data_dir() { return fs::path(DECKFORGE_DATA_DIR); }

inline std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Every fixture deck, sorted by file name.
inline std::vector<fs::path> decks() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(root() / "decks")) {
    if (e.path().extension() == ".cmd") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline fs::path deck(const std::string& stem) { return root() / "decks" / (stem + ".cmd"); }

inline DeckIR extract_file(const fs::path& p) {
  const ParseResult parsed = parse_deck(read_text(p));
  if (!parsed.ok()) throw std::runtime_error(p.string() + ": parse failed");
  ExtractResult ex = extract_ir(parsed.commands);
  if (!ex.ok()) throw std::runtime_error(p.string() + ": extraction failed");
  return std::move(ex.ir);
}

inline DeckIR flat_file(const fs::path& p) { return flatten_ir(extract_file(p)); }

/// Decks that pass the strict checker as written.
inline std::vector<fs::path> passing_decks() {
  std::vector<fs::path> out;
  for (const auto& p : decks()) {
    if (check_syntax(read_text(p)).verdict == Verdict::kDirectPass) out.push_back(p);
  }
  return out;
}

/// Decks where all four procedural edits apply.
inline std::vector<fs::path> rich_decks() {
  std::vector<fs::path> out;
  for (const auto& p : decks()) {
    if (p.stem().string().rfind("rich_", 0) == 0) out.push_back(p);
  }
  return out;
}

}  // namespace deckforge::fixtures
