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

namespace deckforge {

/// Template files under a prompt directory, one per generator operation.
inline constexpr std::array<std::string_view, 4> kPromptNames = {"generate_qa", "augment_questions",
                                                                 "extract_keywords", "generate_qa_keyword"};

/// Prompt templates with `{{field}}` slots: `language`, `content`,
/// `question`, `answer`, `count`, `keyword`.
class PromptLibrary {
 public:
  static PromptLibrary load(const std::filesystem::path& dir) {
    PromptLibrary lib;
    for (auto name : kPromptNames) {
      const auto path = dir / (std::string(name) + ".txt");
      std::ifstream in(path, std::ios::binary);
      if (!in) throw std::runtime_error("missing prompt template " + path.string());
      std::ostringstream ss;
      ss << in.rdbuf();
      lib.templates_[std::string(name)] = ss.str();
    }
    return lib;
  }

  void set(std::string_view name, std::string text) { templates_[std::string(name)] = std::move(text); }

  const std::string& raw(std::string_view name) const {
    auto it = templates_.find(std::string(name));
    if (it == templates_.end()) throw std::runtime_error("unknown prompt " + std::string(name));
    return it->second;
  }

  /// Fills the named template; unknown fields are an error.
  std::string render(std::string_view name, const std::map<std::string, std::string>& fields) const {
    const std::string& t = raw(name);
    std::string out;
    std::size_t pos = 0;
    while (true) {
      const auto open = t.find("{{", pos);
      if (open == std::string::npos) break;
      const auto close = t.find("}}", open + 2);
      if (close == std::string::npos) break;
      out.append(t, pos, open - pos);
      const std::string key = t.substr(open + 2, close - open - 2);
      auto it = fields.find(key);
      if (it == fields.end()) throw std::runtime_error("prompt " + std::string(name) + ": no value for {{" + key + "}}");
      out += it->second;
      pos = close + 2;
    }
    out.append(t, pos, std::string::npos);
    return out;
  }

 private:
  std::map<std::string, std::string> templates_;
};

}  // namespace deckforge
