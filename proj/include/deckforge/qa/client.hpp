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
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "deckforge/qa/segment.hpp"

namespace deckforge {

/// A failed request that may succeed when retried.
class ClientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text generator behind both QA pipelines. Every operation returns the raw
/// model text; the pipelines validate its structure.
class GeneratorClient {
 public:
  virtual ~GeneratorClient() = default;

  /// JSON array of Alpaca triples for a segment.
  virtual std::string generate_qa(const DocumentSegment& segment) = 0;
  /// List literal with `n` rewordings of `question`.
  virtual std::string paraphrase(const std::string& question, const std::string& answer, int n) = 0;
  /// `{"keywords": [...]}`.
  virtual std::string extract_keywords(const DocumentSegment& segment) = 0;
  /// JSON array of Alpaca triples about one keyword of a segment.
  virtual std::string generate_qa_for_keyword(const DocumentSegment& segment, const std::string& keyword) = 0;
};

struct MockConfig {
  int qa_per_segment = 2;
  int max_keywords = 3;
  int qa_per_keyword = 1;
  /// Call key (e.g. `generate_qa:doc/0`) -> number of ClientErrors raised
  /// before the call succeeds.
  std::map<std::string, int> transient_failures;
  /// Call keys answered with text that is not valid JSON.
  std::set<std::string> malformed;
};

/// Deterministic client deriving its answers from the segment text. Safe to
/// call from several threads.
class MockGeneratorClient : public GeneratorClient {
 public:
  explicit MockGeneratorClient(MockConfig config = {}) : config_(std::move(config)) {}

  /// Distinct tokens that look like identifiers: they contain `:`, `_`, an
  /// inner `-`, a digit next to letters, or mixed case with an upper-case
  /// letter after the first character.
  static std::vector<std::string> technical_terms(std::string_view text) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      std::string tok(text.substr(i, j - i));
      i = j;
      const std::string_view punct = ".,;:()[]\"'`";
      while (!tok.empty() && punct.find(tok.front()) != std::string_view::npos) tok.erase(0, 1);
      while (!tok.empty() && punct.find(tok.back()) != std::string_view::npos) tok.pop_back();
      if (tok.size() < 3) continue;
      bool alpha = false, digit = false, marker = false, inner_upper = false, lower = false;
      for (std::size_t k = 0; k < tok.size(); ++k) {
        const auto c = static_cast<unsigned char>(tok[k]);
        alpha = alpha || std::isalpha(c);
        digit = digit || std::isdigit(c);
        marker = marker || c == ':' || c == '_' || (c == '-' && k > 0 && k + 1 < tok.size());
        inner_upper = inner_upper || (k > 0 && std::isupper(c));
        lower = lower || std::islower(c);
      }
      if (alpha && (marker || (inner_upper && lower) || digit) && seen.insert(tok).second) out.push_back(tok);
    }
    return out;
  }

  static std::vector<std::string> keywords_for(std::string_view text, int max) {
    auto terms = technical_terms(text);
    if (static_cast<int>(terms.size()) > max) terms.resize(static_cast<std::size_t>(max));
    return terms;
  }

  std::string generate_qa(const DocumentSegment& s) override {
    const std::string key = "generate_qa:" + locator(s);
    if (auto bad = intercept(key)) return *bad;
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < config_.qa_per_segment; ++i) {
      arr.push_back(triple("Question " + std::to_string(i + 1) + " on " + locator(s) + ": what does \"" +
                               excerpt(s.text, 40) + "\" describe?",
                           "Answer " + std::to_string(i + 1) + ": " + excerpt(s.text, 120)));
    }
    return arr.dump();
  }

  std::string paraphrase(const std::string& question, const std::string&, int n) override {
    const std::string key = "paraphrase:" + question;
    if (auto bad = intercept(key)) return *bad;
    nlohmann::json arr = nlohmann::json::array();
    for (int j = 0; j < n; ++j) arr.push_back("Rephrasing " + std::to_string(j + 1) + " of: " + question);
    return arr.dump();
  }

  std::string extract_keywords(const DocumentSegment& s) override {
    const std::string key = "extract_keywords:" + locator(s);
    if (auto bad = intercept(key)) return *bad;
    return nlohmann::json{{"keywords", keywords_for(s.text, config_.max_keywords)}}.dump();
  }

  std::string generate_qa_for_keyword(const DocumentSegment& s, const std::string& keyword) override {
    const std::string key = "generate_qa_for_keyword:" + locator(s) + ":" + keyword;
    if (auto bad = intercept(key)) return *bad;
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < config_.qa_per_keyword; ++i) {
      arr.push_back(triple("Question " + std::to_string(i + 1) + " on " + locator(s) + ": explain the role of " +
                               keyword + ".",
                           "Answer " + std::to_string(i + 1) + ": " + keyword + " appears in \"" +
                               excerpt(s.text, 80) + "\"."));
    }
    return arr.dump();
  }

 private:
  static std::string locator(const DocumentSegment& s) { return s.doc_id + "/" + std::to_string(s.segment_index); }

  static std::string excerpt(const std::string& text, std::size_t n) {
    std::string out;
    for (char c : text) {
      if (out.size() >= n && (static_cast<unsigned char>(c) & 0xC0) != 0x80) break;  // keep UTF-8 whole
      out.push_back(c == '\n' ? ' ' : c);
    }
    return out;
  }

  static nlohmann::json triple(const std::string& q, const std::string& a) {
    return {{"instruction", q}, {"input", ""}, {"output", a}};
  }

  std::optional<std::string> intercept(const std::string& key) {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = config_.transient_failures.find(key); it != config_.transient_failures.end() && it->second > 0) {
      --it->second;
      throw ClientError("mock transient failure: " + key);
    }
    if (config_.malformed.count(key)) return std::string("this is not { valid json");
    return std::nullopt;
  }

  MockConfig config_;
  std::mutex mu_;
};

}  // namespace deckforge
