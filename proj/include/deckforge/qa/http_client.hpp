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

// Chat-completion client over HTTP(S). Kept apart from the rest of the QA
// headers because it pulls in cpp-httplib; define CPPHTTPLIB_OPENSSL_SUPPORT
// and link OpenSSL::SSL for https endpoints.

#pragma once

#include <cstdlib>
#include <string>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "deckforge/qa/client.hpp"
#include "deckforge/qa/prompts.hpp"

namespace deckforge {

struct HttpClientConfig {
  std::string endpoint = "http://127.0.0.1:8000";  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env = "DECKFORGE_API_KEY";  // credential is read from this variable
  std::string language = "English";
  double temperature = 0.7;
  int timeout_seconds = 120;
};

/// Sends each rendered prompt as one user message and returns the first
/// choice's content. Transport errors and non-2xx replies raise ClientError.
class HttpGeneratorClient : public GeneratorClient {
 public:
  HttpGeneratorClient(HttpClientConfig config, PromptLibrary prompts)
      : config_(std::move(config)), prompts_(std::move(prompts)) {}

  std::string generate_qa(const DocumentSegment& s) override {
    return complete(prompts_.render("generate_qa", {{"language", config_.language}, {"content", s.text}}));
  }

  std::string paraphrase(const std::string& question, const std::string& answer, int n) override {
    return complete(prompts_.render("augment_questions", {{"language", config_.language},
                                                          {"question", question},
                                                          {"answer", answer},
                                                          {"count", std::to_string(n)}}));
  }

  std::string extract_keywords(const DocumentSegment& s) override {
    return complete(prompts_.render("extract_keywords", {{"content", s.text}}));
  }

  std::string generate_qa_for_keyword(const DocumentSegment& s, const std::string& keyword) override {
    return complete(prompts_.render("generate_qa_keyword",
                                    {{"language", config_.language}, {"content", s.text}, {"keyword", keyword}}));
  }

  std::string complete(const std::string& prompt) {
    httplib::Client cli(config_.endpoint);
    cli.set_connection_timeout(config_.timeout_seconds, 0);
    cli.set_read_timeout(config_.timeout_seconds, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    const nlohmann::json body = {{"model", config_.model},
                                 {"temperature", config_.temperature},
                                 {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}};
    auto res = cli.Post(config_.path, headers, body.dump(), "application/json");
    if (!res) throw ClientError("request failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) throw ClientError("HTTP status " + std::to_string(res->status));
    const auto reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty()) {
      throw ClientError("unexpected response body");
    }
    const auto& choice = reply["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content")) {
      return choice["message"]["content"].get<std::string>();
    }
    if (choice.contains("text")) return choice["text"].get<std::string>();
    throw ClientError("response has no content");
  }

 private:
  HttpClientConfig config_;
  PromptLibrary prompts_;
};

}  // namespace deckforge
