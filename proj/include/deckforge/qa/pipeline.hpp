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
#include <chrono>
#include <functional>
#include <future>
#include <iterator>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "deckforge/qa/alpaca.hpp"
#include "deckforge/qa/client.hpp"
#include "deckforge/qa/segment.hpp"

namespace deckforge {

struct SourceDocument {
  std::string doc_id;
  std::string text;
  SourceKind kind = SourceKind::kUserGuide;
};

struct QaLineage {
  int pipeline = 1;
  std::string doc_id;
  int segment_index = 0;
  SourceKind source_kind = SourceKind::kUserGuide;
  std::optional<std::string> keyword;
  std::optional<std::string> paraphrase_of;
  friend bool operator==(const QaLineage&, const QaLineage&) = default;
};

struct QaPair {
  std::string id;
  QaTriple triple;
  QaLineage lineage;
  friend bool operator==(const QaPair&, const QaPair&) = default;
};

struct PipelineOptions {
  int paraphrases = 10;
  int max_retries = 3;  // retries after the first attempt
  std::chrono::milliseconds backoff{200};  // doubled on every retry
  int parallelism = 1;
  SegmentOptions segmentation;
};

struct PipelineResult {
  std::vector<QaPair> pairs;
  std::vector<std::string> log;  // dropped items, retries, skipped segments
};

namespace detail {

/// Calls `f` until it returns or the retry budget is spent.
inline std::optional<std::string> call_with_retry(const std::function<std::string()>& f, const std::string& label,
                                                  const PipelineOptions& opt, std::vector<std::string>& log) {
  auto delay = opt.backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      return f();
    } catch (const ClientError& e) {
      if (attempt >= opt.max_retries) {
        log.push_back(label + ": giving up after " + std::to_string(attempt + 1) + " attempts: " + e.what());
        return std::nullopt;
      }
      log.push_back(label + ": retry " + std::to_string(attempt + 1) + " after error: " + e.what());
      if (delay.count() > 0) std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }
}

inline std::string locator(const DocumentSegment& s) { return s.doc_id + "/" + std::to_string(s.segment_index); }

inline void log_rejections(const AlpacaBatch& b, const std::string& label, std::vector<std::string>& log) {
  for (const auto& r : b.rejections) {
    log.push_back(label + ": dropped item " + std::to_string(r.index) + " (" + r.reason + ")");
  }
}

/// Runs `task` over every segment with up to `parallelism` tasks in flight
/// and concatenates the results in segment order.
inline PipelineResult fan_out(const std::vector<DocumentSegment>& segments, const PipelineOptions& opt,
                              const std::function<PipelineResult(const DocumentSegment&)>& task) {
  std::vector<DocumentSegment> ordered = segments;
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return std::tie(a.doc_id, a.segment_index) < std::tie(b.doc_id, b.segment_index);
  });
  std::vector<PipelineResult> parts(ordered.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, opt.parallelism));
  if (width == 1) {
    for (std::size_t i = 0; i < ordered.size(); ++i) parts[i] = task(ordered[i]);
  } else {
    for (std::size_t start = 0; start < ordered.size(); start += width) {
      std::vector<std::future<PipelineResult>> inflight;
      for (std::size_t i = start; i < std::min(ordered.size(), start + width); ++i) {
        inflight.push_back(std::async(std::launch::async, task, std::cref(ordered[i])));
      }
      for (std::size_t i = 0; i < inflight.size(); ++i) parts[start + i] = inflight[i].get();
    }
  }
  PipelineResult out;
  for (auto& p : parts) {
    std::move(p.pairs.begin(), p.pairs.end(), std::back_inserter(out.pairs));
    std::move(p.log.begin(), p.log.end(), std::back_inserter(out.log));
  }
  return out;
}

}  // namespace detail

inline std::vector<DocumentSegment> segment_documents(const std::vector<SourceDocument>& docs,
                                                      const SegmentOptions& opt, std::vector<std::string>* log) {
  std::vector<DocumentSegment> out;
  for (const auto& d : docs) {
    auto segs = segment_text(d.text, d.doc_id, d.kind, opt, log);
    std::move(segs.begin(), segs.end(), std::back_inserter(out));
  }
  return out;
}

/// Segment-based generation: every QA of a segment plus `paraphrases`
/// rewordings of its question that share the answer.
inline PipelineResult run_pipeline1(const std::vector<DocumentSegment>& segments, GeneratorClient& client,
                                    const PipelineOptions& opt = {}) {
  return detail::fan_out(segments, opt, [&](const DocumentSegment& s) {
    PipelineResult r;
    const std::string where = "p1 " + detail::locator(s);
    const auto raw = detail::call_with_retry([&] { return client.generate_qa(s); }, where, opt, r.log);
    if (!raw) return r;
    const AlpacaBatch batch = validate_alpaca_array(*raw);
    detail::log_rejections(batch, where, r.log);
    const QaLineage base{1, s.doc_id, s.segment_index, s.source_kind, std::nullopt, std::nullopt};
    for (std::size_t i = 0; i < batch.accepted.size(); ++i) {
      const QaTriple& qa = batch.accepted[i];
      const std::string id = "p1/" + detail::locator(s) + "/" + std::to_string(i);
      r.pairs.push_back({id, qa, base});
      if (opt.paraphrases <= 0) continue;
      const std::string label = where + " item " + std::to_string(i) + " paraphrases";
      const auto list = detail::call_with_retry([&] { return client.paraphrase(qa.instruction, qa.output, opt.paraphrases); },
                                                label, opt, r.log);
      if (!list) continue;
      const auto questions = parse_string_list(*list);
      if (!questions) {
        r.log.push_back(label + ": dropped (not a list of strings)");
        continue;
      }
      if (static_cast<int>(questions->size()) != opt.paraphrases) {
        r.log.push_back(label + ": expected " + std::to_string(opt.paraphrases) + ", got " +
                        std::to_string(questions->size()));
      }
      for (std::size_t j = 0; j < questions->size(); ++j) {
        const QaTriple variant{(*questions)[j], qa.input, qa.output};
        if (!validate_alpaca_json(triple_to_json(variant)).ok()) {
          r.log.push_back(label + ": dropped variant " + std::to_string(j) + " (empty-instruction)");
          continue;
        }
        QaLineage lin = base;
        lin.paraphrase_of = id;
        r.pairs.push_back({id + "/v" + std::to_string(j), variant, lin});
      }
    }
    return r;
  });
}

/// Keyword-guided generation: QAs for each (segment, keyword). A segment
/// with no keywords is non-technical and contributes nothing.
inline PipelineResult run_pipeline2(const std::vector<DocumentSegment>& segments, GeneratorClient& client,
                                    const PipelineOptions& opt = {}) {
  return detail::fan_out(segments, opt, [&](const DocumentSegment& s) {
    PipelineResult r;
    const std::string where = "p2 " + detail::locator(s);
    const auto raw = detail::call_with_retry([&] { return client.extract_keywords(s); }, where + " keywords", opt, r.log);
    if (!raw) return r;
    const auto keywords = parse_keywords(*raw);
    if (!keywords) {
      r.log.push_back(where + ": dropped keyword list (malformed)");
      return r;
    }
    if (keywords->empty()) {
      r.log.push_back(where + ": no keywords, skipped");
      return r;
    }
    for (std::size_t k = 0; k < keywords->size(); ++k) {
      const std::string& kw = (*keywords)[k];
      const std::string label = where + " keyword '" + kw + "'";
      const auto qa = detail::call_with_retry([&] { return client.generate_qa_for_keyword(s, kw); }, label, opt, r.log);
      if (!qa) continue;
      const AlpacaBatch batch = validate_alpaca_array(*qa);
      detail::log_rejections(batch, label, r.log);
      for (std::size_t i = 0; i < batch.accepted.size(); ++i) {
        r.pairs.push_back({"p2/" + detail::locator(s) + "/k" + std::to_string(k) + "/" + std::to_string(i),
                           batch.accepted[i],
                           {2, s.doc_id, s.segment_index, s.source_kind, kw, std::nullopt}});
      }
    }
    return r;
  });
}

inline std::vector<QaPair> dedup(std::vector<QaPair> pairs) {
  return dedup_by(std::move(pairs), [](const QaPair& p) -> const QaTriple& { return p.triple; });
}

inline nlohmann::json lineage_to_json(const QaPair& p) {
  nlohmann::json j = {{"id", p.id},
                      {"pipeline", p.lineage.pipeline},
                      {"doc_id", p.lineage.doc_id},
                      {"segment_index", p.lineage.segment_index},
                      {"source_kind", to_string(p.lineage.source_kind)}};
  if (p.lineage.keyword) j["keyword"] = *p.lineage.keyword;
  if (p.lineage.paraphrase_of) j["paraphrase_of"] = *p.lineage.paraphrase_of;
  return j;
}

/// `qa.jsonl` (bare Alpaca triples) and its `lineage.jsonl` sidecar, line
/// for line.
inline std::pair<std::string, std::string> serialize_qa(const std::vector<QaPair>& pairs) {
  std::string qa, lineage;
  for (const auto& p : pairs) {
    qa += triple_to_json(p.triple).dump() + "\n";
    lineage += lineage_to_json(p).dump() + "\n";
  }
  return {qa, lineage};
}

}  // namespace deckforge
