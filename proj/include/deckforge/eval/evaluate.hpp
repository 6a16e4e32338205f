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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deckforge/check/checker.hpp"
#include "deckforge/eval/testset.hpp"

namespace deckforge {

/// Extracts the deck from a model answer: the first fenced block if any,
/// then the lines from the first command to the last closing parenthesis
/// (or to the end when nothing closes).
inline std::string strip_candidate(std::string_view text) {
  std::string body(text);
  if (const auto open = body.find("```"); open != std::string::npos) {
    const auto line_end = body.find('\n', open);
    if (line_end != std::string::npos) {
      const auto close = body.find("```", line_end + 1);
      body = body.substr(line_end + 1, close == std::string::npos ? std::string::npos : close - line_end - 1);
    }
  }
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= body.size()) {
    const auto nl = body.find('\n', start);
    lines.push_back(body.substr(start, nl == std::string::npos ? std::string::npos : nl - start));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  auto trimmed = [](const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
  };
  std::optional<std::size_t> first, last;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string t = trimmed(lines[i]);
    if (t.empty()) continue;
    if (!first && t.front() == '(') first = i;
    if (first && t.back() == ')') last = i;
  }
  if (!first) return {};
  if (!last) last = lines.size() - 1;  // unterminated: keep the tail for the checker
  std::string out;
  for (std::size_t i = *first; i <= *last; ++i) out += lines[i] + "\n";
  return out;
}

struct EvalOptions {
  std::vector<int> k_values = {1, 3};
  CheckMode mode = CheckMode::kPermissive;
  bool empty_is_pass = false;     // vacuous passes for empty candidates
  bool strict_missing = false;    // missing generations raise instead of failing the case
};

inline int verdict_rank(Verdict v) {
  switch (v) {
    case Verdict::kDirectPass: return 2;
    case Verdict::kResolvedPass: return 1;
    case Verdict::kFail: return 0;
  }
  return 0;
}

inline Verdict evaluate_candidate(std::string_view text, const ConstantMap& constants, const EvalOptions& opt = {}) {
  const std::string code = strip_candidate(text);
  if (code.find_first_not_of(" \t\r\n") == std::string::npos) {
    return opt.empty_is_pass ? Verdict::kDirectPass : Verdict::kFail;
  }
  return check_with_resolution(code, constants, opt.mode).verdict;
}

struct CaseOutcome {
  std::string case_id;
  std::vector<Verdict> candidate_verdicts;
  std::map<int, Verdict> best;            // per k
  std::map<int, std::optional<int>> at;   // candidate index reaching `best`
};

/// Exact count over a case total; `percent()` renders one decimal place.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 0;

  double value() const { return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }

  std::string percent() const {
    if (den == 0) return "n/a";
    const std::int64_t tenths = (num * 2000 + den) / (2 * den);  // round half up
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
  }
};

struct KSummary {
  int k = 0;
  int direct = 0;
  int resolved = 0;
  int fail = 0;
  Fraction pass;
};

struct EvalSummary {
  int cases = 0;
  std::vector<KSummary> per_k;
  std::vector<CaseOutcome> per_case;
  std::vector<std::string> warnings;

  const KSummary* at_k(int k) const {
    for (const auto& s : per_k) {
      if (s.k == k) return &s;
    }
    return nullptr;
  }
};

/// Scores every case at each k: a case passes at k when any of its first k
/// candidates passes directly or after placeholder resolution.
inline EvalSummary evaluate(const std::vector<InstructionCase>& cases, const std::vector<GenerationSet>& generations,
                            const EvalOptions& opt = {}) {
  if (opt.k_values.empty()) throw EvalError("no k values");
  for (int k : opt.k_values) {
    if (k < 1) throw EvalError("k must be positive");
  }
  std::map<std::string, const InstructionCase*> by_id;
  for (const auto& c : cases) {
    if (!by_id.emplace(c.case_id, &c).second) throw EvalError("duplicate case id " + c.case_id);
  }
  std::map<std::string, const GenerationSet*> gens;
  for (const auto& g : generations) {
    if (!by_id.count(g.case_id)) throw EvalError("generation for unknown case " + g.case_id);
    if (!gens.emplace(g.case_id, &g).second) throw EvalError("duplicate generations for case " + g.case_id);
  }
  std::vector<int> ks = opt.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  const int kmax = ks.back();

  EvalSummary summary;
  summary.cases = static_cast<int>(by_id.size());
  for (int k : ks) summary.per_k.push_back({k, 0, 0, 0, {0, summary.cases}});

  for (const auto& [id, c] : by_id) {
    CaseOutcome outcome;
    outcome.case_id = id;
    auto g = gens.find(id);
    if (g == gens.end() || g->second->candidates.empty()) {
      if (opt.strict_missing) throw EvalError("no generations for case " + id);
      summary.warnings.push_back("no generations for case " + id + "; counted as fail");
    } else {
      const ConstantMap constants = case_constants(c->source_ir);
      const auto& cands = g->second->candidates;
      for (std::size_t i = 0; i < cands.size() && static_cast<int>(i) < kmax; ++i) {
        outcome.candidate_verdicts.push_back(evaluate_candidate(cands[i], constants, opt));
      }
    }
    for (std::size_t j = 0; j < ks.size(); ++j) {
      Verdict best = Verdict::kFail;
      std::optional<int> at;
      for (int i = 0; i < ks[j] && i < static_cast<int>(outcome.candidate_verdicts.size()); ++i) {
        const Verdict v = outcome.candidate_verdicts[static_cast<std::size_t>(i)];
        if (verdict_rank(v) > verdict_rank(best)) {
          best = v;
          at = i;
        }
      }
      outcome.best[ks[j]] = best;
      outcome.at[ks[j]] = at;
      KSummary& s = summary.per_k[j];
      (best == Verdict::kDirectPass ? s.direct : best == Verdict::kResolvedPass ? s.resolved : s.fail) += 1;
    }
    summary.per_case.push_back(std::move(outcome));
  }
  for (auto& s : summary.per_k) s.pass.num = s.direct + s.resolved;
  return summary;
}

}  // namespace deckforge
