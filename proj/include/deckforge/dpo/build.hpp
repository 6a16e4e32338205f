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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deckforge/diversify/diversify.hpp"
#include "deckforge/dpo/mutate.hpp"
#include "deckforge/dpo/record.hpp"
#include "deckforge/ir/flatten.hpp"
#include "deckforge/render/sample.hpp"

namespace deckforge {

struct DpoSource {
  std::string name;  // e.g. the deck file it came from
  DeckIR ir;
};

struct DpoBuildOptions {
  int multiplier = 10;
  std::uint64_t seed = 0;
  std::vector<ViolationKind> plan = default_plan();
  DiversifyOptions diversify;
  ViolationBands bands;
  const StyleLibrary* styles = nullptr;  // built-in styles when null
  int max_retries = 8;                   // per plan entry, for duplicate codes
};

struct QuarantinedRecord {
  std::string id;
  std::string reason;
  nlohmann::json record;
};

struct DpoBuildResult {
  std::vector<DpoRecord> records;
  std::vector<QuarantinedRecord> quarantined;
  std::vector<std::string> warnings;
};

namespace detail {

struct PendingRecord {
  DpoRecord record;
  DeckIR ir;
};

inline std::optional<RejectedSample> realize(const RejectContext& ctx, const ViolationKind& want, std::size_t index,
                                             std::uint64_t seed, int retries,
                                             const std::vector<RejectedSample>& taken) {
  for (int attempt = 0; attempt < retries; ++attempt) {
    Rng rng = Rng::stream(seed, "reject/" + ctx.record_id, index + static_cast<std::uint64_t>(attempt) * 1000u);
    auto r = make_one_rejected(ctx, want, rng);
    if (!r) return std::nullopt;
    const bool dup = r->code == ctx.chosen_code ||
                     std::any_of(taken.begin(), taken.end(), [&](const auto& t) { return t.code == r->code; });
    if (!dup) return r;
  }
  return std::nullopt;
}

}  // namespace detail

/// Diversifies every source, renders the variants, then attaches one
/// validated rejected sample per plan entry. Records failing validation are
/// quarantined rather than emitted.
inline DpoBuildResult build_dpo(const std::vector<DpoSource>& sources, const DpoBuildOptions& opt = {}) {
  if (opt.plan.empty()) throw DpoError("empty violation plan");
  const StyleLibrary& styles = opt.styles ? *opt.styles : StyleLibrary::builtin();
  DpoBuildResult out;

  // Phase 1: variants and their renderings; these also form the impostor pool.
  std::vector<detail::PendingRecord> pending;
  std::vector<ImpostorCandidate> pool;
  for (const auto& src : sources) {
    const DeckIR parent = flatten_ir(src.ir);
    const DiversificationBatch batch = diversify(parent, opt.multiplier, opt.seed, opt.diversify);
    for (const auto& w : batch.warnings) out.warnings.push_back(src.name + ": " + w);
    for (const auto& v : batch.variants) {
      const RenderedSample sample = render_sample(v.ir, styles);
      detail::PendingRecord p;
      p.ir = v.ir;
      p.record.id = record_id(v.ir, v.transforms, opt.plan);
      p.record.instruction = sample.instruction;
      p.record.cot = sample.cot;
      p.record.chosen = sample.code;
      p.record.variants = sample.variants;
      p.record.lineage = {batch.parent_id, src.name, v.transforms, opt.plan};
      pool.push_back({p.record.id, batch.parent_id, sample.code, compute_fact_card(v.ir),
                      code_numerals(parse_deck(sample.code).commands)});
      pending.push_back(std::move(p));
    }
  }

  // Phase 2: rejected samples and validation.
  for (auto& p : pending) {
    DpoRecord& rec = p.record;
    RejectContext ctx{&p.ir, rec.chosen, rec.lineage.parent_id, rec.id, &pool, opt.bands};
    std::vector<RejectedSample> samples;
    std::string failure;
    for (std::size_t i = 0; i < opt.plan.size() && failure.empty(); ++i) {
      auto r = detail::realize(ctx, opt.plan[i], i, opt.seed, opt.max_retries, samples);
      if (!r && opt.plan[i].family == ViolationFamily::kImpostor) {
        // No eligible impostor: substitute a numeric violation of a mode not
        // used yet by this record.
        std::vector<NumericMode> modes;
        for (auto m : kNumericModes) {
          const bool used = std::any_of(samples.begin(), samples.end(),
                                        [&](const auto& s) { return s.violation.mode == m; });
          if (!used) modes.push_back(m);
        }
        Rng pick = Rng::stream(opt.seed, "fallback/" + rec.id, i);
        const NumericMode mode = modes.empty() ? NumericMode::kWide : modes[pick.below(modes.size())];
        r = detail::realize(ctx, ViolationKind::numeric(mode), i, opt.seed, opt.max_retries, samples);
        if (r) out.warnings.push_back(rec.id + ": no impostor available, used " + to_string(r->violation));
      }
      if (!r) {
        failure = "violation '" + to_string(opt.plan[i]) + "' not applicable";
      } else {
        samples.push_back(std::move(*r));
      }
    }
    for (auto& s : samples) {
      const ValidationVerdict v = validate_rejected(rec.chosen, p.ir, s.code, s.violation);
      rec.rejected.push_back({std::move(s.code), std::move(s.violation), v, std::move(s.detail)});
    }
    if (failure.empty()) {
      const PairValidation pv = validate_pair(rec);
      if (!pv.chosen_passes) {
        failure = "chosen code fails the checker";
      } else if (!pv.ok()) {
        failure = "rejected sample not failing as declared";
      }
    }
    if (failure.empty()) {
      out.records.push_back(std::move(rec));
    } else {
      out.quarantined.push_back({rec.id, failure, record_to_json(rec)});
    }
  }

  std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < out.records.size(); ++i) {
    if (out.records[i].id == out.records[i - 1].id) {
      throw DpoError("id collision: " + out.records[i].id);
    }
  }
  return out;
}

}  // namespace deckforge
