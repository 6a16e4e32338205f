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
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "deckforge/core/rng.hpp"
#include "deckforge/deck/parser.hpp"
#include "deckforge/deck/registry.hpp"
#include "deckforge/dpo/violation.hpp"
#include "deckforge/ir/fact_card.hpp"
#include "deckforge/ir/ir.hpp"
#include "deckforge/render/numerals.hpp"

namespace deckforge {

class DpoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violation magnitudes. `near` lies outside the equivalence band.
struct ViolationBands {
  double near_lo = 0.05, near_hi = 0.10;
  double mag_lo = 2.0, mag_hi = 5.0;
  double wide_lo = 10.0, wide_hi = 100.0;
};

struct RejectedSample {
  std::string code;
  ViolationKind violation;  // as realized: concrete mode/kind, impostor source
  std::string detail;       // e.g. "sdedr:define-refinement-size[6]: 0.0001 -> 0.0002"
};

/// Code from another record, usable as an impostor.
struct ImpostorCandidate {
  std::string id;
  std::string parent_id;
  std::string code;
  FactCard card;
  std::map<std::string, int> numerals;
};

// ---------------------------------------------------------------------------
// Numeric perturbations

/// One unit in the last digit the canonical literal writes: 1 for `10`,
/// 0.0001 for `0.0001`, 1e+11 for `9.8e+12`.
inline Decimal literal_quantum(const Decimal& v) {
  const bool scientific = v.str().find('e') != std::string::npos;
  return Decimal::from_parts(false, 1, scientific ? v.exponent() : std::min(v.exponent(), 0));
}

/// A 5-10% deviation expressed at the literal's own precision, moving at
/// least one unit and never reaching zero (0.0001 becomes 0.0002).
inline Decimal perturb_near(const Decimal& v, Rng& rng, const ViolationBands& b = {}) {
  const Decimal q = literal_quantum(v);
  const double qd = q.to_double();
  const double a = std::fabs(v.to_double());
  const auto units = static_cast<std::int64_t>(std::llround(a / qd));
  const bool up = rng.coin();
  const double target = a * (1.0 + (up ? 1.0 : -1.0) * rng.uniform(b.near_lo, b.near_hi));
  auto k = static_cast<std::int64_t>(std::llround(target / qd));
  if (k == units) k += up ? 1 : -1;
  if (k <= 0) k = units + 1;
  return Decimal::from_parts(v.is_negative(), static_cast<std::uint64_t>(k), q.exponent());
}

/// Next value on the {1, 2, 5} x 10^k grid above or below |v|.
inline Decimal perturb_step(const Decimal& v, Rng& rng) {
  const Decimal a = v.abs();
  const int m = a.magnitude();
  std::vector<Decimal> grid;
  for (int k = m - 1; k <= m + 1; ++k) {
    for (std::uint64_t s : {1u, 2u, 5u}) grid.push_back(Decimal::from_parts(false, s, k));
  }
  const bool up = rng.coin();
  std::optional<Decimal> pick;
  for (const auto& g : grid) {
    if (up && a < g && (!pick || g < *pick)) pick = g;
    if (!up && g < a && (!pick || *pick < g)) pick = g;
  }
  const Decimal out = pick.value_or(a.scaled_pow10(1));
  return v.is_negative() ? out.negated() : out;
}

inline Decimal perturb_factor(const Decimal& v, Rng& rng, double lo, double hi) {
  const double f = rng.uniform(lo, hi);
  const double x = rng.coin() ? v.to_double() * f : v.to_double() / f;
  Decimal out = Decimal::from_double(x, std::max(v.significant_digits(), 2));
  return out == v || out.is_zero() ? v.scaled_pow10(1) : out;
}

inline Decimal perturb(const Decimal& v, NumericMode mode, Rng& rng, const ViolationBands& b = {}) {
  switch (mode) {
    case NumericMode::kNear: return perturb_near(v, rng, b);
    case NumericMode::kStep: return perturb_step(v, rng);
    case NumericMode::kMag: return perturb_factor(v, rng, b.mag_lo, b.mag_hi);
    case NumericMode::kWide: return perturb_factor(v, rng, b.wide_lo, b.wide_hi);
    case NumericMode::kScale10Up: return v.scaled_pow10(1);
    case NumericMode::kScale10Down: return v.scaled_pow10(-1);
  }
  return v;
}

/// Location of a non-zero numeral in a registry command.
struct NumeralSite {
  std::size_t command = 0;
  std::size_t ordinal = 0;  // among the command's numbers, in for_each_number order
  Decimal value;
};

inline std::vector<NumeralSite> numeral_sites(const std::vector<CommandNode>& nodes) {
  std::vector<NumeralSite> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!is_known_command(nodes[i].head)) continue;
    std::size_t ordinal = 0;
    for_each_number(nodes[i], [&](const Decimal& d) {
      if (!d.is_zero()) out.push_back({i, ordinal, d});
      ++ordinal;
    });
  }
  return out;
}

inline void set_numeral(std::vector<CommandNode>& nodes, const NumeralSite& site, const Decimal& value) {
  std::size_t ordinal = 0;
  for_each_number_mut(nodes[site.command], [&](Decimal& d) {
    if (ordinal++ == site.ordinal) d = value;
  });
}

/// Numeric rejected sample that changes exactly `site`.
inline RejectedSample perturb_at(std::vector<CommandNode> nodes, const NumeralSite& site, NumericMode mode, Rng& rng,
                                 const ViolationBands& bands = {}) {
  const Decimal changed = perturb(site.value, mode, rng, bands);
  set_numeral(nodes, site, changed);
  std::string detail = nodes[site.command].head + "[" + std::to_string(site.ordinal) + "]: " + site.value.str() +
                       " -> " + changed.str();
  return RejectedSample{unparse(nodes), ViolationKind::numeric(mode), std::move(detail)};
}

// ---------------------------------------------------------------------------
// Procedural edits

namespace detail {

inline bool is_region_command(const CommandNode& n) {
  return n.head == cmd::kCreateRectangle || n.head == cmd::kCreateCuboid;
}

inline bool is_contact_command(const CommandNode& n) {
  return n.head == cmd::kDefineContactSet || n.head == cmd::kSetContact;
}

inline bool is_refinement_command(const CommandNode& n) {
  return n.head == cmd::kRefinementSize || n.head == cmd::kRefinementPlacement;
}

inline bool box_in(const RegionSpec& inner, const RegionSpec& outer) {
  return box_contains(outer.min, outer.max, inner.min) && box_contains(outer.min, outer.max, inner.max);
}

/// Region pairs (earlier, later) whose exchange makes one region vanish.
inline std::vector<std::pair<std::string, std::string>> swappable_regions(const DeckIR& ir) {
  std::vector<const RegionSpec*> ordered;
  for (const auto& r : ir.regions) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const RegionSpec* a, const RegionSpec* b) { return a->boolean_op_index < b->boolean_op_index; });
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    for (std::size_t j = i + 1; j < ordered.size(); ++j) {
      const bool fires = ir.boolean_mode == BooleanMode::kABA ? box_in(*ordered[j], *ordered[i])
                                                               : box_in(*ordered[i], *ordered[j]);
      if (fires) out.emplace_back(ordered[i]->name, ordered[j]->name);
    }
  }
  return out;
}

inline std::optional<std::size_t> find_command(const std::vector<CommandNode>& nodes, auto&& pred) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (pred(nodes[i])) return i;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> region_command(const std::vector<CommandNode>& nodes, const std::string& name) {
  return find_command(nodes, [&](const CommandNode& n) {
    return is_region_command(n) && n.args.size() == 4 && as_string(n.args[3]) && as_string(n.args[3])->value == name;
  });
}

}  // namespace detail

inline bool procedural_applicable(const DeckIR& ir, ProceduralKind kind) {
  switch (kind) {
    case ProceduralKind::kSwapBooleanOrder: return !detail::swappable_regions(ir).empty();
    case ProceduralKind::kContactBeforeRefinement: return !ir.contacts.empty() && !ir.refinements.empty();
    case ProceduralKind::kOmitBuildMesh: return ir.exports.build_mesh && ir.exports.any_save();
    case ProceduralKind::kOmitExport: return ir.exports.build_mesh && ir.exports.any_save();
  }
  return false;
}

inline std::vector<ProceduralKind> applicable_procedural(const DeckIR& ir) {
  std::vector<ProceduralKind> out;
  for (auto k : kProceduralKinds) {
    if (procedural_applicable(ir, k)) out.push_back(k);
  }
  return out;
}

/// Applies one procedural edit to canonical commands; nullopt when the deck
/// offers no place for it.
inline std::optional<std::vector<CommandNode>> apply_procedural(std::vector<CommandNode> nodes, const DeckIR& ir,
                                                                ProceduralKind kind, Rng& rng) {
  if (!procedural_applicable(ir, kind)) return std::nullopt;
  switch (kind) {
    case ProceduralKind::kSwapBooleanOrder: {
      const auto pairs = detail::swappable_regions(ir);
      const auto& [early, late] = pairs[rng.below(pairs.size())];
      const auto a = detail::region_command(nodes, early);
      const auto b = detail::region_command(nodes, late);
      if (!a || !b) return std::nullopt;
      std::swap(nodes[*a], nodes[*b]);
      return nodes;
    }
    case ProceduralKind::kContactBeforeRefinement: {
      std::vector<CommandNode> contacts;
      std::vector<CommandNode> rest;
      for (auto& n : nodes) (detail::is_contact_command(n) ? contacts : rest).push_back(std::move(n));
      const auto first = detail::find_command(rest, detail::is_refinement_command);
      if (!first || contacts.empty()) return std::nullopt;
      rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(*first), contacts.begin(), contacts.end());
      return rest;
    }
    case ProceduralKind::kOmitBuildMesh:
    case ProceduralKind::kOmitExport: {
      const std::string_view head = kind == ProceduralKind::kOmitBuildMesh ? cmd::kBuildMesh : cmd::kSaveTdrBnd;
      const auto before = nodes.size();
      std::erase_if(nodes, [&](const CommandNode& n) { return n.head == head; });
      if (nodes.size() == before) return std::nullopt;
      return nodes;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rejected-variant synthesis

struct RejectContext {
  const DeckIR* ir = nullptr;
  std::string chosen_code;
  std::string parent_id;
  std::string record_id;
  const std::vector<ImpostorCandidate>* pool = nullptr;
  ViolationBands bands;
};

/// One rejected sample for `want`, or nullopt when the violation cannot be
/// realized on this record (no numerals, no applicable edit, no impostor).
inline std::optional<RejectedSample> make_one_rejected(const RejectContext& ctx, const ViolationKind& want, Rng& rng) {
  const ParseResult parsed = parse_deck(ctx.chosen_code);
  if (!parsed.ok()) throw DpoError("chosen code does not parse");
  switch (want.family) {
    case ViolationFamily::kNumeric: {
      const auto sites = numeral_sites(parsed.commands);
      if (sites.empty()) return std::nullopt;
      const NumericMode mode = want.mode.value_or(kNumericModes[rng.below(kNumericModes.size())]);
      const NumeralSite& site = sites[rng.below(sites.size())];
      return perturb_at(parsed.commands, site, mode, rng, ctx.bands);
    }
    case ViolationFamily::kProcedural: {
      ProceduralKind kind;
      if (want.kind) {
        kind = *want.kind;
      } else {
        const auto kinds = applicable_procedural(*ctx.ir);
        if (kinds.empty()) return std::nullopt;
        kind = kinds[rng.below(kinds.size())];
      }
      auto nodes = apply_procedural(parsed.commands, *ctx.ir, kind, rng);
      if (!nodes) return std::nullopt;
      return RejectedSample{unparse(*nodes), ViolationKind::procedural(kind), to_string(kind)};
    }
    case ViolationFamily::kImpostor: {
      if (!ctx.pool) return std::nullopt;
      const FactCard card = compute_fact_card(*ctx.ir);
      const auto numerals = code_numerals(parsed.commands);
      std::vector<const ImpostorCandidate*> eligible;
      for (const auto& c : *ctx.pool) {
        if (c.parent_id == ctx.parent_id || c.id == ctx.record_id || c.code == ctx.chosen_code) continue;
        if (!want.source.empty() && c.id != want.source) continue;
        if (c.card == card || !is_sub_multiset(c.numerals, numerals)) continue;
        eligible.push_back(&c);
      }
      if (eligible.empty()) return std::nullopt;
      const ImpostorCandidate& pick = *eligible[rng.below(eligible.size())];
      return RejectedSample{pick.code, ViolationKind::impostor(pick.id), to_string(pick.card)};
    }
  }
  return std::nullopt;
}

/// One rejected variant per plan entry. Throws DpoError when an entry cannot
/// be realized.
inline std::vector<RejectedSample> make_rejected(const RejectContext& ctx, const std::vector<ViolationKind>& plan,
                                                 std::uint64_t seed) {
  if (plan.empty()) throw DpoError("empty violation plan");
  std::vector<RejectedSample> out;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    Rng rng = Rng::stream(seed, "reject/" + ctx.record_id, i);
    auto r = make_one_rejected(ctx, plan[i], rng);
    if (!r) throw DpoError("violation '" + to_string(plan[i]) + "' is not applicable to this record");
    out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace deckforge
