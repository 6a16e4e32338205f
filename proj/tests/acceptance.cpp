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


// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails. Each check carries its own runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

namespace deckforge {
namespace {

namespace fs = std::filesystem;
using fixtures::read_text;

struct Outcome {
  bool ok = false;
  std::string detail;
};

// ----------------------------------------------------------------------------
// Oracles written without the library's scanners.

const std::regex& number_token() {
  static const std::regex re(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  return re;
}

/// Splits on whitespace, brackets and punctuation; a token that is wholly a
/// decimal literal (ignoring one sentence-final period) counts as a number.
std::multiset<double> numbers_in_text(const std::string& text) {
  std::multiset<double> out;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty() && tok.back() == '.') tok.pop_back();
    if (std::regex_match(tok, number_token())) out.insert(std::strtod(tok.c_str(), nullptr));
    tok.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || std::string_view("()[],;:\"'").find(c) != std::string_view::npos) {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  return out;
}

/// Deck source with string literals and comments removed.
std::string strip_strings(const std::string& code) {
  std::string out;
  bool in_string = false, in_comment = false;
  for (std::size_t i = 0; i < code.size(); ++i) {
    const char c = code[i];
    if (in_comment) {
      if (c == '\n') {
        in_comment = false;
        out.push_back(c);
      }
    } else if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
      out += "\"\"";
    } else if (c == ';') {
      in_comment = true;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::multiset<double> numbers_in_code(const std::string& code) { return numbers_in_text(strip_strings(code)); }

/// Prose numbers, ignoring list markers such as `3. ` at the start of a line.
std::multiset<double> numbers_in_prose(const std::string& text) {
  static const std::regex marker(R"(^[ \t]*\d+[.)](?= |$))");
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line)) kept += std::regex_replace(line, marker, "") + "\n";
  return numbers_in_text(kept);
}

/// The deck with every numeric literal replaced by `#`.
std::string skeleton(const std::string& code) {
  std::istringstream in(code);
  std::string line, out;
  static const std::regex num(R"((^|[\s(])[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?(?=[\s)]|$))");
  while (std::getline(in, line)) out += std::regex_replace(line, num, "$1#") + "\n";
  return out;
}

bool sub_multiset(const std::multiset<double>& sub, const std::multiset<double>& super) {
  std::multiset<double> rest = super;
  for (double v : sub) {
    auto it = rest.find(v);
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  return true;
}

std::string expected_rule(ProceduralKind k) {
  switch (k) {
    case ProceduralKind::kSwapBooleanOrder: return "boolean-order";
    case ProceduralKind::kContactBeforeRefinement: return "contact-before-refinement";
    case ProceduralKind::kOmitBuildMesh: return "missing-build-mesh";
    case ProceduralKind::kOmitExport: return "missing-export";
  }
  return "";
}

std::vector<DpoSource> passing_sources() {
  std::vector<DpoSource> out;
  for (const auto& p : fixtures::passing_decks()) out.push_back({p.filename().string(), fixtures::extract_file(p)});
  return out;
}

// ----------------------------------------------------------------------------
// Criteria

Outcome example_reproduction() {
  const DeckIR ir = fixtures::flat_file(fixtures::deck("dpo_example"));
  const std::string code = render_code(ir);
  const std::string instruction = render_instruction(ir);
  const std::string line = "(sdedr:define-refinement-size \"global\" 10 10 0.0001 1 1 0.0001)";
  std::vector<std::string> missing;
  std::size_t lines = 0;
  std::istringstream in(code);
  for (std::string l; std::getline(in, l);) lines += l == line;
  if (lines != 1) missing.push_back("refinement line x" + std::to_string(lines));
  if (code.find("(sdeio:save-tdr-bnd ") == std::string::npos) missing.push_back("export");
  for (const char* phrase : {"(0, 0, 0)", "(1, 1, 0)", "9.8e+12", "[10, 10, 0.0001, 1, 1, 0.0001]"}) {
    if (instruction.find(phrase) == std::string::npos) missing.push_back(phrase);
  }
  std::string d = missing.empty() ? "code and instruction carry every expected substring" : "missing:";
  for (const auto& m : missing) d += " " + m;
  return {missing.empty(), d};
}

Outcome violation_reproduction() {
  const DeckIR ir = fixtures::flat_file(fixtures::deck("dpo_example"));
  const std::string chosen = render_code(ir);
  const ParseResult parsed = parse_deck(chosen);
  std::optional<NumeralSite> last;
  for (const auto& s : numeral_sites(parsed.commands)) {
    if (parsed.commands[s.command].head == cmd::kRefinementSize && (!last || s.ordinal > last->ordinal)) last = s;
  }
  if (!last) return {false, "no refinement numeral"};
  const std::string want = "(sdedr:define-refinement-size \"global\" 10 10 0.0001 1 1 0.0002)";
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng = Rng::stream(seed, "near-sweep");
    const RejectedSample r = perturb_at(parsed.commands, *last, NumericMode::kNear, rng);
    if (r.code.find(want) == std::string::npos) continue;
    DpoRecord record;
    record.id = "sweep";
    record.chosen = chosen;
    record.rejected.push_back({r.code, r.violation, {}, r.detail});
    const PairValidation v = validate_pair(record);
    const bool ok = v.chosen_passes && v.verdicts.size() == 1 &&
                    v.verdicts[0].numeric == NumericCheck::kFailAsIntended &&
                    v.verdicts[0].structural == StructuralCheck::kClean;
    return {ok, "seed " + std::to_string(seed) + ": " + r.detail + "; numeric " + to_string(v.verdicts[0].numeric) +
                    ", structural " + to_string(v.verdicts[0].structural)};
  }
  return {false, "no seed below 1000 produced 1 1 0.0002"};
}

Outcome pass_at_k_fixture() {
  const auto cases = read_jsonl(read_text(fixtures::root() / "eval" / "cases.jsonl"), case_from_json);
  const auto gens = read_jsonl(read_text(fixtures::root() / "eval" / "gens.jsonl"), generation_from_json);
  const EvalSummary s = evaluate(cases, gens);
  const KSummary* k1 = s.at_k(1);
  const KSummary* k3 = s.at_k(3);
  if (!k1 || !k3) return {false, "missing k"};
  const bool ok = s.cases == 20 && k1->pass.percent() == "65.0%" && k3->pass.percent() == "80.0%" &&
                  k1->direct == 12 && k1->resolved == 1 && k3->direct == 15 && k3->resolved == 1;
  return {ok, "cases " + std::to_string(s.cases) + ", Pass@1 " + k1->pass.percent() + " (direct " +
                  std::to_string(k1->direct) + ", resolved " + std::to_string(k1->resolved) + "), Pass@3 " +
                  k3->pass.percent() + " (direct " + std::to_string(k3->direct) + ", resolved " +
                  std::to_string(k3->resolved) + ")"};
}

Outcome round_trip() {
  const auto decks = fixtures::decks();
  int good = 0;
  std::string bad;
  for (const auto& p : decks) {
    const DeckIR a = fixtures::flat_file(p);
    const ParseResult parsed = parse_deck(render_code(a));
    const ExtractResult ex = extract_ir(parsed.commands);
    const bool same = parsed.ok() && ex.ok() && flatten_ir(ex.ir) == a &&
                      ir_to_json(flatten_ir(ex.ir)).dump() == ir_to_json(a).dump();
    if (same) ++good;
    else bad += " " + p.stem().string();
  }
  const bool ok = decks.size() >= 25 && good == static_cast<int>(decks.size());
  return {ok, std::to_string(good) + "/" + std::to_string(decks.size()) + " decks identical" +
                  (bad.empty() ? "" : "; differing:" + bad)};
}

Outcome diversification() {
  // Decks without dopings or refinements have nothing to rewrite short of
  // their geometry, so they admit no equivalent variant and are left out.
  std::vector<DeckIR> irs;
  std::string fixed;
  for (const auto& p : fixtures::passing_decks()) {
    DeckIR ir = fixtures::flat_file(p);
    if (ir.dopings.empty() && ir.refinements.empty()) fixed += " " + p.stem().string();
    else irs.push_back(std::move(ir));
  }
  int conserved = 0, passing = 0, deterministic = 0;
  const int trials = 1000;
  Rng seeds = Rng::stream(2026, "acceptance/diversify");
  for (int t = 0; t < trials; ++t) {
    const DeckIR& ir = irs[seeds.below(irs.size())];
    const std::uint64_t seed = seeds.below(1u << 30);
    const DiversificationBatch a = diversify(ir, 1, seed);
    const DiversificationBatch b = diversify(ir, 1, seed);
    if (a.variants.size() != 1) continue;
    const DeckIR& v = a.variants[0].ir;
    conserved += compute_fact_card(v) == compute_fact_card(ir);
    const std::string code = render_code(v);
    passing += check_syntax(code).verdict == Verdict::kDirectPass;
    deterministic += b.variants.size() == 1 && render_code(b.variants[0].ir) == code &&
                     batch_to_json(a).dump() == batch_to_json(b).dump();
  }
  const bool ok = conserved == trials && passing == trials && deterministic == trials;
  return {ok, "fact cards " + std::to_string(conserved) + "/1000, direct pass " + std::to_string(passing) +
                  "/1000, reproducible " + std::to_string(deterministic) + "/1000 over " +
                  std::to_string(irs.size()) + " decks" + (fixed.empty() ? "" : "; no free parameters:" + fixed)};
}

Outcome single_factor() {
  DpoBuildOptions opt;
  opt.multiplier = 20;
  opt.seed = 17;
  const DpoBuildResult res = build_dpo(passing_sources(), opt);
  std::map<ViolationFamily, int> families;
  int total = 0, single = 0, chosen_fail = 0;
  std::string first_bad;
  for (const auto& r : res.records) {
    if (check_syntax(r.chosen).verdict != Verdict::kDirectPass) ++chosen_fail;
    const auto chosen_numbers = numbers_in_code(r.chosen);
    const std::string chosen_shape = skeleton(r.chosen);
    const FactCard chosen_card = compute_fact_card(extract_ir(parse_deck(r.chosen).commands).ir);
    const bool pair_ok = validate_pair(r).ok();
    for (const auto& e : r.rejected) {
      ++total;
      ++families[e.violation.family];
      const bool numeric_fails = !sub_multiset(numbers_in_code(e.code), chosen_numbers);
      const bool structure_changes = skeleton(e.code) != chosen_shape;
      bool ok = pair_ok;
      switch (e.violation.family) {
        case ViolationFamily::kNumeric: ok = ok && numeric_fails && !structure_changes; break;
        case ViolationFamily::kProcedural: {
          const CheckReport rep = check_syntax(e.code);
          ok = ok && !numeric_fails && structure_changes && e.violation.kind &&
               rep.has_rule(expected_rule(*e.violation.kind));
          break;
        }
        case ViolationFamily::kImpostor: {
          const ExtractResult ex = extract_ir(parse_deck(e.code).commands);
          ok = ok && !numeric_fails && structure_changes && ex.ok() && compute_fact_card(ex.ir) != chosen_card;
          break;
        }
      }
      if (ok) ++single;
      else if (first_bad.empty()) first_bad = r.id + " " + to_string(e.violation);
    }
  }
  const bool spans = families[ViolationFamily::kNumeric] > 0 && families[ViolationFamily::kProcedural] > 0 &&
                     families[ViolationFamily::kImpostor] > 0;
  const bool ok = total >= 500 && spans && single == total && chosen_fail == 0 && res.quarantined.empty();
  return {ok, std::to_string(single) + "/" + std::to_string(total) + " single-factor (numeric " +
                  std::to_string(families[ViolationFamily::kNumeric]) + ", procedural " +
                  std::to_string(families[ViolationFamily::kProcedural]) + ", impostor " +
                  std::to_string(families[ViolationFamily::kImpostor]) + "), chosen failures " +
                  std::to_string(chosen_fail) + ", quarantined " + std::to_string(res.quarantined.size()) +
                  (first_bad.empty() ? "" : "; first miss " + first_bad)};
}

Outcome whitelist_soundness() {
  DpoBuildOptions opt;
  opt.multiplier = 40;
  opt.seed = 3;
  const DpoBuildResult res = build_dpo(passing_sources(), opt);
  int texts = 0, offending = 0, short_variants = 0;
  std::string first_bad;
  for (const auto& r : res.records) {
    const auto allowed = numbers_in_code(r.chosen);
    std::vector<std::pair<std::string, const std::string*>> all = {{"instruction", &r.instruction}, {"cot", &r.cot}};
    for (const auto& v : r.variants) all.push_back({v.style, &v.text});
    if (r.variants.size() != 5) ++short_variants;
    for (const auto& [name, text] : all) {
      ++texts;
      if (!sub_multiset(numbers_in_prose(*text), allowed)) {
        ++offending;
        if (first_bad.empty()) first_bad = r.id + " " + name;
      }
    }
  }
  const bool ok = res.records.size() >= 1000 && offending == 0 && short_variants == 0;
  return {ok, std::to_string(res.records.size()) + " records, " + std::to_string(texts) + " texts scanned, " +
                  std::to_string(offending) + " with foreign numerals" +
                  (short_variants ? ", " + std::to_string(short_variants) + " records lack 5 variants" : "") +
                  (first_bad.empty() ? "" : "; first " + first_bad)};
}

Outcome qa_counting() {
  const std::vector<SourceDocument> docs = {
      {"guide", read_text(fixtures::root() / "docs" / "structure_editor_guide.md"), SourceKind::kUserGuide},
      {"notes", read_text(fixtures::root() / "docs" / "device_physics_notes.txt"), SourceKind::kTextbook},
  };
  const auto segments = segment_documents(docs, {}, nullptr);
  std::string detail;
  bool ok = !segments.empty();
  for (int q : {1, 2, 3}) {
    MockConfig cfg;
    cfg.qa_per_segment = q;
    MockGeneratorClient client(cfg);
    PipelineOptions opt;
    opt.paraphrases = 10;
    const auto p1 = run_pipeline1(segments, client, opt);
    const std::size_t want1 = segments.size() * static_cast<std::size_t>(q) * 11;
    ok = ok && p1.pairs.size() == want1;
    detail += "P1(q=" + std::to_string(q) + ") " + std::to_string(p1.pairs.size()) + "/" + std::to_string(want1) + "; ";
  }
  MockGeneratorClient client;
  std::size_t want2 = 0;
  for (const auto& s : segments) {
    want2 += nlohmann::json::parse(client.extract_keywords(s)).at("keywords").size();
  }
  const auto p2 = run_pipeline2(segments, client);
  ok = ok && p2.pairs.size() == want2 && want2 > 0;
  detail += "P2 " + std::to_string(p2.pairs.size()) + "/" + std::to_string(want2) + " over " +
            std::to_string(segments.size()) + " segments";
  return {ok, detail};
}

Outcome rule_coverage() {
  auto decks = fixtures::rich_decks();
  if (decks.size() < 10) return {false, "fewer than 10 rich decks"};
  decks.resize(10);
  int hits = 0;
  std::string misses;
  for (const auto& p : decks) {
    const DeckIR ir = fixtures::flat_file(p);
    const auto nodes = parse_deck(render_code(ir)).commands;
    if (check_syntax(render_code(ir)).verdict != Verdict::kDirectPass) return {false, p.stem().string() + " fails"};
    for (auto kind : kProceduralKinds) {
      Rng rng = Rng::stream(0, "rules/" + p.stem().string());
      const auto edited = apply_procedural(nodes, ir, kind, rng);
      const bool hit = edited && [&] {
        const CheckReport r = check_syntax(unparse(*edited));
        return r.verdict == Verdict::kFail && r.has_rule(expected_rule(kind));
      }();
      if (hit) ++hits;
      else misses += " " + p.stem().string() + "/" + to_string(kind);
    }
  }
  return {hits == 40, std::to_string(hits) + "/40 edits caught by the matching rule" + misses};
}

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace deckforge

int main() {
  using namespace deckforge;
  const std::vector<Criterion> criteria = {
      {1, "example deck reproduction", 1, example_reproduction},
      {2, "near violation on the last refinement entry", 10, violation_reproduction},
      {3, "Pass@k generation fixture", 1, pass_at_k_fixture},
      {4, "render/extract round trip", 5, round_trip},
      {5, "diversification properties", 60, diversification},
      {6, "single-factor rejected variants", 60, single_factor},
      {7, "whitelist soundness", 60, whitelist_soundness},
      {8, "QA pipeline counts", 5, qa_counting},
      {9, "checker rule coverage", 5, rule_coverage},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool ok = o.ok && in_time;
    failed += !ok;
    std::printf("%s [%d] %s (%.2fs / %.0fs budget): %s%s\n", ok ? "PASS" : "FAIL", c.number, c.name, secs,
                c.budget_seconds, o.detail.c_str(), in_time ? "" : " [over budget]");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
