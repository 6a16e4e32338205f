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


#include <chrono>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"

namespace deckforge {
namespace {

using fixtures::read_text;

DeckIR example_ir() { return fixtures::flat_file(fixtures::deck("dpo_example")); }

// ----------------------------------------------------------------------------
// Rendering

TEST(RenderTest, CodeRoundTripsThroughTheExtractor) {
  for (const auto& p : fixtures::decks()) {
    const DeckIR ir = fixtures::flat_file(p);
    const ParseResult parsed = parse_deck(render_code(ir));
    ASSERT_TRUE(parsed.ok()) << p;
    const ExtractResult ex = extract_ir(parsed.commands);
    ASSERT_TRUE(ex.ok()) << p;
    EXPECT_EQ(flatten_ir(ex.ir), ir) << p;
  }
}

TEST(RenderTest, InstructionMentionsEveryRegion) {
  const DeckIR ir = fixtures::flat_file(fixtures::deck("bjt_like"));
  const std::string text = render_instruction(ir);
  for (const auto& r : ir.regions) EXPECT_NE(text.find("\"" + r.name + "\""), std::string::npos) << r.name;
  EXPECT_NE(text.find("[0.2, 0.2, 0.2, 0.02, 0.02, 0.02]"), std::string::npos);
}

TEST(RenderTest, CotListsSectionsInOrder) {
  const std::string cot = render_cot(example_ir());
  const auto g = cot.find("Geometry:");
  const auto c = cot.find("Contacts:");
  const auto d = cot.find("Doping:");
  const auto m = cot.find("Mesh:");
  const auto e = cot.find("Export:");
  ASSERT_NE(e, std::string::npos);
  EXPECT_LT(g, c);
  EXPECT_LT(c, d);
  EXPECT_LT(d, m);
  EXPECT_LT(m, e);
  EXPECT_EQ(cot.rfind("1. ", 0), 0u);
}

TEST(RenderTest, FiveParaphrasesShareTheWhitelist) {
  const RenderedSample s = render_sample(fixtures::flat_file(fixtures::deck("hemt_stack")));
  ASSERT_EQ(s.variants.size(), 5u);
  std::set<std::string> styles;
  for (const auto& v : s.variants) {
    styles.insert(v.style);
    EXPECT_TRUE(check_whitelist(v.text, s.whitelist).ok) << v.style;
    EXPECT_NE(v.text, s.instruction);
  }
  EXPECT_EQ(styles.size(), 5u);
  EXPECT_TRUE(check_whitelist(s.instruction, s.whitelist).ok);
  EXPECT_TRUE(check_whitelist(s.cot, s.whitelist).ok);
}

TEST(RenderTest, WhitelistFlagsForeignNumbers) {
  const RenderedSample s = render_sample(example_ir());
  const WhitelistResult r = check_whitelist(s.instruction + " Use 42 and 0.5 twice: 0.5.", s.whitelist);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(std::multiset<std::string>(r.offending.begin(), r.offending.end()),
            (std::multiset<std::string>{"42", "0.5", "0.5"}));
}

TEST(NumeralScanTest, SkipsNamesAndPlaceholders) {
  EXPECT_EQ(scan_numerals("window RW.1 in 2D, file rich_01.tdr, mesh n@node@"), (std::map<std::string, int>{}));
  EXPECT_EQ(scan_numerals("(0, 0, 0) to (1, 1.50, 0); 9.8E12 and -2"),
            (std::map<std::string, int>{{"0", 4}, {"1", 1}, {"1.5", 1}, {"9.8e+12", 1}, {"-2", 1}}));
}

TEST(NumeralScanTest, SkipsLineLeadingListMarkers) {
  EXPECT_EQ(scan_numerals("1. draw the substrate\n  2) dope it to 1e15\n3.\nstep 4. done"),
            (std::map<std::string, int>{{"1e+15", 1}, {"4", 1}}));
}

TEST(StyleLibraryTest, DiskTemplatesOverrideBuiltins) {
  const auto dir = std::filesystem::temp_directory_path() / "deckforge_styles_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "concise.txt") << "Please do this: {{instruction}}\n";
  }
  const StyleLibrary lib = StyleLibrary::load(dir);
  const RenderedSample s = render_sample(example_ir(), lib);
  ASSERT_EQ(s.variants.size(), 5u);
  const auto it = std::find_if(s.variants.begin(), s.variants.end(), [](const auto& v) { return v.style == "concise"; });
  ASSERT_NE(it, s.variants.end());
  EXPECT_EQ(it->text, "Please do this: " + s.instruction);
  EXPECT_EQ(lib.get("research"), StyleLibrary::builtin().get("research"));
  std::filesystem::remove_all(dir);
}

// ----------------------------------------------------------------------------
// Diversification

TEST(DiversifyTest, VariantsAreDistinctAndEquivalent) {
  const DeckIR ir = fixtures::flat_file(fixtures::deck("rich_02"));
  const DiversificationBatch b = diversify(ir, 12, 5);
  EXPECT_EQ(b.variants.size(), 12u);
  EXPECT_TRUE(b.warnings.empty());
  std::set<std::string> codes;
  for (const auto& v : b.variants) {
    EXPECT_EQ(compute_fact_card(v.ir), compute_fact_card(ir));
    EXPECT_TRUE(verify_equivalence(relayout(ir), v.ir).ok);
    EXPECT_FALSE(v.transforms.empty());
    codes.insert(render_code(v.ir));
  }
  EXPECT_EQ(codes.size(), b.variants.size());
  EXPECT_EQ(codes.count(render_code(ir)), 0u);
}

TEST(DiversifyTest, SameSeedSameBatch) {
  const DeckIR ir = fixtures::flat_file(fixtures::deck("diode_3d"));
  EXPECT_EQ(batch_to_json(diversify(ir, 6, 11)).dump(), batch_to_json(diversify(ir, 6, 11)).dump());
  EXPECT_NE(batch_to_json(diversify(ir, 6, 11)).dump(), batch_to_json(diversify(ir, 6, 12)).dump());
}

TEST(DiversifyTest, TransformRecordsRoundTrip) {
  const DiversificationBatch b = diversify(fixtures::flat_file(fixtures::deck("rich_01")), 8, 3);
  std::set<std::string> kinds;
  for (const auto& v : b.variants) {
    for (const auto& t : v.transforms) {
      kinds.insert(t.kind);
      EXPECT_EQ(transform_from_json(transform_to_json(t)), t);
    }
  }
  EXPECT_TRUE(kinds.count("numeric_jitter"));
}

TEST(DiversifyTest, StarvedSlotsWarn) {
  // One coordinate pair and no optional statements leave few rewrites.
  const DeckIR ir = fixtures::flat_file(fixtures::deck("minimal_cuboid"));
  DiversifyOptions opt;
  opt.max_attempts = 2;
  const DiversificationBatch b = diversify(ir, 200, 1, opt);
  EXPECT_LT(b.variants.size(), 200u);
  EXPECT_EQ(b.variants.size() + b.warnings.size(), 200u);
}

TEST(DiversifyTest, RejectsBadMultiplier) { EXPECT_THROW(diversify(example_ir(), 0, 0), std::invalid_argument); }

TEST(BandTest, NearJitterStaysInBand) {
  const Decimal v = *Decimal::parse("9.8e+12");
  Rng rng = Rng::stream(3, "band");
  for (int i = 0; i < 200; ++i) {
    const Decimal j = near_jitter(v, rng);
    EXPECT_TRUE(within_band(v, j, 0.05)) << j.str();
  }
}

// ----------------------------------------------------------------------------
// Rejected-sample synthesis

TEST(MutateTest, NearMovesOneUnitAtLiteralPrecision) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = Rng::stream(seed, "near");
    EXPECT_EQ(perturb_near(*Decimal::parse("0.0001"), rng).str(), "0.0002");
  }
  Rng rng = Rng::stream(0, "near");
  for (int i = 0; i < 100; ++i) {
    const double x = perturb_near(*Decimal::parse("9.8e+12"), rng).to_double() / 9.8e12;
    EXPECT_TRUE((x >= 1.03 && x <= 1.12) || (x >= 0.88 && x <= 0.97)) << x;
  }
}

TEST(MutateTest, StepFollowsTheOneTwoFiveGrid) {
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng = Rng::stream(seed, "step");
    seen.insert(perturb_step(*Decimal::parse("2"), rng).str());
  }
  EXPECT_EQ(seen, (std::set<std::string>{"1", "5"}));
}

TEST(MutateTest, ScaleModesAreExactPowersOfTen) {
  Rng rng = Rng::stream(0, "scale");
  EXPECT_EQ(perturb(*Decimal::parse("0.05"), NumericMode::kScale10Up, rng).str(), "0.5");
  EXPECT_EQ(perturb(*Decimal::parse("0.05"), NumericMode::kScale10Down, rng).str(), "0.005");
}

TEST(MutateTest, MagAndWideStayInTheirBands) {
  Rng rng = Rng::stream(0, "factor");
  for (int i = 0; i < 100; ++i) {
    const double m = perturb(Decimal::of(10), NumericMode::kMag, rng).to_double() / 10;
    EXPECT_TRUE((m >= 1.9 && m <= 5.1) || (m >= 1 / 5.1 && m <= 1 / 1.9)) << m;
    const double w = perturb(Decimal::of(10), NumericMode::kWide, rng).to_double() / 10;
    EXPECT_TRUE((w >= 9.9 && w <= 101) || (w >= 1 / 101.0 && w <= 1 / 9.9)) << w;
  }
}

TEST(MutateTest, ProceduralEditsApplyToRichDecks) {
  for (const auto& p : fixtures::rich_decks()) {
    EXPECT_EQ(applicable_procedural(fixtures::flat_file(p)).size(), 4u) << p;
  }
  const DeckIR bare = fixtures::flat_file(fixtures::deck("minimal_rect"));
  EXPECT_FALSE(procedural_applicable(bare, ProceduralKind::kSwapBooleanOrder));
  EXPECT_FALSE(procedural_applicable(bare, ProceduralKind::kContactBeforeRefinement));
}

TEST(MutateTest, NumericRejectedChangesOneNumeral) {
  const DeckIR ir = example_ir();
  const std::string chosen = render_code(ir);
  RejectContext ctx{&ir, chosen, "parent", "rec", nullptr, {}};
  for (auto mode : kNumericModes) {
    Rng rng = Rng::stream(1, "m");
    const auto r = make_one_rejected(ctx, ViolationKind::numeric(mode), rng);
    ASSERT_TRUE(r);
    EXPECT_NE(r->code, chosen);
    const auto a = code_numerals(parse_deck(chosen).commands);
    const auto b = code_numerals(parse_deck(r->code).commands);
    int removed = 0;
    for (const auto& [k, n] : a) removed += std::max(0, n - (b.count(k) ? b.at(k) : 0));
    EXPECT_EQ(removed, 1) << to_string(mode);
    EXPECT_EQ(validate_rejected(chosen, ir, r->code, r->violation).accepted, true) << to_string(mode);
  }
}

TEST(MutateTest, ImpostorNeedsAConflictingCardAndWhitelistedNumerals) {
  const DeckIR rich = fixtures::flat_file(fixtures::deck("rich_01"));
  const DeckIR twin = fixtures::flat_file(fixtures::deck("twin_01"));
  const std::string twin_code = render_code(twin);
  std::vector<ImpostorCandidate> pool = {
      {"twin", "twin-parent", twin_code, compute_fact_card(twin), code_numerals(parse_deck(twin_code).commands)},
  };
  RejectContext ctx{&rich, render_code(rich), "rich-parent", "rich", &pool, {}};
  Rng rng = Rng::stream(0, "imp");
  const auto r = make_one_rejected(ctx, ViolationKind::impostor(), rng);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->code, twin_code);
  EXPECT_EQ(r->violation.source, "twin");
  const ValidationVerdict v = validate_rejected(ctx.chosen_code, rich, r->code, r->violation);
  EXPECT_EQ(v.structural, StructuralCheck::kFailAsIntended);
  EXPECT_NE(v.numeric, NumericCheck::kFailAsIntended);
  EXPECT_NE(v.notes.find("fact-card-conflict"), std::string::npos);

  // The same parent never supplies its own impostor.
  pool[0].parent_id = "rich-parent";
  EXPECT_FALSE(make_one_rejected(ctx, ViolationKind::impostor(), rng));
  EXPECT_THROW(make_rejected(ctx, {ViolationKind::impostor()}, 0), DpoError);
}

TEST(ViolationTest, PlanParsing) {
  const auto plan = parse_plan("numeric:near, procedural:omit_export,impostor");
  ASSERT_EQ(plan.size(), 3u);
  EXPECT_EQ(plan[0], ViolationKind::numeric(NumericMode::kNear));
  EXPECT_EQ(plan[1], ViolationKind::procedural(ProceduralKind::kOmitExport));
  EXPECT_EQ(plan[2], ViolationKind::impostor());
  EXPECT_EQ(plan_string(plan), "numeric:near,procedural:omit_export,impostor");
  EXPECT_THROW(parse_plan("numeric:huge"), std::invalid_argument);
  for (const auto& v : plan) EXPECT_EQ(violation_from_json(violation_to_json(v)), v);
}

// ----------------------------------------------------------------------------
// DPO records

std::vector<DpoSource> small_corpus() {
  std::vector<DpoSource> out;
  for (const char* stem : {"dpo_example", "rich_01", "twin_01", "rich_05", "twin_05"}) {
    out.push_back({stem, fixtures::extract_file(fixtures::deck(stem))});
  }
  return out;
}

TEST(DpoBuildTest, RecordsValidateAndRoundTrip) {
  DpoBuildOptions opt;
  opt.multiplier = 6;
  const DpoBuildResult res = build_dpo(small_corpus(), opt);
  EXPECT_EQ(res.records.size(), 30u);
  EXPECT_TRUE(res.quarantined.empty());
  for (const auto& r : res.records) {
    EXPECT_EQ(r.rejected.size(), 3u);
    EXPECT_TRUE(validate_pair(r).ok()) << r.id;
    EXPECT_EQ(record_from_json(record_to_json(r)), r);
    EXPECT_EQ(r.variants.size(), 5u);
    std::set<std::string> codes{r.chosen};
    for (const auto& e : r.rejected) EXPECT_TRUE(codes.insert(e.code).second) << r.id;
  }
  const SerializedDpo out = serialize_dpo(res.records);
  EXPECT_EQ(parse_dpo_jsonl(out.jsonl), res.records);
  EXPECT_EQ(out.manifest.at("records"), 30);
}

TEST(DpoBuildTest, Deterministic) {
  DpoBuildOptions opt;
  opt.multiplier = 4;
  opt.seed = 9;
  EXPECT_EQ(serialize_dpo(build_dpo(small_corpus(), opt).records).jsonl,
            serialize_dpo(build_dpo(small_corpus(), opt).records).jsonl);
}

TEST(DpoBuildTest, ImpostorFallsBackToASecondNumeric) {
  DpoBuildOptions opt;
  opt.multiplier = 3;
  const DpoBuildResult res = build_dpo({{"only", fixtures::extract_file(fixtures::deck("dpo_example"))}}, opt);
  ASSERT_EQ(res.records.size(), 3u);
  EXPECT_FALSE(res.warnings.empty());
  for (const auto& r : res.records) {
    ASSERT_EQ(r.rejected.size(), 3u);
    EXPECT_EQ(r.rejected[0].violation.family, ViolationFamily::kNumeric);
    EXPECT_EQ(r.rejected[2].violation.family, ViolationFamily::kNumeric);
    EXPECT_NE(r.rejected[0].violation.mode, r.rejected[2].violation.mode);
  }
}

TEST(DpoBuildTest, InapplicableProceduralEditIsQuarantinedOrThrows) {
  DpoBuildOptions opt;
  opt.multiplier = 2;
  opt.plan = {ViolationKind::procedural(ProceduralKind::kSwapBooleanOrder)};
  const DpoBuildResult res = build_dpo({{"single", fixtures::extract_file(fixtures::deck("gaussian_only"))}}, opt);
  EXPECT_TRUE(res.records.empty());
  EXPECT_EQ(res.quarantined.size(), 2u);
  for (const auto& q : res.quarantined) EXPECT_NE(q.reason.find("not applicable"), std::string::npos);
}

TEST(DpoSerializeTest, SortsAndRejectsIdCollisions) {
  DpoBuildOptions opt;
  opt.multiplier = 2;
  auto records = build_dpo(small_corpus(), opt).records;
  std::reverse(records.begin(), records.end());
  auto dup = records;
  dup.push_back(records.front());
  const SerializedDpo a = serialize_dpo(records);
  EXPECT_EQ(serialize_dpo(dup).jsonl, a.jsonl);
  dup.back().instruction += " changed";
  EXPECT_THROW(serialize_dpo(dup), DpoError);
  const auto parsed = parse_dpo_jsonl(a.jsonl);
  EXPECT_TRUE(std::is_sorted(parsed.begin(), parsed.end(), [](const auto& x, const auto& y) { return x.id < y.id; }));
}

TEST(DpoSerializeTest, RejectsForeignSchema) {
  DpoBuildOptions opt;
  opt.multiplier = 1;
  auto j = record_to_json(build_dpo(small_corpus(), opt).records.front());
  j["schema"] = "other/9";
  EXPECT_THROW(record_from_json(j), DpoError);
}

// ----------------------------------------------------------------------------
// Evaluation

TEST(EvalTest, StripCandidate) {
  EXPECT_EQ(strip_candidate("Sure!\n```scheme\n(sde:build-mesh \"m\")\n```\nDone."), "(sde:build-mesh \"m\")\n");
  EXPECT_EQ(strip_candidate("Here:\n(a 1)\n(b 2)\nHope it helps"), "(a 1)\n(b 2)\n");
  EXPECT_EQ(strip_candidate("no code at all"), "");
  EXPECT_EQ(strip_candidate("Here:\n(a 1\n  (b 2"), "(a 1\n  (b 2\n");
}

TEST(EvalTest, PercentRoundsHalfUp) {
  EXPECT_EQ((Fraction{13, 20}).percent(), "65.0%");
  EXPECT_EQ((Fraction{2, 3}).percent(), "66.7%");
  EXPECT_EQ((Fraction{1, 8}).percent(), "12.5%");
  EXPECT_EQ((Fraction{1, 16}).percent(), "6.3%");
  EXPECT_EQ((Fraction{0, 0}).percent(), "n/a");
}

std::vector<InstructionCase> two_cases() {
  return render_testset({fixtures::flat_file(fixtures::deck("dpo_example")),
                         fixtures::flat_file(fixtures::deck("resistor_bab"))},
                        0);
}

TEST(EvalTest, BestVerdictWithinK) {
  const auto cases = two_cases();
  const std::string good0 = render_code(cases[0].source_ir);
  const std::vector<GenerationSet> gens = {
      {cases[0].case_id, {"(broken", good0}, ""},
      {cases[1].case_id, {"", "", ""}, ""},
  };
  const EvalSummary s = evaluate(cases, gens);
  EXPECT_EQ(s.cases, 2);
  EXPECT_EQ(s.at_k(1)->pass.num, 0);
  EXPECT_EQ(s.at_k(3)->pass.num, 1);
  EXPECT_EQ(s.at_k(3)->direct, 1);
  EXPECT_EQ(s.at_k(3)->fail, 1);

  EvalOptions vacuous;
  vacuous.empty_is_pass = true;
  EXPECT_EQ(evaluate(cases, gens, vacuous).at_k(1)->pass.num, 1);
}

TEST(EvalTest, MissingAndUnknownGenerations) {
  const auto cases = two_cases();
  const EvalSummary s = evaluate(cases, {});
  EXPECT_EQ(s.at_k(1)->fail, 2);
  EXPECT_EQ(s.warnings.size(), 2u);
  EvalOptions strict;
  strict.strict_missing = true;
  EXPECT_THROW(evaluate(cases, {}, strict), EvalError);
  EXPECT_THROW(evaluate(cases, {{"case-nope", {"x"}, ""}}), EvalError);
  EXPECT_THROW(evaluate(cases, {{cases[0].case_id, {"x"}, ""}, {cases[0].case_id, {"y"}, ""}}), EvalError);
  EvalOptions badk;
  badk.k_values = {0};
  EXPECT_THROW(evaluate(cases, {}, badk), EvalError);
}

TEST(EvalTest, ReportTableAndJson) {
  const auto cases = two_cases();
  const EvalSummary s = evaluate(cases, {{cases[0].case_id, {render_code(cases[0].source_ir)}, ""}});
  const std::string table = report_table(s);
  EXPECT_NE(table.find("Pass@k"), std::string::npos);
  EXPECT_NE(table.find("50.0%"), std::string::npos);
  const auto j = summary_to_json(s);
  EXPECT_EQ(j.at("pass_at_1_percent"), "50.0%");
  EXPECT_EQ(report_table(evaluate({}, {})), "no cases\n");
}

TEST(EvalTest, CaseConstantsFollowTheBounds) {
  const ConstantMap c = case_constants(fixtures::flat_file(fixtures::deck("hemt_stack")));
  EXPECT_EQ(c.at("width").str(), "3");
  EXPECT_EQ(c.at("height").str(), "2.125");
  EXPECT_EQ(c.at("barrier_height").str(), "0.025");
  EXPECT_FALSE(c.count("depth"));
}

TEST(EvalTest, TestsetIsStableAndTagged) {
  const auto a = two_cases();
  const auto b = two_cases();
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a[0].tags.count("2D"));
  EXPECT_TRUE(a[0].tags.count("contacts"));
  EXPECT_TRUE(a[1].tags.count("BAB"));
  for (const auto& c : a) EXPECT_EQ(case_from_json(case_to_json(c)), c);
  const DeckIR ir = fixtures::flat_file(fixtures::deck("dpo_example"));
  EXPECT_THROW(render_testset({ir, ir}, 0), EvalError);
}

// ----------------------------------------------------------------------------
// QA synthesis

TEST(SegmentTest, HeadingsStartSegments) {
  const std::string doc = read_text(fixtures::root() / "docs" / "structure_editor_guide.md");
  const auto segs = segment_text(doc, "guide", SourceKind::kUserGuide, {}, nullptr);
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[0].text.rfind("# Creating Regions", 0), 0u);
  EXPECT_EQ(segs[2].text.rfind("# Meshing", 0), 0u);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    EXPECT_EQ(segs[i].segment_index, static_cast<int>(i));
    EXPECT_NE(doc.find(segs[i].text), std::string::npos);
  }
}

TEST(SegmentTest, LongParagraphsSplitAtWhitespace) {
  std::string doc;
  for (int i = 0; i < 300; ++i) doc += "word" + std::to_string(i) + " ";
  SegmentOptions opt;
  opt.max_chars = 200;
  const auto segs = segment_text(doc, "d", SourceKind::kTextbook, opt, nullptr);
  ASSERT_GT(segs.size(), 5u);
  for (const auto& s : segs) {
    EXPECT_LE(s.text.size(), 200u);
    EXPECT_NE(s.text.front(), ' ');
  }
}

TEST(SegmentTest, EmptyDocumentWarns) {
  std::vector<std::string> warnings;
  EXPECT_TRUE(segment_text("  \n\n", "e", SourceKind::kUserGuide, {}, &warnings).empty());
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(AlpacaTest, Validation) {
  EXPECT_TRUE(validate_alpaca(R"({"instruction":"q","input":"","output":"a"})").ok());
  EXPECT_EQ(validate_alpaca("nope").reason, "invalid-json");
  EXPECT_EQ(validate_alpaca(R"({"instruction":"q","output":"a"})").reason, "missing-input");
  EXPECT_EQ(validate_alpaca(R"({"instruction":1,"input":"","output":"a"})").reason, "non-string-instruction");
  EXPECT_EQ(validate_alpaca(R"({"instruction":"q","input":"","output":"a","x":1})").reason, "unexpected-field");
  EXPECT_EQ(validate_alpaca(R"({"instruction":"  ","input":"","output":"a"})").reason, "empty-instruction");
  EXPECT_EQ(validate_alpaca(R"({"instruction":"q","input":"","output":""})").reason, "empty-output");
  EXPECT_EQ(validate_alpaca("[1]").reason, "not-object");
}

TEST(AlpacaTest, ArraysKeepValidItems) {
  const AlpacaBatch b = validate_alpaca_array(
      "```json\n[{\"instruction\":\"q\",\"input\":\"\",\"output\":\"a\"}, {\"instruction\":\"q2\"}]\n```");
  ASSERT_EQ(b.accepted.size(), 1u);
  ASSERT_EQ(b.rejections.size(), 1u);
  EXPECT_EQ(b.rejections[0].index, 1u);
}

TEST(AlpacaTest, ListParsingAcceptsPythonLiterals) {
  EXPECT_EQ(parse_string_list(R"(['a', "b", 'it\'s',])"), (std::vector<std::string>{"a", "b", "it's"}));
  EXPECT_EQ(parse_string_list(R"(["x"])"), (std::vector<std::string>{"x"}));
  EXPECT_FALSE(parse_string_list("['unterminated"));
  EXPECT_FALSE(parse_string_list("[1, 2]"));
  EXPECT_EQ(parse_keywords(R"({"keywords": ["k1", "k2"]})"), (std::vector<std::string>{"k1", "k2"}));
  EXPECT_FALSE(parse_keywords(R"({"words": []})"));
}

TEST(AlpacaTest, DedupNormalizesCaseAndSpacing) {
  const auto out = dedup(std::vector<QaTriple>{{"What is ABA?", "", "A mode."},
                                               {"what  is aba?", "", "a mode."},
                                               {"What is BAB?", "", "A mode."}});
  EXPECT_EQ(out.size(), 2u);
}

TEST(PromptTest, ShippedTemplatesRender) {
  const PromptLibrary lib = PromptLibrary::load(fixtures::data_dir() / "prompts");
  const std::string p = lib.render("augment_questions", {{"language", "English"},
                                                         {"question", "Q?"},
                                                         {"answer", "A."},
                                                         {"count", "10"}});
  EXPECT_NE(p.find("Q?"), std::string::npos);
  EXPECT_EQ(p.find("{{"), std::string::npos);
  EXPECT_THROW(lib.render("generate_qa", {}), std::runtime_error);
}

std::vector<DocumentSegment> doc_segments() {
  std::vector<SourceDocument> docs = {
      {"guide", read_text(fixtures::root() / "docs" / "structure_editor_guide.md"), SourceKind::kUserGuide},
      {"notes", read_text(fixtures::root() / "docs" / "device_physics_notes.txt"), SourceKind::kTextbook},
  };
  return segment_documents(docs, {}, nullptr);
}

TEST(QaPipelineTest, LineageAndIds) {
  MockGeneratorClient client;
  PipelineOptions opt;
  opt.paraphrases = 2;
  const PipelineResult r = run_pipeline1(doc_segments(), client, opt);
  ASSERT_FALSE(r.pairs.empty());
  EXPECT_EQ(r.pairs[0].id, "p1/guide/0/0");
  EXPECT_EQ(r.pairs[1].id, "p1/guide/0/0/v0");
  EXPECT_EQ(r.pairs[1].lineage.paraphrase_of, "p1/guide/0/0");
  EXPECT_EQ(r.pairs[1].triple.output, r.pairs[0].triple.output);
  const auto [qa, lineage] = serialize_qa(r.pairs);
  EXPECT_EQ(std::count(qa.begin(), qa.end(), '\n'), std::count(lineage.begin(), lineage.end(), '\n'));
}

TEST(QaPipelineTest, NonTechnicalSegmentsAreSkipped) {
  MockGeneratorClient client;
  const PipelineResult r = run_pipeline2(doc_segments(), client);
  bool skipped = false;
  for (const auto& line : r.log) skipped = skipped || line.find("notes/0: no keywords") != std::string::npos;
  EXPECT_TRUE(skipped);
  for (const auto& p : r.pairs) {
    EXPECT_TRUE(p.lineage.keyword.has_value());
    EXPECT_FALSE(p.lineage.doc_id == "notes" && p.lineage.segment_index == 0);
  }
}

TEST(QaPipelineTest, TransientFailuresAreRetried) {
  MockConfig cfg;
  cfg.transient_failures["generate_qa:guide/1"] = 2;
  MockGeneratorClient flaky(cfg);
  MockGeneratorClient steady;
  PipelineOptions opt;
  opt.backoff = std::chrono::milliseconds(0);
  opt.paraphrases = 1;
  const auto a = run_pipeline1(doc_segments(), flaky, opt);
  const auto b = run_pipeline1(doc_segments(), steady, opt);
  EXPECT_EQ(a.pairs, b.pairs);
  EXPECT_EQ(std::count_if(a.log.begin(), a.log.end(),
                          [](const auto& l) { return l.find("retry") != std::string::npos; }),
            2);

  MockConfig hopeless;
  hopeless.transient_failures["generate_qa:guide/1"] = 99;
  MockGeneratorClient dead(hopeless);
  const auto c = run_pipeline1(doc_segments(), dead, opt);
  EXPECT_LT(c.pairs.size(), b.pairs.size());
}

TEST(QaPipelineTest, MalformedRepliesAreDropped) {
  MockConfig cfg;
  cfg.malformed.insert("extract_keywords:guide/0");
  MockGeneratorClient client(cfg);
  MockGeneratorClient steady;
  const auto a = run_pipeline2(doc_segments(), client);
  const auto b = run_pipeline2(doc_segments(), steady);
  EXPECT_EQ(a.pairs.size() + 3, b.pairs.size());
}

TEST(QaPipelineTest, ParallelRunMatchesSerialRun) {
  MockGeneratorClient client;
  PipelineOptions serial;
  PipelineOptions parallel;
  parallel.parallelism = 4;
  EXPECT_EQ(run_pipeline1(doc_segments(), client, serial).pairs, run_pipeline1(doc_segments(), client, parallel).pairs);
  EXPECT_EQ(run_pipeline2(doc_segments(), client, serial).pairs, run_pipeline2(doc_segments(), client, parallel).pairs);
}

}  // namespace
}  // namespace deckforge
