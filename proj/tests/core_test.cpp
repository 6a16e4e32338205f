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


#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"

namespace deckforge {
namespace {

using fixtures::read_text;

// ----------------------------------------------------------------------------
// Decimal, hashing, RNG

TEST(DecimalTest, CanonicalText) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"9.8E12", "9.8e+12"}, {"0.0001", "0.0001"}, {"10", "10"},   {"1.0E+16", "1e+16"}, {"+.5", "0.5"},
      {"0.000", "0"},        {"1.50", "1.5"},      {"-2.0", "-2"}, {"5e-2", "0.05"},     {"1e15", "1e+15"},
  };
  for (const auto& [text, canonical] : cases) {
    const auto d = Decimal::parse(text);
    ASSERT_TRUE(d.has_value()) << text;
    EXPECT_EQ(d->str(), canonical) << text;
  }
}

TEST(DecimalTest, RejectsMalformed) {
  for (const char* bad : {"", "abc", "1..2", "1e", "--1", "0x10"}) EXPECT_FALSE(Decimal::parse(bad)) << bad;
}

TEST(DecimalTest, CanonicalTextParsesBackToItself) {
  for (const char* text : {"0.0002", "1.06e+13", "7.5e+14", "123456", "0.125", "-3.25e-7"}) {
    const auto d = Decimal::parse(text);
    ASSERT_TRUE(d);
    EXPECT_EQ(Decimal::parse(d->str()), d) << text;
    EXPECT_DOUBLE_EQ(d->to_double(), std::stod(text));
  }
}

TEST(DecimalTest, OrderingAndScaling) {
  const Decimal a = *Decimal::parse("0.0001");
  const Decimal b = *Decimal::parse("0.0002");
  EXPECT_LT(a, b);
  EXPECT_EQ(a.scaled_pow10(1).str(), "0.001");
  EXPECT_EQ(Decimal::of(10).magnitude(), 1);
  EXPECT_EQ(Decimal::from_double_shortest(0.1).str(), "0.1");
  EXPECT_EQ(Decimal::from_double(2.0 / 3.0, 3).str(), "0.667");
}

TEST(HashTest, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(HashTest, TaggedHashSeparatesFields) {
  EXPECT_NE(tagged_hash("d", {"ab", "c"}), tagged_hash("d", {"a", "bc"}));
  EXPECT_NE(tagged_hash("d1", {"x"}), tagged_hash("d2", {"x"}));
  EXPECT_EQ(tagged_hash("d", {"x", "y"}), tagged_hash("d", {"x", "y"}));
}

TEST(RngTest, StreamsAreReproducibleAndIndependent) {
  Rng a = Rng::stream(7, "label", 3);
  Rng b = Rng::stream(7, "label", 3);
  Rng c = Rng::stream(7, "other", 3);
  int same = 0;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.below(1000);
    EXPECT_EQ(x, b.below(1000));
    same += x == c.below(1000);
    EXPECT_LT(x, 1000u);
  }
  EXPECT_LT(same, 8);
}

TEST(RngTest, UniformStaysInRange) {
  Rng r = Rng::stream(1, "u");
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform(0.05, 0.10);
    EXPECT_GE(u, 0.05);
    EXPECT_LT(u, 0.10);
  }
}

// ----------------------------------------------------------------------------
// Parsing

TEST(ParserTest, UnparseIsAFixedPoint) {
  for (const auto& p : fixtures::decks()) {
    const ParseResult first = parse_deck(read_text(p));
    ASSERT_TRUE(first.ok()) << p;
    const std::string text = unparse(first.commands);
    const ParseResult second = parse_deck(text);
    ASSERT_TRUE(second.ok()) << p;
    EXPECT_EQ(unparse(second.commands), text) << p;
  }
}

TEST(ParserTest, CommentsAndWhitespaceAreIgnored) {
  const ParseResult a = parse_deck("; header\n(sde:build-mesh   \"m\")  ; trailing\n\n");
  const ParseResult b = parse_deck("(sde:build-mesh \"m\")");
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(unparse(a.commands), unparse(b.commands));
}

TEST(ParserTest, UnbalancedInputReportsAPosition) {
  const ParseResult r = parse_deck("(sde:build-mesh \"m\"\n(sdeio:save-tdr-bnd \"a.tdr\")");
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_GE(r.diagnostics.front().span.line, 1);
  EXPECT_NE(format_diagnostic("deck.cmd", r.diagnostics.front()).find("deck.cmd:"), std::string::npos);
}

TEST(ParserTest, FindsPlaceholders) {
  const auto names = find_placeholders("(position @w@ 1 0) \"n@node@\"");
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()), (std::set<std::string>{"w", "node"}));
}

// ----------------------------------------------------------------------------
// Extraction

TEST(ExtractTest, ExampleDeck) {
  const DeckIR ir = fixtures::extract_file(fixtures::deck("dpo_example"));
  EXPECT_EQ(ir.dimension, Dimension::k2D);
  EXPECT_EQ(ir.boolean_mode, BooleanMode::kABA);
  ASSERT_EQ(ir.regions.size(), 1u);
  EXPECT_EQ(ir.regions[0].material, "Silicon");
  ASSERT_EQ(ir.windows.size(), 1u);
  EXPECT_EQ(ir.windows[0].name, "RW.1");
  ASSERT_EQ(ir.dopings.size(), 1u);
  EXPECT_EQ(ir.dopings[0].concentration.str(), "9.8e+12");
  EXPECT_EQ(ir.dopings[0].target, "RW.1");
  ASSERT_EQ(ir.refinements.size(), 1u);
  EXPECT_TRUE(ir.refinements[0].is_global());
  EXPECT_EQ(ir.refinements[0].min_sizes.z.str(), "0.0001");
  ASSERT_EQ(ir.contacts.size(), 1u);
  EXPECT_EQ(ir.contacts[0].kind, ContactKind::kPoint);
  EXPECT_TRUE(ir.exports.build_mesh);
  EXPECT_TRUE(ir.exports.save_tdr && ir.exports.save_bnd);
}

TEST(ExtractTest, ThreeDimensionalDeck) {
  const DeckIR ir = fixtures::extract_file(fixtures::deck("rich_03"));
  EXPECT_EQ(ir.dimension, Dimension::k3D);
  EXPECT_EQ(ir.up_direction, Axis::kPosZ);
  EXPECT_EQ(ir.regions.size(), 3u);
  EXPECT_EQ(ir.refinements.size(), 2u);
}

struct BadDeck {
  const char* code;
  const char* diagnostic;
};

class ExtractErrorTest : public ::testing::TestWithParam<BadDeck> {};

TEST_P(ExtractErrorTest, Reports) {
  const ParseResult parsed = parse_deck(GetParam().code);
  ASSERT_TRUE(parsed.ok());
  const ExtractResult ex = extract_ir(parsed.commands);
  EXPECT_FALSE(ex.ok());
  bool found = false;
  for (const auto& d : ex.diagnostics) found = found || d.code == GetParam().diagnostic;
  EXPECT_TRUE(found) << GetParam().diagnostic;
}

INSTANTIATE_TEST_SUITE_P(
    Decks, ExtractErrorTest,
    ::testing::Values(
        BadDeck{"(sdegeo:create-rectangle (position 0 0 0) (position 1 1 0) \"Silicon\" \"a\")\n"
                "(sdegeo:create-rectangle (position 0 0 0) (position 2 1 0) \"Silicon\" \"a\")",
                "duplicate-name"},
        BadDeck{"(sdedr:define-constant-profile-placement \"p\" \"missing\" \"a\")", "undefined-reference"},
        BadDeck{"(sdegeo:create-rectangle (position 0 0 0) (position 1 1 0) \"Silicon\" \"a\")\n"
                "(sdegeo:create-cuboid (position 0 0 0) (position 1 1 1) \"Silicon\" \"b\")",
                "mixed-dimension"},
        BadDeck{"(sdegeo:create-rectangle (position 0 0 0) (position 1 1 0) \"Silicon\" \"a\")\n"
                "(sdedr:define-gaussian-profile \"g\" \"Boron\" 1e18 0.1)\n"
                "(sdedr:define-constant-profile-placement \"p\" \"g\" \"a\")",
                "profile-kind-mismatch"},
        BadDeck{"(sdegeo:set-default-boolean \"ABA\")\n(sdegeo:set-default-boolean \"BAB\")", "conflicting-boolean"},
        BadDeck{"(sde:build-mesh)\n(sde:build-mesh)", "duplicate-command"},
        BadDeck{"(sdegeo:create-rectangle (position 0 0 0) \"Silicon\" \"a\")", "bad-arguments"}));

TEST(ExtractTest, UnknownCommandsAreKept) {
  const ParseResult parsed = parse_deck("(sde:clear)\n(sde:build-mesh \"m\")");
  const ExtractResult ex = extract_ir(parsed.commands);
  ASSERT_TRUE(ex.ok());
  ASSERT_EQ(ex.ir.unrecognized.size(), 1u);
  EXPECT_EQ(ex.ir.unrecognized[0].node.head, "sde:clear");
}

// ----------------------------------------------------------------------------
// Flattening, JSON, fact cards, diffs

TEST(FlattenTest, ResolvesAliasesAndSortsMaterials) {
  const DeckIR ir = fixtures::flat_file(fixtures::deck("rich_01"));
  EXPECT_EQ(ir.find_region("well")->material, "SiO2");
  EXPECT_TRUE(std::is_sorted(ir.materials.begin(), ir.materials.end()));
  for (const auto& m : ir.materials) EXPECT_TRUE(is_known_material(m)) << m;
}

TEST(FlattenTest, IsIdempotent) {
  for (const auto& p : fixtures::decks()) {
    const DeckIR once = fixtures::flat_file(p);
    EXPECT_EQ(flatten_ir(once), once) << p;
  }
}

TEST(FlattenTest, CustomAliasTable) {
  const AliasTable table = AliasTable::from_json(nlohmann::json{{"Poly", "PolySi"}});
  DeckIR ir = fixtures::extract_file(fixtures::deck("rich_04"));
  EXPECT_EQ(flatten_ir(ir, table).find_region("cap")->material, "PolySi");
}

TEST(JsonTest, RoundTripsEveryFixture) {
  for (const auto& p : fixtures::decks()) {
    const DeckIR ir = fixtures::extract_file(p);
    const nlohmann::json j = ir_to_json(ir);
    EXPECT_EQ(ir_from_json(j), ir) << p;
    EXPECT_EQ(ir_to_json(ir_from_json(nlohmann::json::parse(j.dump()))), j) << p;
  }
}

TEST(FactCardTest, ExampleDeck) {
  const FactCard card = compute_fact_card(fixtures::flat_file(fixtures::deck("dpo_example")));
  EXPECT_EQ(card.region_count, 1);
  EXPECT_EQ(card.boolean_order, "ABA:substrate");
  EXPECT_TRUE(card.contacts_present);
  EXPECT_EQ(card.expected_outputs, (std::vector<std::string>{"bnd", "tdr"}));
  EXPECT_EQ(to_string(card), "regions=1 boolean=ABA:substrate contacts=yes outputs=bnd,tdr");
}

TEST(FactCardTest, TwinDiffersOnlyInContacts) {
  const FactCard rich = compute_fact_card(fixtures::flat_file(fixtures::deck("rich_01")));
  const FactCard twin = compute_fact_card(fixtures::flat_file(fixtures::deck("twin_01")));
  EXPECT_NE(rich, twin);
  FactCard patched = twin;
  patched.contacts_present = true;
  EXPECT_EQ(patched, rich);
}

TEST(DiffTest, Classification) {
  const DeckIR a = fixtures::flat_file(fixtures::deck("rich_01"));
  EXPECT_EQ(diff_ir(a, a).classification, DiffClass::kIdentical);

  DeckIR b = a;
  b.regions[0].max.x = *Decimal::parse("2.1");
  const IrDiff numeric = diff_ir(a, b);
  EXPECT_EQ(numeric.classification, DiffClass::kNumericOnly);
  EXPECT_EQ(numeric.changes.size(), 1u);
  EXPECT_TRUE(numeric.touches("regions["));

  DeckIR c = a;
  c.contacts.pop_back();
  EXPECT_EQ(diff_ir(a, c).classification, DiffClass::kStructural);
}

// ----------------------------------------------------------------------------
// Checker

TEST(CheckerTest, FixtureVerdicts) {
  for (const auto& p : fixtures::decks()) {
    const std::string stem = p.stem().string();
    const CheckReport r = check_syntax(read_text(p));
    if (stem == "mesh_only" || stem == "minimal_cuboid") {
      EXPECT_EQ(r.verdict, Verdict::kFail) << stem;
      EXPECT_TRUE(r.has_rule(rule::kMissingExport)) << stem;
    } else {
      EXPECT_EQ(r.verdict, Verdict::kDirectPass) << stem;
    }
  }
}

struct RuleCase {
  const char* rule_id;
  const char* code;
};

class RuleTest : public ::testing::TestWithParam<RuleCase> {};

constexpr const char* kHead =
    "(sdegeo:set-default-boolean \"ABA\")\n"
    "(sdegeo:create-rectangle (position 0 0 0) (position 2 1 0) \"Silicon\" \"sub\")\n";

TEST_P(RuleTest, Fires) {
  const CheckReport r = check_syntax(std::string(kHead) + GetParam().code);
  EXPECT_EQ(r.verdict, Verdict::kFail);
  EXPECT_TRUE(r.has_rule(GetParam().rule_id)) << report_to_json(r).dump();
}

INSTANTIATE_TEST_SUITE_P(
    Rules, RuleTest,
    ::testing::Values(
        RuleCase{"missing-build-mesh", "(sdeio:save-tdr-bnd \"a.tdr\")"},
        RuleCase{"missing-export", "(sde:build-mesh \"m\")"},
        RuleCase{"export-before-build-mesh", "(sdeio:save-tdr-bnd \"a.tdr\")\n(sde:build-mesh \"m\")"},
        RuleCase{"contact-before-refinement",
                 "(sdegeo:define-contact-set \"c\")\n(sdegeo:set-contact \"c\" \"sub\")\n"
                 "(sdedr:define-refinement-size \"g\" 1 1 1 0.1 0.1 0.1)\n"
                 "(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")"},
        RuleCase{"contact-set-undefined",
                 "(sdegeo:set-contact \"c\" \"sub\")\n(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")"},
        RuleCase{"boolean-order",
                 "(sdegeo:create-rectangle (position -1 0 0) (position 3 1 0) \"SiO2\" \"over\")\n"
                 "(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")"},
        RuleCase{"virtual-contact-outside",
                 "(sdegeo:define-contact-set \"c\")\n(sdegeo:set-contact \"c\" (position 5 5 0))\n"
                 "(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")"},
        RuleCase{"geometry-invalid",
                 "(sdegeo:create-rectangle (position 1 1 0) (position 1 2 0) \"SiO2\" \"flat\")\n"
                 "(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")"},
        RuleCase{"refinement-invalid",
                 "(sdedr:define-refinement-size \"g\" 0.1 0.1 0.1 1 1 1)\n"
                 "(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")"},
        RuleCase{"doping-invalid",
                 "(sdedr:define-constant-profile \"p\" \"Boron\" 0)\n"
                 "(sdedr:define-constant-profile-placement \"pl\" \"p\" \"sub\")\n"
                 "(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")"},
        RuleCase{"unknown-command", "(sde:clear)\n(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")"},
        RuleCase{"unresolved-placeholder",
                 "(sdegeo:create-rectangle (position 0 1 0) (position 2 @top@ 0) \"SiO2\" \"ox\")\n"
                 "(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")"}));

TEST(CheckerTest, PermissiveModeToleratesUnknownCommands) {
  const std::string code = std::string(kHead) + "(sde:clear)\n(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")";
  EXPECT_EQ(check_syntax(code, CheckMode::kStrict).verdict, Verdict::kFail);
  EXPECT_EQ(check_syntax(code, CheckMode::kPermissive).verdict, Verdict::kDirectPass);
}

TEST(CheckerTest, PlaceholderResolution) {
  const std::string code = std::string(kHead) +
                           "(sdegeo:create-rectangle (position 0 1 0) (position 2 @top@ 0) \"SiO2\" \"ox\")\n"
                           "(sde:build-mesh \"m\")\n(sdeio:save-tdr-bnd \"a.tdr\")";
  const CheckReport resolved = check_with_resolution(code, {{"top", *Decimal::parse("1.5")}});
  EXPECT_EQ(resolved.verdict, Verdict::kResolvedPass);
  EXPECT_EQ(resolved.resolution.at("top").str(), "1.5");
  EXPECT_EQ(check_with_resolution(code, {{"other", Decimal::of(1)}}).verdict, Verdict::kFail);
  // A value that makes the geometry degenerate still fails.
  EXPECT_EQ(check_with_resolution(code, {{"top", Decimal::of(1)}}).verdict, Verdict::kFail);
}

TEST(CheckerTest, StringPlaceholdersDoNotBlockADirectPass) {
  const CheckReport r = check_syntax(read_text(fixtures::deck("dpo_example")));
  EXPECT_EQ(r.verdict, Verdict::kDirectPass);
  EXPECT_TRUE(r.placeholders.count("node"));
  EXPECT_TRUE(r.value_placeholders.empty());
}

TEST(CheckerTest, ReportJsonNamesTheVerdict) {
  const auto j = report_to_json(check_syntax("(sde:build-mesh"));
  EXPECT_EQ(j.at("verdict"), "fail");
}

}  // namespace
}  // namespace deckforge
