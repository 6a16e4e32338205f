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


// Walks one deck through the pipeline: extraction, flattening, rendering,
// diversification and one validated preference record.
//
//   deckforge_walkthrough [deck.cmd] [seed]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "deckforge/deckforge.hpp"

int main(int argc, char** argv) {
  using namespace deckforge;
  const std::string path = argc > 1 ? argv[1] : DECKFORGE_DEFAULT_DECK;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 0;

  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  std::stringstream text;
  text << in.rdbuf();

  const ParseResult parsed = parse_deck(text.str());
  const ExtractResult ex = extract_ir(parsed.commands);
  for (const auto& d : parsed.diagnostics) std::cerr << format_diagnostic(path, d) << "\n";
  for (const auto& d : ex.diagnostics) std::cerr << format_diagnostic(path, d) << "\n";
  if (!parsed.ok() || !ex.ok()) return 1;

  const DeckIR ir = flatten_ir(ex.ir);
  std::cout << "== fact card\n" << to_string(compute_fact_card(ir)) << "\n\n";

  const RenderedSample sample = render_sample(ir);
  std::cout << "== instruction\n" << sample.instruction << "\n\n";
  std::cout << "== reasoning\n" << sample.cot << "\n";
  std::cout << "== code\n" << sample.code << "\n";

  const DiversificationBatch batch = diversify(ir, 3, seed);
  std::cout << "== variants\n";
  for (const auto& v : batch.variants) {
    for (const auto& t : v.transforms) std::cout << "  " << transform_to_json(t).dump() << "\n";
    std::cout << "  -> " << to_string(check_syntax(render_code(v.ir)).verdict) << "\n";
  }

  DpoBuildOptions opt;
  opt.multiplier = 1;
  opt.seed = seed;
  const DpoBuildResult res = build_dpo({{path, ex.ir}}, opt);
  for (const auto& w : res.warnings) std::cout << "warning: " << w << "\n";
  for (const auto& q : res.quarantined) std::cout << "quarantined " << q.id << ": " << q.reason << "\n";
  if (res.records.empty()) return 1;
  const DpoRecord& r = res.records.front();
  std::cout << "\n== record " << r.id << "\n";
  for (const auto& e : r.rejected) {
    std::cout << "  " << to_string(e.violation) << "  numeric=" << to_string(e.verdict.numeric)
              << " structural=" << to_string(e.verdict.structural) << "  " << e.detail << "\n";
  }
  return 0;
}
