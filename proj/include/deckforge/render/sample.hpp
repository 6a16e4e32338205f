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

#include <string>
#include <vector>

#include "deckforge/render/code.hpp"
#include "deckforge/render/instruction.hpp"
#include "deckforge/render/numerals.hpp"
#include "deckforge/render/paraphrase.hpp"

namespace deckforge {

struct RenderedSample {
  std::string instruction;
  std::string cot;
  std::string code;
  NumericWhitelist whitelist;
  std::vector<StyledText> variants;
};

inline RenderedSample render_sample(const DeckIR& ir, const StyleLibrary& styles = StyleLibrary::builtin()) {
  RenderedSample s;
  const auto nodes = lower_ir(ir);
  s.code = unparse(nodes);
  s.instruction = render_instruction(ir);
  s.whitelist = build_whitelist(ir, nodes);
  s.cot = render_cot(ir);
  s.variants = render_paraphrases(s.instruction, ir, s.whitelist, styles);
  return s;
}

}  // namespace deckforge
