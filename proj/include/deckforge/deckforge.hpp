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


// Convenience header pulling in the whole library except the HTTP client.

#pragma once

#include "deckforge/check/checker.hpp"
#include "deckforge/check/rules.hpp"
#include "deckforge/core/decimal.hpp"
#include "deckforge/core/hash.hpp"
#include "deckforge/core/rng.hpp"
#include "deckforge/deck/parser.hpp"
#include "deckforge/deck/registry.hpp"
#include "deckforge/diversify/diversify.hpp"
#include "deckforge/dpo/build.hpp"
#include "deckforge/dpo/record.hpp"
#include "deckforge/eval/evaluate.hpp"
#include "deckforge/eval/report.hpp"
#include "deckforge/eval/testset.hpp"
#include "deckforge/ir/diff.hpp"
#include "deckforge/ir/extract.hpp"
#include "deckforge/ir/fact_card.hpp"
#include "deckforge/ir/flatten.hpp"
#include "deckforge/ir/json.hpp"
#include "deckforge/qa/alpaca.hpp"
#include "deckforge/qa/pipeline.hpp"
#include "deckforge/qa/prompts.hpp"
#include "deckforge/qa/segment.hpp"
#include "deckforge/render/code.hpp"
#include "deckforge/render/sample.hpp"
