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

#include "deckforge/deck/parser.hpp"
#include "deckforge/ir/layout.hpp"

namespace deckforge {

/// Reference code for an IR, one command per line in canonical layout.
inline std::string render_code(const DeckIR& ir) { return unparse(lower_ir(ir)); }

}  // namespace deckforge
