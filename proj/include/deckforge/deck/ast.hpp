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

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "deckforge/core/box.hpp"
#include "deckforge/core/decimal.hpp"
#include "deckforge/deck/diagnostic.hpp"

namespace deckforge {

struct Placeholder {
  std::string name;
  friend bool operator==(const Placeholder&, const Placeholder&) = default;
};

struct Symbol {
  std::string name;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct StringLit {
  std::string value;
  friend bool operator==(const StringLit&, const StringLit&) = default;
};

/// A coordinate component: a number, or a template variable awaiting resolution.
using Scalar = std::variant<Decimal, Placeholder>;

/// `(position x y z)`
struct Position {
  std::array<Scalar, 3> coords;
  friend bool operator==(const Position&, const Position&) = default;
};

struct CommandNode;

using Arg = std::variant<Decimal, StringLit, Symbol, Placeholder, Position, Box<CommandNode>>;

/// One parenthesized form. Equality is structural and ignores source spans.
struct CommandNode {
  std::string head;
  std::vector<Arg> args;
  SourceSpan span;

  friend bool operator==(const CommandNode& a, const CommandNode& b) {
    return a.head == b.head && a.args == b.args;
  }
};

inline const Decimal* as_number(const Arg& a) { return std::get_if<Decimal>(&a); }
inline const StringLit* as_string(const Arg& a) { return std::get_if<StringLit>(&a); }
inline const Position* as_position(const Arg& a) { return std::get_if<Position>(&a); }

inline const CommandNode* as_node(const Arg& a) {
  const auto* box = std::get_if<Box<CommandNode>>(&a);
  return box ? &**box : nullptr;
}

/// Visits every number in a node (positions and nested forms included), in
/// argument order. `fn(const Decimal&)`.
template <typename Fn>
void for_each_number(const CommandNode& node, Fn&& fn) {
  for (const Arg& arg : node.args) {
    if (const auto* d = as_number(arg)) {
      fn(*d);
    } else if (const auto* p = as_position(arg)) {
      for (const Scalar& s : p->coords) {
        if (const auto* v = std::get_if<Decimal>(&s)) fn(*v);
      }
    } else if (const auto* n = as_node(arg)) {
      for_each_number(*n, fn);
    }
  }
}

/// Mutable variant of for_each_number; `fn(Decimal&)`.
template <typename Fn>
void for_each_number_mut(CommandNode& node, Fn&& fn) {
  for (Arg& arg : node.args) {
    if (auto* d = std::get_if<Decimal>(&arg)) {
      fn(*d);
    } else if (auto* p = std::get_if<Position>(&arg)) {
      for (Scalar& s : p->coords) {
        if (auto* v = std::get_if<Decimal>(&s)) fn(*v);
      }
    } else if (auto* b = std::get_if<Box<CommandNode>>(&arg)) {
      for_each_number_mut(**b, fn);
    }
  }
}

/// Visits every placeholder token in value position (not inside strings).
template <typename Fn>
void for_each_value_placeholder(const CommandNode& node, Fn&& fn) {
  for (const Arg& arg : node.args) {
    if (const auto* ph = std::get_if<Placeholder>(&arg)) {
      fn(*ph);
    } else if (const auto* p = as_position(arg)) {
      for (const Scalar& s : p->coords) {
        if (const auto* v = std::get_if<Placeholder>(&s)) fn(*v);
      }
    } else if (const auto* n = as_node(arg)) {
      for_each_value_placeholder(*n, fn);
    }
  }
}

}  // namespace deckforge
