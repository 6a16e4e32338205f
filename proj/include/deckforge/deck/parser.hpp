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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deckforge/deck/ast.hpp"
#include "deckforge/deck/lexer.hpp"
#include "deckforge/deck/registry.hpp"

namespace deckforge {

struct ParseResult {
  std::vector<CommandNode> commands;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

namespace detail {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  ParseResult run() {
    ParseResult out;
    while (pos_ < tokens_.size()) {
      const Token& t = tokens_[pos_];
      if (t.kind == TokenKind::kLParen) {
        if (auto node = parse_form(out.diagnostics)) {
          if (!is_known_command(node->head)) {
            out.diagnostics.push_back(
                make_warning("unknown-command", "unknown command '" + node->head + "'", node->span));
          }
          out.commands.push_back(std::move(*node));
        }
      } else if (t.kind == TokenKind::kRParen) {
        out.diagnostics.push_back(make_error("unbalanced-paren", "unmatched ')'", t.span));
        ++pos_;
      } else {
        out.diagnostics.push_back(
            make_error("non-command-toplevel", "top-level atom '" + t.text + "' is not a command", t.span));
        ++pos_;
      }
    }
    return out;
  }

 private:
  // pos_ is at '('. Consumes through the matching ')' (or to end of input).
  std::optional<CommandNode> parse_form(std::vector<Diagnostic>& diags) {
    const Token& open = tokens_[pos_++];
    CommandNode node;
    node.span = open.span;
    bool valid = true;

    if (pos_ >= tokens_.size()) {
      diags.push_back(make_error("unbalanced-paren", "unclosed '('", open.span));
      return std::nullopt;
    }
    const Token& head = tokens_[pos_];
    if (head.kind == TokenKind::kRParen) {
      diags.push_back(make_error("empty-form", "empty form '()'", open.span));
      valid = false;
    } else if (head.kind != TokenKind::kSymbol) {
      diags.push_back(make_error("missing-head", "form must start with a command name", head.span));
      valid = false;
    } else {
      node.head = head.text;
      ++pos_;
    }

    while (true) {
      if (pos_ >= tokens_.size()) {
        diags.push_back(make_error("unbalanced-paren", "unclosed '('", open.span));
        return std::nullopt;
      }
      const Token& t = tokens_[pos_];
      if (t.kind == TokenKind::kRParen) {
        node.span.end_line = t.span.end_line;
        node.span.end_column = t.span.end_column;
        node.span.end_offset = t.span.end_offset;
        ++pos_;
        break;
      }
      switch (t.kind) {
        case TokenKind::kLParen: {
          auto child = parse_form(diags);
          if (!child) return std::nullopt;
          if (auto pos = as_position_form(*child)) {
            node.args.emplace_back(std::move(*pos));
          } else {
            node.args.emplace_back(Box<CommandNode>(std::move(*child)));
          }
          continue;
        }
        case TokenKind::kNumber:
          node.args.emplace_back(t.number);
          break;
        case TokenKind::kString:
          node.args.emplace_back(StringLit{t.text});
          break;
        case TokenKind::kSymbol:
          node.args.emplace_back(Symbol{t.text});
          break;
        case TokenKind::kPlaceholder:
          node.args.emplace_back(Placeholder{t.text});
          break;
        case TokenKind::kRParen:
          break;
      }
      ++pos_;
    }
    if (!valid) return std::nullopt;
    return node;
  }

  static std::optional<Position> as_position_form(const CommandNode& n) {
    if (n.head != "position" || n.args.size() != 3) return std::nullopt;
    Position p;
    for (std::size_t i = 0; i < 3; ++i) {
      if (const auto* d = std::get_if<Decimal>(&n.args[i])) {
        p.coords[i] = *d;
      } else if (const auto* ph = std::get_if<Placeholder>(&n.args[i])) {
        p.coords[i] = *ph;
      } else {
        return std::nullopt;
      }
    }
    return p;
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

inline void append_quoted(std::string& out, const std::string& value) {
  out.push_back('"');
  for (char c : value) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
}

inline void append_scalar(std::string& out, const Scalar& s) {
  if (const auto* d = std::get_if<Decimal>(&s)) {
    out += d->str();
  } else {
    out += '@' + std::get<Placeholder>(s).name + '@';
  }
}

inline void append_node(std::string& out, const CommandNode& node) {
  out.push_back('(');
  out += node.head;
  for (const Arg& arg : node.args) {
    out.push_back(' ');
    std::visit(
        [&out](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Decimal>) {
            out += v.str();
          } else if constexpr (std::is_same_v<T, StringLit>) {
            append_quoted(out, v.value);
          } else if constexpr (std::is_same_v<T, Symbol>) {
            out += v.name;
          } else if constexpr (std::is_same_v<T, Placeholder>) {
            out += '@' + v.name + '@';
          } else if constexpr (std::is_same_v<T, Position>) {
            out += "(position";
            for (const Scalar& s : v.coords) {
              out.push_back(' ');
              append_scalar(out, s);
            }
            out.push_back(')');
          } else {
            append_node(out, *v);
          }
        },
        arg);
  }
  out.push_back(')');
}

}  // namespace detail

/// Builds command trees from a token stream. Unknown command heads parse but
/// carry an `unknown-command` warning.
inline ParseResult parse_tokens(const TokenStream& stream) {
  ParseResult out = detail::Parser(stream.tokens).run();
  out.diagnostics.insert(out.diagnostics.begin(), stream.diagnostics.begin(), stream.diagnostics.end());
  return out;
}

inline ParseResult parse_deck(std::string_view body) { return parse_tokens(tokenize(body)); }

inline ParseResult parse_deck(const SourceDeck& deck) { return parse_deck(deck.body); }

/// Canonical text of one form, no trailing newline.
inline std::string unparse(const CommandNode& node) {
  std::string out;
  detail::append_node(out, node);
  return out;
}

/// Canonical deck text: one top-level command per line, single spaces
/// between arguments, canonical number form.
inline std::string unparse(const std::vector<CommandNode>& nodes) {
  std::string out;
  for (const auto& n : nodes) {
    detail::append_node(out, n);
    out.push_back('\n');
  }
  return out;
}

}  // namespace deckforge
