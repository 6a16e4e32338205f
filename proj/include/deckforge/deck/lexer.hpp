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

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "deckforge/core/decimal.hpp"
#include "deckforge/deck/diagnostic.hpp"
#include "deckforge/deck/source.hpp"

namespace deckforge {

enum class TokenKind { kLParen, kRParen, kNumber, kString, kSymbol, kPlaceholder };

struct Token {
  TokenKind kind = TokenKind::kSymbol;
  std::string text;  // lexeme; unescaped contents for strings, bare name for placeholders
  Decimal number;    // kNumber only
  std::vector<std::string> placeholders;  // kString only, in order of appearance
  SourceSpan span;
};

struct TokenStream {
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

inline bool is_placeholder_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_placeholder_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// `@name@` spans in `text`, scanning left to right; a matched span is
/// consumed, so `@a@b@` yields only `a`.
inline std::vector<std::string> find_placeholders(std::string_view text) {
  std::vector<std::string> names;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '@') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (j < text.size() && is_placeholder_name_start(text[j])) {
      while (j < text.size() && is_placeholder_name_char(text[j])) ++j;
      if (j < text.size() && text[j] == '@') {
        names.emplace_back(text.substr(i + 1, j - i - 1));
        i = j + 1;
        continue;
      }
    }
    ++i;
  }
  return names;
}

/// True when the whole of `text` is one placeholder.
inline bool is_placeholder_atom(std::string_view text) {
  if (text.size() < 3 || text.front() != '@' || text.back() != '@') return false;
  if (!is_placeholder_name_start(text[1])) return false;
  for (std::size_t i = 2; i + 1 < text.size(); ++i) {
    if (!is_placeholder_name_char(text[i])) return false;
  }
  return true;
}

namespace detail {

inline bool is_symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '_': case ':': case '-': case '+': case '*': case '/': case '<': case '>':
    case '=': case '!': case '?': case '.': case '#': case '\'': case '%': case '&':
    case '$': case '~': case '^':
      return true;
    default:
      return false;
  }
}

inline bool is_delimiter(char c) {
  return c == '(' || c == ')' || c == '"' || c == ';' || std::isspace(static_cast<unsigned char>(c));
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  TokenStream run() {
    TokenStream out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n' || std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '(' || c == ')') {
        Token t;
        t.kind = c == '(' ? TokenKind::kLParen : TokenKind::kRParen;
        t.text = std::string(1, c);
        t.span = begin_span();
        advance();
        close_span(t.span);
        out.tokens.push_back(std::move(t));
      } else if (c == '"') {
        lex_string(out);
      } else {
        lex_atom(out);
      }
    }
    return out;
  }

 private:
  SourceSpan begin_span() const { return {line_, column_, line_, column_, pos_, pos_}; }

  void close_span(SourceSpan& s) const {
    s.end_line = line_;
    s.end_column = column_;
    s.end_offset = pos_;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void lex_string(TokenStream& out) {
    Token t;
    t.kind = TokenKind::kString;
    t.span = begin_span();
    advance();  // opening quote
    std::string value;
    bool closed = false;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '"') {
        advance();
        closed = true;
        break;
      }
      if (c == '\\' && pos_ + 1 < src_.size()) {
        advance();
        const char e = src_[pos_];
        value.push_back(e == 'n' ? '\n' : (e == 't' ? '\t' : e));
        advance();
        continue;
      }
      value.push_back(c);
      advance();
    }
    close_span(t.span);
    if (!closed) {
      out.diagnostics.push_back(make_error("unterminated-string", "string literal is not terminated", t.span));
      return;
    }
    t.placeholders = find_placeholders(value);
    t.text = std::move(value);
    out.tokens.push_back(std::move(t));
  }

  void lex_atom(TokenStream& out) {
    Token t;
    t.span = begin_span();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && !is_delimiter(src_[pos_])) advance();
    close_span(t.span);
    const std::string_view text = src_.substr(start, pos_ - start);
    t.text = std::string(text);
    if (auto num = Decimal::parse(text)) {
      t.kind = TokenKind::kNumber;
      t.number = *num;
    } else if (is_placeholder_atom(text)) {
      t.kind = TokenKind::kPlaceholder;
      t.text = std::string(text.substr(1, text.size() - 2));
    } else {
      for (std::size_t i = 0; i < text.size(); ++i) {
        if (!is_symbol_char(text[i])) {
          SourceSpan at = t.span;
          at.column += static_cast<int>(i);
          at.offset += i;
          at.end_line = at.line;
          at.end_column = at.column + 1;
          at.end_offset = at.offset + 1;
          std::string shown = std::isprint(static_cast<unsigned char>(text[i]))
                                  ? std::string(1, text[i])
                                  : "\\x" + std::to_string(static_cast<unsigned char>(text[i]));
          out.diagnostics.push_back(make_error("illegal-character", "illegal character '" + shown + "'", at));
          return;
        }
      }
      t.kind = TokenKind::kSymbol;
    }
    out.tokens.push_back(std::move(t));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace detail

/// Splits a deck into tokens. Comments (`;` to end of line) are dropped.
/// Lexing continues past errors so every problem is reported.
inline TokenStream tokenize(std::string_view body) { return detail::Lexer(body).run(); }

inline TokenStream tokenize(const SourceDeck& deck) { return tokenize(deck.body); }

}  // namespace deckforge
