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

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace deckforge {

/// Line/column range in a deck, 1-based, plus byte offsets [offset, end_offset).
struct SourceSpan {
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;
  std::size_t offset = 0;
  std::size_t end_offset = 0;

  bool valid() const { return line > 0; }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { kError, kWarning };

inline const char* to_string(Severity s) { return s == Severity::kError ? "error" : "warning"; }

/// A located finding. `code` is a stable kebab-case identifier; checker rule
/// ids share this namespace.
struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  SourceSpan span;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

inline Diagnostic make_error(std::string code, std::string message, SourceSpan span = {}) {
  return {Severity::kError, std::move(code), std::move(message), span};
}

inline Diagnostic make_warning(std::string code, std::string message, SourceSpan span = {}) {
  return {Severity::kWarning, std::move(code), std::move(message), span};
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

/// `file:line:col: severity code message`
inline std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  std::string out = file;
  out += ':' + std::to_string(d.span.line) + ':' + std::to_string(d.span.column) + ": ";
  out += to_string(d.severity);
  out += ' ';
  out += d.code;
  out += ' ';
  out += d.message;
  return out;
}

}  // namespace deckforge
