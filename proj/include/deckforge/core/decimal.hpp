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
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace deckforge {

/// Exact base-10 number as written in a deck: sign, significand and a
/// power-of-ten exponent. Values are kept normalized (no trailing zeros in the
/// significand, zero is unsigned), so equality is value equality and the
/// canonical text is a pure function of the value.
///
/// Canonical text: positional notation when the scientific exponent lies in
/// (-5, 5), otherwise `d.ddde±XX` with at least two exponent digits. This is
/// the surface form used everywhere a number is printed (`9.8e+12`, `0.0001`).
class Decimal {
 public:
  static constexpr int kMaxDigits = 18;

  constexpr Decimal() = default;

  /// Integer value.
  static Decimal of(std::int64_t v) {
    Decimal d;
    d.negative_ = v < 0;
    d.significand_ = v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
    d.normalize();
    return d;
  }

  /// significand × 10^exponent.
  static Decimal from_parts(bool negative, std::uint64_t significand, int exponent) {
    Decimal d;
    d.negative_ = negative;
    d.significand_ = significand;
    d.exponent_ = exponent;
    d.normalize();
    return d;
  }

  /// Parses `[+-]? (d+ (. d*)? | . d+) ([eE] [+-]? d+)?`. Significands longer
  /// than kMaxDigits are rounded through binary floating point.
  static std::optional<Decimal> parse(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      negative = text[i] == '-';
      ++i;
    }
    std::string digits;
    int exponent = 0;
    bool any_digit = false;
    while (i < text.size() && is_digit(text[i])) {
      digits.push_back(text[i++]);
      any_digit = true;
    }
    if (i < text.size() && text[i] == '.') {
      ++i;
      while (i < text.size() && is_digit(text[i])) {
        digits.push_back(text[i++]);
        --exponent;
        any_digit = true;
      }
    }
    if (!any_digit) return std::nullopt;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
      ++i;
      bool exp_negative = false;
      if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        exp_negative = text[i] == '-';
        ++i;
      }
      if (i >= text.size() || !is_digit(text[i])) return std::nullopt;
      int e = 0;
      while (i < text.size() && is_digit(text[i])) {
        if (e > 100000) return std::nullopt;
        e = e * 10 + (text[i++] - '0');
      }
      exponent += exp_negative ? -e : e;
    }
    if (i != text.size()) return std::nullopt;

    // Drop leading zeros, then trailing zeros (folding them into the exponent).
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string::npos) return Decimal{};
    digits.erase(0, first);
    while (!digits.empty() && digits.back() == '0') {
      digits.pop_back();
      ++exponent;
    }
    if (digits.size() > static_cast<std::size_t>(kMaxDigits)) {
      std::string s(text);
      return from_double_shortest(std::strtod(s.c_str(), nullptr));
    }
    std::uint64_t sig = 0;
    for (char c : digits) sig = sig * 10 + static_cast<std::uint64_t>(c - '0');
    return from_parts(negative, sig, exponent);
  }

  /// Shortest decimal that round-trips to `v`.
  static Decimal from_double_shortest(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return parse(std::string_view(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()))).value_or(Decimal{});
  }

  /// `v` rounded to `significant` significant digits.
  static Decimal from_double(double v, int significant) {
    if (significant < 1) significant = 1;
    if (significant > 17) significant = 17;
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*e", significant - 1, v);
    return parse(buf.data()).value_or(Decimal{});
  }

  bool is_zero() const { return significand_ == 0; }
  bool is_negative() const { return negative_; }
  std::uint64_t significand() const { return significand_; }
  int exponent() const { return exponent_; }

  int significant_digits() const {
    int n = 0;
    for (std::uint64_t s = significand_; s != 0; s /= 10) ++n;
    return n == 0 ? 1 : n;
  }

  /// Exponent of the leading digit in scientific notation.
  int magnitude() const { return is_zero() ? 0 : exponent_ + significant_digits() - 1; }

  /// One unit in the last written digit, e.g. 0.0001 for 0.0001, 1e+11 for 9.8e+12.
  Decimal quantum() const { return from_parts(false, 1, exponent_); }

  Decimal negated() const { return from_parts(!negative_, significand_, exponent_); }
  Decimal abs() const { return from_parts(false, significand_, exponent_); }

  /// Exact multiplication by 10^k.
  Decimal scaled_pow10(int k) const { return from_parts(negative_, significand_, exponent_ + k); }

  double to_double() const {
    std::string s = str();
    return std::strtod(s.c_str(), nullptr);
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string digits = std::to_string(significand_);
    const int n = static_cast<int>(digits.size());
    const int sci = exponent_ + n - 1;
    std::string out = negative_ ? "-" : "";
    if (sci >= 5 || sci <= -5) {
      out += digits[0];
      if (n > 1) {
        out += '.';
        out += digits.substr(1);
      }
      out += 'e';
      out += sci < 0 ? '-' : '+';
      std::string e = std::to_string(sci < 0 ? -sci : sci);
      if (e.size() < 2) e.insert(0, "0");
      out += e;
      return out;
    }
    if (exponent_ >= 0) {
      out += digits;
      out.append(static_cast<std::size_t>(exponent_), '0');
    } else if (sci >= 0) {
      out += digits.substr(0, static_cast<std::size_t>(sci + 1));
      out += '.';
      out += digits.substr(static_cast<std::size_t>(sci + 1));
    } else {
      out += "0.";
      out.append(static_cast<std::size_t>(-sci - 1), '0');
      out += digits;
    }
    return out;
  }

  friend bool operator==(const Decimal&, const Decimal&) = default;

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    if (a.is_zero() && b.is_zero()) return std::strong_ordering::equal;
    const int sa = a.is_zero() ? 0 : (a.negative_ ? -1 : 1);
    const int sb = b.is_zero() ? 0 : (b.negative_ ? -1 : 1);
    if (sa != sb) return sa <=> sb;
    const auto mag = compare_abs(a, b);
    return sa < 0 ? 0 <=> mag : mag <=> 0;
  }

 private:
  static constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }

  // -1, 0, 1 comparing |a| and |b|; both non-zero.
  static int compare_abs(const Decimal& a, const Decimal& b) {
    if (a.magnitude() != b.magnitude()) return a.magnitude() < b.magnitude() ? -1 : 1;
    std::string da = std::to_string(a.significand_);
    std::string db = std::to_string(b.significand_);
    if (da.size() < db.size()) da.append(db.size() - da.size(), '0');
    if (db.size() < da.size()) db.append(da.size() - db.size(), '0');
    return da < db ? -1 : (da == db ? 0 : 1);
  }

  void normalize() {
    if (significand_ == 0) {
      negative_ = false;
      exponent_ = 0;
      return;
    }
    while (significand_ % 10 == 0) {
      significand_ /= 10;
      ++exponent_;
    }
  }

  bool negative_ = false;
  std::uint64_t significand_ = 0;
  int exponent_ = 0;
};

}  // namespace deckforge
