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

#include <cmath>
#include <string>
#include <string_view>

#include "deckforge/core/decimal.hpp"
#include "deckforge/core/rng.hpp"

namespace deckforge {

/// Physical quantity of a numeric IR leaf; picks the step grid.
enum class Quantity { kConcentration, kLength };

inline Quantity quantity_of_path(std::string_view path) {
  return path.find(".concentration") != std::string_view::npos ? Quantity::kConcentration : Quantity::kLength;
}

/// Equivalence-preserving perturbation settings.
struct JitterConfig {
  double near_fraction = 0.04;  // draw range for near jitters
  double band = 0.05;           // accepted relative deviation
  int near_digits = 4;          // significant digits kept after a near jitter
};

/// Nearest grid value: concentrations snap to {1, 2, 5} x 10^e with the
/// value's own exponent e, lengths to one significant digit.
inline Decimal step_snap(const Decimal& v, Quantity q) {
  if (v.is_zero()) return v;
  if (q == Quantity::kLength) return Decimal::from_double(v.to_double(), 1);
  const int e = v.magnitude();
  const double mantissa = std::fabs(v.to_double()) / std::pow(10.0, e);
  int best = 1;
  for (int m : {2, 5}) {
    if (std::fabs(mantissa - m) < std::fabs(mantissa - best)) best = m;
  }
  return Decimal::from_parts(v.is_negative(), static_cast<std::uint64_t>(best), e);
}

inline bool within_band(const Decimal& original, const Decimal& value, double band) {
  if (original.is_zero()) return value.is_zero();
  const double a = original.to_double();
  const double b = value.to_double();
  return std::fabs(b - a) <= band * std::fabs(a) * (1.0 + 1e-12);
}

/// Multiplicative jitter of at most `near_fraction`, rounded, and kept inside
/// the band. May return the input unchanged.
inline Decimal near_jitter(const Decimal& v, Rng& rng, const JitterConfig& cfg = {}) {
  const double factor = 1.0 + rng.uniform(-cfg.near_fraction, cfg.near_fraction);
  Decimal out = Decimal::from_double(v.to_double() * factor, cfg.near_digits);
  return within_band(v, out, cfg.band) ? out : v;
}

/// True when `value` is an allowed equivalent of `original`.
inline bool equivalent_value(const Decimal& original, const Decimal& value, Quantity q, const JitterConfig& cfg = {}) {
  return value == original || within_band(original, value, cfg.band) || value == step_snap(original, q);
}

}  // namespace deckforge
