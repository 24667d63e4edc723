// Copyright 2026 The decipher-fst Authors.
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
//
// Tropical and log semirings over negative-log weights. Both share the
// representation (a double holding -log p) and the product (+); they
// differ in how alternatives are aggregated.

#ifndef DECIPHER_FST_SEMIRING_H_
#define DECIPHER_FST_SEMIRING_H_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <string_view>

namespace decipher::fst {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

template <class S>
concept Semiring = requires(double a, double b) {
  { S::Zero() } -> std::same_as<double>;
  { S::One() } -> std::same_as<double>;
  { S::Plus(a, b) } -> std::same_as<double>;
  { S::Times(a, b) } -> std::same_as<double>;
  { S::Name() } -> std::convertible_to<std::string_view>;
};

// (min, +, +inf, 0).
struct TropicalSemiring {
  static constexpr double Zero() { return kInfinity; }
  static constexpr double One() { return 0.0; }
  static double Plus(double a, double b) { return std::min(a, b); }
  static double Times(double a, double b) {
    if (a == kInfinity || b == kInfinity) return kInfinity;
    return a + b;
  }
  static constexpr std::string_view Name() { return "tropical"; }
};

// (-log(e^-a + e^-b), +, +inf, 0).
struct LogSemiring {
  static constexpr double Zero() { return kInfinity; }
  static constexpr double One() { return 0.0; }
  static double Plus(double a, double b) {
    if (a == kInfinity) return b;
    if (b == kInfinity) return a;
    const double lo = std::min(a, b);
    return lo - std::log1p(std::exp(-std::abs(a - b)));
  }
  static double Times(double a, double b) {
    if (a == kInfinity || b == kInfinity) return kInfinity;
    return a + b;
  }
  static constexpr std::string_view Name() { return "log"; }
};

// Probability <-> weight conversion at I/O boundaries.
inline double ToWeight(double prob) {
  return prob > 0.0 ? -std::log(prob) : kInfinity;
}
inline double ToProb(double weight) { return std::exp(-weight); }

}  // namespace decipher::fst

#endif  // DECIPHER_FST_SEMIRING_H_
