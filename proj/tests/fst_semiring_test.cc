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

#include <random>

#include <gtest/gtest.h>

#include "decipher/fst/semiring.h"

namespace decipher::fst {
namespace {

void ExpectClose(double x, double y, double tol) {
  if (x == kInfinity || y == kInfinity) {
    EXPECT_EQ(x, y);
  } else {
    EXPECT_NEAR(x, y, tol);
  }
}

template <class S>
void CheckLaws(double tol) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-5.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    double a = dist(rng), b = dist(rng), c = dist(rng);
    if (i % 50 == 0) a = S::Zero();
    ExpectClose(S::Plus(S::Plus(a, b), c), S::Plus(a, S::Plus(b, c)), tol);
    ExpectClose(S::Times(S::Times(a, b), c), S::Times(a, S::Times(b, c)), tol);
    EXPECT_DOUBLE_EQ(S::Plus(a, b), S::Plus(b, a));
    ExpectClose(S::Times(a, S::Plus(b, c)),
                S::Plus(S::Times(a, b), S::Times(a, c)), tol);
    EXPECT_EQ(S::Plus(a, S::Zero()), a);
    EXPECT_EQ(S::Times(a, S::One()), a);
    EXPECT_EQ(S::Times(a, S::Zero()), S::Zero());
  }
}

TEST(SemiringTest, TropicalLaws) { CheckLaws<TropicalSemiring>(1e-12); }

TEST(SemiringTest, LogLaws) { CheckLaws<LogSemiring>(1e-9); }

TEST(SemiringTest, Definitions) {
  EXPECT_EQ(TropicalSemiring::Plus(1.0, 2.0), 1.0);
  EXPECT_EQ(TropicalSemiring::Times(1.0, 2.0), 3.0);
  EXPECT_EQ(TropicalSemiring::Zero(), kInfinity);
  EXPECT_EQ(TropicalSemiring::One(), 0.0);
  // -log(0.5 + 0.5) = 0.
  EXPECT_NEAR(LogSemiring::Plus(ToWeight(0.5), ToWeight(0.5)), 0.0, 1e-15);
  EXPECT_NEAR(LogSemiring::Plus(ToWeight(0.2), ToWeight(0.3)), ToWeight(0.5),
              1e-12);
  EXPECT_EQ(ToWeight(0.0), kInfinity);
}

}  // namespace
}  // namespace decipher::fst
