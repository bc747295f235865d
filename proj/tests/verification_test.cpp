// Copyright 2026 The mgval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "gtest/gtest.h"
#include "mgval/common.hpp"
#include "mgval/limit_solver.hpp"
#include "mgval/verification.hpp"
#include "test_support.hpp"

namespace mgval {
namespace {

ValueView ClosedFormMixed() {
  ValueView v;
  v.value = testing::MixedValue;
  v.slope_left = testing::MixedSlope;
  v.slope_right = testing::MixedSlope;
  v.joints = {1.0 / 3.0, testing::PBar()};
  v.smooth_pieces = {{1.0 / 3.0, testing::PBar()}};
  return v;
}

TEST(VerificationTest, ClosedFormMixedValuePasses) {
  const GameSpec g = testing::Mixed();
  const UOracle oracle = BuildUOracle(g, 1025, 4e-6);
  const CharReport rep = CheckCharacterization(ClosedFormMixed(), oracle, DeriveParams(g));
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.g1_equality);
  EXPECT_NEAR(rep.g1_residual, 0.0, 1e-12);
  EXPECT_TRUE(rep.kink_locations.empty());
}

TEST(VerificationTest, SolverOutputPassesForEveryBundledGame) {
  for (const GameSpec& g : {testing::Revealing(), testing::Nonrevealing(), testing::Mixed(),
                            testing::MixedA(), testing::MixedB()}) {
    const Solution sol = SolveLimitValue(g);
    const CharReport rep = CheckCharacterization(sol.value, sol.oracle);
    EXPECT_TRUE(rep.pass);
    EXPECT_TRUE(rep.concavity_violations.empty());
    EXPECT_GE(rep.g2_worst.residual, -1e-5 * DeriveParams(g).scale());
    EXPECT_LE(rep.g3_worst.residual, 1e-4 * DeriveParams(g).scale());
  }
}

TEST(VerificationTest, ConcavePerturbationBreaksOnlyTheEquality) {
  const Solution sol = SolveLimitValue(testing::Mixed());
  ValueView v = ViewOf(sol.value);
  const auto base = v.value;
  const auto left = v.slope_left;
  const auto right = v.slope_right;
  v.value = [base](double p) { return base(p) + 0.05 * p * (1 - p); };
  v.slope_left = [left](double p) { return left(p) + 0.05 * (1 - 2 * p); };
  v.slope_right = [right](double p) { return right(p) + 0.05 * (1 - 2 * p); };
  const CharReport rep = CheckCharacterization(v, sol.oracle, sol.value.params());
  EXPECT_TRUE(rep.concavity_violations.empty());
  EXPECT_GT(rep.g3_worst.residual, 1e-4 * 4.0);
  EXPECT_FALSE(rep.pass);
}

TEST(VerificationTest, KinkOfMixedBIsExactlyAtPStar) {
  const Solution sol = SolveLimitValue(testing::MixedB());
  const CharReport rep = CheckCharacterization(sol.value, sol.oracle);
  EXPECT_TRUE(rep.pass);
  ASSERT_EQ(rep.kink_locations.size(), 1u);
  EXPECT_EQ(rep.kink_locations[0], sol.value.params().p_star);
}

TEST(VerificationTest, ConvexCandidateFailsConcavity) {
  const GameSpec g = testing::Nonrevealing();
  const UOracle oracle = BuildUOracle(g, 257, 1e-6);
  ValueView v;
  v.value = [](double p) { return p * p; };
  v.slope_left = v.slope_right = [](double p) { return 2 * p; };
  const CharReport rep = CheckCharacterization(v, oracle, DeriveParams(g));
  EXPECT_FALSE(rep.concavity_violations.empty());
  EXPECT_FALSE(rep.pass);
}

TEST(VerificationTest, ValueBelowUAtPStarFailsG1) {
  const GameSpec g = testing::Nonrevealing();
  const UOracle oracle = BuildUOracle(g, 257, 1e-6);
  ValueView v;
  v.value = [](double p) { return testing::NonrevealingValue(p) - 0.01; };
  v.slope_left = v.slope_right = [](double p) { return 0.5 - 2.0 * p / 3.0; };
  v.smooth_pieces = {{0.0, 1.0}};
  const CharReport rep = CheckCharacterization(v, oracle, DeriveParams(g));
  EXPECT_NEAR(rep.g1_residual, -0.01, 1e-12);
  EXPECT_FALSE(rep.pass);
}

TEST(VerificationTest, OracleOfAGameWithoutInformation) {
  const std::vector<std::vector<double>> m{{3, -1}, {0, 2}};
  const GameSpec g = testing::MakeGame(m, m, 1, 2, 1);
  const OracleGrid og = DiscreteOracleValue(g, 64, 101);
  for (double v : og.values) EXPECT_NEAR(v, 1.0, 1e-9);
}

TEST(VerificationTest, OracleApproachesTheLimit) {
  const OracleGrid rev = DiscreteOracleValue(testing::Revealing(), 128, 2001);
  for (double v : rev.values) EXPECT_LE(std::abs(v), 0.02);
  const OracleGrid non = DiscreteOracleValue(testing::Nonrevealing(), 256, 2001);
  for (std::size_t i = 0; i < non.grid.size(); ++i) {
    EXPECT_LE(std::abs(non.values[i] - testing::NonrevealingValue(non.grid[i])), 0.02);
  }
  EXPECT_TRUE(non.concave_throughout);
  EXPECT_LE(non.worst_ratio, non.modulus + 0.01);
}

TEST(VerificationTest, OracleDifferenceShrinksWithN) {
  const Solution sol = SolveLimitValue(testing::Mixed());
  double prev = 1e300;
  for (double n : {32.0, 64.0, 128.0, 256.0}) {
    const OracleGrid og = DiscreteOracleValue(testing::Mixed(), n, 2001);
    const double diff = CompareToOracle(sol.value, og);
    EXPECT_LE(diff, 1.2 * prev);
    EXPECT_LE(og.worst_ratio, og.modulus + 0.01);
    prev = diff;
  }
  EXPECT_LE(prev, 0.05);
}

TEST(VerificationTest, CompareToItselfIsZero) {
  const Solution sol = SolveLimitValue(testing::MixedA());
  OracleGrid og;
  for (int i = 0; i <= 500; ++i) {
    og.grid.push_back(i / 500.0);
    og.values.push_back(sol.value.Value(i / 500.0));
  }
  EXPECT_EQ(CompareToOracle(sol.value, og), 0.0);
}

TEST(VerificationTest, OracleArgumentChecks) {
  EXPECT_THROW(DiscreteOracleValue(testing::Mixed(), 64, 2), ValidationError);
  EXPECT_THROW(DiscreteOracleValue(testing::Mixed(), 0, 101), ValidationError);
  EXPECT_THROW(DiscreteOracleValue(testing::Mixed(), 64, 101, 3), SolverError);
}

}  // namespace
}  // namespace mgval
