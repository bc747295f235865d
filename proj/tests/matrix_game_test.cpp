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

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "mgval/common.hpp"
#include "mgval/matrix_game.hpp"
#include "test_support.hpp"

namespace mgval {
namespace {

Matrix RandomMatrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  }
  return m;
}

void ExpectOptimal(const Matrix& m, const MatrixGameSolution& s, double tol) {
  double sum_x = 0.0, sum_y = 0.0;
  for (double x : s.row_strategy) {
    EXPECT_GE(x, -tol);
    sum_x += x;
  }
  for (double y : s.col_strategy) {
    EXPECT_GE(y, -tol);
    sum_y += y;
  }
  EXPECT_NEAR(sum_x, 1.0, tol);
  EXPECT_NEAR(sum_y, 1.0, tol);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double payoff = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) payoff += s.row_strategy[i] * m(i, j);
    EXPECT_GE(payoff, s.value - tol) << "column " << j;
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double payoff = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) payoff += m(i, j) * s.col_strategy[j];
    EXPECT_LE(payoff, s.value + tol) << "row " << i;
  }
}

TEST(MatrixGameTest, MatchingPennies) {
  const Matrix m = Matrix::FromRows({{1, -1}, {-1, 1}});
  const MatrixGameSolution s = SolveMatrixGame(m);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
  EXPECT_NEAR(s.row_strategy[0], 0.5, 1e-12);
  EXPECT_NEAR(s.col_strategy[0], 0.5, 1e-12);
}

TEST(MatrixGameTest, RockPaperScissors) {
  const Matrix m = Matrix::FromRows({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
  const MatrixGameSolution s = SolveMatrixGame(m);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
  for (double x : s.row_strategy) EXPECT_NEAR(x, 1.0 / 3.0, 1e-12);
  for (double y : s.col_strategy) EXPECT_NEAR(y, 1.0 / 3.0, 1e-12);
}

TEST(MatrixGameTest, SaddlePointAndDegenerateShapes) {
  EXPECT_NEAR(SolveMatrixGame(Matrix::FromRows({{3, 1}, {4, 2}})).value, 2.0, 1e-12);
  EXPECT_NEAR(SolveMatrixGame(Matrix::FromRows({{3, -1, 7}})).value, -1.0, 1e-12);
  EXPECT_NEAR(SolveMatrixGame(Matrix::FromRows({{3}, {-1}, {7}})).value, 7.0, 1e-12);
  EXPECT_NEAR(SolveMatrixGame(Matrix::FromRows({{-4}})).value, -4.0, 1e-12);
  EXPECT_NEAR(SolveMatrixGame(Matrix::FromRows({{0, 0}, {0, 0}})).value, 0.0, 1e-12);
}

TEST(MatrixGameTest, AgreesWithTwoByTwoClosedForm) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix m = RandomMatrix(rng, 2, 2);
    const double lp = SolveMatrixGame(m).value;
    const double closed = SolveMatrixGame2x2(m).value;
    EXPECT_NEAR(lp, closed, 1e-10) << "trial " << trial;
  }
}

TEST(MatrixGameTest, StrategiesCertifyTheValue) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    const Matrix m = RandomMatrix(rng, rows, cols);
    ExpectOptimal(m, SolveMatrixGame(m), 1e-9);
  }
}

TEST(MatrixGameTest, DuplicateAndDominatedRows) {
  const Matrix m = Matrix::FromRows({{1, 2}, {1, 2}, {0, 0}, {2, 1}});
  const MatrixGameSolution s = SolveMatrixGame(m);
  EXPECT_NEAR(s.value, 1.5, 1e-12);
  ExpectOptimal(m, s, 1e-12);
}

TEST(MatrixGameTest, EvalUMatchesClosedForm) {
  const GameSpec g = testing::Mixed();
  for (int i = 0; i <= 300; ++i) {
    const double p = i / 300.0;
    EXPECT_NEAR(EvalU(g, p), testing::MixedU(p), 1e-12) << "p = " << p;
  }
  EXPECT_THROW(EvalU(g, -0.1), ValidationError);
  EXPECT_THROW(EvalU(g, 1.5), ValidationError);
}

TEST(MatrixGameTest, UIsLipschitz) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const GameSpec g = testing::MakeGame(
        RandomMatrix(rng, 3, 4).ToRows(), RandomMatrix(rng, 3, 4).ToRows(), 1, 1, 1);
    const double lip = DeriveParams(g).lipschitz_u;
    for (int k = 0; k < 20; ++k) {
      const double p = unif(rng), q = unif(rng);
      EXPECT_LE(std::abs(EvalU(g, p) - EvalU(g, q)), lip * std::abs(p - q) + 1e-12);
    }
  }
}

TEST(MatrixGameTest, UOfMirroredGame) {
  const GameSpec g = testing::MixedA();
  for (double p : {0.0, 0.1, 0.5, 0.8, 1.0}) {
    EXPECT_NEAR(EvalU(g.Mirrored(), 1.0 - p), EvalU(g, p), 1e-13);
  }
}

TEST(MatrixGameTest, OracleCacheHoldsExactSamples) {
  const GameSpec g = testing::Mixed();
  UOracle oracle = BuildUOracle(g, 65, 1e-6 * 4.0);
  const auto& xs = oracle.nodes();
  ASSERT_GE(xs.size(), 65u);
  EXPECT_EQ(xs.front(), 0.0);
  EXPECT_EQ(xs.back(), 1.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) EXPECT_LT(xs[i - 1], xs[i]);
    EXPECT_NEAR(oracle.values()[i], testing::MixedU(xs[i]), 1e-12);
  }
  const std::size_t before = oracle.size();
  const std::vector<double> extra{0.5, xs[3], 0.123};
  oracle.AddSamples(extra);
  EXPECT_EQ(oracle.size(), before + (std::count(xs.begin(), xs.end(), 0.5) ? 1u : 2u));
}

TEST(MatrixGameTest, KinkCandidatesNearTheKinksOfU) {
  const UOracle oracle = BuildUOracle(testing::Mixed(), 1025, 4e-6);
  bool third = false, two_thirds = false;
  for (double k : oracle.kink_candidates()) {
    third |= std::abs(k - 1.0 / 3.0) < 1e-6;
    two_thirds |= std::abs(k - 2.0 / 3.0) < 1e-6;
  }
  EXPECT_TRUE(third);
  EXPECT_TRUE(two_thirds);
}

}  // namespace
}  // namespace mgval
