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
#include <random>

#include "gtest/gtest.h"
#include "mgval/numerics.hpp"

namespace mgval {
namespace {

TEST(NumericsTest, GoldenSectionInteriorAndBoundary) {
  const ArgMax in = GoldenSectionMax([](double x) { return -(x - 0.3) * (x - 0.3); }, 0, 1);
  EXPECT_NEAR(in.x, 0.3, 1e-9);
  const ArgMax edge = GoldenSectionMax([](double x) { return x; }, 0.2, 0.7);
  EXPECT_EQ(edge.x, 0.7);
  EXPECT_EQ(edge.value, 0.7);
}

std::vector<double> Grid(double a, double b, int n) {
  std::vector<double> xs;
  for (int i = 0; i <= n; ++i) xs.push_back(a + (b - a) * i / n);
  return xs;
}

TEST(NumericsTest, TieBreakingPicksTheRequestedMaximizer) {
  // Two equal peaks at 0.2 and 0.8, neither on the grid.
  auto f = [](double x) {
    return -std::min((x - 0.2) * (x - 0.2), (x - 0.8) * (x - 0.8));
  };
  const std::vector<double> xs = Grid(0, 1, 37);
  std::vector<double> fx;
  for (double x : xs) fx.push_back(f(x));
  EXPECT_NEAR(MaximizeOnNodes(xs, fx, f, Tie::kLargest, 1e-12).x, 0.8, 1e-6);
  EXPECT_NEAR(MaximizeOnNodes(xs, fx, f, Tie::kSmallest, 1e-12).x, 0.2, 1e-6);
}

TEST(NumericsTest, PlateauReturnsItsEdge) {
  auto f = [](double x) { return std::min(1.0, 4.0 * x * (1.0 - x) + 0.5); };
  const std::vector<double> xs = Grid(0, 1, 100);
  std::vector<double> fx;
  for (double x : xs) fx.push_back(f(x));
  const double right = 0.5 + std::sqrt(0.125);
  EXPECT_NEAR(MaximizeOnNodes(xs, fx, f, Tie::kLargest, 1e-12).x, right, 1e-7);
  EXPECT_NEAR(MaximizeOnNodes(xs, fx, f, Tie::kSmallest, 1e-12).x, 1.0 - right, 1e-7);
}

TEST(NumericsTest, MaximizeMatchesDenseSearch) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = coef(rng), b = coef(rng), c = 10.0 * coef(rng);
    auto f = [&](double x) { return a * std::sin(c * x) + b * x * x; };
    const std::vector<double> xs = Grid(0, 1, 64);
    std::vector<double> fx;
    for (double x : xs) fx.push_back(f(x));
    double best = -1e300;
    for (int i = 0; i <= 200000; ++i) best = std::max(best, f(i / 200000.0));
    const ArgMax m = MaximizeOnNodes(xs, fx, f, Tie::kLargest, 1e-12);
    EXPECT_GE(m.value, best - 1e-9) << "trial " << trial;
    EXPECT_NEAR(f(m.x), m.value, 1e-12);
  }
}

// Upper hull value at xs[i] by brute force over all chords.
double BruteHull(const std::vector<double>& xs, const std::vector<double>& ys,
                 std::size_t i) {
  double best = ys[i];
  for (std::size_t j = 0; j <= i; ++j) {
    for (std::size_t k = i; k < xs.size(); ++k) {
      if (xs[k] == xs[j]) continue;
      const double t = (xs[i] - xs[j]) / (xs[k] - xs[j]);
      best = std::max(best, ys[j] + t * (ys[k] - ys[j]));
    }
  }
  return best;
}

TEST(NumericsTest, UpperHullMatchesBruteForce) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> xs = Grid(0, 1, 40), ys;
    for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(unif(rng));
    const std::vector<std::size_t> idx = UpperHullIndices(xs, ys);
    ASSERT_EQ(idx.front(), 0u);
    ASSERT_EQ(idx.back(), xs.size() - 1);
    std::size_t e = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      while (e + 2 < idx.size() && xs[idx[e + 1]] <= xs[i]) ++e;
      const double t = (xs[i] - xs[idx[e]]) / (xs[idx[e + 1]] - xs[idx[e]]);
      const double hull = ys[idx[e]] + t * (ys[idx[e + 1]] - ys[idx[e]]);
      EXPECT_NEAR(hull, BruteHull(xs, ys, i), 1e-12);
    }
    for (std::size_t k = 2; k < idx.size(); ++k) {
      const double s0 = (ys[idx[k - 1]] - ys[idx[k - 2]]) / (xs[idx[k - 1]] - xs[idx[k - 2]]);
      const double s1 = (ys[idx[k]] - ys[idx[k - 1]]) / (xs[idx[k]] - xs[idx[k - 1]]);
      EXPECT_GT(s0, s1);
    }
  }
}

TEST(NumericsTest, HermiteIsExactForCubics) {
  auto f = [](double x) { return 2 * x * x * x - x * x + 0.5 * x - 3; };
  auto df = [](double x) { return 6 * x * x - 2 * x + 0.5; };
  std::vector<CurveNode> nodes;
  for (double x : {0.0, 0.3, 0.35, 0.9}) nodes.push_back({x, f(x), df(x)});
  for (double x : {0.0, 0.1, 0.32, 0.5, 0.9}) {
    const ValueSlope vs = HermiteEval(nodes, x);
    EXPECT_NEAR(vs.value, f(x), 1e-13);
    EXPECT_NEAR(vs.slope, df(x), 1e-12);
  }
}

TEST(NumericsTest, AdaptiveSimpson) {
  EXPECT_NEAR(AdaptiveSimpson([](double x) { return std::sin(x); }, 0, M_PI, 1e-12), 2.0, 1e-10);
  EXPECT_NEAR(AdaptiveSimpson([](double x) { return std::sqrt(x); }, 0, 1, 1e-10), 2.0 / 3.0, 1e-8);
}

}  // namespace
}  // namespace mgval
