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

#ifndef MGVAL_MATRIX_GAME_HPP_
#define MGVAL_MATRIX_GAME_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mgval/game_model.hpp"

namespace mgval {

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;  // maximizer, over rows
  std::vector<double> col_strategy;  // minimizer, over columns
};

// Value and optimal mixed actions of the zero-sum game with payoff matrix
// `m` (row player maximizes). Solved as a dense LP with the simplex method
// and Bland's pivoting rule, so the output is a deterministic function of
// the input. Throws ValidationError on empty or non-finite input.
MatrixGameSolution SolveMatrixGame(const Matrix& m);

// Closed form for 2x2 games (saddle point or the usual mixed formula).
// Only used to cross-check the LP.
MatrixGameSolution SolveMatrixGame2x2(const Matrix& m);

// u(p): value of the one-shot game p * s1 + (1 - p) * s2 in which nobody
// observes the state.
double EvalU(const GameSpec& spec, double p);

// Evaluable p -> u(p) with an append-only cache of exact samples.
//
// operator() always solves a fresh LP and never touches the cache, so a
// const UOracle can be shared freely between threads. Samples are only
// added through the non-const AddSamples.
class UOracle {
 public:
  explicit UOracle(GameSpec spec);

  double operator()(double p) const;
  MatrixGameSolution Solve(double p) const;

  const GameSpec& spec() const { return spec_; }
  const DerivedParams& params() const { return params_; }
  double lipschitz() const { return params_.lipschitz_u; }

  // Sorted abscissas and their exact u values.
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return nodes_.size(); }

  const std::vector<double>& kink_candidates() const { return kinks_; }
  double base_spacing() const { return base_spacing_; }

  // Evaluates u at every new abscissa and merges it into the cache.
  // Abscissas already present (to 1e-15) are skipped.
  void AddSamples(std::span<const double> ps);

  // Piecewise-linear interpolation of the cached samples.
  double Interpolate(double p) const;

 private:
  void Merge(std::vector<std::pair<double, double>> fresh);

  friend UOracle BuildUOracle(const GameSpec&, std::size_t, double);

  GameSpec spec_;
  DerivedParams params_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> kinks_;
  double base_spacing_ = 1.0;
};

// Uniform grid of `resolution` samples, bisected wherever the midpoint
// deviates from the chord by more than `refine_tol` and the Lipschitz
// bound does not already rule that out. Kink candidates are flagged on the
// uniform grid from large second differences.
UOracle BuildUOracle(const GameSpec& spec, std::size_t resolution,
                     double refine_tol);

}  // namespace mgval

#endif  // MGVAL_MATRIX_GAME_HPP_
