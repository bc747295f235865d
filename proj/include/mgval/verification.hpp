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

#ifndef MGVAL_VERIFICATION_HPP_
#define MGVAL_VERIFICATION_HPP_

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "mgval/game_model.hpp"
#include "mgval/matrix_game.hpp"
#include "mgval/piecewise.hpp"

namespace mgval {

// A candidate value function as seen by the characterization checker.
// `joints` are the points where one-sided derivatives may differ;
// `smooth_pieces` are the intervals on which w is strictly concave, whose
// points are all extreme points of the hypograph.
struct ValueView {
  std::function<double(double)> value;
  std::function<double(double)> slope_left;
  std::function<double(double)> slope_right;
  std::vector<double> joints;
  std::vector<std::pair<double, double>> smooth_pieces;
  bool anchored_at_p_star = false;
};

// The view refers to `pv`, which must outlive it.
ValueView ViewOf(const PiecewiseValue& pv);

// Absolute tolerances are these multiples of the payoff scale; the kink
// threshold is additionally multiplied by the Lipschitz bound of u.
struct CharTolerances {
  double g1 = 1e-6;
  double g2 = 1e-5;
  double g3 = 1e-4;
  double concavity = 1e-7;
  double kink = 1e-5;
  std::size_t samples = 2000;
};

struct ConcavityViolation {
  double a, b, c;   // p-triple, a < b < c
  double residual;  // chord(b) - w(b)
};

struct PointResidual {
  double p = 0.0;
  double residual = 0.0;
};

struct CharReport {
  std::vector<ConcavityViolation> concavity_violations;
  double g1_residual = 0.0;  // w(p*) - u(p*)
  bool g1_equality = false;  // p* is an extreme point
  PointResidual g2_worst;    // most negative w'(p)(p-p*) + mu (w-u)
  PointResidual g3_worst;    // largest |w'(p)(p-p*) + mu (w-u)| at extremes
  std::vector<double> kink_locations;
  std::size_t extreme_points_checked = 0;
  bool pass = false;
};

// Concavity, G.1 (w(p*) >= u(p*), with equality when p* is extreme),
// G.2 (w'(p)(p - p*) + mu (w(p) - u(p)) >= 0) and G.3 (equality in G.2 at
// the extreme points of the hypograph), plus differentiability off p*.
CharReport CheckCharacterization(const ValueView& w, const UOracle& oracle,
                                 const DerivedParams& params,
                                 const CharTolerances& tols = {});
CharReport CheckCharacterization(const PiecewiseValue& pv,
                                 const UOracle& oracle,
                                 const CharTolerances& tols = {});

struct OracleGrid {
  double n = 0.0;
  std::vector<double> grid;
  std::vector<double> values;
  std::size_t iterations = 0;
  double residual = 0.0;  // sup-norm of the last update
  // Largest ratio of consecutive update norms after the first 10 updates,
  // and the theoretical modulus exp(-r/n).
  double worst_ratio = 0.0;
  double modulus = 0.0;
  bool concave_throughout = true;

  double Eval(double p) const;  // linear interpolation
};

// Value iteration V <- cav[(1 - e^{-r/n}) u + e^{-r/n} V o drift] on a
// uniform grid, with drift(p) = p e^{-lambda1/n} + (1 - p)(1 - e^{-lambda2/n}).
// Throws SolverError when stop_tol is not reached within max_iter.
OracleGrid DiscreteOracleValue(const GameSpec& spec, double n,
                               std::size_t grid_size = 2001,
                               std::size_t max_iter = 1000000,
                               double stop_tol = 1e-10);

// Max over the oracle grid of |w(p) - V(p)|.
double CompareToOracle(const PiecewiseValue& pv, const OracleGrid& og);

}  // namespace mgval

#endif  // MGVAL_VERIFICATION_HPP_
