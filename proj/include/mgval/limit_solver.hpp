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

#ifndef MGVAL_LIMIT_SOLVER_HPP_
#define MGVAL_LIMIT_SOLVER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mgval/concavify.hpp"
#include "mgval/game_model.hpp"
#include "mgval/matrix_game.hpp"
#include "mgval/numerics.hpp"
#include "mgval/piecewise.hpp"

namespace mgval {

// Numerical knobs of the solver. Relative tolerances are multiplied by the
// payoff scale (max payoff - min payoff) before use.
struct SolverOptions {
  std::size_t resolution = 1025;
  double refine_tol_rel = 1e-6;
  double ode_step = 1e-4;

  double tol_rho = 1e-6;         // rho > p + tol_rho means "jump"
  double tol_eq_rel = 1e-6;
  double tol_slope_rel = 1e-5;   // also multiplied by the Lipschitz bound
  double tol_join_rel = 1e-7;
  double tol_argmax_rel = 1e-8;
  double eps_progress = 1e-7;

  std::size_t switch_stride = 10;  // ODE nodes between switch probes
  double bisect_width = 1e-9;
  std::size_t max_segments = 10000;
};

struct SlopeResult {
  double a;    // extremal slope
  double rho;  // extremal (largest / smallest) optimizer
};

// a(p, f) = sup over p' in (p, 1] of mu (u(p') - f) / (p' - p* + mu (p' - p))
// and the largest maximizer rho. Requires p >= p*, p < 1. When the
// supremum is only approached as p' -> p, rho == p.
SlopeResult SlopeSup(double p, double f_at_p, const UOracle& oracle,
                     const DerivedParams& params,
                     const SolverOptions& opts = {});

// Mirror image: inf over p' in [0, p), smallest minimizer. Requires
// p <= p*, p > 0.
SlopeResult SlopeInf(double p, double f_at_p, const UOracle& oracle,
                     const DerivedParams& params,
                     const SolverOptions& opts = {});

// RK4 solution of phi' = mu (u - phi) / (p - p*) from (p_start, v_start)
// to p_stop, moving away from p* (p_start may equal p*). Nodes are
// returned in ascending p with phi' attached.
std::vector<CurveNode> SolveNonrevealing(const UOracle& oracle,
                                         const DerivedParams& params,
                                         double p_start, double v_start,
                                         double p_stop, double ode_step);

// First point past p_k (in the direction away from p*) where jumping
// beats sliding along phi; returns the far end of phi when that never
// happens.
double FindRegimeSwitch(std::span<const CurveNode> phi, const UOracle& oracle,
                        const DerivedParams& params, double p_k,
                        const SolverOptions& opts = {});

struct TraceStep {
  double from;
  double to;
  SegmentKind kind;
  double slope;  // a(p_k, w) (or a~) at the start of the step
};

struct AlgorithmTrace {
  double p_tilde0 = 0.0;
  double p0 = 0.0;
  std::vector<TraceStep> increasing;
  std::vector<TraceStep> decreasing;
  std::vector<std::string> diagnostics;  // violated runtime invariants
};

struct PassResult {
  std::vector<Segment> segments;
  std::vector<TraceStep> steps;
};

// Extends w from (p0, w_p0) to [p0, 1].
PassResult IncreasingPass(double p0, double w_p0, const UOracle& oracle,
                          const DerivedParams& params,
                          const SolverOptions& opts = {});
// Extends w from (p~0, w_pt0) to [0, p~0].
PassResult DecreasingPass(double p_tilde0, double w_pt0,
                          const UOracle& oracle, const DerivedParams& params,
                          const SolverOptions& opts = {});

struct Solution {
  PiecewiseValue value;
  AlgorithmTrace trace;
  ConcaveEnvelope envelope;
  UOracle oracle;
};

// Oracle -> envelope -> initial segment -> both passes -> invariant checks.
Solution SolveLimitValue(const GameSpec& spec, const SolverOptions& opts = {});

// Runtime invariants of an assembled value (tiling, continuity,
// concavity, smoothness off p*, alternation, the nonrevealing identity on
// nonlinear pieces, the smooth-pasting identity at linear far ends).
// Returns human-readable violations; empty means all hold.
std::vector<std::string> CheckSolverInvariants(const PiecewiseValue& pv,
                                               const AlgorithmTrace& trace,
                                               const UOracle& oracle,
                                               const SolverOptions& opts = {});

}  // namespace mgval

#endif  // MGVAL_LIMIT_SOLVER_HPP_
