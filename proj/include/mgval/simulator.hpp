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

#ifndef MGVAL_SIMULATOR_HPP_
#define MGVAL_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgval/game_model.hpp"
#include "mgval/matrix_game.hpp"
#include "mgval/piecewise.hpp"

namespace mgval {

// What the informed player does when the belief is at p.
struct PolicyAction {
  enum class Kind { kSlide, kSplit, kHold, kAbsorb };
  Kind kind = Kind::kAbsorb;
  // kSplit: targets lo < p < hi, chosen with mean-preserving weights.
  double lo = 0.0;
  double hi = 0.0;
  // kHold: jump to `target` at rate `intensity`.
  double target = 0.0;
  double intensity = 0.0;
  // kSlide: the belief drifts toward p* and changes regime on reaching
  // `stop`; absent when the slide only approaches p*.
  std::optional<double> stop;

  // Probability of landing on hi after a split from p.
  double UpperWeight(double p) const { return (p - lo) / (hi - lo); }
};

std::string ToString(PolicyAction::Kind kind);

// Optimal belief dynamics read off a solved value: slide on nonlinear
// pieces, split inside linear pieces and the initial interval, hold at
// the far ends and jump toward p* at rate
// (lambda1 + lambda2) |p'' - p*| / |p'' - p'|.
class RevelationPolicy {
 public:
  RevelationPolicy() = default;
  RevelationPolicy(const PiecewiseValue& pv);

  PolicyAction Act(double p) const;
  const DerivedParams& params() const { return params_; }
  const std::vector<Segment>& pieces() const { return pieces_; }

 private:
  std::vector<Segment> pieces_;  // samples dropped
  DerivedParams params_;
  Initialization init_;
};

RevelationPolicy BuildPolicy(const PiecewiseValue& pv);

struct TrajectoryEvent {
  enum class Kind { kStart, kSplit, kSlideSample, kJump, kTruncate };
  double time;
  double belief;
  Kind kind;
  bool sliding;  // the belief slides (rather than stays put) afterwards
};

std::string ToString(TrajectoryEvent::Kind kind);

struct BeliefTrajectory {
  double p_init = 0.0;
  double horizon = 0.0;
  double p_star = 0.0;
  double total_rate = 0.0;
  std::vector<TrajectoryEvent> events;

  // Right-continuous path value at 0 <= t <= horizon.
  double At(double t) const;
};

// Root seed plus trajectory index -> independent 64-bit stream seed.
std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t index);

// One path from p_init. Slides are recorded every `sample_dt` time units.
BeliefTrajectory SampleTrajectory(const RevelationPolicy& policy,
                                  double p_init, double horizon,
                                  std::uint64_t seed, double sample_dt = 0.1,
                                  std::uint64_t index = 0);

struct ValueEstimate {
  double p_init = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  double tail_bound = 0.0;  // e^{-r horizon} max |u|, not in std_error
  std::size_t num_traj = 0;
  double horizon = 0.0;
};

// Monte-Carlo estimate of E[int_0^horizon r e^{-rt} u(p_t) dt] under the
// policy. Integrals along slides are exact for u linear between samples
// spaced `u_step` apart in |p - p*|.
ValueEstimate EstimateValue(const RevelationPolicy& policy,
                            const UOracle& oracle, double p_init,
                            std::size_t num_traj, double horizon,
                            std::uint64_t seed, double u_step = 1e-4);

}  // namespace mgval

#endif  // MGVAL_SIMULATOR_HPP_
