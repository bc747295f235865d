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

#ifndef MGVAL_PIECEWISE_HPP_
#define MGVAL_PIECEWISE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mgval/game_model.hpp"
#include "mgval/numerics.hpp"

namespace mgval {

enum class SegmentKind { kInitialSplit, kLinear, kNonlinear };

std::string ToString(SegmentKind kind);
SegmentKind SegmentKindFromString(const std::string& s);

// One piece of the value function on [lo, hi].
//
// InitialSplit and Linear pieces are affine (slope, intercept). Nonlinear
// pieces carry the dense ODE solution as Hermite nodes. A Linear piece
// records the endpoint the belief jumps to (the one closer to p*).
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  SegmentKind kind = SegmentKind::kLinear;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<CurveNode> samples;
  std::optional<double> jump_target;

  bool affine() const { return kind != SegmentKind::kNonlinear; }
  double Value(double p) const;
  double Slope(double p) const;
};

// Interval on which the value is obtained by the initial split. When
// p_tilde0 == p0 (== p*) it degenerates to the anchor w(p*) = u(p*).
struct Initialization {
  double p_tilde0 = 0.0;
  double p0 = 0.0;
  double slope = 0.0;
  double intercept = 0.0;

  bool anchor() const { return p_tilde0 == p0; }
  double Value(double p) const { return intercept + slope * p; }
};

// Ordered segments tiling [0, 1].
class PiecewiseValue {
 public:
  PiecewiseValue() = default;
  PiecewiseValue(std::vector<Segment> segments, DerivedParams params,
                 Initialization init);

  const std::vector<Segment>& segments() const { return segments_; }
  const DerivedParams& params() const { return params_; }
  const Initialization& initialization() const { return init_; }

  double Value(double p) const;
  // One-sided derivatives; at 0 (resp. 1) the left (resp. right)
  // derivative falls back to the one-sided one available.
  double SlopeLeft(double p) const;
  double SlopeRight(double p) const;

  // Index of the segment with lo <= p < hi (the last one for p == 1).
  std::size_t SegmentIndexAt(double p) const;

  // Segment boundaries, including 0 and 1.
  std::vector<double> Joints() const;

  // Gaps or overlaps larger than `tol` between consecutive segments.
  bool Tiles(double tol = 1e-12) const;

 private:
  std::vector<Segment> segments_;
  DerivedParams params_;
  Initialization init_;
};

}  // namespace mgval

#endif  // MGVAL_PIECEWISE_HPP_
