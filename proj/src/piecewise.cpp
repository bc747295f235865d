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

#include "mgval/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "mgval/common.hpp"

namespace mgval {

std::string ToString(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kInitialSplit:
      return "initial_split";
    case SegmentKind::kLinear:
      return "linear";
    case SegmentKind::kNonlinear:
      return "nonlinear";
  }
  return "unknown";
}

SegmentKind SegmentKindFromString(const std::string& s) {
  if (s == "initial_split") return SegmentKind::kInitialSplit;
  if (s == "linear") return SegmentKind::kLinear;
  if (s == "nonlinear") return SegmentKind::kNonlinear;
  throw ValidationError(ValidationError::Code::kBadType,
                        "unknown segment kind '" + s + "'");
}

double Segment::Value(double p) const {
  if (affine()) return intercept + slope * p;
  return HermiteEval(samples, p).value;
}

double Segment::Slope(double p) const {
  if (affine()) return slope;
  return HermiteEval(samples, p).slope;
}

PiecewiseValue::PiecewiseValue(std::vector<Segment> segments,
                               DerivedParams params, Initialization init)
    : segments_(std::move(segments)), params_(params), init_(init) {
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
}

std::size_t PiecewiseValue::SegmentIndexAt(double p) const {
  if (segments_.empty()) throw Error("empty piecewise value");
  const auto it = std::upper_bound(
      segments_.begin(), segments_.end(), p,
      [](double x, const Segment& s) { return x < s.lo; });
  std::size_t i = it == segments_.begin()
                      ? 0
                      : static_cast<std::size_t>(it - segments_.begin()) - 1;
  // Zero-width pieces never own a point that a neighbour also covers.
  while (i + 1 < segments_.size() && segments_[i].hi <= p &&
         segments_[i + 1].lo <= p) {
    ++i;
  }
  return i;
}

double PiecewiseValue::Value(double p) const {
  return segments_[SegmentIndexAt(p)].Value(p);
}

double PiecewiseValue::SlopeRight(double p) const {
  return segments_[SegmentIndexAt(p)].Slope(p);
}

double PiecewiseValue::SlopeLeft(double p) const {
  std::size_t i = SegmentIndexAt(p);
  while (i > 0 && segments_[i].lo >= p) --i;
  return segments_[i].Slope(p);
}

std::vector<double> PiecewiseValue::Joints() const {
  std::vector<double> out;
  for (const Segment& s : segments_) {
    if (out.empty() || s.lo > out.back()) out.push_back(s.lo);
    if (s.hi > out.back()) out.push_back(s.hi);
  }
  return out;
}

bool PiecewiseValue::Tiles(double tol) const {
  if (segments_.empty()) return false;
  if (std::abs(segments_.front().lo) > tol) return false;
  if (std::abs(segments_.back().hi - 1.0) > tol) return false;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].hi < segments_[i].lo) return false;
    if (i > 0 && std::abs(segments_[i].lo - segments_[i - 1].hi) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace mgval
