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

#include "gtest/gtest.h"
#include "mgval/common.hpp"
#include "mgval/piecewise.hpp"

namespace mgval {
namespace {

Segment Affine(double lo, double hi, double slope, double intercept,
               SegmentKind kind = SegmentKind::kLinear) {
  Segment s;
  s.lo = lo;
  s.hi = hi;
  s.kind = kind;
  s.slope = slope;
  s.intercept = intercept;
  return s;
}

TEST(PiecewiseTest, KindNamesRoundTrip) {
  for (SegmentKind k : {SegmentKind::kInitialSplit, SegmentKind::kLinear,
                        SegmentKind::kNonlinear}) {
    EXPECT_EQ(SegmentKindFromString(ToString(k)), k);
  }
  EXPECT_THROW(SegmentKindFromString("curved"), ValidationError);
}

TEST(PiecewiseTest, KinkedTentValuesAndSlopes) {
  PiecewiseValue pv({Affine(0.4, 1, -1, 1.4), Affine(0, 0.4, 2, 0.2)}, {}, {});
  EXPECT_TRUE(pv.Tiles());
  EXPECT_DOUBLE_EQ(pv.Value(0.0), 0.2);
  EXPECT_DOUBLE_EQ(pv.Value(0.4), 1.0);
  EXPECT_DOUBLE_EQ(pv.Value(1.0), 0.4);
  EXPECT_DOUBLE_EQ(pv.SlopeLeft(0.4), 2.0);
  EXPECT_DOUBLE_EQ(pv.SlopeRight(0.4), -1.0);
  EXPECT_DOUBLE_EQ(pv.SlopeLeft(0.0), 2.0);
  EXPECT_DOUBLE_EQ(pv.SlopeRight(1.0), -1.0);
  EXPECT_EQ(pv.SegmentIndexAt(0.4), 1u);
  EXPECT_EQ(pv.SegmentIndexAt(1.0), 1u);
  EXPECT_EQ(pv.Joints(), (std::vector<double>{0.0, 0.4, 1.0}));
}

TEST(PiecewiseTest, NonlinearPieceInterpolates) {
  Segment s;
  s.kind = SegmentKind::kNonlinear;
  s.lo = 0;
  s.hi = 1;
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    s.samples.push_back({p, p * p, 2 * p});
  }
  EXPECT_NEAR(s.Value(0.55), 0.3025, 1e-14);
  EXPECT_NEAR(s.Slope(0.55), 1.1, 1e-13);
  EXPECT_FALSE(s.affine());
}

TEST(PiecewiseTest, GapsAndOverlapsDoNotTile) {
  EXPECT_FALSE(PiecewiseValue({Affine(0, 0.4, 0, 0), Affine(0.5, 1, 0, 0)}, {}, {}).Tiles());
  EXPECT_FALSE(PiecewiseValue({Affine(0, 0.6, 0, 0), Affine(0.5, 1, 0, 0)}, {}, {}).Tiles());
  EXPECT_FALSE(PiecewiseValue({Affine(0, 0.9, 0, 0)}, {}, {}).Tiles());
  EXPECT_FALSE(PiecewiseValue().Tiles());
}

TEST(PiecewiseTest, InitializationAnchor) {
  Initialization a{0.3, 0.3, 0.0, 1.5};
  EXPECT_TRUE(a.anchor());
  EXPECT_DOUBLE_EQ(a.Value(0.3), 1.5);
  Initialization b{0.0, 0.5, 2.0, -1.0};
  EXPECT_FALSE(b.anchor());
  EXPECT_DOUBLE_EQ(b.Value(0.5), 0.0);
}

}  // namespace
}  // namespace mgval
