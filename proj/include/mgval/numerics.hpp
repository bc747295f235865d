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

#ifndef MGVAL_NUMERICS_HPP_
#define MGVAL_NUMERICS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mgval {

using ScalarFn = std::function<double(double)>;

// Which abscissa wins when several maximizers are within tolerance.
enum class Tie { kLargest, kSmallest };

struct ArgMax {
  double value;
  double x;
};

// Golden-section maximization on [a, b]. The endpoints are also evaluated,
// so a maximum sitting on the boundary of the bracket is found.
ArgMax GoldenSectionMax(const ScalarFn& f, double a, double b,
                        double x_tol = 1e-11);

// Global maximization of f over [xs.front(), xs.back()]:
//   1. locate every local maximum of the sampled values fx (plateaus are
//      treated as one run),
//   2. refine each with golden-section on its neighbouring bracket, and
//      bisect for the outer edges of plateaus,
//   3. among the refined points and all nodes within value_tol of the best,
//      return the largest (or smallest) abscissa.
// xs must be sorted ascending; fx[i] == f(xs[i]).
ArgMax MaximizeOnNodes(std::span<const double> xs, std::span<const double> fx,
                       const ScalarFn& f, Tie tie, double value_tol,
                       double x_tol = 1e-11);

// Indices of the upper concave hull of (xs[i], ys[i]), xs ascending.
// Collinear middle points are dropped.
std::vector<std::size_t> UpperHullIndices(std::span<const double> xs,
                                          std::span<const double> ys);

// A sample of a C1 curve: abscissa, value, derivative.
struct CurveNode {
  double p;
  double v;
  double dv;
};

// Cubic Hermite interpolation through sorted nodes (ascending p).
// Returns {value, derivative}; clamps outside the node range.
struct ValueSlope {
  double value;
  double slope;
};
ValueSlope HermiteEval(std::span<const CurveNode> nodes, double x);

double AdaptiveSimpson(const ScalarFn& f, double a, double b, double tol,
                       int max_depth = 40);

}  // namespace mgval

#endif  // MGVAL_NUMERICS_HPP_
