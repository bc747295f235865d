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

#include "mgval/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "mgval/common.hpp"

namespace mgval {
namespace {

constexpr double kPivotEps = 1e-12;

void CheckFinite(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw ValidationError(ValidationError::Code::kEmptyMatrix,
                          "matrix game must be at least 1x1");
  }
  for (double x : m.data()) {
    if (!std::isfinite(x)) {
      throw ValidationError(ValidationError::Code::kNonFinite,
                            "matrix game has a non-finite entry");
    }
  }
}

}  // namespace

MatrixGameSolution SolveMatrixGame(const Matrix& m) {
  CheckFinite(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const double lo = *std::min_element(m.data().begin(), m.data().end());
  const double shift = lo - 1.0;  // shifted payoffs are all >= 1

  // Column player's LP on the shifted matrix:
  //   maximize sum(y)  s.t.  M' y <= 1,  y >= 0.
  // The slack basis is feasible, the optimum is 1 / value', and the
  // optimal duals are the row player's scaled strategy.
  const std::size_t width = cols + rows + 1;
  const std::size_t rhs = cols + rows;
  std::vector<double> t((rows + 1) * width, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return t[i * width + j];
  };
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) at(i, j) = m(i, j) - shift;
    at(i, cols + i) = 1.0;
    at(i, rhs) = 1.0;
    basis[i] = cols + i;
  }
  for (std::size_t j = 0; j < cols; ++j) at(rows, j) = 1.0;

  const std::size_t max_pivots = 50 * (rows + cols) + 1000;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > max_pivots) {
      throw SolverError("simplex did not terminate");
    }
    // Bland: lowest-index improving column.
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (at(rows, j) > kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      const double a = at(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = at(i, rhs) / a;
      if (leave == rows || ratio < best_ratio - 1e-15) {
        best_ratio = ratio;
        leave = i;
      } else if (ratio <= best_ratio + 1e-15 && basis[i] < basis[leave]) {
        leave = i;
      }
    }
    if (leave == rows) {
      throw SolverError("simplex: unbounded column LP");
    }
    const double piv = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= piv;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = at(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) at(i, j) -= f * at(leave, j);
    }
    basis[leave] = enter;
  }

  const double z = -at(rows, rhs);
  MatrixGameSolution sol;
  sol.value = 1.0 / z + shift;
  sol.col_strategy.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) sol.col_strategy[basis[i]] = at(i, rhs) / z;
  }
  sol.row_strategy.assign(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    sol.row_strategy[i] = std::max(0.0, -at(rows, cols + i)) / z;
  }
  // Renormalize away rounding so both vectors sum to one.
  for (auto* v : {&sol.row_strategy, &sol.col_strategy}) {
    double s = 0.0;
    for (double x : *v) s += x;
    for (double& x : *v) x /= s;
  }
  return sol;
}

MatrixGameSolution SolveMatrixGame2x2(const Matrix& m) {
  CheckFinite(m);
  if (m.rows() != 2 || m.cols() != 2) {
    throw ValidationError(ValidationError::Code::kDimensionMismatch,
                          "closed form needs a 2x2 matrix");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double x = m(i, j);
      const bool row_min = x <= m(i, 1 - j);
      const bool col_max = x >= m(1 - i, j);
      if (row_min && col_max) {
        MatrixGameSolution s;
        s.value = x;
        s.row_strategy = {i == 0 ? 1.0 : 0.0, i == 0 ? 0.0 : 1.0};
        s.col_strategy = {j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0};
        return s;
      }
    }
  }
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double den = a + d - b - c;
  MatrixGameSolution s;
  s.value = (a * d - b * c) / den;
  const double x = (d - c) / den;
  const double y = (d - b) / den;
  s.row_strategy = {x, 1.0 - x};
  s.col_strategy = {y, 1.0 - y};
  return s;
}

double EvalU(const GameSpec& spec, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "belief p must lie in [0, 1]");
  }
  return SolveMatrixGame(spec.Blend(p)).value;
}

UOracle::UOracle(GameSpec spec)
    : spec_(std::move(spec)), params_(DeriveParams(spec_)) {}

double UOracle::operator()(double p) const { return EvalU(spec_, p); }

MatrixGameSolution UOracle::Solve(double p) const {
  return SolveMatrixGame(spec_.Blend(p));
}

void UOracle::AddSamples(std::span<const double> ps) {
  std::vector<std::pair<double, double>> fresh;
  for (double p : ps) {
    const double q = std::clamp(p, 0.0, 1.0);
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), q - 1e-15);
    if (it != nodes_.end() && std::abs(*it - q) <= 1e-15) continue;
    fresh.emplace_back(q, (*this)(q));
  }
  Merge(std::move(fresh));
}

void UOracle::Merge(std::vector<std::pair<double, double>> fresh) {
  if (fresh.empty()) return;
  fresh.reserve(fresh.size() + nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    fresh.emplace_back(nodes_[i], values_[i]);
  }
  std::sort(fresh.begin(), fresh.end());
  nodes_.clear();
  values_.clear();
  for (const auto& [p, v] : fresh) {
    if (!nodes_.empty() && std::abs(p - nodes_.back()) <= 1e-15) continue;
    nodes_.push_back(p);
    values_.push_back(v);
  }
}

double UOracle::Interpolate(double p) const {
  if (nodes_.empty()) return (*this)(p);
  if (p <= nodes_.front()) return values_.front();
  if (p >= nodes_.back()) return values_.back();
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), p);
  const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
  const double x0 = nodes_[i - 1], x1 = nodes_[i];
  const double w = (p - x0) / (x1 - x0);
  return (1.0 - w) * values_[i - 1] + w * values_[i];
}

UOracle BuildUOracle(const GameSpec& spec, std::size_t resolution,
                     double refine_tol) {
  if (resolution < 2) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "oracle resolution must be >= 2");
  }
  UOracle oracle(spec);
  const double h = 1.0 / static_cast<double>(resolution - 1);
  oracle.base_spacing_ = h;
  std::vector<double> grid(resolution);
  std::vector<double> vals(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    grid[i] = i + 1 == resolution ? 1.0 : static_cast<double>(i) * h;
    vals[i] = oracle(grid[i]);
  }

  // Kink candidates from the uniform grid only.
  const double lip = oracle.lipschitz();
  if (lip > 0.0 && resolution >= 4) {
    const double threshold = 0.1 * lip * h;
    std::vector<bool> marked(resolution, false);
    for (std::size_t i = 1; i + 1 < resolution; ++i) {
      const double d2 = vals[i - 1] - 2.0 * vals[i] + vals[i + 1];
      marked[i] = std::abs(d2) > threshold;
    }
    for (std::size_t i = 1; i + 1 < resolution;) {
      if (!marked[i]) {
        ++i;
        continue;
      }
      std::size_t e = i;
      while (e + 1 < resolution - 1 && marked[e + 1]) ++e;
      // Intersect the secant lines on either side of the cluster.
      const std::size_t l0 = i - 1, l1 = i, r0 = e, r1 = e + 1;
      const double sl = (vals[l1] - vals[l0]) / (grid[l1] - grid[l0]);
      const double sr = (vals[r1] - vals[r0]) / (grid[r1] - grid[r0]);
      double x = 0.5 * (grid[l0] + grid[r1]);
      if (std::abs(sl - sr) > 1e-14) {
        x = (vals[r0] - vals[l0] + sl * grid[l0] - sr * grid[r0]) / (sl - sr);
        x = std::clamp(x, grid[l0], grid[r1]);
        // Refine with secants that hug the estimate.
        for (double d = h / 16.0; d > 1e-9; d /= 16.0) {
          const double a0 = std::max(grid[l0], x - 2.0 * d), a1 = std::max(grid[l0], x - d);
          const double b0 = std::min(grid[r1], x + d), b1 = std::min(grid[r1], x + 2.0 * d);
          if (a1 <= a0 || b1 <= b0) break;
          const double fa0 = oracle(a0), fa1 = oracle(a1);
          const double fb0 = oracle(b0), fb1 = oracle(b1);
          const double tl = (fa1 - fa0) / (a1 - a0), tr = (fb1 - fb0) / (b1 - b0);
          if (std::abs(tl - tr) <= 1e-12) break;
          x = std::clamp((fb0 - fa0 + tl * a0 - tr * b0) / (tl - tr), grid[l0], grid[r1]);
        }
      }
      oracle.kinks_.push_back(x);
      i = e + 1;
    }
  }

  // Adaptive bisection.
  std::vector<std::pair<double, double>> extra;
  struct Interval {
    double a, fa, b, fb;
    int depth;
  };
  std::vector<Interval> stack;
  for (std::size_t i = 0; i + 1 < resolution; ++i) {
    stack.push_back({grid[i], vals[i], grid[i + 1], vals[i + 1], 0});
  }
  constexpr int kMaxDepth = 24;
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const double width = iv.b - iv.a;
    const double d = iv.fb - iv.fa;
    // Worst case interpolation error of an L-Lipschitz function.
    const double bound =
        lip > 0.0 ? (lip * lip * width * width - d * d) / (2.0 * lip * width)
                  : 0.0;
    if (bound <= refine_tol || iv.depth >= kMaxDepth) continue;
    const double mid = 0.5 * (iv.a + iv.b);
    const double fm = oracle(mid);
    if (std::abs(fm - 0.5 * (iv.fa + iv.fb)) <= refine_tol) continue;
    extra.emplace_back(mid, fm);
    stack.push_back({iv.a, iv.fa, mid, fm, iv.depth + 1});
    stack.push_back({mid, fm, iv.b, iv.fb, iv.depth + 1});
  }
  oracle.nodes_ = std::move(grid);
  oracle.values_ = std::move(vals);
  oracle.Merge(std::move(extra));
  return oracle;
}

}  // namespace mgval
