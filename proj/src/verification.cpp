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

#include "mgval/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mgval/common.hpp"
#include "mgval/numerics.hpp"

namespace mgval {
namespace {

constexpr double kSameP = 1e-12;

std::vector<double> HullOnGrid(const std::vector<double>& xs,
                               const std::vector<double>& ys) {
  const std::vector<std::size_t> idx = UpperHullIndices(xs, ys);
  std::vector<double> out(xs.size());
  std::size_t e = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (e + 2 < idx.size() && xs[idx[e + 1]] <= xs[i]) ++e;
    const std::size_t a = idx[e], b = idx[e + 1];
    const double t = (xs[i] - xs[a]) / (xs[b] - xs[a]);
    out[i] = ys[a] + t * (ys[b] - ys[a]);
  }
  return out;
}

}  // namespace

ValueView ViewOf(const PiecewiseValue& pv) {
  ValueView v;
  v.value = [&pv](double p) { return pv.Value(p); };
  v.slope_left = [&pv](double p) { return pv.SlopeLeft(p); };
  v.slope_right = [&pv](double p) { return pv.SlopeRight(p); };
  for (double j : pv.Joints()) {
    if (j > 0.0 && j < 1.0) v.joints.push_back(j);
  }
  for (const Segment& s : pv.segments()) {
    if (s.kind == SegmentKind::kNonlinear) v.smooth_pieces.push_back({s.lo, s.hi});
  }
  v.anchored_at_p_star = pv.initialization().anchor();
  return v;
}

CharReport CheckCharacterization(const PiecewiseValue& pv,
                                 const UOracle& oracle,
                                 const CharTolerances& tols) {
  if (!pv.Tiles()) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "candidate value does not cover [0, 1]");
  }
  return CheckCharacterization(ViewOf(pv), oracle, pv.params(), tols);
}

CharReport CheckCharacterization(const ValueView& w, const UOracle& oracle,
                                 const DerivedParams& params,
                                 const CharTolerances& tols) {
  const double scale = params.scale();
  const double ps = params.p_star, mu = params.mu;
  const double tol_kink = tols.kink * scale * std::max(params.lipschitz_u, 1e-12);
  CharReport rep;

  std::vector<double> grid;
  const std::size_t m = std::max<std::size_t>(tols.samples, 2);
  for (std::size_t i = 0; i <= m; ++i) grid.push_back(double(i) / double(m));
  grid.insert(grid.end(), w.joints.begin(), w.joints.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a < 1e-10; }),
             grid.end());
  std::vector<double> wv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) wv[i] = w.value(grid[i]);

  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double a = grid[i - 1], b = grid[i], c = grid[i + 1];
    const double chord = wv[i - 1] + (wv[i + 1] - wv[i - 1]) * (b - a) / (c - a);
    if (chord - wv[i] > tols.concavity * scale) {
      rep.concavity_violations.push_back({a, b, c, chord - wv[i]});
    }
  }

  for (double j : w.joints) {
    if (std::abs(w.slope_left(j) - w.slope_right(j)) > tol_kink) {
      rep.kink_locations.push_back(j);
    }
  }
  const bool kink_at_star =
      std::any_of(rep.kink_locations.begin(), rep.kink_locations.end(),
                  [&](double k) { return std::abs(k - ps) <= 1e-9; });

  auto residual = [&](double p, double slope) {
    return slope * (p - ps) + mu * (w.value(p) - oracle(p));
  };
  auto sides = [&](double p) {
    std::vector<double> s;
    if (p > 0.0) s.push_back(w.slope_left(p));
    if (p < 1.0) s.push_back(w.slope_right(p));
    return s;
  };

  rep.g1_residual = w.value(ps) - oracle(ps);
  rep.g1_equality = w.anchored_at_p_star || ps <= 0.0 || ps >= 1.0 || kink_at_star;
  for (const auto& [lo, hi] : w.smooth_pieces) {
    if (lo - kSameP <= ps && ps <= hi + kSameP) rep.g1_equality = true;
  }
  const double tol1 = tols.g1 * scale;
  const bool g1_ok = rep.g1_residual >= -tol1 &&
                     (!rep.g1_equality || std::abs(rep.g1_residual) <= tol1);

  rep.g2_worst = {0.0, std::numeric_limits<double>::infinity()};
  std::vector<double> g2_points;
  for (std::size_t i = 0; i <= m; ++i) g2_points.push_back(double(i) / double(m));
  g2_points.insert(g2_points.end(), w.joints.begin(), w.joints.end());
  for (double p : g2_points) {
    if (std::abs(p - ps) <= kSameP) continue;
    for (double s : sides(p)) {
      const double g = residual(p, s);
      if (g < rep.g2_worst.residual) rep.g2_worst = {p, g};
    }
  }
  if (!std::isfinite(rep.g2_worst.residual)) rep.g2_worst = {ps, 0.0};

  std::vector<std::pair<double, std::vector<double>>> extremes;
  for (const auto& [lo, hi] : w.smooth_pieces) {
    constexpr int kPerPiece = 200;
    for (int j = 0; j <= kPerPiece; ++j) {
      const double p = lo + (hi - lo) * j / kPerPiece;
      if (j == 0) {
        extremes.push_back({p, {w.slope_right(p)}});
      } else if (j == kPerPiece) {
        extremes.push_back({p, {w.slope_left(p)}});
      } else {
        extremes.push_back({p, {w.slope_right(p)}});
      }
    }
  }
  extremes.push_back({0.0, sides(0.0)});
  extremes.push_back({1.0, sides(1.0)});
  for (double k : rep.kink_locations) extremes.push_back({k, sides(k)});
  for (const auto& [p, slopes] : extremes) {
    if (std::abs(p - ps) <= kSameP || p < 0.0 || p > 1.0) continue;
    ++rep.extreme_points_checked;
    for (double s : slopes) {
      const double g = std::abs(residual(p, s));
      if (g > rep.g3_worst.residual) rep.g3_worst = {p, g};
    }
  }

  rep.pass = rep.concavity_violations.empty() && g1_ok &&
             rep.g2_worst.residual >= -tols.g2 * scale &&
             rep.g3_worst.residual <= tols.g3 * scale && !
             std::any_of(rep.kink_locations.begin(), rep.kink_locations.end(),
                         [&](double k) { return std::abs(k - ps) > 1e-9; });
  return rep;
}

double OracleGrid::Eval(double p) const {
  const std::size_t m = grid.size();
  const double pos = std::clamp(p, 0.0, 1.0) * double(m - 1);
  const std::size_t i = std::min<std::size_t>(std::size_t(pos), m - 2);
  const double t = pos - double(i);
  return values[i] + t * (values[i + 1] - values[i]);
}

OracleGrid DiscreteOracleValue(const GameSpec& spec, double n,
                               std::size_t grid_size, std::size_t max_iter,
                               double stop_tol) {
  if (grid_size < 3) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "oracle grid needs at least 3 points");
  }
  const DiscreteParams dp = DiscreteStepParams(spec, n);
  const DerivedParams params = DeriveParams(spec);
  const double keep = std::exp(-spec.r / n);

  OracleGrid og;
  og.n = n;
  og.modulus = keep;
  const std::size_t m = grid_size;
  og.grid.resize(m);
  std::vector<double> u(m);
  std::vector<std::size_t> at(m);
  std::vector<double> frac(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double p = double(i) / double(m - 1);
    og.grid[i] = p;
    u[i] = EvalU(spec, p);
    const double d = p * (1.0 - dp.pi1) + (1.0 - p) * dp.pi2;
    const double pos = std::clamp(d, 0.0, 1.0) * double(m - 1);
    at[i] = std::min<std::size_t>(std::size_t(pos), m - 2);
    frac[i] = pos - double(at[i]);
  }

  std::vector<double> v = HullOnGrid(og.grid, u);
  std::vector<double> next(m);
  double prev = 0.0;
  const double ratio_floor = 1e-8 * params.scale();
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < m; ++i) {
      const double cont = v[at[i]] + frac[i] * (v[at[i] + 1] - v[at[i]]);
      next[i] = dp.delta * u[i] + keep * cont;
    }
    next = HullOnGrid(og.grid, next);
    double res = 0.0;
    for (std::size_t i = 0; i < m; ++i) res = std::max(res, std::abs(next[i] - v[i]));
    for (std::size_t i = 1; i + 1 < m; ++i) {
      if (next[i] < 0.5 * (next[i - 1] + next[i + 1]) - 1e-12 * params.scale()) {
        og.concave_throughout = false;
      }
    }
    if (it > 10 && prev > ratio_floor) og.worst_ratio = std::max(og.worst_ratio, res / prev);
    prev = res;
    v.swap(next);
    og.iterations = it;
    og.residual = res;
    if (res < stop_tol) {
      og.values = std::move(v);
      return og;
    }
  }
  std::ostringstream msg;
  msg << "discrete oracle did not converge in " << max_iter
      << " iterations (residual " << og.residual << ")";
  throw SolverError(msg.str());
}

double CompareToOracle(const PiecewiseValue& pv, const OracleGrid& og) {
  double worst = 0.0;
  for (std::size_t i = 0; i < og.grid.size(); ++i) {
    worst = std::max(worst, std::abs(pv.Value(og.grid[i]) - og.values[i]));
  }
  return worst;
}

}  // namespace mgval
