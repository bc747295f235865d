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

#include "mgval/concavify.hpp"

#include <algorithm>
#include <cmath>

#include "mgval/numerics.hpp"

namespace mgval {
namespace {

constexpr double kVertexResolution = 1e-6;
// Offset used in place of the removable singularity of a chord slope.
constexpr double kQuotientStep = 1e-7;

// Cached nodes in [lo, hi], with lo and hi themselves prepended/appended.
std::vector<double> NodesBetween(const UOracle& oracle, double lo, double hi) {
  std::vector<double> xs{lo};
  for (double x : oracle.nodes()) {
    if (x > lo && x < hi) xs.push_back(x);
  }
  if (hi > lo) xs.push_back(hi);
  return xs;
}

// argmax over p in [lo, hi] of f(p), evaluated with fresh u values.
ArgMax Maximize(const UOracle& oracle, double lo, double hi,
                const ScalarFn& f, Tie tie, double value_tol) {
  const std::vector<double> xs = NodesBetween(oracle, lo, hi);
  std::vector<double> fx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
  return MaximizeOnNodes(xs, fx, f, tie, value_tol);
}

}  // namespace

double ConcaveEnvelope::Eval(double p) const {
  const std::size_t i = EdgeAt(p);
  if (xs.size() == 1) return ys[0];
  const double w = (p - xs[i]) / (xs[i + 1] - xs[i]);
  return (1.0 - w) * ys[i] + w * ys[i + 1];
}

std::size_t ConcaveEnvelope::EdgeAt(double p) const {
  if (xs.size() < 2) return 0;
  auto it = std::upper_bound(xs.begin(), xs.end(), p);
  std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
  return std::min(i, xs.size() - 2);
}

double ConcaveEnvelope::SlopeRight(double p) const {
  const std::size_t i = EdgeAt(p);
  return (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
}

double ConcaveEnvelope::SlopeLeft(double p) const {
  std::size_t i = EdgeAt(p);
  if (i > 0 && xs[i] >= p) --i;
  return (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
}

ConcaveEnvelope HullOfSamples(const UOracle& oracle) {
  const auto& nx = oracle.nodes();
  const auto& ny = oracle.values();
  ConcaveEnvelope env;
  for (std::size_t i : UpperHullIndices(nx, ny)) {
    env.xs.push_back(nx[i]);
    env.ys.push_back(ny[i]);
  }
  env.contact_tol = 1e-7 * oracle.params().scale();
  return env;
}

ConcaveEnvelope UpperConcaveEnvelope(UOracle& oracle) {
  for (int round = 0; round < 16; ++round) {
    const ConcaveEnvelope env = HullOfSamples(oracle);
    const auto& nx = oracle.nodes();
    std::vector<double> extra;
    for (std::size_t v = 0; v < env.xs.size(); ++v) {
      const double x = env.xs[v];
      if (x <= 0.0 || x >= 1.0) continue;
      const auto it = std::lower_bound(nx.begin(), nx.end(), x);
      const std::size_t k = static_cast<std::size_t>(it - nx.begin());
      // Only vertices bounding an edge that jumps over samples.
      const bool left_long = v > 0 && k > 0 && nx[k - 1] > env.xs[v - 1];
      const bool right_long =
          v + 1 < env.xs.size() && k + 1 < nx.size() && nx[k + 1] < env.xs[v + 1];
      if (!left_long && !right_long) continue;
      const double gap_l = k > 0 ? x - nx[k - 1] : 0.0;
      const double gap_r = k + 1 < nx.size() ? nx[k + 1] - x : 0.0;
      for (int j = 1; j < 8; ++j) {
        if (gap_l > kVertexResolution) extra.push_back(x - gap_l * j / 8.0);
        if (gap_r > kVertexResolution) extra.push_back(x + gap_r * j / 8.0);
      }
    }
    if (extra.empty()) return env;
    oracle.AddSamples(extra);
  }
  return HullOfSamples(oracle);
}

InitialInterval FindInitialInterval(const ConcaveEnvelope& env,
                                    const UOracle& oracle,
                                    const DerivedParams& params) {
  const double ps = params.p_star;
  const double slope_tol = 1e-10 * params.scale();

  if (ps <= 0.0) {
    const double u0 = oracle(0.0);
    const ArgMax best = Maximize(
        oracle, kQuotientStep, 1.0,
        [&](double p) { return (oracle(p) - u0) / p; }, Tie::kSmallest,
        slope_tol);
    return {0.0, best.x <= 2.0 * kQuotientStep ? 0.0 : best.x};
  }
  if (ps >= 1.0) {
    const double u1 = oracle(1.0);
    const ArgMax best = Maximize(
        oracle, 0.0, 1.0 - kQuotientStep,
        [&](double p) { return (oracle(p) - u1) / (1.0 - p); }, Tie::kLargest,
        slope_tol);
    return {best.x >= 1.0 - 2.0 * kQuotientStep ? 1.0 : best.x, 1.0};
  }

  const double u_star = oracle(ps);
  if (u_star >= env.Eval(ps) - env.contact_tol) return {ps, ps};

  const std::size_t e = env.EdgeAt(ps);
  double a = env.xs[e];
  double b = env.xs[e + 1];
  for (int iter = 0; iter < 30; ++iter) {
    const double ua = oracle(a);
    const double nb =
        Maximize(oracle, ps, 1.0,
                 [&](double p) { return (oracle(p) - ua) / (p - a); },
                 Tie::kSmallest, slope_tol)
            .x;
    const double ub = oracle(nb);
    const double na =
        Maximize(oracle, 0.0, ps,
                 [&](double p) { return -(ub - oracle(p)) / (nb - p); },
                 Tie::kLargest, slope_tol)
            .x;
    const bool done = std::abs(na - a) < 1e-13 && std::abs(nb - b) < 1e-13;
    a = na;
    b = nb;
    if (done) break;
  }
  return {a, b};
}

Initialization InitialSegment(const DerivedParams& params,
                              const InitialInterval& interval,
                              const UOracle& oracle) {
  Initialization init;
  init.p_tilde0 = interval.p_tilde0;
  init.p0 = interval.p0;
  if (interval.p0 <= interval.p_tilde0) {
    init.slope = 0.0;
    init.intercept = oracle(params.p_star);
    return init;
  }
  const double mu = params.mu, ps = params.p_star;
  const double lo = interval.p_tilde0, hi = interval.p0;
  const double ulo = oracle(lo), uhi = oracle(hi);
  const double den = (hi - lo) * (mu + 1.0);
  init.slope = mu * (uhi - ulo) / den;
  init.intercept =
      ulo * (hi * (mu + 1.0) - ps) / den + uhi * (ps - lo * (mu + 1.0)) / den;
  return init;
}

}  // namespace mgval
