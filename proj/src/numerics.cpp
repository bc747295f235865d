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

#include "mgval/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace mgval {
namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

double SimpsonStep(const ScalarFn& f, double a, double fa, double b, double fb,
                   double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return SimpsonStep(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         SimpsonStep(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

// Last point between inside and outside where f stays at or above level.
double PlateauEdge(const ScalarFn& f, double inside, double outside,
                   double level, double x_tol) {
  while (std::abs(outside - inside) > x_tol) {
    const double mid = 0.5 * (inside + outside);
    if (f(mid) >= level) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

}  // namespace

ArgMax GoldenSectionMax(const ScalarFn& f, double a, double b, double x_tol) {
  ArgMax best{f(a), a};
  if (b <= a) return best;
  const ArgMax right{f(b), b};
  if (right.value > best.value) best = right;

  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  for (const ArgMax& cand : {ArgMax{fc, c}, ArgMax{fd, d}}) {
    if (cand.value > best.value) best = cand;
  }
  return best;
}

ArgMax MaximizeOnNodes(std::span<const double> xs, std::span<const double> fx,
                       const ScalarFn& f, Tie tie, double value_tol,
                       double x_tol) {
  const std::size_t n = xs.size();
  if (n == 1) return {fx[0], xs[0]};

  std::vector<ArgMax> candidates;
  auto same = [](double u, double v) {
    return std::abs(u - v) <= 1e-15 * (1.0 + std::abs(u));
  };
  for (std::size_t s = 0; s < n;) {
    std::size_t e = s;
    while (e + 1 < n && same(fx[e + 1], fx[s])) ++e;
    const bool left_ok = s == 0 || fx[s - 1] < fx[s];
    const bool right_ok = e + 1 == n || fx[e + 1] < fx[s];
    if (left_ok && right_ok) {
      const std::size_t lo = s == 0 ? 0 : s - 1;
      const std::size_t hi = e + 1 == n ? e : e + 1;
      if (s == e) {
        candidates.push_back(GoldenSectionMax(f, xs[lo], xs[hi], x_tol));
        candidates.push_back({fx[s], xs[s]});
      } else {
        // Plateau: both ends, plus whatever lies just outside.
        candidates.push_back({fx[s], xs[s]});
        candidates.push_back({fx[e], xs[e]});
        if (lo < s) {
          candidates.push_back(GoldenSectionMax(f, xs[lo], xs[s], x_tol));
          candidates.push_back({fx[s], PlateauEdge(f, xs[s], xs[lo], fx[s] - value_tol, x_tol)});
        }
        if (hi > e) {
          candidates.push_back(GoldenSectionMax(f, xs[e], xs[hi], x_tol));
          candidates.push_back({fx[e], PlateauEdge(f, xs[e], xs[hi], fx[e] - value_tol, x_tol)});
        }
      }
    }
    s = e + 1;
  }

  ArgMax best = candidates.front();
  for (const ArgMax& c : candidates) {
    if (c.value > best.value) best = c;
  }
  // Any node within tolerance may break the tie, not only local maxima.
  for (std::size_t i = 0; i < n; ++i) candidates.push_back({fx[i], xs[i]});
  ArgMax chosen = best;
  for (const ArgMax& c : candidates) {
    if (c.value >= best.value - value_tol) {
      const bool further =
          tie == Tie::kLargest ? c.x > chosen.x : c.x < chosen.x;
      if (further) chosen = c;
    }
  }
  // Report the best value, at the tie-broken abscissa.
  chosen.value = std::max(chosen.value, best.value);
  return chosen;
}

std::vector<std::size_t> UpperHullIndices(std::span<const double> xs,
                                          std::span<const double> ys) {
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      // Drop b unless it lies strictly above the chord a -> i.
      const double cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) -
                           (ys[b] - ys[a]) * (xs[i] - xs[a]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  return hull;
}

ValueSlope HermiteEval(std::span<const CurveNode> nodes, double x) {
  if (nodes.size() == 1 || x <= nodes.front().p) {
    return {nodes.front().v, nodes.front().dv};
  }
  if (x >= nodes.back().p) return {nodes.back().v, nodes.back().dv};
  const auto it = std::upper_bound(
      nodes.begin(), nodes.end(), x,
      [](double value, const CurveNode& node) { return value < node.p; });
  const CurveNode& a = *(it - 1);
  const CurveNode& b = *it;
  const double h = b.p - a.p;
  const double t = (x - a.p) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  const double value = h00 * a.v + h10 * h * a.dv + h01 * b.v + h11 * h * b.dv;
  const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1;
  const double d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
  const double slope = (d00 * a.v + d01 * b.v) / h + d10 * a.dv + d11 * b.dv;
  return {value, slope};
}

double AdaptiveSimpson(const ScalarFn& f, double a, double b, double tol,
                       int max_depth) {
  if (b == a) return 0.0;
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return SimpsonStep(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace mgval
