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

#include "mgval/limit_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mgval/common.hpp"

namespace mgval {
namespace {

// Offset replacing the removable 0/0 of the slope quotient at p = p*.
constexpr double kQuotientStep = 1e-7;
constexpr double kAtStar = 1e-12;

// The belief line seen from one side of p*. In the reflected frame
// x = 1 - p, so the decreasing pass becomes an increasing one.
class Frame {
 public:
  Frame(const UOracle& oracle, const DerivedParams& params, bool reflected)
      : oracle_(&oracle),
        reflected_(reflected),
        p_star_(reflected ? 1.0 - params.p_star : params.p_star),
        mu_(params.mu) {
    const auto& nx = oracle.nodes();
    const auto& ny = oracle.values();
    if (!reflected) {
      xs_ = nx;
      us_ = ny;
    } else {
      for (std::size_t i = nx.size(); i-- > 0;) {
        xs_.push_back(1.0 - nx[i]);
        us_.push_back(ny[i]);
      }
    }
  }

  double U(double x) const {
    const double p = reflected_ ? 1.0 - x : x;
    return (*oracle_)(std::clamp(p, 0.0, 1.0));
  }
  double ToOriginal(double x) const { return reflected_ ? 1.0 - x : x; }

  double p_star() const { return p_star_; }
  double mu() const { return mu_; }
  bool reflected() const { return reflected_; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& us() const { return us_; }

 private:
  const UOracle* oracle_;
  bool reflected_;
  double p_star_;
  double mu_;
  std::vector<double> xs_;
  std::vector<double> us_;
};

struct Tolerances {
  double eq, slope, join, argmax;
  Tolerances(const DerivedParams& params, const SolverOptions& opts) {
    const double s = params.scale();
    eq = opts.tol_eq_rel * s;
    slope = opts.tol_slope_rel * s * std::max(params.lipschitz_u, 1e-12);
    join = opts.tol_join_rel * s;
    argmax = opts.tol_argmax_rel * s;
  }
};

SlopeResult SlopeSupInFrame(const Frame& fr, double p, double f,
                            const SolverOptions& opts, double tol_argmax) {
  const double ps = fr.p_star();
  const double mu = fr.mu();
  auto quotient = [&](double x, double ux) {
    return mu * (ux - f) / (x - ps + mu * (x - p));
  };
  const bool at_star = std::abs(p - ps) <= kAtStar;
  const double start = at_star ? p + kQuotientStep : p;
  if (start >= 1.0) return {quotient(1.0, fr.U(1.0)), p};

  std::vector<double> xs{start};
  std::vector<double> fx{quotient(start, fr.U(start))};
  const auto& nx = fr.xs();
  const auto& nu = fr.us();
  for (auto it = std::upper_bound(nx.begin(), nx.end(), start + 1e-15);
       it != nx.end(); ++it) {
    const std::size_t i = static_cast<std::size_t>(it - nx.begin());
    xs.push_back(nx[i]);
    fx.push_back(quotient(nx[i], nu[i]));
  }
  const ArgMax best = MaximizeOnNodes(
      xs, fx, [&](double x) { return quotient(x, fr.U(x)); }, Tie::kLargest,
      tol_argmax);
  double rho = best.x;
  if (rho <= start + (at_star ? kQuotientStep : 0.0)) rho = p;
  (void)opts;
  return {best.value, rho};
}

// RK4 for phi' = mu (u - phi) / (x - p*), in either direction. A start at
// p* uses the one-sided limit mu / (1 + mu) u'(p*) for the first slope.
std::vector<CurveNode> IntegrateOde(const ScalarFn& u, double ps, double mu,
                                    double x0, double v0, double x1,
                                    double step) {
  const double dir = x1 >= x0 ? 1.0 : -1.0;
  auto rhs = [&](double x, double ux, double phi) {
    const double d = x - ps;
    if (std::abs(d) <= kAtStar) {
      const double us = u(ps);
      const double ud = u(ps + dir * kQuotientStep);
      return mu / (1.0 + mu) * (ud - us) / (dir * kQuotientStep);
    }
    return mu * (ux - phi) / d;
  };

  std::vector<CurveNode> nodes;
  double x = x0, phi = v0, ux = u(x0);
  nodes.push_back({x, phi, rhs(x, ux, phi)});
  while (dir * (x1 - x) > 1e-15) {
    const double d = std::abs(x - ps);
    double h = std::min(step, std::abs(x1 - x));
    // Keep h * mu / |x - p*| bounded near the singular point.
    if (d <= kAtStar) {
      h = std::min(h, 1e-8);
    } else if (mu > 0.0) {
      h = std::min(h, std::max(d / mu, 1e-8));
    }
    const double hs = dir * h;
    const double xm = x + 0.5 * hs;
    const double xe = std::abs(x1 - x) <= h ? x1 : x + hs;
    const double um = u(xm), ue = u(xe);
    const double k1 = nodes.back().dv;
    const double k2 = rhs(xm, um, phi + 0.5 * hs * k1);
    const double k3 = rhs(xm, um, phi + 0.5 * hs * k2);
    const double k4 = rhs(xe, ue, phi + hs * k3);
    phi += hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    x = xe;
    ux = ue;
    nodes.push_back({x, phi, rhs(x, ux, phi)});
  }
  if (dir < 0) std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

std::vector<CurveNode> OdeInFrame(const Frame& fr, double x0, double v0,
                                  double x1, double step) {
  return IntegrateOde([&](double x) { return fr.U(x); }, fr.p_star(), fr.mu(),
                      x0, v0, x1, step);
}

double SwitchInFrame(const Frame& fr, std::span<const CurveNode> nodes,
                     const SolverOptions& opts, double tol_argmax) {
  auto switched = [&](double x, double phi) {
    if (x >= 1.0 - 1e-12) return false;
    return SlopeSupInFrame(fr, x, phi, opts, tol_argmax).rho > x + opts.tol_rho;
  };
  const std::size_t n = nodes.size();
  if (n < 2) return nodes.back().p;
  const std::size_t stride = std::max<std::size_t>(opts.switch_stride, 1);
  std::size_t prev = 0;
  for (std::size_t j = std::min(stride, n - 1);; j = std::min(j + stride, n - 1)) {
    const std::size_t probe = (j == n - 1 && nodes[j].p >= 1.0 - 1e-12) ? n - 2 : j;
    if (probe > prev && switched(nodes[probe].p, nodes[probe].v)) {
      double lo = nodes[prev].p, hi = nodes[probe].p;
      while (hi - lo > opts.bisect_width) {
        const double mid = 0.5 * (lo + hi);
        if (switched(mid, HermiteEval(nodes, mid).value)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return hi;
    }
    prev = probe;
    if (j == n - 1) break;
  }
  return nodes.back().p;
}

PassResult PassInFrame(const Frame& fr, double x0, double w0,
                       const SolverOptions& opts, const Tolerances& tol) {
  PassResult out;
  double x = x0, wx = w0;
  while (x < 1.0 - 1e-12) {
    if (out.steps.size() >= opts.max_segments) {
      throw SolverError("pass did not terminate within max_segments steps");
    }
    const SlopeResult sr = SlopeSupInFrame(fr, x, wx, opts, tol.argmax);
    Segment seg;
    seg.lo = x;
    double next = 0.0, w_next = 0.0;
    if (sr.rho > x + opts.tol_rho) {
      next = std::min(sr.rho, 1.0);
      seg.kind = SegmentKind::kLinear;
      seg.slope = sr.a;
      seg.intercept = wx - sr.a * x;
      seg.jump_target = x;
      w_next = wx + sr.a * (next - x);
    } else {
      std::vector<CurveNode> phi = OdeInFrame(fr, x, wx, 1.0, opts.ode_step);
      next = SwitchInFrame(fr, phi, opts, tol.argmax);
      const double v_end = HermiteEval(phi, next).value;
      while (phi.size() > 1 && phi.back().p >= next - 1e-15) phi.pop_back();
      const double d = next - fr.p_star();
      phi.push_back({next, v_end, fr.mu() * (fr.U(next) - v_end) / d});
      seg.kind = SegmentKind::kNonlinear;
      seg.samples = std::move(phi);
      w_next = v_end;
    }
    if (!(next - x > opts.eps_progress)) {
      std::ostringstream msg;
      msg << "no progress at p = " << fr.ToOriginal(x) << " after "
          << out.steps.size() << " steps (next = " << fr.ToOriginal(next)
          << ")";
      throw SolverError(msg.str());
    }
    seg.hi = next;
    out.steps.push_back({x, next, seg.kind, sr.a});
    out.segments.push_back(std::move(seg));
    x = next;
    wx = w_next;
  }
  return out;
}

// Maps a pass computed in the reflected frame back to p.
// x0 is the reflected start of the pass; it maps back to origin exactly.
PassResult Unreflect(PassResult r, double x0, double origin) {
  auto back = [&](double x) { return x == x0 ? origin : 1.0 - x; };
  for (Segment& s : r.segments) {
    const double lo = back(s.hi), hi = back(s.lo);
    s.lo = lo;
    s.hi = hi;
    if (s.affine()) {
      s.intercept = s.intercept + s.slope;
      s.slope = -s.slope;
    } else {
      for (CurveNode& node : s.samples) {
        node.p = back(node.p);
        node.dv = -node.dv;
      }
      std::reverse(s.samples.begin(), s.samples.end());
    }
    if (s.jump_target) s.jump_target = back(*s.jump_target);
  }
  for (TraceStep& t : r.steps) {
    t.from = back(t.from);
    t.to = back(t.to);
    t.slope = -t.slope;
  }
  return r;
}

}  // namespace

SlopeResult SlopeSup(double p, double f_at_p, const UOracle& oracle,
                     const DerivedParams& params, const SolverOptions& opts) {
  if (!(p < 1.0) || p < params.p_star - kAtStar) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "slope_sup needs p* <= p < 1");
  }
  const Frame fr(oracle, params, false);
  return SlopeSupInFrame(fr, p, f_at_p, opts, Tolerances(params, opts).argmax);
}

SlopeResult SlopeInf(double p, double f_at_p, const UOracle& oracle,
                     const DerivedParams& params, const SolverOptions& opts) {
  if (!(p > 0.0) || p > params.p_star + kAtStar) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "slope_inf needs 0 < p <= p*");
  }
  const Frame fr(oracle, params, true);
  const double x = 1.0 - p;
  const SlopeResult r =
      SlopeSupInFrame(fr, x, f_at_p, opts, Tolerances(params, opts).argmax);
  return {-r.a, r.rho == x ? p : 1.0 - r.rho};
}

std::vector<CurveNode> SolveNonrevealing(const UOracle& oracle,
                                         const DerivedParams& params,
                                         double p_start, double v_start,
                                         double p_stop, double ode_step) {
  const double ps = params.p_star;
  const double lo = std::min(p_start, p_stop), hi = std::max(p_start, p_stop);
  if (lo < ps - kAtStar && hi > ps + kAtStar) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "nonrevealing interval straddles p*");
  }
  if (!(ode_step > 0.0)) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "ode_step must be positive");
  }
  return IntegrateOde([&](double p) { return oracle(std::clamp(p, 0.0, 1.0)); },
                      ps, params.mu, p_start, v_start, p_stop, ode_step);
}

double FindRegimeSwitch(std::span<const CurveNode> phi, const UOracle& oracle,
                        const DerivedParams& params, double p_k,
                        const SolverOptions& opts) {
  const double tol_argmax = Tolerances(params, opts).argmax;
  const bool increasing = phi.back().p > p_k;
  if (increasing) {
    const Frame fr(oracle, params, false);
    std::vector<CurveNode> part;
    for (const CurveNode& n : phi) {
      if (n.p >= p_k - 1e-15) part.push_back(n);
    }
    return SwitchInFrame(fr, part, opts, tol_argmax);
  }
  const Frame fr(oracle, params, true);
  std::vector<CurveNode> part;
  for (auto it = phi.rbegin(); it != phi.rend(); ++it) {
    if (it->p <= p_k + 1e-15) part.push_back({1.0 - it->p, it->v, -it->dv});
  }
  return 1.0 - SwitchInFrame(fr, part, opts, tol_argmax);
}

PassResult IncreasingPass(double p0, double w_p0, const UOracle& oracle,
                          const DerivedParams& params,
                          const SolverOptions& opts) {
  const Frame fr(oracle, params, false);
  return PassInFrame(fr, p0, w_p0, opts, Tolerances(params, opts));
}

PassResult DecreasingPass(double p_tilde0, double w_pt0, const UOracle& oracle,
                          const DerivedParams& params,
                          const SolverOptions& opts) {
  const Frame fr(oracle, params, true);
  const double x0 = 1.0 - p_tilde0;
  return Unreflect(PassInFrame(fr, x0, w_pt0, opts, Tolerances(params, opts)), x0,
                   p_tilde0);
}

Solution SolveLimitValue(const GameSpec& spec, const SolverOptions& opts) {
  const DerivedParams params = DeriveParams(spec);
  UOracle oracle = BuildUOracle(spec, opts.resolution,
                                opts.refine_tol_rel * params.scale());
  std::vector<double> extra{params.p_star};
  extra.insert(extra.end(), oracle.kink_candidates().begin(),
               oracle.kink_candidates().end());
  oracle.AddSamples(extra);
  ConcaveEnvelope env = UpperConcaveEnvelope(oracle);
  const InitialInterval interval = FindInitialInterval(env, oracle, params);
  const Initialization init = InitialSegment(params, interval, oracle);

  AlgorithmTrace trace;
  trace.p_tilde0 = init.p_tilde0;
  trace.p0 = init.p0;
  std::vector<Segment> segments;
  if (!init.anchor()) {
    Segment s;
    s.lo = init.p_tilde0;
    s.hi = init.p0;
    s.kind = SegmentKind::kInitialSplit;
    s.slope = init.slope;
    s.intercept = init.intercept;
    segments.push_back(s);
  }
  if (init.p0 < 1.0) {
    PassResult inc =
        IncreasingPass(init.p0, init.Value(init.p0), oracle, params, opts);
    trace.increasing = inc.steps;
    for (Segment& s : inc.segments) segments.push_back(std::move(s));
  }
  if (init.p_tilde0 > 0.0) {
    PassResult dec = DecreasingPass(init.p_tilde0, init.Value(init.p_tilde0),
                                    oracle, params, opts);
    trace.decreasing = dec.steps;
    for (Segment& s : dec.segments) segments.push_back(std::move(s));
  }
  PiecewiseValue pv(std::move(segments), params, init);
  trace.diagnostics = CheckSolverInvariants(pv, trace, oracle, opts);
  return {std::move(pv), std::move(trace), std::move(env), std::move(oracle)};
}

std::vector<std::string> CheckSolverInvariants(const PiecewiseValue& pv,
                                               const AlgorithmTrace& trace,
                                               const UOracle& oracle,
                                               const SolverOptions& opts) {
  std::vector<std::string> issues;
  const DerivedParams& params = pv.params();
  const Tolerances tol(params, opts);
  const double ps = params.p_star, mu = params.mu;
  auto report = [&](auto&&... parts) {
    std::ostringstream msg;
    msg.precision(10);
    (msg << ... << parts);
    issues.push_back(msg.str());
  };

  if (!pv.Tiles(1e-12)) report("segments do not tile [0, 1]");
  const auto& segs = pv.segments();
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    const double p = segs[i].hi;
    const double jump = std::abs(segs[i].Value(p) - segs[i + 1].Value(p));
    if (jump > tol.join) report("discontinuity ", jump, " at p = ", p);
    if (std::abs(p - ps) > kAtStar) {
      const double kink = std::abs(segs[i].Slope(p) - segs[i + 1].Slope(p));
      if (kink > tol.slope) report("kink ", kink, " at p = ", p, " != p*");
    }
  }

  std::vector<double> grid;
  for (int i = 0; i <= 2000; ++i) grid.push_back(i / 2000.0);
  for (double j : pv.Joints()) grid.push_back(j);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a < 1e-9; }),
             grid.end());
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double a = grid[i - 1], b = grid[i], c = grid[i + 1];
    const double chord =
        pv.Value(a) + (pv.Value(c) - pv.Value(a)) * (b - a) / (c - a);
    if (pv.Value(b) < chord - tol.join) {
      report("concavity violated at p = ", b, " by ", chord - pv.Value(b));
      break;
    }
  }

  for (const auto* steps : {&trace.increasing, &trace.decreasing}) {
    for (std::size_t k = 1; k < steps->size(); ++k) {
      if ((*steps)[k - 1].kind == SegmentKind::kLinear &&
          (*steps)[k].kind != SegmentKind::kNonlinear) {
        report("linear interval at p = ", (*steps)[k].from,
               " not followed by a nonlinear one");
      }
    }
  }

  for (const Segment& s : segs) {
    if (s.kind == SegmentKind::kNonlinear && s.hi - s.lo > 1e-9) {
      const bool above = s.lo >= ps - kAtStar;
      for (int j = 1; j <= 50; ++j) {
        const double p = s.lo + (s.hi - s.lo) * j / 51.0;
        const double wp = s.Value(p);
        const double ode = mu * (oracle(p) - wp) / (p - ps);
        const double a = above ? SlopeSup(p, wp, oracle, params, opts).a
                               : SlopeInf(p, wp, oracle, params, opts).a;
        if (std::abs(a - ode) > tol.eq || std::abs(s.Slope(p) - ode) > tol.eq) {
          report("nonrevealing identity off by ", std::max(std::abs(a - ode),
                 std::abs(s.Slope(p) - ode)), " at p = ", p);
          break;
        }
      }
    }
    if (s.kind == SegmentKind::kLinear && s.jump_target) {
      const double near = *s.jump_target;
      const double far = near == s.lo ? s.hi : s.lo;
      const double w_near = s.Value(near);
      const double num = w_near * (far - ps) + mu * (far - near) * oracle(far);
      const double den = far - ps + mu * (far - near);
      const double expected = num / den;
      if (std::abs(s.Value(far) - expected) > tol.eq) {
        report("smooth pasting at p = ", far, " off by ",
               std::abs(s.Value(far) - expected));
      }
    }
  }

  const Initialization& init = pv.initialization();
  if (init.p_tilde0 < init.p0) {
    const double lo = init.p_tilde0, hi = init.p0;
    const double bary = oracle(lo) * (hi - ps) / (hi - lo) +
                        oracle(hi) * (ps - lo) / (hi - lo);
    if (std::abs(init.Value(ps) - bary) > 1e-12 * params.scale() + 1e-15) {
      report("initial split at p* differs from the barycentric value by ",
             std::abs(init.Value(ps) - bary));
    }
    if ((ps == lo || ps == hi) &&
        std::abs(init.Value(ps) - oracle(ps)) > 1e-12 * params.scale()) {
      report("initial split at endpoint p* differs from u(p*)");
    }
  }
  return issues;
}

}  // namespace mgval
