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

#include "mgval/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "mgval/common.hpp"

namespace mgval {
namespace {

constexpr double kAt = 1e-12;
constexpr std::size_t kMaxEvents = 1000000;

// Calls back into a visitor for every piece of one sampled path.
template <typename Visitor>
void Walk(const RevelationPolicy& policy, double p, double horizon,
          std::mt19937_64& rng, Visitor& vis) {
  const double ps = policy.params().p_star;
  const double rate = policy.params().total_rate();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PolicyAction act = policy.Act(p);
  if (act.kind == PolicyAction::Kind::kSplit) {
    p = unif(rng) < act.UpperWeight(p) ? act.hi : act.lo;
    vis.Split(p);
    act = policy.Act(p);
  } else {
    vis.Start(p);
  }
  double t = 0.0;
  for (std::size_t step = 0; t < horizon; ++step) {
    if (step > kMaxEvents) throw SolverError("trajectory exceeded event limit");
    switch (act.kind) {
      case PolicyAction::Kind::kHold: {
        if (act.intensity > 0.0) {
          const double t1 =
              t + std::exponential_distribution<double>(act.intensity)(rng);
          if (t1 < horizon) {
            vis.Stay(p, t, t1);
            t = t1;
            p = act.target;
            vis.Jump(t, p);
            act = policy.Act(p);
            break;
          }
        }
        vis.Stay(p, t, horizon);
        t = horizon;
        break;
      }
      case PolicyAction::Kind::kSlide: {
        const double d0 = p - ps;
        if (act.stop && std::abs(*act.stop - ps) > kAt && std::abs(d0) > kAt) {
          const double tau = std::log(d0 / (*act.stop - ps)) / rate;
          if (t + tau < horizon) {
            vis.Slide(p, t, t + tau, true);
            t += std::max(tau, 0.0);
            p = *act.stop;
            act = policy.Act(p);
            break;
          }
        }
        vis.Slide(p, t, horizon, false);
        t = horizon;
        break;
      }
      case PolicyAction::Kind::kSplit:
        p = unif(rng) < act.UpperWeight(p) ? act.hi : act.lo;
        act = policy.Act(p);
        break;
      case PolicyAction::Kind::kAbsorb:
        vis.Stay(p, t, horizon);
        t = horizon;
        break;
    }
  }
}

double SlideBelief(double p0, double ps, double rate, double dt) {
  return ps + (p0 - ps) * std::exp(-rate * dt);
}

class EventRecorder {
 public:
  EventRecorder(BeliefTrajectory& out, double sample_dt)
      : out_(out), sample_dt_(sample_dt) {}

  void Start(double p) { Push(0.0, p, TrajectoryEvent::Kind::kStart); }
  void Split(double p) { Push(0.0, p, TrajectoryEvent::Kind::kSplit); }
  void Jump(double t, double p) { Push(t, p, TrajectoryEvent::Kind::kJump); }
  void Stay(double, double, double) { out_.events.back().sliding = false; }
  void Slide(double p0, double t0, double t1, bool stops) {
    out_.events.back().sliding = true;
    if (sample_dt_ > 0.0) {
      for (double t = (std::floor(t0 / sample_dt_) + 1.0) * sample_dt_;
           t < t1; t += sample_dt_) {
        Push(t, SlideBelief(p0, out_.p_star, out_.total_rate, t - t0),
             TrajectoryEvent::Kind::kSlideSample);
        out_.events.back().sliding = true;
      }
    }
    if (stops && t1 > out_.events.back().time) {
      Push(t1, SlideBelief(p0, out_.p_star, out_.total_rate, t1 - t0),
           TrajectoryEvent::Kind::kSlideSample);
    }
  }

 private:
  void Push(double t, double p, TrajectoryEvent::Kind kind) {
    out_.events.push_back({t, p, kind, false});
  }

  BeliefTrajectory& out_;
  double sample_dt_;
};

// int u(p* + sign d) d(d^mu) tabulated on d = k h, exact when u is
// linear in d between grid points.
class SlideTable {
 public:
  SlideTable(const UOracle& oracle, double ps, double mu, double sign,
             double step)
      : mu_(mu) {
    const double span = sign > 0 ? 1.0 - ps : ps;
    const std::size_t cells =
        std::max<std::size_t>(1, std::size_t(std::ceil(span / step)));
    h_ = span / double(cells);
    for (std::size_t k = 0; k <= cells; ++k) {
      const double p = std::clamp(ps + sign * h_ * double(k), 0.0, 1.0);
      u_.push_back(oracle(p));
    }
    cum_.assign(cells + 1, 0.0);
    for (std::size_t k = 0; k < cells; ++k) {
      cum_[k + 1] = cum_[k] + Partial(k, h_ * double(k + 1));
    }
  }

  // G(d) = int_0^d u(p* + sign x) d(x^mu).
  double G(double d) const {
    const std::size_t k =
        std::min<std::size_t>(std::size_t(d / h_), cum_.size() - 2);
    return cum_[k] + Partial(k, d);
  }

 private:
  double Partial(std::size_t k, double d) const {
    const double dk = h_ * double(k);
    const double beta = (u_[k + 1] - u_[k]) / h_;
    const double alpha = u_[k] - beta * dk;
    return alpha * (std::pow(d, mu_) - std::pow(dk, mu_)) +
           beta * mu_ / (mu_ + 1.0) *
               (std::pow(d, mu_ + 1.0) - std::pow(dk, mu_ + 1.0));
  }

  double mu_;
  double h_ = 1.0;
  std::vector<double> u_;
  std::vector<double> cum_;
};

class PayoffAccumulator {
 public:
  PayoffAccumulator(const UOracle& oracle, const DerivedParams& params,
                    double u_step)
      : oracle_(oracle), params_(params), u_step_(u_step) {}

  void Reset() { total_ = 0.0; }
  double total() const { return total_; }

  void Start(double) {}
  void Split(double) {}
  void Jump(double, double) {}
  void Stay(double p, double t0, double t1) {
    total_ += U(p) * (std::exp(-params_.r * t0) - std::exp(-params_.r * t1));
  }
  // e^{-r t} = e^{-r t0} (d / d0)^mu along a slide, so with s = d^mu the
  // integral becomes e^{-r t0} / s0 * int_{s1}^{s0} u ds.
  void Slide(double p0, double t0, double t1, bool) {
    const double ps = params_.p_star, mu = params_.mu;
    const double d0 = std::abs(p0 - ps);
    if (d0 <= kAt || mu <= 0.0) {
      Stay(p0, t0, t1);
      return;
    }
    const double d1 = d0 * std::exp(-params_.total_rate() * (t1 - t0));
    const SlideTable& table = Table(p0 > ps ? 1.0 : -1.0);
    total_ += std::exp(-params_.r * t0) / std::pow(d0, mu) *
              (table.G(d0) - table.G(d1));
  }

 private:
  double U(double p) {
    auto it = u_cache_.find(p);
    if (it == u_cache_.end()) it = u_cache_.emplace(p, oracle_(p)).first;
    return it->second;
  }
  const SlideTable& Table(double sign) {
    std::optional<SlideTable>& slot = sign > 0 ? above_ : below_;
    if (!slot) slot.emplace(oracle_, params_.p_star, params_.mu, sign, u_step_);
    return *slot;
  }

  const UOracle& oracle_;
  const DerivedParams& params_;
  double u_step_;
  double total_ = 0.0;
  std::map<double, double> u_cache_;
  std::optional<SlideTable> above_, below_;
};

void CheckStart(double p_init, double horizon) {
  if (!(p_init >= 0.0 && p_init <= 1.0)) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "initial belief must lie in [0, 1]");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "horizon must be positive and finite");
  }
}

}  // namespace

std::string ToString(PolicyAction::Kind kind) {
  switch (kind) {
    case PolicyAction::Kind::kSlide: return "slide";
    case PolicyAction::Kind::kSplit: return "split";
    case PolicyAction::Kind::kHold: return "hold";
    case PolicyAction::Kind::kAbsorb: return "absorb";
  }
  return "unknown";
}

std::string ToString(TrajectoryEvent::Kind kind) {
  switch (kind) {
    case TrajectoryEvent::Kind::kStart: return "start";
    case TrajectoryEvent::Kind::kSplit: return "split";
    case TrajectoryEvent::Kind::kSlideSample: return "slide-sample";
    case TrajectoryEvent::Kind::kJump: return "jump";
    case TrajectoryEvent::Kind::kTruncate: return "truncate";
  }
  return "unknown";
}

RevelationPolicy::RevelationPolicy(const PiecewiseValue& pv)
    : params_(pv.params()), init_(pv.initialization()) {
  for (const Segment& s : pv.segments()) {
    Segment copy = s;
    copy.samples.clear();
    pieces_.push_back(std::move(copy));
  }
}

RevelationPolicy BuildPolicy(const PiecewiseValue& pv) {
  return RevelationPolicy(pv);
}

PolicyAction RevelationPolicy::Act(double p) const {
  const double ps = params_.p_star;
  const double rate = params_.total_rate();
  PolicyAction act;
  if (std::abs(p - ps) <= kAt) {
    if (!init_.anchor() && init_.p_tilde0 < ps - kAt && ps + kAt < init_.p0) {
      act.kind = PolicyAction::Kind::kSplit;
      act.lo = init_.p_tilde0;
      act.hi = init_.p0;
    }
    return act;
  }
  const bool above = p > ps;
  // Above p* a piece owns (lo, hi]; below p* it owns [lo, hi).
  const Segment* seg = nullptr;
  for (const Segment& s : pieces_) {
    if (above ? (s.lo < p && p <= s.hi + kAt) : (s.lo - kAt <= p && p < s.hi)) {
      seg = &s;
      break;
    }
  }
  if (seg == nullptr) return act;

  auto hold = [&](double from, double to) {
    act.kind = PolicyAction::Kind::kHold;
    act.target = to;
    act.intensity = rate * std::abs(from - ps) / std::abs(from - to);
  };
  switch (seg->kind) {
    case SegmentKind::kNonlinear:
      act.kind = PolicyAction::Kind::kSlide;
      act.stop = above ? seg->lo : seg->hi;
      if (std::abs(*act.stop - ps) <= kAt) act.stop.reset();
      break;
    case SegmentKind::kLinear: {
      const double near = seg->jump_target.value_or(above ? seg->lo : seg->hi);
      const double far = near == seg->lo ? seg->hi : seg->lo;
      if (std::abs(p - far) <= kAt) {
        hold(far, near);
      } else {
        act.kind = PolicyAction::Kind::kSplit;
        act.lo = seg->lo;
        act.hi = seg->hi;
      }
      break;
    }
    case SegmentKind::kInitialSplit: {
      const double end = above ? seg->hi : seg->lo;
      const double other = above ? seg->lo : seg->hi;
      if (std::abs(p - end) <= kAt) {
        hold(end, other);
      } else {
        act.kind = PolicyAction::Kind::kSplit;
        act.lo = seg->lo;
        act.hi = seg->hi;
      }
      break;
    }
  }
  return act;
}

double BeliefTrajectory::At(double t) const {
  auto it = std::upper_bound(
      events.begin(), events.end(), t,
      [](double x, const TrajectoryEvent& e) { return x < e.time; });
  if (it == events.begin()) return events.empty() ? p_init : events.front().belief;
  const TrajectoryEvent& e = *std::prev(it);
  return e.sliding ? SlideBelief(e.belief, p_star, total_rate, t - e.time)
                   : e.belief;
}

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the (seed, index) pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BeliefTrajectory SampleTrajectory(const RevelationPolicy& policy,
                                  double p_init, double horizon,
                                  std::uint64_t seed, double sample_dt,
                                  std::uint64_t index) {
  CheckStart(p_init, horizon);
  BeliefTrajectory out;
  out.p_init = p_init;
  out.horizon = horizon;
  out.p_star = policy.params().p_star;
  out.total_rate = policy.params().total_rate();
  std::mt19937_64 rng(StreamSeed(seed, index));
  EventRecorder rec(out, sample_dt);
  Walk(policy, p_init, horizon, rng, rec);
  const double p_end = out.At(horizon);
  if (out.events.back().time < horizon) {
    out.events.push_back({horizon, p_end, TrajectoryEvent::Kind::kTruncate, false});
  }
  return out;
}

ValueEstimate EstimateValue(const RevelationPolicy& policy,
                            const UOracle& oracle, double p_init,
                            std::size_t num_traj, double horizon,
                            std::uint64_t seed, double u_step) {
  CheckStart(p_init, horizon);
  if (num_traj < 1) {
    throw ValidationError(ValidationError::Code::kOutOfRange,
                          "need at least one trajectory");
  }
  const DerivedParams& params = policy.params();
  PayoffAccumulator acc(oracle, params, u_step);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < num_traj; ++i) {
    std::mt19937_64 rng(StreamSeed(seed, i));
    acc.Reset();
    Walk(policy, p_init, horizon, rng, acc);
    const double x = acc.total(), delta = x - mean;
    mean += delta / double(i + 1);
    m2 += delta * (x - mean);
  }
  ValueEstimate est;
  est.p_init = p_init;
  est.num_traj = num_traj;
  est.horizon = horizon;
  const double n = double(num_traj);
  est.mean = mean;
  const double var = num_traj > 1 ? m2 / (n - 1.0) : 0.0;
  est.std_error = std::sqrt(var / n);
  est.tail_bound = std::exp(-params.r * horizon) *
                   std::max(std::abs(params.max_payoff), std::abs(params.min_payoff));
  return est;
}

}  // namespace mgval
