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

#ifndef MGVAL_CONCAVIFY_HPP_
#define MGVAL_CONCAVIFY_HPP_

#include <vector>

#include "mgval/matrix_game.hpp"
#include "mgval/piecewise.hpp"

namespace mgval {

// Upper concave envelope cav u, stored as its hull vertices.
struct ConcaveEnvelope {
  std::vector<double> xs;
  std::vector<double> ys;
  double contact_tol = 0.0;

  double Eval(double p) const;
  // Slope of the hull edge to the right (left) of p.
  double SlopeRight(double p) const;
  double SlopeLeft(double p) const;
  // Index i of the edge [xs[i], xs[i+1]] containing p.
  std::size_t EdgeAt(double p) const;
};

// Monotone-chain hull of the oracle's samples. Vertices that bound an edge
// skipping over samples are re-sampled locally (the new samples go into
// the oracle cache) until their location is known to 1e-6.
ConcaveEnvelope UpperConcaveEnvelope(UOracle& oracle);

// Hull of the cached samples only, no refinement.
ConcaveEnvelope HullOfSamples(const UOracle& oracle);

struct InitialInterval {
  double p_tilde0;
  double p0;
};

// [p~0, p0]: the hull edge of cav u over p*, with p~0 <= p* <= p0.
//  - 0 < p* < 1 and cav u(p*) = u(p*)  ->  p~0 = p0 = p*.
//  - p* = 0: p~0 = 0, and p0 is the smallest maximizer of the chord slope
//    (u(p) - u(0)) / p (p0 = 0 when the supremum is the right derivative
//    at 0). p* = 1 is the mirror image.
//  - otherwise the endpoints of the hull edge over p*, refined by
//    alternately maximizing the chord slopes against fresh u values.
InitialInterval FindInitialInterval(const ConcaveEnvelope& env,
                                    const UOracle& oracle,
                                    const DerivedParams& params);

// Affine value on [p~0, p0] from splitting the belief between the
// endpoints; the anchor w(p*) = u(p*) when the interval is a point.
Initialization InitialSegment(const DerivedParams& params,
                              const InitialInterval& interval,
                              const UOracle& oracle);

}  // namespace mgval

#endif  // MGVAL_CONCAVIFY_HPP_
