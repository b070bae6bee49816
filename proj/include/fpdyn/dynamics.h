// Copyright 2026 The fpdyn Authors
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

#ifndef FPDYN_DYNAMICS_H_
#define FPDYN_DYNAMICS_H_

#include <cstdint>
#include <vector>

#include "fpdyn/game.h"
#include "fpdyn/tiebreak.h"
#include "fpdyn/trajectory.h"

namespace fpdyn {

// Relative tie width for argmax comparisons at step t.
inline double TieTolerance(double a_max, std::int64_t t) {
  return 1e-9 * a_max * static_cast<double>(t + 1);
}

double OptimismWeight(Algorithm algo);

// Simultaneous play at step t: y holds y^t = sum_{k<t} J x^k.
struct DynamicsState {
  std::int64_t t = 0;
  std::vector<double> x1, x2;
  std::vector<double> y1, y2;
  std::vector<double> prev_x1, prev_x2;
  double alpha = 0.0;
};

DynamicsState InitialState(const GameMatrix& a, const MixedStrategy& x1,
                           const MixedStrategy& x2, double alpha);

// One step of alpha-optimistic fictitious play:
//   y^{t+1} = y^t + J x^t,  x^{t+1} in argmax <x, y^{t+1} + alpha J x^t>.
DynamicsState StepSimultaneous(const DynamicsState& state, const GameMatrix& a,
                               TiebreakPair& tiebreak);

// Alternating play after step t: x holds x^t and y holds y^{t+1}, the dual
// vectors the next mover responds to. At t = 1 player 2 has no strategy
// yet (x2 is zero), y1 = 0 and y2 = -A' x1^1.
struct AltState {
  std::int64_t t = 1;
  std::vector<double> x1, x2;
  std::vector<double> y1, y2;
};

AltState InitialAltState(const GameMatrix& a, const MixedStrategy& x1);

// Even steps move player 2, odd steps move player 1.
AltState StepAlternating(const AltState& state, const GameMatrix& a,
                         TiebreakPair& tiebreak);

// In-place stepper used by the runners; avoids per-step allocation.
class SimultaneousSimulator {
 public:
  SimultaneousSimulator(const GameMatrix& a, const MixedStrategy& x1,
                        const MixedStrategy& x2, double alpha,
                        TiebreakPair& tiebreak);

  void Step();
  // y^{t+1}, without advancing.
  void NextDual(std::vector<double>& y1, std::vector<double>& y2) const;

  const DynamicsState& state() const { return s_; }
  // Vertices of the current iterates; TrajectoryRecord::kInitial at t = 0
  // unless the initial strategy is pure.
  int vertex1() const { return v1_; }
  int vertex2() const { return v2_; }

 private:
  void Payoffs();

  const GameMatrix& a_;
  TiebreakPair& tiebreak_;
  DynamicsState s_;
  int v1_;
  int v2_;
  std::vector<double> ax2_;   // A x2^t
  std::vector<double> atx1_;  // A' x1^t
  std::vector<double> pred1_, pred2_;
};

class AlternatingSimulator {
 public:
  AlternatingSimulator(const GameMatrix& a, const MixedStrategy& x1,
                       TiebreakPair& tiebreak);

  void Step();
  const AltState& state() const { return s_; }
  int vertex1() const { return v1_; }
  int vertex2() const { return v2_; }

 private:
  const GameMatrix& a_;
  TiebreakPair& tiebreak_;
  AltState s_;
  int v1_;
  int v2_;
};

// Records t = 0..T. `algo` is FP or OFP.
TrajectoryRecord Run(const GameMatrix& a, Algorithm algo,
                     const MixedStrategy& x1, const MixedStrategy& x2,
                     std::int64_t steps, TiebreakPair& tiebreak);

// General optimism weight; recorded as OFP unless alpha == 0.
TrajectoryRecord RunAlpha(const GameMatrix& a, double alpha,
                          const MixedStrategy& x1, const MixedStrategy& x2,
                          std::int64_t steps, TiebreakPair& tiebreak);

// Records t = 1..T; T must be even.
TrajectoryRecord RunAlternating(const GameMatrix& a, const MixedStrategy& x1,
                                std::int64_t steps, TiebreakPair& tiebreak);

}  // namespace fpdyn

#endif  // FPDYN_DYNAMICS_H_
