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

#include "fpdyn/dynamics.h"

#include <algorithm>
#include <string>

#include "fpdyn/error.h"
#include "fpdyn/kernels.h"
#include "fpdyn/regret.h"

namespace fpdyn {
namespace {

void CheckShapes(const GameMatrix& a, const MixedStrategy& x1,
                 const MixedStrategy* x2) {
  if (x1.size() != a.rows()) {
    throw DimensionError("player 1 strategy has " + std::to_string(x1.size()) +
                         " entries for a " + std::to_string(a.rows()) +
                         "-row game");
  }
  if (x2 != nullptr && x2->size() != a.cols()) {
    throw DimensionError("player 2 strategy has " + std::to_string(x2->size()) +
                         " entries for a " + std::to_string(a.cols()) +
                         "-column game");
  }
}

void SetVertex(std::vector<double>& x, int i) {
  std::fill(x.begin(), x.end(), 0.0);
  x[i] = 1.0;
}

int InitialVertex(const MixedStrategy& x) {
  auto v = x.VertexIndex();
  return v ? *v : TrajectoryRecord::kInitial;
}

std::vector<double> ToVector(const MixedStrategy& x) {
  return {x.values().begin(), x.values().end()};
}

}  // namespace

double OptimismWeight(Algorithm algo) {
  switch (algo) {
    case Algorithm::kFP:
      return 0.0;
    case Algorithm::kOFP:
      return 1.0;
    case Algorithm::kAFP:
      break;
  }
  throw Error("alternating play has no optimism weight");
}

DynamicsState InitialState(const GameMatrix& a, const MixedStrategy& x1,
                           const MixedStrategy& x2, double alpha) {
  CheckShapes(a, x1, &x2);
  DynamicsState s;
  s.t = 0;
  s.x1 = ToVector(x1);
  s.x2 = ToVector(x2);
  s.y1.assign(a.rows(), 0.0);
  s.y2.assign(a.cols(), 0.0);
  s.prev_x1 = s.x1;
  s.prev_x2 = s.x2;
  s.alpha = alpha;
  return s;
}

SimultaneousSimulator::SimultaneousSimulator(const GameMatrix& a,
                                             const MixedStrategy& x1,
                                             const MixedStrategy& x2,
                                             double alpha,
                                             TiebreakPair& tiebreak)
    : a_(a),
      tiebreak_(tiebreak),
      s_(InitialState(a, x1, x2, alpha)),
      v1_(InitialVertex(x1)),
      v2_(InitialVertex(x2)),
      ax2_(a.rows()),
      atx1_(a.cols()),
      pred1_(a.rows()),
      pred2_(a.cols()) {
  Payoffs();
}

void SimultaneousSimulator::Payoffs() {
  if (v2_ >= 0) {
    auto col = a_.Column(v2_);
    std::copy(col.begin(), col.end(), ax2_.begin());
  } else {
    a_.Apply(s_.x2, ax2_);
  }
  if (v1_ >= 0) {
    auto row = a_.Row(v1_);
    std::copy(row.begin(), row.end(), atx1_.begin());
  } else {
    a_.ApplyTransposed(s_.x1, atx1_);
  }
}

void SimultaneousSimulator::NextDual(std::vector<double>& y1,
                                     std::vector<double>& y2) const {
  const kernels::KernelTable& k = kernels::Active();
  y1 = s_.y1;
  y2 = s_.y2;
  k.add(y1.data(), ax2_.data(), y1.size());
  k.sub(y2.data(), atx1_.data(), y2.size());
}

void SimultaneousSimulator::Step() {
  const kernels::KernelTable& k = kernels::Active();
  const std::int64_t t = s_.t + 1;
  const std::size_t m = s_.y1.size(), n = s_.y2.size();
  k.add(s_.y1.data(), ax2_.data(), m);
  k.sub(s_.y2.data(), atx1_.data(), n);
  std::span<const double> p1 = s_.y1, p2 = s_.y2;
  if (s_.alpha != 0.0) {
    k.add_scaled(pred1_.data(), s_.y1.data(), s_.alpha, ax2_.data(), m);
    k.add_scaled(pred2_.data(), s_.y2.data(), -s_.alpha, atx1_.data(), n);
    p1 = pred1_;
    p2 = pred2_;
  }
  const double tol = TieTolerance(a_.tie_scale(), t);
  const int i = BestResponse(p1, tol, tiebreak_.one, t);
  const int j = BestResponse(p2, tol, tiebreak_.two, t);
  s_.prev_x1.swap(s_.x1);
  s_.prev_x2.swap(s_.x2);
  s_.x1.resize(m);
  s_.x2.resize(n);
  SetVertex(s_.x1, i);
  SetVertex(s_.x2, j);
  v1_ = i;
  v2_ = j;
  s_.t = t;
  Payoffs();
}

DynamicsState StepSimultaneous(const DynamicsState& state, const GameMatrix& a,
                               TiebreakPair& tiebreak) {
  if (state.x1.size() != static_cast<std::size_t>(a.rows()) ||
      state.x2.size() != static_cast<std::size_t>(a.cols()) ||
      state.y1.size() != state.x1.size() || state.y2.size() != state.x2.size()) {
    throw DimensionError("state does not match the game dimensions");
  }
  DynamicsState next = state;
  std::vector<double> ax2(a.rows()), atx1(a.cols());
  a.Apply(state.x2, ax2);
  a.ApplyTransposed(state.x1, atx1);
  const kernels::KernelTable& k = kernels::Active();
  k.add(next.y1.data(), ax2.data(), ax2.size());
  k.sub(next.y2.data(), atx1.data(), atx1.size());
  std::vector<double> p1(a.rows()), p2(a.cols());
  k.add_scaled(p1.data(), next.y1.data(), state.alpha, ax2.data(), p1.size());
  k.add_scaled(p2.data(), next.y2.data(), -state.alpha, atx1.data(), p2.size());
  next.t = state.t + 1;
  const double tol = TieTolerance(a.tie_scale(), next.t);
  const int i = BestResponse(p1, tol, tiebreak.one, next.t);
  const int j = BestResponse(p2, tol, tiebreak.two, next.t);
  next.prev_x1 = state.x1;
  next.prev_x2 = state.x2;
  SetVertex(next.x1, i);
  SetVertex(next.x2, j);
  return next;
}

AltState InitialAltState(const GameMatrix& a, const MixedStrategy& x1) {
  CheckShapes(a, x1, nullptr);
  AltState s;
  s.t = 1;
  s.x1 = ToVector(x1);
  s.x2.assign(a.cols(), 0.0);
  s.y1.assign(a.rows(), 0.0);
  s.y2.assign(a.cols(), 0.0);
  std::vector<double> atx1(a.cols());
  a.ApplyTransposed(s.x1, atx1);
  kernels::Active().sub(s.y2.data(), atx1.data(), atx1.size());
  return s;
}

AltState StepAlternating(const AltState& state, const GameMatrix& a,
                         TiebreakPair& tiebreak) {
  AltState next = state;
  next.t = state.t + 1;
  const kernels::KernelTable& k = kernels::Active();
  const double tol = TieTolerance(a.tie_scale(), next.t);
  std::vector<double> ax2(a.rows()), atx1(a.cols());
  if (next.t % 2 == 0) {
    const int j = BestResponse(state.y2, tol, tiebreak.two, next.t);
    SetVertex(next.x2, j);
  } else {
    const int i = BestResponse(state.y1, tol, tiebreak.one, next.t);
    SetVertex(next.x1, i);
  }
  // Each player's feedback is the opponent's current strategy; the mover
  // has just changed, the other player holds.
  a.Apply(next.x2, ax2);
  a.ApplyTransposed(next.x1, atx1);
  k.add(next.y1.data(), ax2.data(), ax2.size());
  k.sub(next.y2.data(), atx1.data(), atx1.size());
  return next;
}

AlternatingSimulator::AlternatingSimulator(const GameMatrix& a,
                                           const MixedStrategy& x1,
                                           TiebreakPair& tiebreak)
    : a_(a),
      tiebreak_(tiebreak),
      s_(InitialAltState(a, x1)),
      v1_(InitialVertex(x1)),
      v2_(TrajectoryRecord::kAbsent) {}

void AlternatingSimulator::Step() {
  const kernels::KernelTable& k = kernels::Active();
  const std::int64_t t = s_.t + 1;
  const double tol = TieTolerance(a_.tie_scale(), t);
  const std::size_t m = s_.y1.size(), n = s_.y2.size();
  if (t % 2 == 0) {
    v2_ = BestResponse(s_.y2, tol, tiebreak_.two, t);
    SetVertex(s_.x2, v2_);
  } else {
    v1_ = BestResponse(s_.y1, tol, tiebreak_.one, t);
    SetVertex(s_.x1, v1_);
  }
  k.add(s_.y1.data(), a_.Column(v2_).data(), m);
  if (v1_ >= 0) {
    k.sub(s_.y2.data(), a_.Row(v1_).data(), n);
  } else {
    std::vector<double> atx1(n);
    a_.ApplyTransposed(s_.x1, atx1);
    k.sub(s_.y2.data(), atx1.data(), n);
  }
  s_.t = t;
}

TrajectoryRecord RunAlpha(const GameMatrix& a, double alpha,
                          const MixedStrategy& x1, const MixedStrategy& x2,
                          std::int64_t steps, TiebreakPair& tiebreak) {
  if (steps < 1) throw TrajectoryError("run needs at least one step");
  SimultaneousSimulator sim(a, x1, x2, alpha, tiebreak);
  TrajectoryRecord rec(alpha == 0.0 ? Algorithm::kFP : Algorithm::kOFP,
                       a.rows(), a.cols(), 0, x1, x2);
  std::vector<double> y1, y2;
  for (std::int64_t t = 0; t <= steps; ++t) {
    const DynamicsState& s = sim.state();
    rec.Append(sim.vertex1(), sim.vertex2(), s.y1, s.y2);
    if (t < steps) {
      sim.Step();
      rec.Info(t).energy = EnergyFull(sim.state().y1, sim.state().y2);
    } else {
      sim.NextDual(y1, y2);
      rec.Info(t).energy = EnergyFull(y1, y2);
      rec.Finish(y1, y2);
    }
  }
  return rec;
}

TrajectoryRecord Run(const GameMatrix& a, Algorithm algo,
                     const MixedStrategy& x1, const MixedStrategy& x2,
                     std::int64_t steps, TiebreakPair& tiebreak) {
  if (algo == Algorithm::kAFP) {
    throw Error("Run handles simultaneous play; use RunAlternating for AFP");
  }
  return RunAlpha(a, OptimismWeight(algo), x1, x2, steps, tiebreak);
}

TrajectoryRecord RunAlternating(const GameMatrix& a, const MixedStrategy& x1,
                                std::int64_t steps, TiebreakPair& tiebreak) {
  if (steps < 2 || steps % 2 != 0) {
    throw TrajectoryError("alternating play needs an even horizon >= 2, got " +
                          std::to_string(steps));
  }
  AlternatingSimulator sim(a, x1, tiebreak);
  TrajectoryRecord rec(Algorithm::kAFP, a.rows(), a.cols(), 1, x1,
                       std::nullopt);
  std::vector<double> prev1(a.rows(), 0.0), prev2(a.cols(), 0.0);
  for (std::int64_t t = 1; t <= steps; ++t) {
    const AltState& s = sim.state();
    rec.Append(sim.vertex1(), sim.vertex2(), prev1, prev2);
    rec.Info(t).energy = EnergyFull(s.y1, s.y2);
    prev1 = s.y1;
    prev2 = s.y2;
    if (t < steps) sim.Step();
  }
  rec.Finish(sim.state().y1, sim.state().y2);
  return rec;
}

}  // namespace fpdyn
