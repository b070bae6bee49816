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

#include "fpdyn/regret.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpdyn/error.h"
#include "fpdyn/kernels.h"

namespace fpdyn {
namespace {

std::vector<double> Values(const std::vector<CompensatedSum>& s) {
  std::vector<double> v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = s[i].value();
  return v;
}

void AddInto(std::vector<CompensatedSum>& s, std::span<const double> x) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (x[i] != 0.0) s[i].Add(x[i]);
  }
}

// <x1, A x2> for vectors that are usually vertices.
double Bilinear(const GameMatrix& a, std::span<const double> x1,
                std::span<const double> x2) {
  double total = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    if (x1[i] == 0.0) continue;
    total += x1[i] * kernels::Active().dot(a.Row(i).data(), x2.data(),
                                           x2.size());
  }
  return total;
}

struct Extremes {
  double max_ax2;
  double min_atx1;
};

Extremes EvaluateSums(const GameMatrix& a, const std::vector<double>& s1,
                      const std::vector<double>& s2) {
  std::vector<double> g1(a.rows()), g2(a.cols());
  a.Apply(s2, g1);
  a.ApplyTransposed(s1, g2);
  return {*std::max_element(g1.begin(), g1.end()),
          *std::min_element(g2.begin(), g2.end())};
}

void RequireRange(const TrajectoryRecord& traj, std::int64_t steps) {
  if (steps > traj.last_step()) {
    throw TrajectoryError("trajectory ends at step " +
                          std::to_string(traj.last_step()) +
                          ", regret requested through " +
                          std::to_string(steps));
  }
}

}  // namespace

double EnergyFull(std::span<const double> y1, std::span<const double> y2) {
  if (y1.empty() || y2.empty()) throw DimensionError("energy of empty vector");
  const kernels::KernelTable& k = kernels::Active();
  return k.max(y1.data(), y1.size()) + k.max(y2.data(), y2.size());
}

void CompensatedSum::Add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

RegretAccumulator::RegretAccumulator(const GameMatrix& a)
    : a_(a), s1_(a.rows()), s2_(a.cols()) {}

void RegretAccumulator::Add(std::span<const double> x1,
                            std::span<const double> x2) {
  if (x1.size() != s1_.size() || x2.size() != s2_.size()) {
    throw DimensionError("regret accumulator: strategy size mismatch");
  }
  AddInto(s1_, x1);
  AddInto(s2_, x2);
  payoff_.Add(Bilinear(a_, x1, x2));
  ++count_;
}

void RegretAccumulator::AddVertices(int i, int j) {
  s1_[i].Add(1.0);
  s2_[j].Add(1.0);
  payoff_.Add(a_.at(i, j));
  ++count_;
}

std::vector<double> RegretAccumulator::Sum1() const { return Values(s1_); }
std::vector<double> RegretAccumulator::Sum2() const { return Values(s2_); }

RegretBreakdown RegretAccumulator::Breakdown() const {
  const Extremes e = EvaluateSums(a_, Sum1(), Sum2());
  const double p = payoff_.value();
  RegretBreakdown r;
  r.reg1 = e.max_ax2 - p;
  r.reg2 = p - e.min_atx1;
  r.total = r.reg1 + r.reg2;
  return r;
}

RegretBreakdown Regret(const GameMatrix& a, const TrajectoryRecord& traj,
                       std::int64_t steps) {
  if (traj.mode() != PlayMode::kSimultaneous) {
    throw TrajectoryError("regret needs a simultaneous-play trajectory");
  }
  if (steps < 0) throw TrajectoryError("negative horizon");
  RequireRange(traj, steps);
  RegretAccumulator acc(a);
  for (std::int64_t t = 0; t <= steps; ++t) {
    const int i = traj.Vertex(Player::kOne, t);
    const int j = traj.Vertex(Player::kTwo, t);
    if (i >= 0 && j >= 0) {
      acc.AddVertices(i, j);
    } else {
      acc.Add(traj.Strategy(Player::kOne, t), traj.Strategy(Player::kTwo, t));
    }
  }
  return acc.Breakdown();
}

AlternatingRegretAccumulator::AlternatingRegretAccumulator(
    const GameMatrix& a)
    : a_(a),
      w1_(a.rows()),
      w2_(a.cols()),
      x1_last_(a.rows(), 0.0),
      x2_last_(a.cols(), 0.0) {}

// W1 = x1^1 + 2 sum_{k>=2} x1^{2k-1}: every odd iterate but the first sits
// in two windows, and x1^{T+1} = 0 closes the last one.
void AlternatingRegretAccumulator::AddOdd(std::span<const double> x1) {
  if (steps_ % 2 != 0) throw TrajectoryError("odd move out of turn");
  if (x1.size() != w1_.size()) throw DimensionError("x1 size mismatch");
  ++steps_;
  AddInto(w1_, x1);
  if (steps_ > 1) {
    AddInto(w1_, x1);
    p2_.Add(Bilinear(a_, x1, x2_last_));
  }
  x1_last_.assign(x1.begin(), x1.end());
}

void AlternatingRegretAccumulator::AddEven(std::span<const double> x2) {
  if (steps_ % 2 != 1) throw TrajectoryError("even move out of turn");
  if (x2.size() != w2_.size()) throw DimensionError("x2 size mismatch");
  ++steps_;
  std::vector<double> pair(x2.size());
  for (std::size_t j = 0; j < pair.size(); ++j) pair[j] = x2[j] + x2_last_[j];
  AddInto(w2_, pair);
  p1_.Add(Bilinear(a_, x1_last_, pair));
  p2_.Add(Bilinear(a_, x1_last_, x2));
  x2_last_.assign(x2.begin(), x2.end());
}

std::vector<double> AlternatingRegretAccumulator::Window1() const {
  return Values(w1_);
}
std::vector<double> AlternatingRegretAccumulator::Window2() const {
  return Values(w2_);
}

RegretBreakdown AlternatingRegretAccumulator::Breakdown() const {
  if (steps_ < 2 || steps_ % 2 != 0) {
    throw TrajectoryError("alternating regret needs an even horizon >= 2");
  }
  const Extremes e = EvaluateSums(a_, Window1(), Window2());
  RegretBreakdown r;
  r.reg1 = e.max_ax2 - p1_.value();
  r.reg2 = p2_.value() - e.min_atx1;
  r.total = r.reg1 + r.reg2;
  return r;
}

namespace {

AlternatingRegretAccumulator Feed(const GameMatrix& a,
                                  const TrajectoryRecord& traj,
                                  std::int64_t steps) {
  if (traj.mode() != PlayMode::kAlternating) {
    throw TrajectoryError("alternating regret needs an alternating trajectory");
  }
  if (steps < 2 || steps % 2 != 0) {
    throw TrajectoryError("alternating regret needs an even horizon >= 2");
  }
  RequireRange(traj, steps);
  AlternatingRegretAccumulator acc(a);
  for (std::int64_t t = 1; t <= steps; ++t) {
    if (t % 2 == 1) {
      acc.AddOdd(traj.Strategy(Player::kOne, t));
    } else {
      acc.AddEven(traj.Strategy(Player::kTwo, t));
    }
  }
  return acc;
}

}  // namespace

RegretBreakdown AlternatingRegret(const GameMatrix& a,
                                  const TrajectoryRecord& traj,
                                  std::int64_t steps) {
  return Feed(a, traj, steps).Breakdown();
}

double TimeAverageGap(const GameMatrix& a, const TrajectoryRecord& traj,
                      std::int64_t steps) {
  if (steps < 1) throw TrajectoryError("time average needs T >= 1");
  std::vector<double> s1, s2;
  if (traj.mode() == PlayMode::kAlternating) {
    const AlternatingRegretAccumulator acc = Feed(a, traj, steps);
    s1 = acc.Window1();
    s2 = acc.Window2();
  } else {
    RequireRange(traj, steps);
    RegretAccumulator acc(a);
    for (std::int64_t t = 0; t <= steps; ++t) {
      acc.Add(traj.Strategy(Player::kOne, t), traj.Strategy(Player::kTwo, t));
    }
    s1 = acc.Sum1();
    s2 = acc.Sum2();
  }
  const double inv = 1.0 / static_cast<double>(steps);
  for (double& v : s1) v *= inv;
  for (double& v : s2) v *= inv;
  return DualityGap(a, s1, s2);
}

}  // namespace fpdyn
