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

#ifndef FPDYN_REGRET_H_
#define FPDYN_REGRET_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fpdyn/game.h"
#include "fpdyn/trajectory.h"

namespace fpdyn {

struct RegretBreakdown {
  double reg1 = 0.0;
  double reg2 = 0.0;
  double total = 0.0;
};

// max_i y1_i + max_j y2_j: the support function of the product of simplices.
double EnergyFull(std::span<const double> y1, std::span<const double> y2);

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void Add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Regret of a simultaneous-play history, fed one step at a time. Recomputes
// everything from the primal iterates: the summed strategies and the
// realized payoff are kept with compensated summation.
class RegretAccumulator {
 public:
  explicit RegretAccumulator(const GameMatrix& a);

  void Add(std::span<const double> x1, std::span<const double> x2);
  void AddVertices(int i, int j);
  RegretBreakdown Breakdown() const;
  std::int64_t count() const { return count_; }

  // sum_t x1^t and sum_t x2^t.
  std::vector<double> Sum1() const;
  std::vector<double> Sum2() const;

 private:
  const GameMatrix& a_;
  std::vector<CompensatedSum> s1_, s2_;
  CompensatedSum payoff_;
  std::int64_t count_ = 0;
};

// Alternating regret fed one move at a time: odd steps carry player 1's
// new strategy, even steps player 2's. Breakdown() after an even number of
// moves equals AlternatingRegret at that horizon.
class AlternatingRegretAccumulator {
 public:
  explicit AlternatingRegretAccumulator(const GameMatrix& a);

  // x1^t for odd t.
  void AddOdd(std::span<const double> x1);
  // x2^t for even t.
  void AddEven(std::span<const double> x2);
  std::int64_t steps() const { return steps_; }
  RegretBreakdown Breakdown() const;

  // The two payoff windows at the current even horizon.
  std::vector<double> Window1() const;
  std::vector<double> Window2() const;

 private:
  const GameMatrix& a_;
  std::vector<CompensatedSum> w1_, w2_;
  CompensatedSum p1_, p2_;
  std::vector<double> x1_last_, x2_last_;
  std::int64_t steps_ = 0;
};

// Total regret over steps 0..T of a simultaneous-play trajectory.
RegretBreakdown Regret(const GameMatrix& a, const TrajectoryRecord& traj,
                       std::int64_t steps);

// Alternating regret over steps 1..T (T even), with the windowed payoff
// sums: player 1's strategy x1^{2k-1} faces x2^{2k-2} and x2^{2k}, player
// 2's strategy x2^{2k} faces x1^{2k-1} and x1^{2k+1}, where x2^0 and
// x1^{T+1} are zero.
RegretBreakdown AlternatingRegret(const GameMatrix& a,
                                  const TrajectoryRecord& traj,
                                  std::int64_t steps);

// Duality gap of the time-averaged iterates; the alternating mode averages
// the same windows as AlternatingRegret. Equals regret / T.
double TimeAverageGap(const GameMatrix& a, const TrajectoryRecord& traj,
                      std::int64_t steps);

}  // namespace fpdyn

#endif  // FPDYN_REGRET_H_
