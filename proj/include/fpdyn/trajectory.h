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

#ifndef FPDYN_TRAJECTORY_H_
#define FPDYN_TRAJECTORY_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpdyn/game.h"
#include "fpdyn/tiebreak.h"

namespace fpdyn {

enum class Algorithm { kFP, kOFP, kAFP };
enum class PlayMode { kSimultaneous, kAlternating };

const char* AlgorithmName(Algorithm algo);
std::optional<Algorithm> ParseAlgorithm(const std::string& name);
PlayMode ModeOf(Algorithm algo);

// Bits of StepInfo::flags.
enum ViolationFlag : std::uint32_t {
  kFlagNone = 0,
  kFlagCyclingCase = 1u << 0,       // neither case of the cycling lemma
  kFlagEnergyIncrease = 1u << 1,    // energy rose above the threshold
  kFlagExclusionRegion = 1u << 2,   // landed in a forbidden region
  kFlagImplication = 1u << 3,       // prediction/next-region implication
  kFlagCrossingBound = 1u << 4,     // crossing step above B'
  kFlagGlobalBound = 1u << 5,       // energy above the global bound
  kFlagSubspaceMismatch = 1u << 6,  // full and reduced dynamics disagree
  kFlagAfpCase = 1u << 7,           // alternating step matched no case
  kFlagEnergyIdentity = 1u << 8,    // regret differs from the energy
  kFlagEnergyDecrease = 1u << 9,    // FP energy went down
  kFlagPhaseJump = 1u << 10,        // phase-start energy jumped by more than 2
};

struct StepInfo {
  // Energy of the dual vectors after step t's feedback, i.e. of y^{t+1}.
  double energy = std::numeric_limits<double>::quiet_NaN();
  // Reduced energy and region of the same dual state (2x2 normal form only).
  double psi = std::numeric_limits<double>::quiet_NaN();
  std::int8_t region = -1;
  std::uint32_t flags = 0;
};

// Primal and dual history of one run. Entries cover steps first_step() ..
// last_step(): 0..T for simultaneous play and 1..T for alternating play.
// The dual row for step t is y^t; the row after the last entry holds
// y^{T+1}, the state the regret identity is evaluated on. Alternating play
// has no y^1, so that row is zero.
class TrajectoryRecord {
 public:
  // Vertex() sentinels.
  static constexpr int kInitial = -1;  // the stored initial mixed strategy
  static constexpr int kAbsent = -2;   // no strategy yet (zero vector)

  TrajectoryRecord(Algorithm algo, int rows, int cols, std::int64_t first_step,
                   MixedStrategy x1_init, std::optional<MixedStrategy> x2_init);

  Algorithm algorithm() const { return algo_; }
  PlayMode mode() const { return ModeOf(algo_); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t first_step() const { return first_; }
  std::int64_t last_step() const { return first_ + size() - 1; }
  std::int64_t size() const { return static_cast<std::int64_t>(info_.size()); }
  bool finished() const { return finished_; }

  void Append(int vertex1, int vertex2, std::span<const double> y1,
              std::span<const double> y2);
  // Stores y^{T+1}; no more entries may follow.
  void Finish(std::span<const double> y1, std::span<const double> y2);

  int Vertex(Player p, std::int64_t t) const;
  std::vector<double> Strategy(Player p, std::int64_t t) const;
  // y^t for first_step() <= t <= last_step() + 1.
  std::span<const double> Dual(Player p, std::int64_t t) const;

  StepInfo& Info(std::int64_t t) { return info_[Index(t)]; }
  const StepInfo& Info(std::int64_t t) const { return info_[Index(t)]; }

  const MixedStrategy& initial1() const { return x1_init_; }
  const std::optional<MixedStrategy>& initial2() const { return x2_init_; }

 private:
  std::size_t Index(std::int64_t t) const;

  Algorithm algo_;
  int rows_;
  int cols_;
  std::int64_t first_;
  MixedStrategy x1_init_;
  std::optional<MixedStrategy> x2_init_;
  std::vector<std::int32_t> v1_;
  std::vector<std::int32_t> v2_;
  std::vector<double> y_;
  std::vector<StepInfo> info_;
  bool finished_ = false;
};

}  // namespace fpdyn

#endif  // FPDYN_TRAJECTORY_H_
