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

#ifndef FPDYN_AFP_H_
#define FPDYN_AFP_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fpdyn/subspace.h"
#include "fpdyn/tiebreak.h"

// Reduced alternating fictitious play on Matching Pennies, started from
// x1^1 = (p, 1 - p), and the phase structure behind its sqrt(T) regret.
namespace fpdyn {

SubspaceParams MatchingPenniesParams();

// Alternating prediction: the mover sees the other player's stale
// coordinate. Even t: z~ = (z_prev_1, z_2); odd t: z~ = (z_1, z_prev_2).
SubspaceStep StepAfpSubspace(const Vec2& z_prev, const Vec2& z,
                             std::int64_t t, const SubspaceParams& p,
                             Tiebreaker& tiebreak, double dead_zone = 0.0);

struct AfpSubspaceRun {
  double p = 0.0;
  std::int64_t steps = 0;
  std::vector<Vec2> z;  // z^2 .. z^{T+1}
  std::vector<int> w;   // w^3 .. w^{T+1}, w^t = Q(z~^{t+1})

  const Vec2& Z(std::int64_t t) const { return z[t - 2]; }
  int W(std::int64_t t) const { return w[t - 3]; }
  Vec2 ZTilde(std::int64_t t) const;  // z~^{t+1}, t >= 3
};

// z^2 and z^3 come from two steps of the full alternating dynamics (player
// 2's first move uses `tiebreak`); later steps use the reduced update with
// `q_tiebreak` on boundary rays.
AfpSubspaceRun RunAfpSubspace(double p, std::int64_t steps,
                              const TiebreakRule& tiebreak,
                              const TiebreakRule& q_tiebreak);

struct Phase {
  int k = 0;
  std::int64_t t_start = 0;
  std::int64_t tau = 0;
  double psi_start = 0.0;  // psi(z^{t_k})
  double psi_end = 0.0;    // psi at the phase's last step
  int vertex = 0;          // constant w during the phase; 0 for phase 0
};

// t_0 = 2 (w^2 does not exist), t_k = min{t > t_{k-1} : w^t != w^{t_{k-1}}}.
// Phases cover steps 2 .. T+1, so the lengths sum to T.
std::vector<Phase> DecomposePhases(const AfpSubspaceRun& run);

struct LowerBoundReport {
  int phases = 0;  // K, the number of phase boundaries
  // (i) psi(z^{t_k}) <= psi(z^{t_{k-1}}) + 2
  std::int64_t jump_violations = 0;
  std::vector<std::pair<int, double>> jump_examples;  // (k, increase)
  double max_increase = 0.0;
  // (ii) tau_k against psi(z^{t_k}): least-squares fit, reported only.
  double tau_slope = 0.0;
  double tau_intercept = 0.0;
  double tau_max_residual = 0.0;
  double tau_min_ratio = 0.0;
  double tau_max_ratio = 0.0;
  // (iii) phases whose start energy rose by at least 1.
  std::int64_t unit_increases = 0;
  double unit_increases_required = 0.0;  // K / 2 - 1
  // Distinct per-phase increases, rounded to 1e-6, with multiplicities.
  std::map<double, std::int64_t> increase_histogram;

  bool jumps_ok() const { return jump_violations == 0; }
  bool unit_increases_ok() const {
    return static_cast<double>(unit_increases) >= unit_increases_required;
  }
};

LowerBoundReport VerifyLowerBoundIngredients(const std::vector<Phase>& phases);

// The four step patterns of the cycling argument for alternating play,
// keyed on (z^{t-1}, z^t):
//   1: both in P_i, step S_i        2: P_i -> P_{i+1}, step S_i
//   3: P_i -> P_{i~i+1}, step S_i   4: P_{i~i+1} -> P_{i+1}
// Each case also constrains z~^{t+1} and z^{t+1}.
enum class AfpCase { kCase1 = 1, kCase2, kCase3, kCase4, kUnmatched };

struct AfpCaseResult {
  AfpCase which = AfpCase::kUnmatched;
  bool consequences_hold = false;
};

AfpCaseResult ClassifyAfpStep(const Vec2& z_prev, const Vec2& z,
                              const Vec2& z_tilde, const Vec2& z_next,
                              const SubspaceParams& p, double dead_zone);

struct AfpCaseReport {
  std::map<int, std::int64_t> matched;       // case -> steps
  std::map<int, std::int64_t> inconsistent;  // case -> steps breaking it
  std::int64_t unmatched = 0;
  std::vector<std::int64_t> examples;        // first offending steps
  std::int64_t violations() const;
};

// Classifies t = 4 .. T.
AfpCaseReport CheckAfpCases(const AfpSubspaceRun& run,
                            std::size_t keep_examples = 16);

struct AfpInvariantReport {
  std::int64_t non_integral_z1 = 0;  // |z1 - round(z1)| > 1e-9
  std::int64_t z2_near_zero = 0;     // |z2| <= 1e-9
  std::int64_t l1_mismatch = 0;      // psi(z) != |z|_1
  std::int64_t violations() const {
    return non_integral_z1 + z2_near_zero + l1_mismatch;
  }
};

AfpInvariantReport CheckAfpInvariants(const AfpSubspaceRun& run);

// Least-squares slope of log(y) against log(x).
double FitLogLogSlope(const std::vector<double>& x,
                      const std::vector<double>& y);

}  // namespace fpdyn

#endif  // FPDYN_AFP_H_
