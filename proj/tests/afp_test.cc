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

#include "fpdyn/afp.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "fpdyn/dynamics.h"
#include "fpdyn/generators.h"
#include "fpdyn/regret.h"
#include "gtest/gtest.h"

namespace fpdyn {
namespace {

constexpr double kP = std::numbers::pi / 4;

AfpSubspaceRun LexRun(double p, std::int64_t steps) {
  return RunAfpSubspace(p, steps, TiebreakRule::Lexicographic(),
                        TiebreakRule::Lexicographic());
}

void ExpectVec(const Vec2& got, const Vec2& want, double tol) {
  EXPECT_NEAR(got[0], want[0], tol);
  EXPECT_NEAR(got[1], want[1], tol);
}

TEST(AfpTraceTest, GoldenOpening) {
  const AfpSubspaceRun run = LexRun(kP, 100);
  ExpectVec(run.Z(3), {-1, -2 * (2 * kP - 1)}, 1e-12);
  ExpectVec(run.Z(4), {-2, -4 * kP + 3}, 1e-12);
  ExpectVec(run.Z(5), {-3, -4 * kP + 4}, 1e-12);
  ExpectVec(run.Z(6), {-4, -4 * kP + 5}, 1e-12);
  EXPECT_EQ(run.W(3), 1);
  EXPECT_EQ(run.W(4), 1);
  EXPECT_EQ(run.W(5), 1);
  EXPECT_EQ(run.W(6), 2);
  ExpectVec(run.ZTilde(3), {-1, -(2 * kP - 1)}, 1e-12);
  EXPECT_EQ(Classify(run.ZTilde(3)), Region::kP1);
  EXPECT_EQ(Classify(run.Z(3)), Region::kP1);
}

// The reduced run must agree with the projected full alternating dynamics.
TEST(AfpTraceTest, MatchesFullDynamics) {
  const std::int64_t T = 2000;
  const AfpSubspaceRun run = LexRun(kP, T);
  const GameMatrix a = Make({Family::kMatchingPennies});
  TiebreakPair tb(TiebreakRule::Lexicographic());
  const TrajectoryRecord r = RunAlternating(
      a, MixedStrategy(std::vector<double>{kP, 1 - kP}), T, tb);
  for (std::int64_t t = 2; t <= T + 1; ++t) {
    const Vec2 full = Project(r.Dual(Player::kOne, t), r.Dual(Player::kTwo, t));
    ASSERT_NEAR(run.Z(t)[0], full[0], 1e-9 * t) << t;
    ASSERT_NEAR(run.Z(t)[1], full[1], 1e-9 * t) << t;
  }
}

TEST(AfpPhaseTest, OpeningPhases) {
  const AfpSubspaceRun run = LexRun(kP, 1000);
  const std::vector<Phase> phases = DecomposePhases(run);
  ASSERT_GE(phases.size(), 3u);
  EXPECT_EQ(phases[0].t_start, 2);
  EXPECT_EQ(phases[1].t_start, 3);
  EXPECT_EQ(phases[2].t_start, 6);
  EXPECT_EQ(phases[1].vertex, 1);
  EXPECT_EQ(phases[2].vertex, 2);
  std::int64_t total = 0;
  for (const Phase& ph : phases) total += ph.tau;
  EXPECT_EQ(total, 1000);
}

TEST(AfpPhaseTest, ConstantLabelGivesOnePhase) {
  AfpSubspaceRun run;
  run.steps = 6;
  run.z.assign(6, Vec2{-1, -1});
  run.w.assign(5, 3);
  const std::vector<Phase> phases = DecomposePhases(run);
  ASSERT_EQ(phases.size(), 2u);
  EXPECT_EQ(phases[0].tau + phases[1].tau, 6);
  EXPECT_EQ(phases[1].vertex, 3);
}

TEST(AfpPhaseTest, PhaseLengthsGrow) {
  const AfpSubspaceRun run = LexRun(kP, 100000);
  const std::vector<Phase> phases = DecomposePhases(run);
  const LowerBoundReport rep = VerifyLowerBoundIngredients(phases);
  EXPECT_GT(rep.phases, 50);
  EXPECT_GT(rep.tau_slope, 0.0);
  EXPECT_TRUE(rep.unit_increases_ok());
  std::int64_t counted = 0;
  for (const auto& [inc, n] : rep.increase_histogram) counted += n;
  EXPECT_EQ(counted, rep.phases);
}

TEST(AfpInvariantTest, HoldAcrossInitialProbabilities) {
  for (double p : {kP, 0.8, 0.9, 0.95, 0.99}) {
    const AfpSubspaceRun run = LexRun(p, 20000);
    const AfpInvariantReport rep = CheckAfpInvariants(run);
    EXPECT_EQ(rep.violations(), 0) << "p=" << p;
  }
}

TEST(AfpInvariantTest, CorruptionIsDetected) {
  AfpSubspaceRun run = LexRun(kP, 200);
  run.z[50][0] += 0.5;
  EXPECT_GT(CheckAfpInvariants(run).non_integral_z1, 0);
}

TEST(AfpCaseTest, MostStepsMatchACase) {
  const AfpSubspaceRun run = LexRun(kP, 20000);
  const AfpCaseReport rep = CheckAfpCases(run);
  std::int64_t matched = 0;
  for (const auto& [c, n] : rep.matched) matched += n;
  EXPECT_EQ(matched + rep.unmatched, 20000 - 3);
  EXPECT_GT(matched, 19 * rep.unmatched);
}

TEST(FitTest, ExactOnPowerLaw) {
  std::vector<double> x, y;
  for (int k = 1; k <= 20; ++k) {
    x.push_back(k * 10.0);
    y.push_back(3.0 * std::pow(k * 10.0, 1.0 / 3));
  }
  EXPECT_NEAR(FitLogLogSlope(x, y), 1.0 / 3, 1e-12);
}

TEST(AfpRegretTest, GrowsLikeSquareRoot) {
  const GameMatrix a = Make({Family::kMatchingPennies});
  std::vector<double> ts, regs;
  for (std::int64_t T : {1000, 4000, 16000, 64000}) {
    TiebreakPair tb(TiebreakRule::Lexicographic());
    const TrajectoryRecord r = RunAlternating(
        a, MixedStrategy(std::vector<double>{kP, 1 - kP}), T, tb);
    ts.push_back(static_cast<double>(T));
    regs.push_back(AlternatingRegret(a, r, T).total);
  }
  const double slope = FitLogLogSlope(ts, regs);
  EXPECT_GT(slope, 0.4);
  EXPECT_LT(slope, 0.6);
}

}  // namespace
}  // namespace fpdyn
