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

#include "fpdyn/subspace.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fpdyn/dynamics.h"
#include "fpdyn/error.h"
#include "fpdyn/generators.h"
#include "fpdyn/random.h"
#include "fpdyn/regret.h"
#include "gtest/gtest.h"

namespace fpdyn {
namespace {

GameMatrix MatchingPennies() { return Make({Family::kMatchingPennies}); }

SubspaceParams RandomParams(std::uint64_t seed) {
  return SubspaceParams::FromGame(
      Make({Family::kAssumption41Random, 2, 0, 1.0, seed}));
}

double Dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

TEST(SubspaceParamsTest, LiteralColumns) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const SubspaceParams p = RandomParams(s);
    const double a = p.a, b = p.b, c = p.c, d = p.d;
    const Vec2 s_cols[4] = {{b, -c}, {a, -c}, {a, -a}, {b, -a}};
    const Vec2 m_cols[4] = {
        {-p.rho1, -p.rho2}, {-p.rho1, 1}, {1, 1}, {1, -p.rho2}};
    for (int w = 1; w <= 4; ++w) {
      EXPECT_EQ(p.SColumn(w), s_cols[w - 1]);
      EXPECT_EQ(p.MColumn(w), m_cols[w - 1]);
    }
    EXPECT_DOUBLE_EQ(p.rho1, (d - c) / (a - b));
    EXPECT_DOUBLE_EQ(p.rho2, (d - b) / (a - c));
  }
}

TEST(SubspaceParamsTest, MatchingPennies) {
  const SubspaceParams p = SubspaceParams::FromGame(MatchingPennies());
  EXPECT_EQ(p.SColumn(1), (Vec2{-1, 1}));
  EXPECT_EQ(p.SColumn(2), (Vec2{1, 1}));
  EXPECT_EQ(p.SColumn(3), (Vec2{1, -1}));
  EXPECT_EQ(p.SColumn(4), (Vec2{-1, -1}));
  EXPECT_EQ(p.B, 6.0);
  EXPECT_EQ(p.B_prime, 72.0);
  EXPECT_EQ(p.global_bound, 32.0);
  EXPECT_THROW(SubspaceParams::FromGame(GameMatrix::FromRows({{2, 0}, {0, 2}})),
               AssumptionError);
}

// S'M against the closed form, skew-symmetry, and the negative
// sub-diagonal used by the energy-decrease argument.
TEST(SubspaceParamsTest, StMSkewSymmetricClosedForm) {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const SubspaceParams p = RandomParams(s);
    const auto stm = p.StM();
    const auto closed = StMClosedForm(p.a, p.b, p.c, p.d);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        ASSERT_NEAR(stm[i][j], closed[i][j], 1e-12);
        ASSERT_NEAR(stm[i][j] + stm[j][i], 0.0, 1e-12);
      }
      ASSERT_LT(stm[(i + 1) % 4][i], 0.0);
    }
  }
}

TEST(ThresholdTest, Values) {
  EXPECT_EQ(ThresholdB(1, 1, 1), 6.0);
  EXPECT_EQ(ThresholdB(1, 2, 0.5), 12.0);
  EXPECT_LE(ThresholdB(1, 1, 1), 6.0 * (1 + 1 + 1));
  EXPECT_THROW(ThresholdB(0, 1, 1), Error);
  EXPECT_THROW(ThresholdB(1, -1, 1), Error);
  EXPECT_EQ(CrossingBound(1, 1, 1), 72.0);
  EXPECT_EQ(GlobalEnergyBound(1, 2), 32.0);
}

// B is the largest psi on the l1 ball of radius 6 a_max; a fine grid of
// the sphere must reach it and never exceed it.
TEST(ThresholdTest, BruteForceMaximumOverL1Sphere) {
  for (const auto& [rho1, rho2] : std::vector<std::pair<double, double>>{
           {2.0, 0.5}, {1.0, 1.0}, {0.3, 0.7}, {4.0, 3.0}}) {
    SubspaceParams p;
    p.rho1 = rho1;
    p.rho2 = rho2;
    const double r = 6.0;
    double best = 0.0;
    const int n = 400000;
    for (int k = 0; k < n; ++k) {
      const double s = 4.0 * k / n;  // perimeter parameter
      const int side = static_cast<int>(s);
      const double f = s - side;
      Vec2 z;
      switch (side) {
        case 0: z = {r * (1 - f), r * f}; break;
        case 1: z = {-r * f, r * (1 - f)}; break;
        case 2: z = {-r * (1 - f), -r * f}; break;
        default: z = {r * f, -r * (1 - f)}; break;
      }
      best = std::max(best, PsiPiecewise(z, p));
    }
    const double b = ThresholdB(1.0, rho1, rho2);
    EXPECT_NEAR(best, b, 1e-6);
    EXPECT_LE(b, 6.0 * (1 + rho1 + rho2));
  }
}

TEST(ClassifyTest, SpecExamples) {
  EXPECT_EQ(Classify({-1, -1}), Region::kP1);
  EXPECT_EQ(Classify({-1, 3}), Region::kP2);
  EXPECT_EQ(Classify({3, 2}), Region::kP3);
  EXPECT_EQ(Classify({3, -2}), Region::kP4);
  EXPECT_EQ(Classify({-1, 0}), Region::kP12);
  EXPECT_EQ(Classify({0, 5}), Region::kP23);
  EXPECT_EQ(Classify({7, 0}), Region::kP34);
  EXPECT_EQ(Classify({0, -2}), Region::kP41);
  EXPECT_EQ(Classify({0, 0}), Region::kOrigin);
  EXPECT_EQ(Classify({1e-13, -2}, 1e-12), Region::kP41);
}

TEST(ClassifyTest, HatSetsPartitionThePlaneMinusOrigin) {
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    Vec2 z = {static_cast<double>(rng.UniformIndex(5)) - 2,
              static_cast<double>(rng.UniformIndex(5)) - 2};
    const Region r = Classify(z);
    if (r == Region::kOrigin) continue;
    int hits = 0;
    for (int i = 1; i <= 4; ++i) hits += InHat(r, i);
    EXPECT_EQ(hits, 1);
  }
  EXPECT_EQ(HatIndex(Region::kP12), 1);
  EXPECT_EQ(HatIndex(Region::kP41), 4);
  EXPECT_EQ(Wrap(5), 1);
  EXPECT_EQ(Wrap(0), 4);
}

TEST(QMapTest, SpecExamples) {
  Tiebreaker lex(TiebreakRule::Lexicographic(), Player::kJoint);
  EXPECT_EQ(QMap({2, 3}, lex, 1), 3);
  EXPECT_EQ(QMap({0, 5}, lex, 1), 2);
  EXPECT_EQ(QMap({0, 0}, lex, 1), 1);
  Tiebreaker last(TiebreakRule::AlwaysLast(), Player::kJoint);
  EXPECT_EQ(QMap({0, 5}, last, 1), 3);
  EXPECT_EQ(QMap({0, -5}, last, 1), 4);
  EXPECT_EQ(QMap({0, 0}, last, 1), 1);
}

TEST(ProjectTest, Examples) {
  const double p = std::numbers::pi / 4;
  const std::vector<double> y1 = {-1, 1};
  const std::vector<double> y2 = {-2 * (2 * p - 1), 2 * (2 * p - 1)};
  EXPECT_EQ(Project(y1, y2), (Vec2{-1, -2 * (2 * p - 1)}));
  const std::vector<double> zero = {0, 0};
  EXPECT_EQ(Project(zero, zero), (Vec2{0, 0}));
  const SubspaceParams sp = RandomParams(3);
  const auto [l1, l2] = Lift({1.5, -2.5}, sp);
  EXPECT_EQ(l1[1], -sp.rho1 * 1.5);
  EXPECT_EQ(l2[1], -sp.rho2 * -2.5);
  EXPECT_EQ(Project(l1, l2), (Vec2{1.5, -2.5}));
}

TEST(PsiTest, MatchingPenniesIsL1Norm) {
  const SubspaceParams p = SubspaceParams::FromGame(MatchingPennies());
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 z = {rng.Uniform(-50, 50), rng.Uniform(-50, 50)};
    EXPECT_DOUBLE_EQ(Psi(z, p), std::abs(z[0]) + std::abs(z[1]));
  }
  const double pi4 = std::numbers::pi / 4;
  EXPECT_NEAR(Psi({-3, -4 * pi4 + 4}, p), 7 - 4 * pi4, 1e-15);
  EXPECT_EQ(Psi({0, 0}, p), 0.0);
}

TEST(PsiTest, AgreesWithPiecewiseAndFullEnergy) {
  Rng rng(3);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SubspaceParams p = RandomParams(s);
    for (int k = 0; k < 100; ++k) {
      const Vec2 z = {rng.Uniform(-10, 10), rng.Uniform(-10, 10)};
      const auto [y1, y2] = Lift(z, p);
      EXPECT_NEAR(Psi(z, p), PsiPiecewise(z, p), 1e-12);
      EXPECT_NEAR(Psi(z, p), EnergyFull(y1, y2), 1e-12);
    }
  }
}

// On a boundary ray both Q choices give the same inner product.
TEST(PsiTest, BoundaryPointsAreTiebreakIndependent) {
  Rng rng(4);
  for (int k = 0; k < 1000; ++k) {
    const SubspaceParams p = RandomParams(k % 50);
    const double r = rng.Uniform(0.01, 100);
    const Vec2 pts[4] = {{-r, 0}, {0, r}, {r, 0}, {0, -r}};
    for (const Vec2& z : pts) {
      const std::vector<int> q = QCandidates(Classify(z));
      ASSERT_EQ(q.size(), 2u);
      EXPECT_NEAR(Dot(z, p.MColumn(q[0])), Dot(z, p.MColumn(q[1])), 1e-12 * r);
    }
  }
}

TEST(StepSubspaceTest, Examples) {
  const SubspaceParams p = SubspaceParams::FromGame(MatchingPennies());
  Tiebreaker lex(TiebreakRule::Lexicographic(), Player::kJoint);
  const SubspaceStep zero = StepSubspace({2, -1}, {2, -1}, p, lex, 1);
  EXPECT_EQ(zero.z_tilde, (Vec2{2, -1}));
  const SubspaceStep s = StepSubspace({-1, -1}, {-2, 0}, p, lex, 1);
  EXPECT_EQ(s.z_tilde, (Vec2{-3, 1}));
  EXPECT_EQ(s.w, 2);
  EXPECT_EQ(s.z_next, (Vec2{-1, 1}));
}

// Iterating the reduced map reproduces the projected full dynamics.
TEST(StepSubspaceTest, MatchesFullDynamics) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const GameMatrix a = Make({Family::kAssumption41Random, 2, 0, 1.0, s});
    const SubspaceParams p = SubspaceParams::FromGame(a);
    TiebreakPair tb(TiebreakRule::Lexicographic());
    const std::int64_t T = 10000;
    const TrajectoryRecord r = fpdyn::Run(a, Algorithm::kOFP, RandomSimplex(2, s + 1),
                                   RandomSimplex(2, s + 2), T, tb);
    const std::vector<Vec2> full = ProjectTrajectory(r);
    Tiebreaker joint(TiebreakRule::Lexicographic(), Player::kJoint);
    const std::vector<Vec2> reduced = RunSubspace(full[0], full[1], p, joint, T);
    for (std::int64_t t = 0; t <= T + 1; ++t) {
      ASSERT_NEAR(reduced[t][0], full[t][0], 1e-8 * (t + 1));
      ASSERT_NEAR(reduced[t][1], full[t][1], 1e-8 * (t + 1));
    }
    const ReplayReport replay = ReplaySubspace(r, p);
    EXPECT_EQ(replay.mismatches, 0);
    EXPECT_LE(replay.max_scaled_deviation, 1e-8);
  }
}

TEST(EnergyEquivalenceTest, FullEnergyEqualsReducedEnergy) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const GameMatrix a = Make({Family::kAssumption41Random, 2, 0, 1.0, s});
    const SubspaceParams p = SubspaceParams::FromGame(a);
    TiebreakPair tb(TiebreakRule::SeededRandom(s));
    const std::int64_t T = 5000;
    TrajectoryRecord r = fpdyn::Run(a, Algorithm::kOFP, MixedStrategy::Vertex(2, 0),
                             MixedStrategy::Vertex(2, 1), T, tb);
    Annotate(r, p);
    const std::vector<Vec2> z = ProjectTrajectory(r);
    for (std::int64_t t = 1; t <= T + 1; ++t) {
      const double full = EnergyFull(r.Dual(Player::kOne, t), r.Dual(Player::kTwo, t));
      ASSERT_NEAR(full, Psi(z[t], p), 1e-9 * t * a.a_max());
      if (t <= T) {
        ASSERT_NEAR(r.Info(t).psi, Psi(z[t + 1], p), 1e-12 * t);
      }
    }
  }
}

TEST(CyclingTest, MatchingPenniesRunsAreClean) {
  const SubspaceParams p = SubspaceParams::FromGame(MatchingPennies());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      TiebreakPair tb(TiebreakRule::Lexicographic());
      const TrajectoryRecord r =
          fpdyn::Run(MatchingPennies(), Algorithm::kOFP, MixedStrategy::Vertex(2, i),
              MixedStrategy::Vertex(2, j), 100000, tb);
      const CyclingReport rep = CheckCyclingInvariants(ProjectTrajectory(r), p);
      EXPECT_EQ(rep.total_violations(), 0);
      EXPECT_LE(rep.max_psi, p.global_bound);
    }
  }
}

// Starting far above the threshold exercises every above-B branch.
TEST(CyclingTest, HighEnergyStartsObeyTheLemma) {
  Rng rng(6);
  std::int64_t above = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const SubspaceParams p = RandomParams(s);
    const double radius = p.B * rng.Uniform(2.0, 20.0);
    const double angle = rng.Uniform(0.0, 2.0 * std::numbers::pi);
    const Vec2 z0 = {radius * std::cos(angle), radius * std::sin(angle)};
    Tiebreaker tb(TiebreakRule::SeededRandom(s), Player::kJoint);
    const Vec2 col = p.SColumn(QMap(z0, tb, 0));
    const Vec2 z1 = {z0[0] + col[0], z0[1] + col[1]};
    const std::vector<Vec2> z = RunSubspace(z0, z1, p, tb, 20000);
    const CyclingReport rep = CheckCyclingInvariants(z, p);
    // The global bound covers runs from actual strategies only.
    const std::int64_t global =
        rep.counts.contains("global_bound") ? rep.counts.at("global_bound") : 0;
    EXPECT_EQ(rep.total_violations() - global, 0) << "seed " << s;
    above += rep.above_threshold;
  }
  EXPECT_GT(above, 0);
}

TEST(CyclingTest, StepsBelowThresholdAreExempt) {
  const SubspaceParams p = SubspaceParams::FromGame(MatchingPennies());
  // A jump that would break every rule, but starting below B.
  const std::vector<Vec2> z = {{0, 0}, {1, 1}, {-1, -1}, {1, 1}};
  const CyclingReport rep = CheckCyclingInvariants(z, p);
  EXPECT_EQ(rep.above_threshold, 0);
  EXPECT_EQ(rep.total_violations(), 0);
}

TEST(CyclingTest, CorruptedSequenceIsReported) {
  const SubspaceParams p = SubspaceParams::FromGame(MatchingPennies());
  // Energy rising above the threshold.
  const std::vector<Vec2> z = {{-10, -1}, {-11, -1}, {-12, 10}, {-20, 20}};
  const CyclingReport rep = CheckCyclingInvariants(z, p);
  EXPECT_GT(rep.total_violations(), 0);
}

}  // namespace
}  // namespace fpdyn
