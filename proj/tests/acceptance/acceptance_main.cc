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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Runtime limits are part of each criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fpdyn/afp.h"
#include "fpdyn/dynamics.h"
#include "fpdyn/experiment.h"
#include "fpdyn/game.h"
#include "fpdyn/generators.h"
#include "fpdyn/normalize.h"
#include "fpdyn/random.h"
#include "fpdyn/regret.h"
#include "fpdyn/subspace.h"
#include "fpdyn/tiebreak.h"
#include "fpdyn/trajectory.h"

namespace fpdyn {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED " + what;
    }
  }
  void Note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string Fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::string Fmt(const char* format, double x, double y) {
  char buf[96];
  std::snprintf(buf, sizeof buf, format, x, y);
  return buf;
}

GameMatrix MatchingPennies() { return Make({Family::kMatchingPennies}); }

GameMatrix Assumption41Game(int i) {
  return Make({Family::kAssumption41Random, 2, 0, 1.0, DeriveSeed(41, i)});
}

std::vector<TiebreakRule> TiebreakRules(std::uint64_t seed) {
  return {TiebreakRule::Lexicographic(), TiebreakRule::SeededRandom(seed),
          TiebreakRule::AlwaysLast()};
}

// Regret equals the energy of the next dual state.
Outcome EnergyIdentity() {
  Outcome out;
  Rng rng(1);
  const std::int64_t T = 1000;
  double worst = 0.0;
  int games = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + rng.UniformIndex(24);
    const int m = i % 2 == 0 ? n : 2 + rng.UniformIndex(24);
    const GameMatrix a = Make({Family::kRandomUnit, n, m, 1.0, DeriveSeed(1, i)});
    ++games;
    for (Algorithm algo : {Algorithm::kFP, Algorithm::kOFP}) {
      TiebreakPair tb(TiebreakRule::Lexicographic());
      const TrajectoryRecord r =
          Run(a, algo, RandomSimplex(a.rows(), DeriveSeed(2, i)),
              RandomSimplex(a.cols(), DeriveSeed(3, i)), T, tb);
      for (std::int64_t t : {1, 10, 100, 1000}) {
        const double reg = Regret(a, r, t).total;
        const double energy =
            EnergyFull(r.Dual(Player::kOne, t + 1), r.Dual(Player::kTwo, t + 1));
        worst = std::max(worst, std::abs(reg - energy));
      }
    }
  }
  out.Require(worst <= 1e-6, "max |regret - energy| <= 1e-6");
  out.Note(std::to_string(games) + " games, max |regret - energy| = " +
           Fmt("%.3g", worst));
  return out;
}

Outcome SubspaceEquivalence() {
  Outcome out;
  const std::int64_t T = 10000;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const GameMatrix a = Assumption41Game(i);
    const SubspaceParams p = SubspaceParams::FromGame(a);
    TiebreakPair tb(TiebreakRule::Lexicographic());
    const TrajectoryRecord r =
        Run(a, Algorithm::kOFP, RandomSimplex(2, DeriveSeed(4, i)),
            RandomSimplex(2, DeriveSeed(5, i)), T, tb);
    for (std::int64_t t = 0; t <= T + 1; ++t) {
      const auto y1 = r.Dual(Player::kOne, t);
      const auto y2 = r.Dual(Player::kTwo, t);
      worst = std::max(worst, std::abs(EnergyFull(y1, y2) - Psi(Project(y1, y2), p)));
    }
  }
  out.Require(worst <= 1e-6, "max |Psi(y) - psi(z)| <= 1e-6");
  out.Note("100 games, max |Psi(y) - psi(z)| = " + Fmt("%.3g", worst));
  return out;
}

// Runs shared by the global bound and the cycling lemma.
struct BoundRun {
  std::string label;
  SubspaceParams params;
  double max_psi = 0.0;
  double final_regret = 0.0;
  CyclingReport cycling;
};

BoundRun Summarize(std::string label, const GameMatrix& a,
                   const TrajectoryRecord& r, double final_regret) {
  BoundRun run{std::move(label), SubspaceParams::FromGame(a), 0.0, final_regret, {}};
  const std::vector<Vec2> z = ProjectTrajectory(r);
  for (const Vec2& v : z) run.max_psi = std::max(run.max_psi, Psi(v, run.params));
  run.cycling = CheckCyclingInvariants(z, run.params);
  run.cycling.flags.clear();
  return run;
}

std::vector<BoundRun>& BoundRuns() {
  static std::vector<BoundRun> runs;
  return runs;
}

void CollectBoundRuns() {
  auto& runs = BoundRuns();
  if (!runs.empty()) return;
  for (int i = 0; i < 100; ++i) {
    const GameMatrix a = Assumption41Game(i);
    for (const TiebreakRule& rule : TiebreakRules(DeriveSeed(6, i))) {
      TiebreakPair tb(rule);
      const TrajectoryRecord r =
          Run(a, Algorithm::kOFP, RandomSimplex(2, DeriveSeed(4, i)),
              RandomSimplex(2, DeriveSeed(5, i)), 10000, tb);
      runs.push_back(Summarize("game " + std::to_string(i) + " " + rule.name(), a, r, 0.0));
    }
  }
  const GameMatrix mp = MatchingPennies();
  const std::vector<std::pair<MixedStrategy, MixedStrategy>> inits = {
      {MixedStrategy::Vertex(2, 0), MixedStrategy::Vertex(2, 0)},
      {MixedStrategy::Vertex(2, 0), MixedStrategy::Vertex(2, 1)},
      {MixedStrategy::Vertex(2, 1), MixedStrategy::Vertex(2, 0)},
      {MixedStrategy::Vertex(2, 1), MixedStrategy::Vertex(2, 1)},
      {MixedStrategy::Uniform(2), MixedStrategy::Uniform(2)},
      {RandomSimplex(2, 7), RandomSimplex(2, 8)}};
  for (std::size_t k = 0; k < inits.size(); ++k) {
    for (const TiebreakRule& rule : TiebreakRules(DeriveSeed(9, k))) {
      TiebreakPair tb(rule);
      const std::int64_t T = 1000000;
      const TrajectoryRecord r =
          Run(mp, Algorithm::kOFP, inits[k].first, inits[k].second, T, tb);
      runs.push_back(Summarize("mp init " + std::to_string(k) + " " + rule.name(),
                               mp, r, Regret(mp, r, T).total));
    }
  }
}

Outcome GlobalBound() {
  Outcome out;
  CollectBoundRuns();
  double worst_ratio = 0.0;
  double mp_max_psi = 0.0, mp_max_regret = 0.0;
  std::int64_t over = 0;
  for (const BoundRun& run : BoundRuns()) {
    const double bound = GlobalEnergyBound(run.params.a_max, run.params.a_gap);
    const double max_psi = run.max_psi;
    if (max_psi > bound) ++over;
    worst_ratio = std::max(worst_ratio, max_psi / bound);
    if (run.label.starts_with("mp")) {
      mp_max_psi = std::max(mp_max_psi, max_psi);
      mp_max_regret = std::max(mp_max_regret, run.final_regret);
    }
  }
  const double mp_bound = GlobalEnergyBound(1.0, MatchingPennies().a_gap());
  out.Require(over == 0, "max psi <= bound in every run");
  out.Require(mp_bound == 32.0, "matching pennies bound is 32");
  out.Require(mp_max_psi <= 32.0 && mp_max_regret <= 32.0,
              "matching pennies regret <= 32 up to T = 1e6");
  out.Note(std::to_string(BoundRuns().size()) + " runs, worst psi/bound = " +
           Fmt("%.4g", worst_ratio) + ", MP max psi = " + Fmt("%.4g", mp_max_psi) +
           ", MP regret(1e6) <= " + Fmt("%.4g", mp_max_regret));
  return out;
}

Outcome CyclingLemma() {
  Outcome out;
  CollectBoundRuns();
  std::int64_t violations = 0, above = 0, crossings = 0;
  double max_crossing_ratio = 0.0;
  // Synthetic starts may begin above the global bound, which only applies
  // to runs from actual initial strategies.
  const auto absorb = [&](const CyclingReport& rep, const SubspaceParams& p,
                          bool synthetic = false) {
    violations += rep.total_violations();
    if (synthetic && rep.counts.contains("global_bound")) {
      violations -= rep.counts.at("global_bound");
    }
    above += rep.above_threshold;
    crossings += rep.crossings;
    max_crossing_ratio = std::max(max_crossing_ratio, rep.max_crossing_psi / p.B_prime);
  };
  for (const BoundRun& run : BoundRuns()) {
    absorb(run.cycling, run.params);
  }
  const std::int64_t run_above = above;
  // The runs above never leave the threshold ball, so also start the
  // reduced dynamics outside it, with z^1 the step that z^0 predicts.
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    const SubspaceParams p = SubspaceParams::FromGame(Assumption41Game(i));
    for (const TiebreakRule& rule : TiebreakRules(DeriveSeed(11, i))) {
      const double radius = p.B * rng.Uniform(2.0, 50.0);
      const double angle = rng.Uniform(0.0, 2.0 * std::numbers::pi);
      const Vec2 z0 = {radius * std::cos(angle), radius * std::sin(angle)};
      Tiebreaker tb(rule, Player::kJoint);
      const Vec2 col = p.SColumn(QMap(z0, tb, 0));
      absorb(CheckCyclingInvariants(
                 RunSubspace(z0, {z0[0] + col[0], z0[1] + col[1]}, p, tb, 10000), p),
             p, true);
    }
  }
  out.Require(violations == 0, "zero cycling-lemma violations");
  out.Require(max_crossing_ratio <= 1.0, "crossing energy <= B'");
  out.Note("violations = " + std::to_string(violations) +
           ", above-threshold steps = " + std::to_string(above) + " (" +
           std::to_string(run_above) + " from the bound runs), crossings = " +
           std::to_string(crossings) + ", max crossing psi / B' = " +
           Fmt("%.3g", max_crossing_ratio));
  return out;
}

Outcome SkewSymmetry() {
  Outcome out;
  double worst_closed = 0.0, worst_skew = 0.0;
  bool subdiag_negative = true;
  for (int i = 0; i < 1000; ++i) {
    const SubspaceParams p = SubspaceParams::FromGame(Assumption41Game(i));
    const auto stm = p.StM();
    const auto closed = StMClosedForm(p.a, p.b, p.c, p.d);
    double skew = 0.0;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        worst_closed = std::max(worst_closed, std::abs(stm[r][c] - closed[r][c]));
        skew = std::max(skew, std::abs(stm[r][c] + stm[c][r]));
      }
      subdiag_negative = subdiag_negative && stm[(r + 1) % 4][r] < 0.0;
    }
    worst_skew = std::max(worst_skew, skew);
  }
  out.Require(worst_closed <= 1e-12, "entrywise match to the closed form");
  out.Require(worst_skew <= 1e-12, "skew-symmetry to 1e-12");
  out.Require(subdiag_negative, "negative sub-diagonal");
  out.Note("1000 games, closed-form error = " + Fmt("%.3g", worst_closed) +
           ", skew error = " + Fmt("%.3g", worst_skew));
  return out;
}

Outcome GoldenTrace() {
  Outcome out;
  const double p = std::numbers::pi / 4;
  const AfpSubspaceRun run = RunAfpSubspace(p, 10, TiebreakRule::Lexicographic(),
                                            TiebreakRule::Lexicographic());
  const Vec2 want[4] = {{-1, -2 * (2 * p - 1)},
                        {-2, -4 * p + 3},
                        {-3, -4 * p + 4},
                        {-4, -4 * p + 5}};
  double err = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Vec2& z = run.Z(3 + k);
    err = std::max({err, std::abs(z[0] - want[k][0]), std::abs(z[1] - want[k][1])});
  }
  out.Require(err <= 1e-12, "z^3..z^6 to 1e-12");
  out.Require(run.W(3) == 1 && run.W(4) == 1 && run.W(5) == 1 && run.W(6) == 2,
              "labels w3 = w4 = w5 = e1, w6 = e2");
  out.Require(Classify(run.Z(3)) == Region::kP1, "z^3 in P1");
  out.Note("max error = " + Fmt("%.3g", err));
  return out;
}

Outcome AfpLowerBound() {
  Outcome out;
  const GameMatrix mp = MatchingPennies();
  const std::vector<std::int64_t> horizons = {1000, 10000, 100000, 1000000};
  for (double p : {std::numbers::pi / 4, std::numbers::e - 2,
                   std::numbers::sqrt2 - 0.55}) {
    TiebreakPair tb(TiebreakRule::Lexicographic());
    const TrajectoryRecord r =
        RunAlternating(mp, MixedStrategy({p, 1.0 - p}), horizons.back(), tb);
    std::vector<double> xs, ys;
    for (std::int64_t T : horizons) {
      xs.push_back(static_cast<double>(T));
      ys.push_back(AlternatingRegret(mp, r, T).total);
    }
    const double slope = FitLogLogSlope(xs, ys);
    const AfpSubspaceRun run = RunAfpSubspace(p, horizons.back(),
                                              TiebreakRule::Lexicographic(),
                                              TiebreakRule::Lexicographic());
    const LowerBoundReport rep = VerifyLowerBoundIngredients(DecomposePhases(run));
    const std::string tag = "p = " + Fmt("%.6f", p);
    out.Require(slope >= 0.4 && slope <= 0.6, tag + " slope in [0.4, 0.6]");
    out.Require(rep.jumps_ok(), tag + " phase-start jumps <= 2 (" +
                                    std::to_string(rep.jump_violations) + " of " +
                                    std::to_string(rep.phases) + " phases exceed, max " +
                                    Fmt("%.4f", rep.max_increase) + ")");
    out.Require(rep.unit_increases_ok(), tag + " unit increases >= K/2 - 1");
    out.Note(tag + ": slope " + Fmt("%.4f", slope) + ", regret(1e6) " +
             Fmt("%.1f", ys.back()) + ", K = " + std::to_string(rep.phases) +
             ", unit increases " + std::to_string(rep.unit_increases) + "/" +
             Fmt("%.0f", rep.unit_increases_required));
  }
  return out;
}

double MeanFinalRegret(Family family, Algorithm algo) {
  ExperimentConfig config;
  config.families = {family};
  config.dims = {15};
  config.algos = {algo};
  config.tiebreak = "lex";
  config.inits = 20;
  config.steps = 10000;
  config.init_mode = InitMode::kRandom;
  std::vector<double> finals;
  for (int i = 0; i < config.inits; ++i) {
    const Instance inst = MakeInstance(config, family, 15, algo, i);
    finals.push_back(RunInstance(config, inst, algo, false).final_regret.total);
  }
  return MeanStd(finals).first;
}

Outcome TableReproduction() {
  Outcome out;
  struct Cell {
    Family family;
    Algorithm algo;
    double lo, hi;
  };
  const Cell cells[] = {{Family::kIdentity, Algorithm::kFP, 140, 170},
                        {Family::kIdentity, Algorithm::kOFP, 3, 15},
                        {Family::kRps, Algorithm::kFP, 215, 255},
                        {Family::kRps, Algorithm::kOFP, 1, 6}};
  for (const Cell& c : cells) {
    const double mean = MeanFinalRegret(c.family, c.algo);
    const std::string tag = std::string(FamilyName(c.family)) + " " +
                            AlgorithmName(c.algo) + " mean " + Fmt("%.2f", mean);
    out.Require(mean >= c.lo && mean <= c.hi,
                tag + " in " + Fmt("[%g, %g]", c.lo, c.hi));
    if (mean >= c.lo && mean <= c.hi) out.Note(tag);
  }
  return out;
}

Outcome NormalizationEquivalence() {
  Outcome out;
  const std::int64_t T = 10000;
  std::int64_t mismatched_games = 0;
  for (int i = 0; i < 100; ++i) {
    const GameMatrix a =
        Make({Family::kRandomInterior2x2, 2, 0, 1.0, DeriveSeed(12, i)});
    const NormalizedGame ng = Normalize2x2(a);
    const TiebreakRule rule = TiebreakRule::SeededRandom(DeriveSeed(13, i));
    const MixedStrategy x1 = MixedStrategy::Vertex(2, i % 2);
    const MixedStrategy x2 = MixedStrategy::Vertex(2, (i / 2) % 2);
    TiebreakPair direct(rule);
    const TrajectoryRecord orig = Run(a, Algorithm::kOFP, x1, x2, T, direct);
    const auto [u1, u2] = ng.ToTransformed(x1, x2);
    TiebreakPair lifted = ng.LiftTiebreaks(rule, rule);
    const TrajectoryRecord norm = Run(ng.transformed, Algorithm::kOFP, u1, u2, T, lifted);
    bool same = true;
    for (std::int64_t t = 1; t <= T && same; ++t) {
      for (Player seat : {Player::kOne, Player::kTwo}) {
        if (ng.ToOriginalIndex(seat, norm.Vertex(seat, t)) !=
            orig.Vertex(ng.OriginalPlayer(seat), t)) {
          same = false;
        }
      }
    }
    if (!same) ++mismatched_games;
  }
  out.Require(mismatched_games == 0, "identical primal sequences");
  out.Note("100 games, " + std::to_string(mismatched_games) + " mismatched");
  return out;
}

Outcome FpMonotoneGrowth() {
  Outcome out;
  const GameMatrix mp = MatchingPennies();
  const std::int64_t T = 1000000;
  TiebreakPair tb(TiebreakRule::Lexicographic());
  const TrajectoryRecord r = Run(mp, Algorithm::kFP, MixedStrategy::Vertex(2, 0),
                                 MixedStrategy::Vertex(2, 0), T, tb);
  std::int64_t decreases = 0;
  double prev = EnergyFull(r.Dual(Player::kOne, 0), r.Dual(Player::kTwo, 0));
  for (std::int64_t t = 1; t <= T + 1; ++t) {
    const double e = EnergyFull(r.Dual(Player::kOne, t), r.Dual(Player::kTwo, t));
    if (e < prev) ++decreases;
    prev = e;
  }
  std::vector<double> xs, ys;
  for (std::int64_t h : {1000, 10000, 100000, 1000000}) {
    xs.push_back(static_cast<double>(h));
    ys.push_back(Regret(mp, r, h).total);
  }
  const double slope = FitLogLogSlope(xs, ys);
  out.Require(decreases == 0, "energy non-decreasing");
  out.Require(slope >= 0.4 && slope <= 0.6, "slope in [0.4, 0.6]");
  out.Note("decreases = " + std::to_string(decreases) + ", slope " +
           Fmt("%.4f", slope) + ", regret(1e6) " + Fmt("%.1f", ys.back()));
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // runtime limit
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace fpdyn

int main() {
  using fpdyn::Criterion;
  const double kNoLimit = 1e9;
  const std::vector<Criterion> criteria = {
      {1, "energy-regret identity", 60, fpdyn::EnergyIdentity},
      {2, "subspace equivalence", 120, fpdyn::SubspaceEquivalence},
      {3, "global energy bound", 300, fpdyn::GlobalBound},
      {4, "cycling lemma checker", kNoLimit, fpdyn::CyclingLemma},
      {5, "S'M skew-symmetry", kNoLimit, fpdyn::SkewSymmetry},
      {6, "alternating golden trace", kNoLimit, fpdyn::GoldenTrace},
      {7, "alternating lower bound", 600, fpdyn::AfpLowerBound},
      {8, "15x15 regret table", 300, fpdyn::TableReproduction},
      {9, "normalization equivalence", kNoLimit, fpdyn::NormalizationEquivalence},
      {10, "FP monotone energy and growth", kNoLimit, fpdyn::FpMonotoneGrowth},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    fpdyn::Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      out.Require(false, "runtime limit " + fpdyn::Fmt("%.0f s", c.limit_s));
    }
    if (!out.pass) ++failed;
    std::printf("criterion %2d %s: %s (%.2f s) %s\n", c.id, c.name,
                out.pass ? "PASS" : "FAIL", secs, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
