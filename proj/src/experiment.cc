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

#include "fpdyn/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fpdyn/afp.h"
#include "fpdyn/dynamics.h"
#include "fpdyn/random.h"
#include "fpdyn/regret.h"
#include "fpdyn/subspace.h"

namespace fpdyn {
namespace {

constexpr double kIdentityTolerance = 1e-6;

bool IsRandomFamily(Family f) {
  return f == Family::kRandomUnit || f == Family::kAssumption41Random ||
         f == Family::kRandomInterior2x2;
}

std::string Real(double x) { return FormatReal(x); }

// Horizons at which table runs evaluate regret: 1, 10, 100, ... and T.
bool IsCheckpoint(std::int64_t t, std::int64_t steps) {
  if (t == steps) return true;
  std::int64_t p = 1;
  while (p < t) p *= 10;
  return p == t;
}

std::vector<double> PlusScaled(std::span<const double> y,
                               std::span<const double> x) {
  std::vector<double> out(y.begin(), y.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += x[i];
  return out;
}

nlohmann::json MatrixJson(const GameMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < a.rows(); ++i) {
    rows.push_back(std::vector<double>(a.Row(i).begin(), a.Row(i).end()));
  }
  return rows;
}

std::vector<double> ToVector(const MixedStrategy& x) {
  return {x.values().begin(), x.values().end()};
}

// Simultaneous play: regret rows, the energy identity and FP monotonicity.
void SimultaneousRows(const ExperimentConfig& config, const Instance& inst,
                      const TrajectoryRecord& traj, bool keep_rows,
                      RunResult& r) {
  const GameMatrix& a = inst.game;
  const std::int64_t steps = config.steps;
  const bool check_energy = config.WantsCheck("energy");
  RegretAccumulator acc(a);
  double prev_energy = 0.0;  // Psi(y^0) = 0
  std::int64_t fault_t = config.fault_inject ? steps / 2 : -1;
  for (std::int64_t t = 0; t <= steps; ++t) {
    const int i = traj.Vertex(Player::kOne, t);
    const int j = traj.Vertex(Player::kTwo, t);
    if (i >= 0 && j >= 0) {
      acc.AddVertices(i, j);
    } else {
      acc.Add(traj.Strategy(Player::kOne, t), traj.Strategy(Player::kTwo, t));
    }
    const StepInfo& info = traj.Info(t);
    std::uint32_t flags = info.flags;
    const bool evaluate = keep_rows || IsCheckpoint(t, steps) ||
                          (check_energy && t == fault_t);
    if (check_energy) {
      if (traj.algorithm() == Algorithm::kFP) {
        r.log.Checked("energy");
        const double tol = 1e-12 * std::max(1.0, std::abs(prev_energy));
        if (info.energy < prev_energy - tol) {
          flags |= kFlagEnergyDecrease;
          r.log.Add({"energy", "fp_energy_decrease", inst.index, t,
                     "energy " + Real(info.energy) + " after " +
                         Real(prev_energy)});
        }
      }
      prev_energy = info.energy;
    }
    if (!evaluate) continue;
    RegretBreakdown reg = acc.Breakdown();
    if (t == fault_t) reg.total += 1.0;
    if (check_energy && t >= 1) {
      r.log.Checked("energy");
      const double diff = std::abs(reg.total - info.energy);
      if (!(diff <= kIdentityTolerance)) {
        flags |= kFlagEnergyIdentity;
        r.log.Add({"energy", "regret_energy_identity", inst.index, t,
                   "regret " + Real(reg.total) + " energy " +
                       Real(info.energy)});
      }
    }
    if (t == steps) r.final_regret = reg;
    if (keep_rows) {
      TraceRow row;
      row.t = t;
      row.reg_total = reg.total;
      row.reg1 = reg.reg1;
      row.reg2 = reg.reg2;
      row.psi = std::isnan(info.psi) ? info.energy : info.psi;
      row.region = info.region >= 0
                       ? RegionName(static_cast<Region>(info.region))
                       : "";
      row.flags = flags;
      r.rows.push_back(std::move(row));
    }
  }
  r.final_energy = traj.Info(steps).energy;
}

// Lemma-level checks of OFP on a 2x2 game in normal form.
void Ofp2x2Suite(const ExperimentConfig& config, const Instance& inst,
                 const TrajectoryRecord& traj, RunResult& r) {
  const SubspaceParams p = SubspaceParams::FromGame(inst.game);
  std::vector<Vec2> z = ProjectTrajectory(traj);
  if (config.fault_inject) {
    Vec2& zm = z[z.size() / 2];
    zm[0] += 2.0 * p.global_bound;
  }
  const CyclingReport rep = CheckCyclingInvariants(z, p);
  r.log.Checked("ofp2x2", static_cast<std::int64_t>(z.size()));
  for (const auto& [kind, count] : rep.counts) {
    std::int64_t listed = 0;
    for (const CyclingViolation& v : rep.violations) {
      if (v.kind != kind) continue;
      ++listed;
      std::ostringstream d;
      d << "z=(" << Real(v.z[0]) << ", " << Real(v.z[1]) << ") region "
        << RegionName(v.region) << " psi " << Real(v.psi) << " -> "
        << Real(v.psi_next) << " next region " << RegionName(v.region_next);
      r.log.Add({"ofp2x2", kind, inst.index, v.t, d.str()});
    }
    for (std::int64_t k = listed; k < count; ++k) {
      r.log.Add({"ofp2x2", kind, inst.index, -1, ""});
    }
  }
  // Reduced energy against the full energy, and the replayed dynamics.
  double max_gap = 0.0;
  for (std::int64_t t = 0; t <= traj.last_step(); ++t) {
    const double full = traj.Info(t).energy;
    const double reduced = Psi(z[t + 1], p);
    const double gap = std::abs(full - reduced);
    max_gap = std::max(max_gap, gap);
    if (!(gap <= kIdentityTolerance)) {
      r.log.Add({"ofp2x2", "subspace_energy", inst.index, t + 1,
                 "Psi " + Real(full) + " psi " + Real(reduced)});
    }
  }
  const ReplayReport replay = ReplaySubspace(traj, p);
  if (replay.mismatches > 0) {
    r.log.Add({"ofp2x2", "subspace_replay", inst.index, replay.first_mismatch,
               std::to_string(replay.mismatches) +
                   " recorded vertices outside the choice map"});
  }
  for (TraceRow& row : r.rows) {
    const std::size_t k = static_cast<std::size_t>(row.t + 1);
    if (k < rep.flags.size()) row.flags |= rep.flags[k];
  }
  nlohmann::json j;
  j["B"] = p.B;
  j["B_prime"] = p.B_prime;
  j["global_bound"] = p.global_bound;
  j["rho1"] = p.rho1;
  j["rho2"] = p.rho2;
  j["max_psi"] = rep.max_psi;
  j["max_crossing_psi"] = rep.max_crossing_psi;
  j["steps_above_B"] = rep.above_threshold;
  j["crossings"] = rep.crossings;
  j["max_energy_gap"] = max_gap;
  j["replay_origin_divergences"] = replay.origin_divergences;
  j["replay_max_scaled_deviation"] = replay.max_scaled_deviation;
  j["violations"] = rep.total_violations();
  r.extra["ofp2x2"] = j;
}

// Alternating play: windowed regret rows and the energy relations.
void AlternatingRows(const ExperimentConfig& config, const Instance& inst,
                     const TrajectoryRecord& traj, bool keep_rows,
                     RunResult& r, std::vector<double>& ck_t,
                     std::vector<double>& ck_reg) {
  const GameMatrix& a = inst.game;
  const std::int64_t steps = config.steps;
  const bool check_energy = config.WantsCheck("energy");
  const std::vector<double> x1_first = traj.Strategy(Player::kOne, 1);
  std::vector<double> shift(a.cols());
  a.ApplyTransposed(x1_first, shift);
  AlternatingRegretAccumulator acc(a);
  const std::int64_t fault_t = config.fault_inject ? (steps / 4) * 2 : -1;
  for (std::int64_t t = 1; t <= steps; ++t) {
    if (t % 2 == 1) {
      acc.AddOdd(traj.Strategy(Player::kOne, t));
      continue;
    }
    acc.AddEven(traj.Strategy(Player::kTwo, t));
    if (!keep_rows && !IsCheckpoint(t, steps) && t != fault_t) continue;
    RegretBreakdown reg = acc.Breakdown();
    if (t == fault_t && check_energy) reg.total += 1.0;
    const StepInfo& info = traj.Info(t);
    std::uint32_t flags = info.flags;
    if (check_energy) {
      // regalt(t) = Psi(y1^{t+1}, y2^{t+1} + A' x1^1) exactly, and
      // |regalt(t) - Psi(y^{t+1})| <= a_max.
      r.log.Checked("energy", 2);
      const std::vector<double> y2s =
          PlusScaled(traj.Dual(Player::kTwo, t + 1), shift);
      const double corrected = EnergyFull(traj.Dual(Player::kOne, t + 1), y2s);
      if (!(std::abs(reg.total - corrected) <= kIdentityTolerance)) {
        flags |= kFlagEnergyIdentity;
        r.log.Add({"energy", "alternating_energy_identity", inst.index, t,
                   "regret " + Real(reg.total) + " shifted energy " +
                       Real(corrected)});
      }
      if (!(std::abs(reg.total - info.energy) <=
            a.a_max() + kIdentityTolerance)) {
        flags |= kFlagEnergyIdentity;
        r.log.Add({"energy", "alternating_energy_bound", inst.index, t,
                   "regret " + Real(reg.total) + " energy " +
                       Real(info.energy)});
      }
    }
    if (IsCheckpoint(t, steps) && t >= 1000) {
      ck_t.push_back(static_cast<double>(t));
      ck_reg.push_back(reg.total);
    }
    if (t == steps) r.final_regret = reg;
    if (keep_rows) {
      TraceRow row;
      row.t = t;
      row.reg_total = reg.total;
      row.reg1 = reg.reg1;
      row.reg2 = reg.reg2;
      row.psi = std::isnan(info.psi) ? info.energy : info.psi;
      row.region = info.region >= 0
                       ? RegionName(static_cast<Region>(info.region))
                       : "";
      row.flags = flags;
      r.rows.push_back(std::move(row));
    }
  }
  r.final_energy = traj.Info(steps).energy;
}

// Phase analysis of AFP on Matching Pennies.
void AfpSuite(const ExperimentConfig& config, const Instance& inst,
              const TrajectoryRecord& traj, RunResult& r,
              const std::vector<double>& ck_t,
              const std::vector<double>& ck_reg) {
  const double p = inst.x1[0];
  AfpSubspaceRun run = RunAfpSubspace(p, config.steps, inst.tiebreak,
                                      TiebreakRule::Lexicographic());
  if (config.fault_inject) run.z[run.z.size() / 2][0] += 0.5;
  const std::string suite = "afp";
  // The reduced run must reproduce the projected full dynamics.
  const std::vector<Vec2> full = ProjectTrajectory(traj);
  std::int64_t drift = 0;
  for (std::int64_t t = 2; t <= config.steps + 1; ++t) {
    const Vec2& a = run.Z(t);
    const Vec2& b = full[t - traj.first_step()];
    const double tol = 1e-9 * static_cast<double>(t);
    if (std::abs(a[0] - b[0]) > tol || std::abs(a[1] - b[1]) > tol) {
      if (drift++ == 0) {
        r.log.Add({suite, "subspace_drift", inst.index, t,
                   "reduced (" + Real(a[0]) + ", " + Real(a[1]) +
                       ") full (" + Real(b[0]) + ", " + Real(b[1]) + ")"});
      }
    }
  }
  r.log.Checked(suite, config.steps);

  const std::vector<Phase> phases = DecomposePhases(run);
  const LowerBoundReport lb = VerifyLowerBoundIngredients(phases);
  for (const auto& [k, inc] : lb.jump_examples) {
    r.log.Add({suite, "phase_jump", inst.index, phases[k].t_start,
               "phase " + std::to_string(k) + " start energy rose by " +
                   Real(inc)});
  }
  for (std::int64_t k = static_cast<std::int64_t>(lb.jump_examples.size());
       k < lb.jump_violations; ++k) {
    r.log.Add({suite, "phase_jump", inst.index, -1, ""});
  }
  if (!lb.unit_increases_ok()) {
    r.log.Add({suite, "unit_increases", inst.index, -1,
               std::to_string(lb.unit_increases) + " unit increases, need " +
                   Real(lb.unit_increases_required)});
  }
  const AfpCaseReport cases = CheckAfpCases(run);
  {
    std::size_t ex = 0;
    for (std::int64_t i = 0; i < cases.violations(); ++i) {
      const std::int64_t t =
          ex < cases.examples.size() ? cases.examples[ex++] : -1;
      r.log.Add({suite, "afp_case", inst.index, t, ""});
    }
  }
  const AfpInvariantReport inv = CheckAfpInvariants(run);
  for (std::int64_t i = 0; i < inv.non_integral_z1; ++i) {
    r.log.Add({suite, "z1_not_integral", inst.index, -1, ""});
  }
  for (std::int64_t i = 0; i < inv.z2_near_zero; ++i) {
    r.log.Add({suite, "z2_near_zero", inst.index, -1, ""});
  }
  for (std::int64_t i = 0; i < inv.l1_mismatch; ++i) {
    r.log.Add({suite, "psi_not_l1", inst.index, -1, ""});
  }

  nlohmann::json j;
  j["p"] = p;
  j["phases"] = lb.phases;
  j["jump_violations"] = lb.jump_violations;
  j["max_increase"] = lb.max_increase;
  j["unit_increases"] = lb.unit_increases;
  j["unit_increases_required"] = lb.unit_increases_required;
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& [inc, count] : lb.increase_histogram) {
    hist.push_back({{"increase", inc}, {"count", count}});
  }
  j["increase_histogram"] = hist;
  j["tau_fit"] = {{"slope", lb.tau_slope},
                  {"intercept", lb.tau_intercept},
                  {"max_residual", lb.tau_max_residual},
                  {"min_ratio", lb.tau_min_ratio},
                  {"max_ratio", lb.tau_max_ratio}};
  nlohmann::json matched;
  for (const auto& [c, n] : cases.matched) matched[std::to_string(c)] = n;
  nlohmann::json broken;
  for (const auto& [c, n] : cases.inconsistent) broken[std::to_string(c)] = n;
  j["cases"] = {{"matched", matched},
                {"inconsistent", broken},
                {"unmatched", cases.unmatched}};
  j["invariants"] = {{"non_integral_z1", inv.non_integral_z1},
                     {"z2_near_zero", inv.z2_near_zero},
                     {"psi_not_l1", inv.l1_mismatch}};
  j["subspace_drift_steps"] = drift;
  if (ck_t.size() >= 2) {
    j["regret_exponent"] = FitLogLogSlope(ck_t, ck_reg);
  } else {
    j["regret_exponent"] = nullptr;
  }
  r.extra["afp"] = j;
}

}  // namespace

double AfpInitialP(const ExperimentConfig& config) {
  return config.p.value_or(std::numbers::pi / 4.0);
}

TiebreakRule MakeTiebreak(const ExperimentConfig& config,
                          std::uint64_t stream_seed) {
  if (config.tiebreak == "random") return TiebreakRule::SeededRandom(stream_seed);
  if (config.tiebreak == "last") return TiebreakRule::AlwaysLast();
  return TiebreakRule::Lexicographic();
}

Instance MakeInstance(const ExperimentConfig& config, Family family, int dim,
                      Algorithm algo, int index) {
  GameSpec spec;
  spec.family = family;
  spec.n = dim;
  spec.rows = config.rows;
  spec.scale = config.scale;
  spec.seed = IsRandomFamily(family)
                  ? DeriveSeed(config.BaseGameSeed(), static_cast<std::uint64_t>(index))
                  : 0;
  GameMatrix game = Make(spec);
  const std::uint64_t s = DeriveSeed(config.seed, static_cast<std::uint64_t>(index));
  std::optional<MixedStrategy> x1, x2;
  if (config.init_mode == InitMode::kRandom) {
    x1 = RandomSimplex(game.rows(), DeriveSeed(s, 1));
    x2 = RandomSimplex(game.cols(), DeriveSeed(s, 2));
  } else {
    if (!config.x1.empty()) {
      x1 = ParseStrategy(config.x1, game.rows(), "x1");
    } else if (algo == Algorithm::kAFP && game.rows() == 2) {
      const double p = AfpInitialP(config);
      x1 = MixedStrategy({p, 1.0 - p});
    } else {
      x1 = MixedStrategy::Vertex(game.rows(), 0);
    }
    x2 = config.x2.empty() ? MixedStrategy::Vertex(game.cols(), 0)
                           : ParseStrategy(config.x2, game.cols(), "x2");
  }
  return Instance{index, spec, std::move(game), std::move(*x1), std::move(*x2),
                  MakeTiebreak(config, DeriveSeed(s, 3))};
}

void ViolationLog::Checked(const std::string& suite, std::int64_t n) {
  tallies_[suite].checked += n;
}

void ViolationLog::Add(Violation v) {
  ++tallies_[v.suite].violations;
  if (examples_.size() < keep_ && v.t >= 0) examples_.push_back(std::move(v));
}

void ViolationLog::Merge(const ViolationLog& other) {
  for (const auto& [suite, t] : other.tallies_) {
    tallies_[suite].checked += t.checked;
    tallies_[suite].violations += t.violations;
  }
  for (const Violation& v : other.examples_) {
    if (examples_.size() < keep_) examples_.push_back(v);
  }
}

std::int64_t ViolationLog::total() const {
  std::int64_t n = 0;
  for (const auto& [suite, t] : tallies_) n += t.violations;
  return n;
}

nlohmann::json ViolationLog::ToJson() const {
  nlohmann::json j;
  nlohmann::json suites = nlohmann::json::object();
  for (const auto& [suite, t] : tallies_) {
    suites[suite] = {{"checked", t.checked}, {"violations", t.violations}};
  }
  j["suites"] = suites;
  j["total"] = total();
  nlohmann::json list = nlohmann::json::array();
  for (const Violation& v : examples_) {
    list.push_back({{"suite", v.suite},
                    {"kind", v.kind},
                    {"instance", v.instance},
                    {"t", v.t},
                    {"detail", v.detail}});
  }
  j["examples"] = list;
  return j;
}

RunResult RunInstance(const ExperimentConfig& config, const Instance& inst,
                      Algorithm algo, bool keep_rows) {
  RunResult r{inst, algo, {}, {}, 0.0, ViolationLog(), nlohmann::json::object()};
  TiebreakPair tb(inst.tiebreak);
  if (algo == Algorithm::kAFP) {
    TrajectoryRecord traj = RunAlternating(inst.game, inst.x1, config.steps, tb);
    const bool mp = inst.spec.family == Family::kMatchingPennies;
    if (mp) {
      // Reduced energy and region of each y^{t+1}.
      const SubspaceParams params = MatchingPenniesParams();
      for (std::int64_t t = 1; t <= config.steps; ++t) {
        const Vec2 z = Project(traj.Dual(Player::kOne, t + 1),
                               traj.Dual(Player::kTwo, t + 1));
        traj.Info(t).psi = PsiPiecewise(z, params);
        traj.Info(t).region = static_cast<std::int8_t>(Classify(z));
      }
    }
    std::vector<double> ck_t, ck_reg;
    AlternatingRows(config, inst, traj, keep_rows, r, ck_t, ck_reg);
    if (config.WantsCheck("afp") && mp) AfpSuite(config, inst, traj, r, ck_t, ck_reg);
    return r;
  }
  TrajectoryRecord traj =
      Run(inst.game, algo, inst.x1, inst.x2, config.steps, tb);
  const bool ofp_checks = config.WantsCheck("ofp2x2");
  if (inst.game.rows() == 2 && inst.game.cols() == 2 &&
      SatisfiesAssumption41(inst.game)) {
    Annotate(traj, SubspaceParams::FromGame(inst.game));
  }
  SimultaneousRows(config, inst, traj, keep_rows, r);
  if (ofp_checks) Ofp2x2Suite(config, inst, traj, r);
  return r;
}

std::pair<double, double> MeanStd(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  CompensatedSum s;
  for (double x : v) s.Add(x);
  const double mean = s.value() / static_cast<double>(v.size());
  CompensatedSum q;
  for (double x : v) q.Add((x - mean) * (x - mean));
  return {mean, std::sqrt(q.value() / static_cast<double>(v.size()))};
}

namespace {

nlohmann::json InstanceJson(const Instance& inst) {
  nlohmann::json j;
  j["index"] = inst.index;
  j["game"] = inst.spec.ToString();
  j["matrix"] = MatrixJson(inst.game);
  j["x1"] = ToVector(inst.x1);
  j["x2"] = ToVector(inst.x2);
  j["tiebreak"] = inst.tiebreak.name();
  return j;
}

nlohmann::json Envelope(const ExperimentConfig& config, const char* command) {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = config.ToJson();
  j["rng"] = kRngIdentity;
  return j;
}

bool Emit(const ExperimentConfig& config, const std::string& format) {
  return config.WantsFormat(format);
}

}  // namespace

CommandOutcome CmdRun(const ExperimentConfig& config) {
  Validate(config, Command::kRun);
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = MakeInstance(config, config.families[0],
                                     config.dims[0], config.algos[0], 0);
  const RunResult r = RunInstance(config, inst, config.algos[0], true);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  CommandOutcome out;
  if (Emit(config, "csv")) {
    std::vector<TraceRow> rows;
    for (const TraceRow& row : r.rows) {
      if (row.t % config.trace_stride == 0 || row.t == config.steps) {
        rows.push_back(row);
      }
    }
    std::ostringstream csv;
    WriteTraceCsv(csv, rows);
    out.written.push_back(WriteOutput(config.out_dir, config.name + ".csv", csv.str()));
  }
  nlohmann::json j = Envelope(config, "run");
  j["instance"] = InstanceJson(inst);
  j["algo"] = AlgorithmName(r.algo);
  j["final"] = {{"t", config.steps},
                {"reg_total", r.final_regret.total},
                {"reg1", r.final_regret.reg1},
                {"reg2", r.final_regret.reg2},
                {"energy", r.final_energy}};
  j["suites"] = r.extra;
  j["violations"] = r.log.ToJson();
  out.exit_code = r.log.total() == 0 ? kExitOk : kExitViolations;
  j["exit_code"] = out.exit_code;
  if (Emit(config, "json")) {
    out.written.push_back(
        WriteOutput(config.out_dir, config.name + ".json", j.dump(2) + "\n"));
  }
  std::ostringstream text;
  text << AlgorithmName(r.algo) << " on " << inst.spec.ToString() << ", T = "
       << config.steps << ": regret " << Real(r.final_regret.total)
       << " (reg1 " << Real(r.final_regret.reg1) << ", reg2 "
       << Real(r.final_regret.reg2) << "), violations " << r.log.total()
       << ", runtime " << seconds << " s\n";
  out.text = text.str();
  out.summary = std::move(j);
  return out;
}

CommandOutcome CmdTable(const ExperimentConfig& config) {
  Validate(config, Command::kTable);
  const auto start = std::chrono::steady_clock::now();
  std::vector<CellSummary> cells;
  for (Family family : config.families) {
    for (int dim : config.dims) {
      for (Algorithm algo : config.algos) {
        std::vector<RunResult> runs = ParallelMap<RunResult>(
            config.inits, config.threads, [&](int i) {
              return RunInstance(config, MakeInstance(config, family, dim, algo, i),
                                 algo, false);
            });
        CellSummary cell;
        cell.family = family;
        cell.dim = dim;
        cell.algo = algo;
        for (const RunResult& r : runs) {
          cell.final_regrets.push_back(r.final_regret.total);
          cell.log.Merge(r.log);
        }
        std::tie(cell.mean, cell.std) = MeanStd(cell.final_regrets);
        cells.push_back(std::move(cell));
      }
    }
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  CommandOutcome out;
  ViolationLog all;
  for (const CellSummary& c : cells) all.Merge(c.log);
  out.exit_code = all.total() == 0 ? kExitOk : kExitViolations;
  if (Emit(config, "csv")) {
    std::ostringstream csv;
    WriteTableCsv(csv, cells);
    out.written.push_back(WriteOutput(config.out_dir, config.name + ".csv", csv.str()));
  }
  nlohmann::json j = Envelope(config, "table");
  nlohmann::json list = nlohmann::json::array();
  for (const CellSummary& c : cells) list.push_back(CellToJson(c));
  j["cells"] = list;
  j["violations"] = all.ToJson();
  j["exit_code"] = out.exit_code;
  if (Emit(config, "json")) {
    out.written.push_back(
        WriteOutput(config.out_dir, config.name + ".json", j.dump(2) + "\n"));
  }
  std::ostringstream text;
  text << FormatTextTable(cells) << "violations " << all.total()
       << ", runtime " << seconds << " s\n";
  out.text = text.str();
  out.summary = std::move(j);
  return out;
}

CommandOutcome CmdVerify(const ExperimentConfig& given) {
  ExperimentConfig config = given;
  if (config.checks.empty()) {
    const Family f = config.families.empty() ? Family::kMatchingPennies
                                             : config.families[0];
    const Algorithm a = config.algos.empty() ? Algorithm::kOFP : config.algos[0];
    config.checks.push_back("energy");
    if (a == Algorithm::kAFP && f == Family::kMatchingPennies) {
      config.checks.push_back("afp");
    } else if (a == Algorithm::kOFP && (f == Family::kMatchingPennies ||
                                        f == Family::kAssumption41Random)) {
      config.checks.push_back("ofp2x2");
    }
  }
  Validate(config, Command::kVerify);
  const auto start = std::chrono::steady_clock::now();
  const Family family = config.families[0];
  const int dim = config.dims[0];
  const Algorithm algo = config.algos[0];
  std::vector<RunResult> runs =
      ParallelMap<RunResult>(config.inits, config.threads, [&](int i) {
        return RunInstance(config, MakeInstance(config, family, dim, algo, i),
                           algo, false);
      });
  ViolationLog all;
  nlohmann::json instances = nlohmann::json::array();
  std::ostringstream csv;
  csv << "instance,game,reg_total,energy,violations\n";
  for (const RunResult& r : runs) {
    all.Merge(r.log);
    nlohmann::json ij = InstanceJson(r.instance);
    ij["reg_total"] = r.final_regret.total;
    ij["energy"] = r.final_energy;
    ij["suites"] = r.extra;
    ij["violations"] = r.log.total();
    instances.push_back(ij);
    csv << r.instance.index << "," << r.instance.spec.ToString() << ","
        << Real(r.final_regret.total) << "," << Real(r.final_energy) << ","
        << r.log.total() << "\n";
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  CommandOutcome out;
  out.exit_code = all.total() == 0 ? kExitOk : kExitViolations;
  if (Emit(config, "csv")) {
    out.written.push_back(WriteOutput(config.out_dir, config.name + ".csv", csv.str()));
  }
  nlohmann::json j = Envelope(config, "verify");
  j["instances"] = instances;
  j["violations"] = all.ToJson();
  j["exit_code"] = out.exit_code;
  if (Emit(config, "json")) {
    out.written.push_back(
        WriteOutput(config.out_dir, config.name + ".json", j.dump(2) + "\n"));
  }
  std::ostringstream text;
  text << "verify " << FamilyName(family) << " " << AlgorithmName(algo)
       << ", " << config.inits << " instance(s), T = " << config.steps << "\n";
  for (const auto& [suite, t] : all.tallies()) {
    text << "  " << suite << ": " << t.checked << " checked, " << t.violations
         << " violations\n";
  }
  for (const RunResult& r : runs) {
    if (r.extra.contains("afp") && !r.extra["afp"]["regret_exponent"].is_null()) {
      text << "  instance " << r.instance.index << " regret exponent "
           << r.extra["afp"]["regret_exponent"].get<double>() << "\n";
    }
  }
  text << "total violations " << all.total() << ", runtime " << seconds
       << " s\n";
  out.text = text.str();
  out.summary = std::move(j);
  return out;
}

}  // namespace fpdyn
