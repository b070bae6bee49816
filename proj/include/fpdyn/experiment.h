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

#ifndef FPDYN_EXPERIMENT_H_
#define FPDYN_EXPERIMENT_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "fpdyn/error.h"
#include "fpdyn/game.h"
#include "fpdyn/generators.h"
#include "fpdyn/regret.h"
#include "fpdyn/tiebreak.h"
#include "fpdyn/trajectory.h"
#include "json.hpp"

namespace fpdyn {

enum class InitMode { kFixed, kRandom };

// Everything that determines a run. Flat key=value text form:
//
//   game = identity            families; comma list for `table`
//   dim = 15                   dimensions; comma list for `table`
//   rows = 0                   random_unit rows (0: square)
//   scale = 1                  rps scale
//   game_seed = 0              base seed of the random families
//   algo = fp,ofp              algorithms; comma list for `table`
//   tiebreak = lex             lex | random | last
//   seed = 0                   base seed of inits and random tiebreaks
//   inits = 20                 instances per cell
//   steps = 10000              horizon T
//   init_mode = random         fixed | random
//   x1 = e1, x2 = 1/3,2/3      fixed initial strategies (vertex or list);
//                              empty picks e1, or (p, 1 - p) for AFP
//   p = 0.785398...            AFP initial weight, default pi / 4
//   checks = energy            energy | ofp2x2 | afp | none (comma list)
//   out_dir, format = csv,json, name = run, threads = 1,
//   trace_stride = 1, fault_inject = false
struct ExperimentConfig {
  std::vector<Family> families = {Family::kMatchingPennies};
  std::vector<int> dims = {2};
  int rows = 0;
  double scale = 1.0;
  std::optional<std::uint64_t> game_seed;
  std::vector<Algorithm> algos = {Algorithm::kOFP};
  std::string tiebreak = "lex";
  std::uint64_t seed = 0;
  int inits = 1;
  std::int64_t steps = 10000;
  InitMode init_mode = InitMode::kFixed;
  std::string x1;
  std::string x2;
  std::optional<double> p;
  std::vector<std::string> checks;
  std::string out_dir = ".";
  std::vector<std::string> formats = {"csv", "json"};
  std::string name = "run";
  int threads = 1;
  std::int64_t trace_stride = 1;
  bool fault_inject = false;

  std::uint64_t BaseGameSeed() const { return game_seed.value_or(seed); }
  bool WantsFormat(const std::string& f) const;
  bool WantsCheck(const std::string& c) const;

  nlohmann::json ToJson() const;
  std::string ToKeyValue() const;
};

// Sets one field from its text form; throws UsageError naming the field.
void ApplyKeyValue(ExperimentConfig& config, const std::string& key,
                   const std::string& value);
// Reads `key = value` lines; '#' starts a comment. Throws UsageError on
// malformed lines and unknown keys.
ExperimentConfig LoadConfigFile(const std::string& path);
ExperimentConfig ParseConfigText(const std::string& text,
                                 const std::string& origin = "config");

enum class Command { kRun, kTable, kVerify };
// Rejects configs the command cannot execute.
void Validate(const ExperimentConfig& config, Command command);

// Parses "e3" (vertex, 1-based) or "0.2,0.8" / "1/3,2/3" (explicit
// probabilities).
MixedStrategy ParseStrategy(const std::string& text, int n,
                            const std::string& field);

// Inputs of instance i: game seed DeriveSeed(game_seed, i) for the random
// families; random inits and tiebreak streams from DeriveSeed(seed, i).
struct Instance {
  int index = 0;
  GameSpec spec;
  GameMatrix game;
  MixedStrategy x1;
  MixedStrategy x2;
  TiebreakRule tiebreak;
};
Instance MakeInstance(const ExperimentConfig& config, Family family, int dim,
                      Algorithm algo, int index);
TiebreakRule MakeTiebreak(const ExperimentConfig& config,
                          std::uint64_t stream_seed);
double AfpInitialP(const ExperimentConfig& config);

// One CSV row per recorded step.
struct TraceRow {
  std::int64_t t = 0;
  double reg_total = 0.0;
  double reg1 = 0.0;
  double reg2 = 0.0;
  double psi = 0.0;
  std::string region;
  std::uint32_t flags = 0;
};

// One violated assertion with its step context.
struct Violation {
  std::string suite;
  std::string kind;
  int instance = 0;
  std::int64_t t = -1;
  std::string detail;
};

struct SuiteTally {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
};

// Violation log with per-suite counts; keeps the first few examples.
class ViolationLog {
 public:
  explicit ViolationLog(std::size_t keep = 64) : keep_(keep) {}
  void Checked(const std::string& suite, std::int64_t n = 1);
  void Add(Violation v);
  void Merge(const ViolationLog& other);
  std::int64_t total() const;
  const std::map<std::string, SuiteTally>& tallies() const { return tallies_; }
  const std::vector<Violation>& examples() const { return examples_; }
  nlohmann::json ToJson() const;

 private:
  std::size_t keep_;
  std::map<std::string, SuiteTally> tallies_;
  std::vector<Violation> examples_;
};

struct RunResult {
  Instance instance;
  Algorithm algo = Algorithm::kFP;
  std::vector<TraceRow> rows;
  RegretBreakdown final_regret;
  double final_energy = 0.0;
  ViolationLog log;
  nlohmann::json extra;  // suite reports
};

// Simulates one instance and runs the requested inline checks.
RunResult RunInstance(const ExperimentConfig& config, const Instance& inst,
                      Algorithm algo, bool keep_rows);

struct CellSummary {
  Family family = Family::kMatchingPennies;
  int dim = 0;
  Algorithm algo = Algorithm::kFP;
  std::vector<double> final_regrets;  // in init order
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  ViolationLog log;
};

// Mean and population standard deviation.
std::pair<double, double> MeanStd(const std::vector<double>& v);

// Runs f(0) .. f(n - 1) on `threads` workers; results keep index order, so
// the output does not depend on scheduling. The first exception is rethrown.
template <typename T, typename F>
std::vector<T> ParallelMap(int n, int threads, F f) {
  std::vector<std::optional<T>> slots(n);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min(threads, n));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(n);
  for (std::optional<T>& s : slots) out.push_back(std::move(*s));
  return out;
}

struct CommandOutcome {
  int exit_code = 0;
  std::vector<std::string> written;  // output files
  std::string text;                  // human-readable summary
  nlohmann::json summary;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitError = 4;

CommandOutcome CmdRun(const ExperimentConfig& config);
CommandOutcome CmdTable(const ExperimentConfig& config);
CommandOutcome CmdVerify(const ExperimentConfig& config);

class IoError : public Error {
 public:
  using Error::Error;
};

std::string FormatReal(double x);
void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& rows);
std::string FormatTextTable(const std::vector<CellSummary>& cells);
void WriteTableCsv(std::ostream& out, const std::vector<CellSummary>& cells);
nlohmann::json CellToJson(const CellSummary& cell);
// Writes `content` to out_dir/file_name; throws IoError.
std::string WriteOutput(const std::string& out_dir,
                        const std::string& file_name,
                        const std::string& content);

}  // namespace fpdyn

#endif  // FPDYN_EXPERIMENT_H_
