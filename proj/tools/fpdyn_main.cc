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

// Command-line front end: fpdyn {run,table,verify} [flags].

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpdyn/error.h"
#include "fpdyn/experiment.h"
#include "fpdyn/kernels.h"

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"--game", "game", "game family (comma list for table)"},
    {"--dim", "dim", "dimension (comma list for table)"},
    {"--rows", "rows", "rows of random_unit games (0: square)"},
    {"--scale", "scale", "rps scale"},
    {"--game-seed", "game_seed", "base seed of the random game families"},
    {"--algo", "algo", "fp, ofp or afp (comma list for table)"},
    {"--tiebreak", "tiebreak", "lex, random or last"},
    {"--seed", "seed", "base seed of inits and tiebreak streams"},
    {"--inits", "inits", "number of instances"},
    {"--steps", "steps", "horizon T"},
    {"--init-mode", "init_mode", "fixed or random"},
    {"--x1", "x1", "fixed initial strategy of player 1 (e.g. e1 or 1/3,2/3)"},
    {"--x2", "x2", "fixed initial strategy of player 2"},
    {"--p", "p", "AFP initial strategy (p, 1 - p)"},
    {"--out-dir", "out_dir", "output directory (default $FPDYN_OUT_DIR or .)"},
    {"--format", "format", "csv, json or csv,json"},
    {"--checks", "checks", "energy, ofp2x2, afp or none (comma list)"},
    {"--threads", "threads", "worker threads"},
    {"--name", "name", "output file stem"},
    {"--trace-stride", "trace_stride", "write every k-th trace row"},
};

struct Parsed {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool fault_inject = false;
};

void AddFlags(CLI::App* sub, Parsed& parsed) {
  sub->add_option("--config", parsed.config_path, "key = value config file");
  for (const FlagSpec& f : kFlags) {
    sub->add_option_function<std::string>(
        f.flag,
        [&parsed, key = std::string(f.key)](const std::string& v) {
          parsed.values[key] = v;
        },
        f.help);
  }
  sub->add_flag("--fault-inject", parsed.fault_inject,
                "corrupt the checked data to exercise the checkers");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fictitious play dynamics on zero-sum matrix games"};
  app.require_subcommand(0, 1);
  Parsed parsed;
  CLI::App* run = app.add_subcommand("run", "simulate one trajectory");
  CLI::App* table = app.add_subcommand("table", "mean final regret over inits");
  CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
  for (CLI::App* sub : {run, table, verify}) AddFlags(sub, parsed);
  bool list_kernels = false;
  app.add_flag("--list-kernels", list_kernels, "print the kernel selection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? fpdyn::kExitOk : fpdyn::kExitUsage;
  }
  if (list_kernels) {
    std::cerr << "kernels: " << fpdyn::kernels::Active().name << "\n";
  }
  if (app.get_subcommands().empty()) {
    if (list_kernels) return fpdyn::kExitOk;
    std::cerr << "a subcommand is required: run, table or verify\n";
    return fpdyn::kExitUsage;
  }

  try {
    fpdyn::ExperimentConfig config;
    if (const char* env = std::getenv("FPDYN_OUT_DIR"); env && *env) {
      config.out_dir = env;
    }
    if (!parsed.config_path.empty()) {
      const std::string out_dir = config.out_dir;
      config = fpdyn::LoadConfigFile(parsed.config_path);
      if (config.out_dir == ".") config.out_dir = out_dir;
    }
    for (const auto& [key, value] : parsed.values) {
      fpdyn::ApplyKeyValue(config, key, value);
    }
    if (parsed.fault_inject) config.fault_inject = true;

    fpdyn::CommandOutcome out;
    if (run->parsed()) {
      out = fpdyn::CmdRun(config);
    } else if (table->parsed()) {
      out = fpdyn::CmdTable(config);
    } else {
      out = fpdyn::CmdVerify(config);
    }
    std::cout << out.text;
    for (const std::string& path : out.written) std::cout << "wrote " << path << "\n";
    return out.exit_code;
  } catch (const fpdyn::UsageError& e) {
    std::cerr << "usage error [" << e.field() << "]: " << e.what() << "\n";
    return fpdyn::kExitUsage;
  } catch (const fpdyn::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return fpdyn::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fpdyn::kExitError;
  }
}
