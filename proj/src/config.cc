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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fpdyn/error.h"
#include "fpdyn/experiment.h"

namespace fpdyn {
namespace {

std::string Trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string Join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i];
  }
  return out;
}

std::int64_t ParseInt(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError(key, key + ": expected an integer, got '" + value + "'");
  }
}

std::uint64_t ParseU64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
    const unsigned long long v = std::stoull(value, &used, 0);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError(key,
                     key + ": expected a nonnegative integer, got '" + value + "'");
  }
}

// Accepts decimals and simple fractions such as 2/3.
double ParseReal(const std::string& key, const std::string& value) {
  const auto parse = [&](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  };
  try {
    const std::size_t slash = value.find('/');
    if (slash == std::string::npos) return parse(Trim(value));
    const double num = parse(Trim(value.substr(0, slash)));
    const double den = parse(Trim(value.substr(slash + 1)));
    if (den == 0.0) throw std::invalid_argument(value);
    return num / den;
  } catch (const std::exception&) {
    throw UsageError(key, key + ": expected a real number, got '" + value + "'");
  }
}

bool ParseBool(const std::string& key, const std::string& value) {
  const std::string v = Lower(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw UsageError(key, key + ": expected true or false, got '" + value + "'");
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const char* InitModeName(InitMode m) {
  return m == InitMode::kFixed ? "fixed" : "random";
}

}  // namespace

bool ExperimentConfig::WantsFormat(const std::string& f) const {
  for (const std::string& x : formats) {
    if (x == f) return true;
  }
  return false;
}

bool ExperimentConfig::WantsCheck(const std::string& c) const {
  for (const std::string& x : checks) {
    if (x == c) return true;
  }
  return false;
}

void ApplyKeyValue(ExperimentConfig& c, const std::string& raw_key,
                   const std::string& raw_value) {
  std::string key = Lower(Trim(raw_key));
  for (char& ch : key) {
    if (ch == '-') ch = '_';
  }
  const std::string value = Trim(raw_value);
  if (key == "game") {
    c.families.clear();
    for (const std::string& item : SplitList(value)) {
      const auto f = ParseFamily(Lower(item));
      if (!f) throw UsageError(key, "game: unknown family '" + item + "'");
      c.families.push_back(*f);
    }
    if (c.families.empty()) throw UsageError(key, "game: empty list");
  } else if (key == "dim") {
    c.dims.clear();
    for (const std::string& item : SplitList(value)) {
      const std::int64_t d = ParseInt(key, item);
      if (d < 1 || d > 100000) throw UsageError(key, "dim: out of range");
      c.dims.push_back(static_cast<int>(d));
    }
    if (c.dims.empty()) throw UsageError(key, "dim: empty list");
  } else if (key == "rows") {
    const std::int64_t r = ParseInt(key, value);
    if (r < 0 || r > 100000) throw UsageError(key, "rows: out of range");
    c.rows = static_cast<int>(r);
  } else if (key == "scale") {
    c.scale = ParseReal(key, value);
    if (!std::isfinite(c.scale)) throw UsageError(key, "scale: not finite");
  } else if (key == "game_seed") {
    c.game_seed = ParseU64(key, value);
  } else if (key == "algo") {
    c.algos.clear();
    for (const std::string& item : SplitList(value)) {
      const auto a = ParseAlgorithm(item);
      if (!a) throw UsageError(key, "algo: unknown algorithm '" + item + "'");
      c.algos.push_back(*a);
    }
    if (c.algos.empty()) throw UsageError(key, "algo: empty list");
  } else if (key == "tiebreak") {
    const std::string v = Lower(value);
    if (v == "lex" || v == "lexicographic") {
      c.tiebreak = "lex";
    } else if (v == "random" || v == "rand") {
      c.tiebreak = "random";
    } else if (v == "last" || v == "adversarial") {
      c.tiebreak = "last";
    } else {
      throw UsageError(key, "tiebreak: expected lex, random or last, got '" +
                                value + "'");
    }
  } else if (key == "seed") {
    c.seed = ParseU64(key, value);
  } else if (key == "inits") {
    const std::int64_t n = ParseInt(key, value);
    if (n < 1 || n > 10000000) throw UsageError(key, "inits: must be >= 1");
    c.inits = static_cast<int>(n);
  } else if (key == "steps") {
    const std::int64_t t = ParseInt(key, value);
    if (t < 1) throw UsageError(key, "steps: must be >= 1, got " + value);
    c.steps = t;
  } else if (key == "init_mode") {
    const std::string v = Lower(value);
    if (v == "fixed") {
      c.init_mode = InitMode::kFixed;
    } else if (v == "random") {
      c.init_mode = InitMode::kRandom;
    } else {
      throw UsageError(key, "init_mode: expected fixed or random");
    }
  } else if (key == "x1") {
    c.x1 = value;
  } else if (key == "x2") {
    c.x2 = value;
  } else if (key == "p") {
    c.p = ParseReal(key, value);
    if (!(*c.p > 0.0 && *c.p < 1.0)) throw UsageError(key, "p: must lie in (0, 1)");
  } else if (key == "checks") {
    c.checks.clear();
    for (const std::string& item : SplitList(Lower(value))) {
      if (item == "none") continue;
      if (item != "energy" && item != "ofp2x2" && item != "afp") {
        throw UsageError(key, "checks: unknown suite '" + item + "'");
      }
      c.checks.push_back(item);
    }
  } else if (key == "out_dir") {
    if (value.empty()) throw UsageError(key, "out_dir: empty path");
    c.out_dir = value;
  } else if (key == "format") {
    c.formats.clear();
    for (const std::string& item : SplitList(Lower(value))) {
      if (item != "csv" && item != "json") {
        throw UsageError(key, "format: expected csv or json, got '" + item + "'");
      }
      c.formats.push_back(item);
    }
  } else if (key == "name") {
    if (value.empty() || value.find('/') != std::string::npos) {
      throw UsageError(key, "name: must be a plain file stem");
    }
    c.name = value;
  } else if (key == "threads") {
    const std::int64_t n = ParseInt(key, value);
    if (n < 1 || n > 1024) throw UsageError(key, "threads: must be in [1, 1024]");
    c.threads = static_cast<int>(n);
  } else if (key == "trace_stride") {
    const std::int64_t n = ParseInt(key, value);
    if (n < 1) throw UsageError(key, "trace_stride: must be >= 1");
    c.trace_stride = n;
  } else if (key == "fault_inject") {
    c.fault_inject = ParseBool(key, value);
  } else {
    throw UsageError(key, "unknown config key '" + raw_key + "'");
  }
}

ExperimentConfig ParseConfigText(const std::string& text,
                                 const std::string& origin) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config", origin + ":" + std::to_string(line_no) +
                                     ": expected key = value");
    }
    ApplyKeyValue(c, line.substr(0, eq), line.substr(eq + 1));
  }
  return c;
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config", "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfigText(ss.str(), path);
}

void Validate(const ExperimentConfig& c, Command command) {
  if (c.steps < 1) throw UsageError("steps", "steps: must be at least 1");
  if (c.inits < 1) throw UsageError("inits", "inits: must be at least 1");
  if (c.threads < 1) throw UsageError("threads", "threads: must be at least 1");
  if (c.trace_stride < 1) {
    throw UsageError("trace_stride", "trace_stride: must be at least 1");
  }
  if (command != Command::kTable) {
    if (c.families.size() != 1) throw UsageError("game", "game: expected one family");
    if (c.dims.size() != 1) throw UsageError("dim", "dim: expected one dimension");
    if (c.algos.size() != 1) throw UsageError("algo", "algo: expected one algorithm");
  }
  for (Family f : c.families) {
    for (int d : c.dims) {
      const bool two_by_two = f == Family::kMatchingPennies ||
                              f == Family::kAssumption41Random ||
                              f == Family::kRandomInterior2x2;
      if (two_by_two && d != 2) {
        throw UsageError("dim", std::string("dim: ") + FamilyName(f) +
                                    " is 2x2, got dim " + std::to_string(d));
      }
      if (f == Family::kRps && d < 3) throw UsageError("dim", "dim: rps needs dim >= 3");
      if (f == Family::kIdentity && d < 2) {
        throw UsageError("dim", "dim: identity needs dim >= 2");
      }
    }
  }
  for (Algorithm a : c.algos) {
    if (a == Algorithm::kAFP && c.steps % 2 != 0) {
      throw UsageError("steps", "steps: AFP needs an even horizon");
    }
  }
  const bool has_afp_algo =
      std::find(c.algos.begin(), c.algos.end(), Algorithm::kAFP) != c.algos.end();
  if (c.WantsCheck("ofp2x2")) {
    for (Family f : c.families) {
      if (f != Family::kMatchingPennies && f != Family::kAssumption41Random) {
        throw UsageError("checks", std::string("checks: ofp2x2 needs a game in "
                                               "normal form, not ") +
                                       FamilyName(f));
      }
    }
    for (Algorithm a : c.algos) {
      if (a != Algorithm::kOFP) {
        throw UsageError("checks", "checks: ofp2x2 applies to algo ofp only");
      }
    }
  }
  if (c.WantsCheck("afp")) {
    for (Family f : c.families) {
      if (f != Family::kMatchingPennies) {
        throw UsageError("checks", "checks: afp applies to matching_pennies only");
      }
    }
    if (!has_afp_algo || c.algos.size() != 1) {
      throw UsageError("checks", "checks: afp applies to algo afp only");
    }
  }
  if (c.fault_inject && c.checks.empty()) {
    throw UsageError("fault_inject", "fault_inject: no check suite selected");
  }
}

nlohmann::json ExperimentConfig::ToJson() const {
  nlohmann::json j;
  std::vector<std::string> fam, alg;
  for (Family f : families) fam.push_back(FamilyName(f));
  for (Algorithm a : algos) alg.push_back(AlgorithmName(a));
  j["game"] = fam;
  j["dim"] = dims;
  j["rows"] = rows;
  j["scale"] = scale;
  j["game_seed"] = BaseGameSeed();
  j["algo"] = alg;
  j["tiebreak"] = tiebreak;
  j["seed"] = seed;
  j["inits"] = inits;
  j["steps"] = steps;
  j["init_mode"] = InitModeName(init_mode);
  j["x1"] = x1;
  j["x2"] = x2;
  if (p) {
    j["p"] = *p;
  } else {
    j["p"] = nullptr;
  }
  j["checks"] = checks;
  j["format"] = formats;
  j["name"] = name;
  j["threads"] = threads;
  j["trace_stride"] = trace_stride;
  j["fault_inject"] = fault_inject;
  return j;
}

std::string ExperimentConfig::ToKeyValue() const {
  std::vector<std::string> fam, alg, dim;
  for (Family f : families) fam.push_back(FamilyName(f));
  for (Algorithm a : algos) alg.push_back(AlgorithmName(a));
  for (int d : dims) dim.push_back(std::to_string(d));
  std::ostringstream o;
  o << "game = " << Join(fam) << "\n"
    << "dim = " << Join(dim) << "\n"
    << "rows = " << rows << "\n"
    << "scale = " << FormatDouble(scale) << "\n"
    << "game_seed = " << BaseGameSeed() << "\n"
    << "algo = " << Join(alg) << "\n"
    << "tiebreak = " << tiebreak << "\n"
    << "seed = " << seed << "\n"
    << "inits = " << inits << "\n"
    << "steps = " << steps << "\n"
    << "init_mode = " << InitModeName(init_mode) << "\n"
    << "x1 = " << x1 << "\n"
    << "x2 = " << x2 << "\n";
  if (p) o << "p = " << FormatDouble(*p) << "\n";
  o << "checks = " << (checks.empty() ? "none" : Join(checks)) << "\n"
    << "out_dir = " << out_dir << "\n"
    << "format = " << Join(formats) << "\n"
    << "name = " << name << "\n"
    << "threads = " << threads << "\n"
    << "trace_stride = " << trace_stride << "\n"
    << "fault_inject = " << (fault_inject ? "true" : "false") << "\n";
  return o.str();
}

MixedStrategy ParseStrategy(const std::string& text, int n,
                            const std::string& field) {
  const std::string t = Trim(text);
  if (!t.empty() && (t[0] == 'e' || t[0] == 'E')) {
    const std::int64_t i = ParseInt(field, t.substr(1));
    if (i < 1 || i > n) {
      throw UsageError(field, field + ": vertex " + t + " outside 1.." +
                                  std::to_string(n));
    }
    return MixedStrategy::Vertex(n, static_cast<int>(i - 1));
  }
  std::vector<double> v;
  for (const std::string& item : SplitList(t)) v.push_back(ParseReal(field, item));
  if (static_cast<int>(v.size()) != n) {
    throw UsageError(field, field + ": expected " + std::to_string(n) +
                                " entries, got " + std::to_string(v.size()));
  }
  try {
    return MixedStrategy(std::move(v));
  } catch (const InvalidStrategyError& e) {
    throw UsageError(field, field + ": " + e.what());
  }
}

}  // namespace fpdyn
