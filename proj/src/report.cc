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

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "fpdyn/experiment.h"

namespace fpdyn {

std::string FormatReal(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "t,reg_total,reg1,reg2,psi,region,violation_flags\n";
  for (const TraceRow& r : rows) {
    out << r.t << ',' << FormatReal(r.reg_total) << ',' << FormatReal(r.reg1)
        << ',' << FormatReal(r.reg2) << ',' << FormatReal(r.psi) << ','
        << r.region << ',' << r.flags << '\n';
  }
}

std::string FormatTextTable(const std::vector<CellSummary>& cells) {
  std::ostringstream o;
  o << std::left << std::setw(22) << "game" << std::setw(6) << "dim"
    << std::setw(6) << "algo" << std::setw(8) << "inits" << "regret\n";
  for (const CellSummary& c : cells) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f +- %.1f", c.mean, c.std);
    o << std::left << std::setw(22) << FamilyName(c.family) << std::setw(6)
      << c.dim << std::setw(6) << AlgorithmName(c.algo) << std::setw(8)
      << c.final_regrets.size() << buf << '\n';
  }
  return o.str();
}

void WriteTableCsv(std::ostream& out, const std::vector<CellSummary>& cells) {
  out << "game,dim,algo,inits,mean,std,violations\n";
  for (const CellSummary& c : cells) {
    out << FamilyName(c.family) << ',' << c.dim << ',' << AlgorithmName(c.algo)
        << ',' << c.final_regrets.size() << ',' << FormatReal(c.mean) << ','
        << FormatReal(c.std) << ',' << c.log.total() << '\n';
  }
}

nlohmann::json CellToJson(const CellSummary& c) {
  nlohmann::json j;
  j["game"] = FamilyName(c.family);
  j["dim"] = c.dim;
  j["algo"] = AlgorithmName(c.algo);
  j["mean_regret"] = c.mean;
  j["std_regret"] = c.std;
  j["final_regrets"] = c.final_regrets;
  j["violations"] = c.log.ToJson();
  return j;
}

std::string WriteOutput(const std::string& out_dir,
                        const std::string& file_name,
                        const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + out_dir +
                  "': " + ec.message());
  }
  const std::string path = (fs::path(out_dir) / file_name).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing: " +
                  std::strerror(errno));
  }
  out << content;
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
  return path;
}

}  // namespace fpdyn
