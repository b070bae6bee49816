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

#include "fpdyn/trajectory.h"

#include <algorithm>
#include <cctype>
#include <string>

#include "fpdyn/error.h"

namespace fpdyn {

const char* AlgorithmName(Algorithm algo) {
  switch (algo) {
    case Algorithm::kFP:
      return "FP";
    case Algorithm::kOFP:
      return "OFP";
    case Algorithm::kAFP:
      return "AFP";
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (s == "FP") return Algorithm::kFP;
  if (s == "OFP") return Algorithm::kOFP;
  if (s == "AFP") return Algorithm::kAFP;
  return std::nullopt;
}

PlayMode ModeOf(Algorithm algo) {
  return algo == Algorithm::kAFP ? PlayMode::kAlternating
                                 : PlayMode::kSimultaneous;
}

TrajectoryRecord::TrajectoryRecord(Algorithm algo, int rows, int cols,
                                   std::int64_t first_step,
                                   MixedStrategy x1_init,
                                   std::optional<MixedStrategy> x2_init)
    : algo_(algo),
      rows_(rows),
      cols_(cols),
      first_(first_step),
      x1_init_(std::move(x1_init)),
      x2_init_(std::move(x2_init)) {}

void TrajectoryRecord::Append(int vertex1, int vertex2,
                              std::span<const double> y1,
                              std::span<const double> y2) {
  if (finished_) throw TrajectoryError("append to a finished trajectory");
  if (y1.size() != static_cast<std::size_t>(rows_) ||
      y2.size() != static_cast<std::size_t>(cols_)) {
    throw DimensionError("dual vector size mismatch in trajectory");
  }
  v1_.push_back(vertex1);
  v2_.push_back(vertex2);
  y_.insert(y_.end(), y1.begin(), y1.end());
  y_.insert(y_.end(), y2.begin(), y2.end());
  info_.emplace_back();
}

void TrajectoryRecord::Finish(std::span<const double> y1,
                              std::span<const double> y2) {
  if (finished_) throw TrajectoryError("trajectory already finished");
  y_.insert(y_.end(), y1.begin(), y1.end());
  y_.insert(y_.end(), y2.begin(), y2.end());
  finished_ = true;
}

std::size_t TrajectoryRecord::Index(std::int64_t t) const {
  if (t < first_ || t > last_step()) {
    throw TrajectoryError("step " + std::to_string(t) +
                          " outside recorded range [" +
                          std::to_string(first_) + ", " +
                          std::to_string(last_step()) + "]");
  }
  return static_cast<std::size_t>(t - first_);
}

int TrajectoryRecord::Vertex(Player p, std::int64_t t) const {
  const std::size_t k = Index(t);
  return p == Player::kOne ? v1_[k] : v2_[k];
}

std::vector<double> TrajectoryRecord::Strategy(Player p,
                                               std::int64_t t) const {
  const int n = p == Player::kOne ? rows_ : cols_;
  const int v = Vertex(p, t);
  if (v >= 0) {
    std::vector<double> x(n, 0.0);
    x[v] = 1.0;
    return x;
  }
  if (v == kAbsent) return std::vector<double>(n, 0.0);
  const MixedStrategy& init =
      p == Player::kOne ? x1_init_ : x2_init_.value();
  return {init.values().begin(), init.values().end()};
}

std::span<const double> TrajectoryRecord::Dual(Player p,
                                               std::int64_t t) const {
  const std::int64_t rows_stored =
      static_cast<std::int64_t>(y_.size()) / (rows_ + cols_);
  if (t < first_ || t - first_ >= rows_stored) {
    throw TrajectoryError("dual vector for step " + std::to_string(t) +
                          " not recorded");
  }
  const std::size_t base =
      static_cast<std::size_t>(t - first_) * (rows_ + cols_);
  if (p == Player::kOne) return {y_.data() + base, static_cast<std::size_t>(rows_)};
  return {y_.data() + base + rows_, static_cast<std::size_t>(cols_)};
}

}  // namespace fpdyn
