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

#ifndef FPDYN_GAME_H_
#define FPDYN_GAME_H_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpdyn/tiebreak.h"

namespace fpdyn {

// Payoff matrix of a two-player zero-sum game. Player 1 picks rows and
// maximizes x1' A x2; player 2 picks columns and minimizes it.
class GameMatrix {
 public:
  GameMatrix(int rows, int cols, std::vector<double> row_major);
  static GameMatrix FromRows(
      std::initializer_list<std::initializer_list<double>> rows);
  static GameMatrix FromRows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int i, int j) const { return a_[i * cols_ + j]; }
  std::span<const double> Row(int i) const {
    return {a_.data() + static_cast<std::size_t>(i) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  std::span<const double> Column(int j) const {
    return {at_.data() + static_cast<std::size_t>(j) * rows_,
            static_cast<std::size_t>(rows_)};
  }
  const std::vector<double>& row_major() const { return a_; }

  // Largest absolute entry.
  double a_max() const { return a_max_; }
  // Smallest gap between two entries with distinct values; 0 when all
  // entries coincide.
  double a_gap() const { return a_gap_; }
  // Scale of the argmax tie tolerance; a_max unless overridden. A game
  // derived by shifting payoffs keeps its source's scale so that both
  // call the same near-ties.
  double tie_scale() const { return tie_scale_; }
  void set_tie_scale(double scale) { tie_scale_ = scale; }

  GameMatrix Transposed() const;

  // out = A x2 (length rows) and out = A' x1 (length cols).
  void Apply(std::span<const double> x2, std::span<double> out) const;
  void ApplyTransposed(std::span<const double> x1,
                       std::span<double> out) const;

  std::string ToString() const;

  bool operator==(const GameMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> a_;
  std::vector<double> at_;
  double a_max_;
  double a_gap_;
  double tie_scale_;
};

class MixedStrategy {
 public:
  static constexpr double kNegativeTolerance = 1e-12;
  static constexpr double kSumTolerance = 1e-9;

  explicit MixedStrategy(std::vector<double> probabilities);
  static MixedStrategy Vertex(int n, int i);
  static MixedStrategy Uniform(int n);

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }
  // Index of the pure strategy, if this is a vertex.
  std::optional<int> VertexIndex() const;

 private:
  std::vector<double> p_;
};

// Argmax of `payoff` over pure strategies. Entries within `tolerance` of
// the maximum are tied and resolved by `tiebreak`.
int BestResponse(std::span<const double> payoff, double tolerance,
                 Tiebreaker& tiebreak, std::int64_t step);

// max_i (A x2)_i - min_j (A' x1)_j. Accepts any nonnegative weight vectors,
// not only normalized ones.
double DualityGap(const GameMatrix& a, std::span<const double> x1,
                  std::span<const double> x2);

struct NashEquilibrium {
  MixedStrategy x1;
  MixedStrategy x2;
};

// Interior equilibrium of a 2x2 game in closed form; throws NashError.
NashEquilibrium Nash2x2(const GameMatrix& a);

double Determinant2x2(const GameMatrix& a);

struct RhoParams {
  double rho1;
  double rho2;
};

// (d - c) / (a - b) and (d - b) / (a - c) for A = [[a, b], [c, d]].
RhoParams ComputeRho(const GameMatrix& a);

// Empty when A is in normal form: 2x2, det A ~ 0 and a, d > max{0, b, c}.
// Otherwise a description of the first failed condition.
std::optional<std::string> Assumption41Failure(const GameMatrix& a);
inline bool SatisfiesAssumption41(const GameMatrix& a) {
  return !Assumption41Failure(a).has_value();
}

}  // namespace fpdyn

#endif  // FPDYN_GAME_H_
