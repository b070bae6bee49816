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

#include "fpdyn/game.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "fpdyn/error.h"
#include "fpdyn/kernels.h"

namespace fpdyn {
namespace {

double MaxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double DistinctGap(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] != v[i - 1]) gap = std::min(gap, v[i] - v[i - 1]);
  }
  return std::isinf(gap) ? 0.0 : gap;
}

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

GameMatrix::GameMatrix(int rows, int cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), a_(std::move(row_major)) {
  if (rows < 1 || cols < 1) {
    throw DimensionError("game matrix needs at least one row and column");
  }
  if (a_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionError("game matrix has " + std::to_string(a_.size()) +
                         " entries, expected " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  for (double x : a_) {
    if (!std::isfinite(x)) throw DimensionError("non-finite payoff entry");
  }
  at_.resize(a_.size());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) at_[j * rows + i] = a_[i * cols + j];
  }
  a_max_ = MaxAbs(a_);
  a_gap_ = DistinctGap(a_);
  tie_scale_ = a_max_;
}

GameMatrix GameMatrix::FromRows(
    std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return FromRows(v);
}

GameMatrix GameMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DimensionError("game matrix has no rows");
  const std::size_t cols = rows[0].size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("ragged payoff rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return GameMatrix(static_cast<int>(rows.size()), static_cast<int>(cols),
                    std::move(flat));
}

GameMatrix GameMatrix::Transposed() const {
  GameMatrix t(cols_, rows_, at_);
  t.tie_scale_ = tie_scale_;
  return t;
}

void GameMatrix::Apply(std::span<const double> x2,
                       std::span<double> out) const {
  if (x2.size() != static_cast<std::size_t>(cols_) ||
      out.size() != static_cast<std::size_t>(rows_)) {
    throw DimensionError("A x2: dimension mismatch");
  }
  const kernels::KernelTable& k = kernels::Active();
  std::fill(out.begin(), out.end(), 0.0);
  for (int j = 0; j < cols_; ++j) {
    if (x2[j] != 0.0) k.axpy(out.data(), x2[j], Column(j).data(), rows_);
  }
}

void GameMatrix::ApplyTransposed(std::span<const double> x1,
                                 std::span<double> out) const {
  if (x1.size() != static_cast<std::size_t>(rows_) ||
      out.size() != static_cast<std::size_t>(cols_)) {
    throw DimensionError("A' x1: dimension mismatch");
  }
  const kernels::KernelTable& k = kernels::Active();
  std::fill(out.begin(), out.end(), 0.0);
  for (int i = 0; i < rows_; ++i) {
    if (x1[i] != 0.0) k.axpy(out.data(), x1[i], Row(i).data(), cols_);
  }
}

std::string GameMatrix::ToString() const {
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    s += i == 0 ? "[" : ", [";
    for (int j = 0; j < cols_; ++j) {
      if (j > 0) s += ", ";
      s += Num(at(i, j));
    }
    s += "]";
  }
  return s + "]";
}

MixedStrategy::MixedStrategy(std::vector<double> probabilities)
    : p_(std::move(probabilities)) {
  if (p_.empty()) throw DimensionError("empty mixed strategy");
  double sum = 0.0;
  for (double& x : p_) {
    if (!std::isfinite(x) || x < -kNegativeTolerance) {
      throw InvalidStrategyError("mixed strategy has a negative entry");
    }
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InvalidStrategyError("mixed strategy sums to " + Num(sum));
  }
}

MixedStrategy MixedStrategy::Vertex(int n, int i) {
  if (i < 0 || i >= n) throw DimensionError("vertex index out of range");
  std::vector<double> p(n, 0.0);
  p[i] = 1.0;
  return MixedStrategy(std::move(p));
}

MixedStrategy MixedStrategy::Uniform(int n) {
  if (n < 1) throw DimensionError("uniform strategy needs n >= 1");
  return MixedStrategy(std::vector<double>(n, 1.0 / n));
}

std::optional<int> MixedStrategy::VertexIndex() const {
  int found = -1;
  for (int i = 0; i < size(); ++i) {
    if (p_[i] == 1.0) {
      found = i;
    } else if (p_[i] != 0.0) {
      return std::nullopt;
    }
  }
  if (found < 0) return std::nullopt;
  return found;
}

int BestResponse(std::span<const double> payoff, double tolerance,
                 Tiebreaker& tiebreak, std::int64_t step) {
  if (payoff.empty()) throw DimensionError("best response over empty set");
  thread_local std::vector<int> tied;
  tied.resize(payoff.size());
  const kernels::KernelTable& k = kernels::Active();
  const double top = k.max(payoff.data(), payoff.size());
  const std::size_t count = k.indices_at_least(payoff.data(), top - tolerance,
                                               payoff.size(), tied.data());
  return tiebreak.Choose(std::span<const int>(tied.data(), count), step);
}

double DualityGap(const GameMatrix& a, std::span<const double> x1,
                  std::span<const double> x2) {
  std::vector<double> ax2(a.rows());
  std::vector<double> atx1(a.cols());
  a.Apply(x2, ax2);
  a.ApplyTransposed(x1, atx1);
  return *std::max_element(ax2.begin(), ax2.end()) -
         *std::min_element(atx1.begin(), atx1.end());
}

double Determinant2x2(const GameMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw DimensionError("expected 2x2");
  return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
}

NashEquilibrium Nash2x2(const GameMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("expected 2x2");
  const double a = m.at(0, 0), b = m.at(0, 1), c = m.at(1, 0), d = m.at(1, 1);
  const double den = a + d - b - c;
  if (std::abs(den) <= 1e-12 * std::max(1.0, m.a_max())) {
    throw NashError(NashError::Reason::kDegenerateDenominator,
                    "a + d - b - c vanishes for " + m.ToString());
  }
  const double p[4] = {(d - c) / den, (a - b) / den, (d - b) / den,
                       (a - c) / den};
  for (double v : p) {
    if (!(v > 0.0 && v < 1.0)) {
      throw NashError(NashError::Reason::kNotInterior,
                      "no interior equilibrium for " + m.ToString());
    }
  }
  return NashEquilibrium{MixedStrategy({p[0], p[1]}),
                         MixedStrategy({p[2], p[3]})};
}

RhoParams ComputeRho(const GameMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("expected 2x2");
  const double a = m.at(0, 0), b = m.at(0, 1), c = m.at(1, 0), d = m.at(1, 1);
  if (a == b || a == c) {
    throw AssumptionError("rho undefined: a equals b or c in " + m.ToString());
  }
  const RhoParams r{(d - c) / (a - b), (d - b) / (a - c)};
  if (!(r.rho1 > 0.0 && r.rho2 > 0.0)) {
    throw AssumptionError("rho not positive for " + m.ToString());
  }
  return r;
}

std::optional<std::string> Assumption41Failure(const GameMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) return "not a 2x2 matrix";
  const double a = m.at(0, 0), b = m.at(0, 1), c = m.at(1, 0), d = m.at(1, 1);
  const double scale = std::max(1.0, m.a_max());
  if (std::abs(Determinant2x2(m)) > 1e-9 * m.a_max() * m.a_max()) {
    return "det A = " + Num(Determinant2x2(m)) + " is not 0";
  }
  const double floor = std::max({0.0, b, c});
  if (!(a - floor > 1e-12 * scale)) return "a does not exceed max{0, b, c}";
  if (!(d - floor > 1e-12 * scale)) return "d does not exceed max{0, b, c}";
  return std::nullopt;
}

}  // namespace fpdyn
