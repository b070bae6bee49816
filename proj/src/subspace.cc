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
#include <limits>
#include <string>

#include "fpdyn/dynamics.h"
#include "fpdyn/error.h"

namespace fpdyn {
namespace {

double Dot(const Vec2& u, const Vec2& v) { return u[0] * v[0] + u[1] * v[1]; }

int Sign(double x, double dead_zone) {
  if (std::abs(x) <= dead_zone) return 0;
  return x > 0.0 ? 1 : -1;
}

}  // namespace

const char* RegionName(Region r) {
  switch (r) {
    case Region::kP1:
      return "P1";
    case Region::kP2:
      return "P2";
    case Region::kP3:
      return "P3";
    case Region::kP4:
      return "P4";
    case Region::kP12:
      return "P12";
    case Region::kP23:
      return "P23";
    case Region::kP34:
      return "P34";
    case Region::kP41:
      return "P41";
    case Region::kOrigin:
      return "origin";
  }
  return "unknown";
}

int OpenIndex(Region r) {
  const int v = static_cast<int>(r);
  return v <= 3 ? v + 1 : 0;
}

int BoundaryIndex(Region r) {
  const int v = static_cast<int>(r);
  return v >= 4 && v <= 7 ? v - 3 : 0;
}

int HatIndex(Region r) {
  const int open = OpenIndex(r);
  return open != 0 ? open : BoundaryIndex(r);
}

std::pair<int, int> JointToPlayers(int w) {
  switch (Wrap(w)) {
    case 1:
      return {1, 1};
    case 2:
      return {1, 0};
    case 3:
      return {0, 0};
    default:
      return {0, 1};
  }
}

int PlayersToJoint(int row, int col) {
  if (row == 1) return col == 1 ? 1 : 2;
  return col == 0 ? 3 : 4;
}

Region Classify(const Vec2& z, double dead_zone) {
  const int s1 = Sign(z[0], dead_zone);
  const int s2 = Sign(z[1], dead_zone);
  if (s1 < 0 && s2 < 0) return Region::kP1;
  if (s1 < 0 && s2 > 0) return Region::kP2;
  if (s1 > 0 && s2 > 0) return Region::kP3;
  if (s1 > 0 && s2 < 0) return Region::kP4;
  if (s1 < 0) return Region::kP12;
  if (s2 > 0) return Region::kP23;
  if (s1 > 0) return Region::kP34;
  if (s2 < 0) return Region::kP41;
  return Region::kOrigin;
}

std::vector<int> QCandidates(Region r) {
  if (const int i = OpenIndex(r)) return {i};
  if (const int i = BoundaryIndex(r)) {
    return i == 4 ? std::vector<int>{1, 4} : std::vector<int>{i, i + 1};
  }
  return {1};
}

SubspaceParams SubspaceParams::FromGame(const GameMatrix& m) {
  if (auto failure = Assumption41Failure(m)) {
    throw AssumptionError("subspace reduction needs normal form: " + *failure);
  }
  SubspaceParams p;
  p.a = m.at(0, 0);
  p.b = m.at(0, 1);
  p.c = m.at(1, 0);
  p.d = m.at(1, 1);
  const RhoParams rho = ComputeRho(m);
  p.rho1 = rho.rho1;
  p.rho2 = rho.rho2;
  p.a_max = m.a_max();
  p.tie_scale = m.tie_scale();
  p.a_gap = m.a_gap();
  // Column w is the change in (y11, y21) when joint vertex e_w is played:
  // (A x2)_1 and -(A' x1)_1.
  for (int w = 1; w <= 4; ++w) {
    const auto [row, col] = JointToPlayers(w);
    p.S[0][w - 1] = m.at(0, col);
    p.S[1][w - 1] = -m.at(row, 0);
    // <y1, x1> + <y2, x2> with y1 = (z1, -rho1 z1), y2 = (z2, -rho2 z2).
    p.M[0][w - 1] = row == 0 ? 1.0 : -p.rho1;
    p.M[1][w - 1] = col == 0 ? 1.0 : -p.rho2;
  }
  p.B = ThresholdB(p.a_max, p.rho1, p.rho2);
  p.B_prime = CrossingBound(p.a_max, p.rho1, p.rho2);
  p.global_bound = GlobalEnergyBound(p.a_max, p.a_gap);
  return p;
}

std::array<std::array<double, 4>, 4> SubspaceParams::StM() const {
  std::array<std::array<double, 4>, 4> out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out[i][j] = S[0][i] * M[0][j] + S[1][i] * M[1][j];
    }
  }
  return out;
}

double ThresholdB(double a_max, double rho1, double rho2) {
  if (!(a_max > 0.0 && rho1 > 0.0 && rho2 > 0.0)) {
    throw Error("threshold needs positive a_max, rho1, rho2");
  }
  return 6.0 * a_max * std::max({1.0, rho1, rho2});
}

double CrossingBound(double a_max, double rho1, double rho2) {
  const double s = 1.0 + rho1 + rho2;
  return 8.0 * a_max * s * s;
}

double GlobalEnergyBound(double a_max, double a_gap) {
  if (a_gap <= 0.0) return std::numeric_limits<double>::infinity();
  const double s = 1.0 + 2.0 * a_max / a_gap;
  return 8.0 * a_max * s * s;
}

std::array<std::array<double, 4>, 4> StMClosedForm(double a, double b,
                                                   double c, double d) {
  return {{{0.0, d - c, b - c, b - d},
           {c - d, 0.0, a - c, a - d},
           {c - b, c - a, 0.0, a - b},
           {d - b, d - a, b - a, 0.0}}};
}

Vec2 Project(std::span<const double> y1, std::span<const double> y2) {
  if (y1.empty() || y2.empty()) throw DimensionError("project: empty vector");
  return {y1[0], y2[0]};
}

std::pair<std::vector<double>, std::vector<double>> Lift(
    const Vec2& z, const SubspaceParams& p) {
  return {{z[0], -p.rho1 * z[0]}, {z[1], -p.rho2 * z[1]}};
}

int QMap(const Vec2& z, Tiebreaker& tiebreak, std::int64_t step,
         double dead_zone) {
  const std::vector<int> options = QCandidates(Classify(z, dead_zone));
  return tiebreak.Choose(options, step);
}

double Psi(const Vec2& z, const SubspaceParams& p) {
  const int w = QCandidates(Classify(z))[0];
  return Dot(z, p.MColumn(w));
}

double Psi(const Vec2& z, const SubspaceParams& p, Tiebreaker& tiebreak,
           std::int64_t step) {
  return Dot(z, p.MColumn(QMap(z, tiebreak, step)));
}

double PsiPiecewise(const Vec2& z, const SubspaceParams& p) {
  const double first = z[0] >= 0.0 ? z[0] : -p.rho1 * z[0];
  const double second = z[1] >= 0.0 ? z[1] : -p.rho2 * z[1];
  return first + second;
}

SubspaceStep StepSubspace(const Vec2& z_prev, const Vec2& z,
                          const SubspaceParams& p, Tiebreaker& tiebreak,
                          std::int64_t step, double alpha, double dead_zone) {
  SubspaceStep s;
  s.z_tilde = {z[0] + alpha * (z[0] - z_prev[0]),
               z[1] + alpha * (z[1] - z_prev[1])};
  s.w = QMap(s.z_tilde, tiebreak, step, dead_zone);
  const Vec2 col = p.SColumn(s.w);
  s.z_next = {z[0] + col[0], z[1] + col[1]};
  return s;
}

std::vector<Vec2> RunSubspace(const Vec2& z0, const Vec2& z1,
                              const SubspaceParams& p, Tiebreaker& tiebreak,
                              std::int64_t steps, double alpha) {
  std::vector<Vec2> z{z0, z1};
  z.reserve(static_cast<std::size_t>(steps) + 2);
  for (std::int64_t t = 1; t <= steps; ++t) {
    z.push_back(StepSubspace(z[t - 1], z[t], p, tiebreak, t, alpha,
                             RegionDeadZone(p.a_max, t + 1))
                    .z_next);
  }
  return z;
}

std::vector<Vec2> ProjectTrajectory(const TrajectoryRecord& traj) {
  std::vector<Vec2> z;
  z.reserve(static_cast<std::size_t>(traj.size()) + 1);
  for (std::int64_t t = traj.first_step(); t <= traj.last_step() + 1; ++t) {
    z.push_back(Project(traj.Dual(Player::kOne, t), traj.Dual(Player::kTwo, t)));
  }
  return z;
}

ReplayReport ReplaySubspace(const TrajectoryRecord& traj,
                            const SubspaceParams& p) {
  if (traj.mode() != PlayMode::kSimultaneous || traj.rows() != 2 ||
      traj.cols() != 2) {
    throw TrajectoryError("replay needs a simultaneous 2x2 trajectory");
  }
  const double alpha = OptimismWeight(traj.algorithm());
  const std::vector<Vec2> full = ProjectTrajectory(traj);
  const std::int64_t steps = traj.last_step();
  ReplayReport r;
  r.z = {full[0], full[1]};
  for (std::int64_t t = 1; t <= steps; ++t) {
    const Vec2& zc = r.z[t];
    const Vec2& zp = r.z[t - 1];
    const Vec2 zt = {zc[0] + alpha * (zc[0] - zp[0]),
                     zc[1] + alpha * (zc[1] - zp[1])};
    // The full dynamics calls payoffs tied within TieTolerance; the payoff
    // gap of player i is (1 + rho_i) |z~_i|, so snap coordinates that close.
    const double tol = TieTolerance(p.tie_scale, t);
    const Vec2 snapped = {
        (1.0 + p.rho1) * std::abs(zt[0]) <= tol ? 0.0 : zt[0],
        (1.0 + p.rho2) * std::abs(zt[1]) <= tol ? 0.0 : zt[1]};
    const Region region = Classify(snapped);
    const int w = PlayersToJoint(traj.Vertex(Player::kOne, t),
                                 traj.Vertex(Player::kTwo, t));
    if (region == Region::kOrigin) {
      if (w != 1) ++r.origin_divergences;
    } else {
      const std::vector<int> options = QCandidates(region);
      if (std::find(options.begin(), options.end(), w) == options.end()) {
        if (r.first_mismatch < 0) r.first_mismatch = t;
        ++r.mismatches;
      }
    }
    const Vec2 col = p.SColumn(w);
    r.z.push_back({zc[0] + col[0], zc[1] + col[1]});
    const Vec2& f = full[t + 1];
    const double dev = std::max(std::abs(r.z.back()[0] - f[0]),
                                std::abs(r.z.back()[1] - f[1]));
    r.max_scaled_deviation =
        std::max(r.max_scaled_deviation, dev / static_cast<double>(t + 1));
  }
  return r;
}

std::int64_t CyclingReport::total_violations() const {
  std::int64_t n = 0;
  for (const auto& [kind, count] : counts) n += count;
  return n;
}

CyclingReport CheckCyclingInvariants(const std::vector<Vec2>& z,
                                     const SubspaceParams& p,
                                     std::size_t keep_per_kind) {
  CyclingReport rep;
  rep.flags.assign(z.size(), 0);
  if (z.size() < 3) return rep;
  const std::int64_t steps = static_cast<std::int64_t>(z.size()) - 2;
  rep.steps = steps;
  std::vector<double> psi(z.size());
  for (std::size_t t = 0; t < z.size(); ++t) psi[t] = Psi(z[t], p);
  const double bound_tol = 1e-9 * std::max(1.0, p.a_max);

  auto report = [&](std::int64_t t, const char* kind, std::uint32_t flag,
                    const Vec2& zt, Region rt, Region rn, Region rc) {
    rep.flags[t] |= flag;
    std::int64_t& count = rep.counts[kind];
    ++count;
    if (static_cast<std::size_t>(count) > keep_per_kind) return;
    CyclingViolation v;
    v.t = t;
    v.kind = kind;
    v.z_prev = z[t - 1];
    v.z = z[t];
    v.z_tilde = zt;
    v.z_next = z[t + 1];
    v.psi = psi[t];
    v.psi_next = psi[t + 1];
    v.region = rc;
    v.region_tilde = rt;
    v.region_next = rn;
    rep.violations.push_back(v);
  };

  for (std::size_t t = 0; t < z.size(); ++t) {
    rep.max_psi = std::max(rep.max_psi, psi[t]);
  }
  for (std::int64_t t = 1; t <= steps; ++t) {
    const double dz = RegionDeadZone(p.a_max, t + 1);
    const Vec2 zt = {2.0 * z[t][0] - z[t - 1][0], 2.0 * z[t][1] - z[t - 1][1]};
    const Region rc = Classify(z[t], dz);
    const Region rt = Classify(zt, dz);
    const Region rn = Classify(z[t + 1], dz);
    if (psi[t + 1] > p.global_bound + bound_tol) {
      report(t, "global_bound", kFlagGlobalBound, zt, rt, rn, rc);
    }
    if (psi[t] <= p.B && psi[t + 1] > p.B) {
      ++rep.crossings;
      rep.max_crossing_psi = std::max(rep.max_crossing_psi, psi[t + 1]);
      if (psi[t + 1] > p.B_prime + bound_tol) {
        report(t, "crossing_bound", kFlagCrossingBound, zt, rt, rn, rc);
      }
    }
    if (!(psi[t] > p.B)) continue;
    ++rep.above_threshold;
    const int i = HatIndex(rc);
    const bool case_one = InHat(rt, i) && InHat(rn, i);
    const bool case_two = InOpen(rt, i + 1) && InOpen(rn, i + 1);
    if (!case_one && !case_two) {
      report(t, "cycling_case", kFlagCyclingCase, zt, rt, rn, rc);
    }
    if (psi[t + 1] - psi[t] > 1e-9 * std::max(1.0, psi[t])) {
      report(t, "energy_increase", kFlagEnergyIncrease, zt, rt, rn, rc);
    }
    auto excluded = [i](Region r) {
      return r == Region::kOrigin || InHat(r, i + 2) || OnBoundary(r, i + 1) ||
             InHat(r, i - 1);
    };
    if (excluded(rt) || excluded(rn)) {
      report(t, "exclusion_region", kFlagExclusionRegion, zt, rt, rn, rc);
    }
    if ((InHat(rt, i) && !InHat(rn, i)) ||
        (InOpen(rt, i + 1) && !InOpen(rn, i + 1))) {
      report(t, "implication", kFlagImplication, zt, rt, rn, rc);
    }
  }
  return rep;
}

void Annotate(TrajectoryRecord& traj, const SubspaceParams& p) {
  const std::vector<Vec2> z = ProjectTrajectory(traj);
  for (std::int64_t t = traj.first_step(); t <= traj.last_step(); ++t) {
    const Vec2& zn = z[t + 1 - traj.first_step()];
    StepInfo& info = traj.Info(t);
    info.psi = Psi(zn, p);
    info.region =
        static_cast<std::int8_t>(Classify(zn, RegionDeadZone(p.a_max, t + 1)));
  }
}

}  // namespace fpdyn
