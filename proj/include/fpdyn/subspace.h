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

#ifndef FPDYN_SUBSPACE_H_
#define FPDYN_SUBSPACE_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpdyn/game.h"
#include "fpdyn/tiebreak.h"
#include "fpdyn/trajectory.h"

// Two-dimensional reduction of the dual dynamics on 2x2 games in normal
// form. Along any run y12 = -rho1 * y11 and y22 = -rho2 * y21, so the pair
// z = (y11, y21) carries the whole dual state.
//
// Joint vertices are numbered 1..4 with wraparound (5 is 1, 0 is 4):
//   e1 = (row 2, col 2), e2 = (row 2, col 1), e3 = (row 1, col 1),
//   e4 = (row 1, col 2)
// and region i is the open quadrant where Q picks e_i:
//   P1 = (-,-), P2 = (-,+), P3 = (+,+), P4 = (+,-).
// The boundary ray P_{i~i+1} separates P_i from P_{i+1}, and
// hat(P_i) = P_i united with P_{i~i+1}.
namespace fpdyn {

using Vec2 = std::array<double, 2>;

enum class Region : std::int8_t {
  kP1 = 0,
  kP2,
  kP3,
  kP4,
  kP12,
  kP23,
  kP34,
  kP41,
  kOrigin
};

const char* RegionName(Region r);

// 1-based cyclic index.
inline int Wrap(int i) { return ((i - 1) % 4 + 4) % 4 + 1; }

// Index i of the open region P_i, or 0.
int OpenIndex(Region r);
// Index i of the boundary ray P_{i~i+1}, or 0.
int BoundaryIndex(Region r);
// Index i with r inside hat(P_i), or 0 at the origin.
int HatIndex(Region r);
inline bool InOpen(Region r, int i) { return OpenIndex(r) == Wrap(i); }
inline bool OnBoundary(Region r, int i) { return BoundaryIndex(r) == Wrap(i); }
inline bool InHat(Region r, int i) { return HatIndex(r) == Wrap(i); }

// Strategy indices (row, column) of joint vertex w, and the inverse.
std::pair<int, int> JointToPlayers(int w);
int PlayersToJoint(int row, int col);

// Sign classification; |z_k| <= dead_zone counts as zero.
Region Classify(const Vec2& z, double dead_zone = 0.0);

// Dead zone used by the checkers at step t.
inline double RegionDeadZone(double a_max, std::int64_t t) {
  return 1e-12 * a_max * static_cast<double>(t);
}

// Vertices Q may choose on r, ascending: {i} on P_i, {i, i+1} on a ray
// (so {1, 4} on P_{4~1}), {1} at the origin.
std::vector<int> QCandidates(Region r);

struct SubspaceParams {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double rho1 = 0.0, rho2 = 0.0;
  double a_max = 0.0;
  double a_gap = 0.0;
  double tie_scale = 0.0;  // the game's argmax tie scale
  // S[row][w - 1] and M[row][w - 1].
  std::array<std::array<double, 4>, 2> S{};
  std::array<std::array<double, 4>, 2> M{};
  double B = 0.0;             // energy threshold of the cycling lemma
  double B_prime = 0.0;       // crossing bound 8 a_max (1 + rho1 + rho2)^2
  double global_bound = 0.0;  // 8 a_max (1 + 2 a_max / a_gap)^2

  // Throws AssumptionError unless `a` is in normal form.
  static SubspaceParams FromGame(const GameMatrix& a);

  Vec2 SColumn(int w) const { return {S[0][w - 1], S[1][w - 1]}; }
  Vec2 MColumn(int w) const { return {M[0][w - 1], M[1][w - 1]}; }
  // S' M as a 4x4 matrix.
  std::array<std::array<double, 4>, 4> StM() const;
};

// The exact threshold: max of psi over the l1 ball of radius 6 a_max.
double ThresholdB(double a_max, double rho1, double rho2);
double CrossingBound(double a_max, double rho1, double rho2);
// Infinite when a_gap is 0.
double GlobalEnergyBound(double a_max, double a_gap);

// Closed form of S' M in terms of the entries. Entry (3, 1) is c - b, the
// negation of entry (1, 3).
std::array<std::array<double, 4>, 4> StMClosedForm(double a, double b,
                                                   double c, double d);

Vec2 Project(std::span<const double> y1, std::span<const double> y2);
// (z1, -rho1 z1) and (z2, -rho2 z2).
std::pair<std::vector<double>, std::vector<double>> Lift(
    const Vec2& z, const SubspaceParams& p);

int QMap(const Vec2& z, Tiebreaker& tiebreak, std::int64_t step,
         double dead_zone = 0.0);

// <z, M Q(z)>; continuous, so the boundary choice does not matter.
double Psi(const Vec2& z, const SubspaceParams& p);
double Psi(const Vec2& z, const SubspaceParams& p, Tiebreaker& tiebreak,
           std::int64_t step);
// Region-by-region formula, as an independent route.
double PsiPiecewise(const Vec2& z, const SubspaceParams& p);

struct SubspaceStep {
  Vec2 z_tilde;
  Vec2 z_next;
  int w;
};

// z~ = z + alpha (z - z_prev), z_next = z + S Q(z~). alpha = 1 is the
// optimistic update, alpha = 0 plain fictitious play.
SubspaceStep StepSubspace(const Vec2& z_prev, const Vec2& z,
                          const SubspaceParams& p, Tiebreaker& tiebreak,
                          std::int64_t step, double alpha = 1.0,
                          double dead_zone = 0.0);

// Iterates StepSubspace from (z^0, z^1); returns z^0..z^{T+1}.
std::vector<Vec2> RunSubspace(const Vec2& z0, const Vec2& z1,
                              const SubspaceParams& p, Tiebreaker& tiebreak,
                              std::int64_t steps, double alpha = 1.0);

// z^t for every recorded dual row, first_step() .. last_step() + 1.
std::vector<Vec2> ProjectTrajectory(const TrajectoryRecord& traj);

// Re-derives the z sequence of a simultaneous run with the reduced update,
// taking each boundary decision from the recorded run. At the origin the
// reduced map prescribes e1 while the full dynamics may pick any vertex; the
// recorded choice is followed and the disagreement counted.
struct ReplayReport {
  std::vector<Vec2> z;
  std::int64_t origin_divergences = 0;
  std::int64_t mismatches = 0;       // recorded vertex outside Q's options
  std::int64_t first_mismatch = -1;
  double max_scaled_deviation = 0.0;  // max_t |z_replay - z_full|_inf / t
};
ReplayReport ReplaySubspace(const TrajectoryRecord& traj,
                            const SubspaceParams& p);

struct CyclingViolation {
  std::int64_t t = 0;
  std::string kind;
  Vec2 z_prev{}, z{}, z_tilde{}, z_next{};
  double psi = 0.0;
  double psi_next = 0.0;
  Region region = Region::kOrigin;
  Region region_tilde = Region::kOrigin;
  Region region_next = Region::kOrigin;
};

struct CyclingReport {
  std::int64_t steps = 0;
  std::int64_t above_threshold = 0;
  std::int64_t crossings = 0;
  double max_psi = 0.0;
  double max_crossing_psi = 0.0;
  std::map<std::string, std::int64_t> counts;  // violations per kind
  std::vector<CyclingViolation> violations;    // first few per kind
  std::vector<std::uint32_t> flags;            // per t, aligned with z

  std::int64_t total_violations() const;
};

// Checks on an optimistic z sequence z^0..z^{T+1}, for t = 1..T:
//   global energy bound at every t;
//   crossing bound B' when psi climbs over B;
//   above B with z^t in hat(P_i): the two-case region invariant, the
//   exclusion regions, the two region implications, and psi not rising.
CyclingReport CheckCyclingInvariants(const std::vector<Vec2>& z,
                                     const SubspaceParams& p,
                                     std::size_t keep_per_kind = 16);

// Fills psi and region of every step: StepInfo for t describes y^{t+1}.
void Annotate(TrajectoryRecord& traj, const SubspaceParams& p);

}  // namespace fpdyn

#endif  // FPDYN_SUBSPACE_H_
