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

#include "fpdyn/afp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fpdyn/dynamics.h"
#include "fpdyn/error.h"

namespace fpdyn {
namespace {

GameMatrix MatchingPennies() {
  return GameMatrix::FromRows({{1.0, -1.0}, {-1.0, 1.0}});
}

bool SameStep(const Vec2& u, const Vec2& v) {
  const double tol = 1e-9 * std::max({1.0, std::abs(u[0]), std::abs(u[1])});
  return std::abs(u[0] - v[0]) <= tol && std::abs(u[1] - v[1]) <= tol;
}

}  // namespace

SubspaceParams MatchingPenniesParams() {
  return SubspaceParams::FromGame(MatchingPennies());
}

SubspaceStep StepAfpSubspace(const Vec2& z_prev, const Vec2& z,
                             std::int64_t t, const SubspaceParams& p,
                             Tiebreaker& tiebreak, double dead_zone) {
  SubspaceStep s;
  s.z_tilde = t % 2 == 0 ? Vec2{z_prev[0], z[1]} : Vec2{z[0], z_prev[1]};
  s.w = QMap(s.z_tilde, tiebreak, t, dead_zone);
  const Vec2 col = p.SColumn(s.w);
  s.z_next = {z[0] + col[0], z[1] + col[1]};
  return s;
}

Vec2 AfpSubspaceRun::ZTilde(std::int64_t t) const {
  const Vec2& prev = Z(t - 1);
  const Vec2& cur = Z(t);
  return t % 2 == 0 ? Vec2{prev[0], cur[1]} : Vec2{cur[0], prev[1]};
}

AfpSubspaceRun RunAfpSubspace(double p, std::int64_t steps,
                              const TiebreakRule& tiebreak,
                              const TiebreakRule& q_tiebreak) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("p must lie in [0, 1]");
  if (steps < 3) throw TrajectoryError("reduced AFP run needs T >= 3");
  const SubspaceParams params = MatchingPenniesParams();
  const GameMatrix mp = MatchingPennies();
  TiebreakPair players(tiebreak);
  AlternatingSimulator sim(mp, MixedStrategy({p, 1.0 - p}), players);
  AfpSubspaceRun run;
  run.p = p;
  run.steps = steps;
  run.z.reserve(static_cast<std::size_t>(steps));
  run.w.reserve(static_cast<std::size_t>(steps));
  run.z.push_back(Project(sim.state().y1, sim.state().y2));  // z^2
  sim.Step();
  run.z.push_back(Project(sim.state().y1, sim.state().y2));  // z^3
  Tiebreaker q(q_tiebreak, Player::kJoint);
  for (std::int64_t t = 3; t <= steps + 1; ++t) {
    const SubspaceStep s = StepAfpSubspace(run.Z(t - 1), run.Z(t), t, params, q,
                                           RegionDeadZone(params.a_max, t + 1));
    run.w.push_back(s.w);
    if (t <= steps) run.z.push_back(s.z_next);
  }
  return run;
}

std::vector<Phase> DecomposePhases(const AfpSubspaceRun& run) {
  if (run.steps < 3) throw TrajectoryError("phase decomposition needs T >= 3");
  const SubspaceParams params = MatchingPenniesParams();
  std::vector<Phase> phases;
  const std::int64_t end = run.steps + 1;  // last step with a defined w
  Phase first;
  first.k = 0;
  first.t_start = 2;
  first.tau = 1;
  first.psi_start = Psi(run.Z(2), params);
  first.psi_end = first.psi_start;
  phases.push_back(first);
  for (std::int64_t t = 3; t <= end; ++t) {
    if (t == 3 || run.W(t) != phases.back().vertex) {
      Phase ph;
      ph.k = static_cast<int>(phases.size());
      ph.t_start = t;
      ph.vertex = run.W(t);
      ph.psi_start = Psi(run.Z(t), params);
      phases.push_back(ph);
    }
    Phase& cur = phases.back();
    cur.tau = t - cur.t_start + 1;
    cur.psi_end = Psi(run.Z(t), params);
  }
  return phases;
}

LowerBoundReport VerifyLowerBoundIngredients(const std::vector<Phase>& phases) {
  LowerBoundReport r;
  r.phases = static_cast<int>(phases.size()) - 1;
  r.unit_increases_required = r.phases / 2.0 - 1.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  r.tau_min_ratio = std::numeric_limits<double>::infinity();
  r.tau_max_ratio = 0.0;
  for (std::size_t k = 1; k < phases.size(); ++k) {
    const double inc = phases[k].psi_start - phases[k - 1].psi_start;
    r.max_increase = std::max(r.max_increase, inc);
    r.increase_histogram[std::round(inc * 1e6) / 1e6]++;
    if (inc > 2.0 + 1e-9) {
      ++r.jump_violations;
      if (r.jump_examples.size() < 16) {
        r.jump_examples.emplace_back(phases[k].k, inc);
      }
    }
    if (inc >= 1.0 - 1e-9) ++r.unit_increases;
    // The final phase is cut off by the horizon; keep it out of the fit.
    if (k + 1 < phases.size()) {
      const double x = phases[k].psi_start;
      const double y = static_cast<double>(phases[k].tau);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
      r.tau_min_ratio = std::min(r.tau_min_ratio, y / x);
      r.tau_max_ratio = std::max(r.tau_max_ratio, y / x);
    }
  }
  if (n >= 2) {
    const double den = n * sxx - sx * sx;
    r.tau_slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    r.tau_intercept = (sy - r.tau_slope * sx) / n;
    for (std::size_t k = 1; k + 1 < phases.size(); ++k) {
      const double fit = r.tau_slope * phases[k].psi_start + r.tau_intercept;
      r.tau_max_residual = std::max(
          r.tau_max_residual, std::abs(static_cast<double>(phases[k].tau) - fit));
    }
  }
  if (n == 0) r.tau_min_ratio = 0.0;
  return r;
}

AfpCaseResult ClassifyAfpStep(const Vec2& z_prev, const Vec2& z,
                              const Vec2& z_tilde, const Vec2& z_next,
                              const SubspaceParams& p, double dead_zone) {
  const Region rp = Classify(z_prev, dead_zone);
  const Region rc = Classify(z, dead_zone);
  const Region rt = Classify(z_tilde, dead_zone);
  const Region rn = Classify(z_next, dead_zone);
  const Vec2 step = {z[0] - z_prev[0], z[1] - z_prev[1]};
  AfpCaseResult out;
  if (const int i = OpenIndex(rp); i != 0 && SameStep(step, p.SColumn(i))) {
    if (InOpen(rc, i)) {
      out.which = AfpCase::kCase1;
      out.consequences_hold =
          InOpen(rt, i) && (InOpen(rn, i + 1) || InOpen(rn, i));
      return out;
    }
    if (InOpen(rc, i + 1)) {
      out.which = AfpCase::kCase2;
      out.consequences_hold =
          InOpen(rn, i + 1) && (InOpen(rt, i) || InOpen(rt, i + 1));
      return out;
    }
    if (OnBoundary(rc, i)) {
      out.which = AfpCase::kCase3;
      out.consequences_hold =
          InOpen(rn, i + 1) && (InOpen(rt, i) || OnBoundary(rt, i));
      return out;
    }
  }
  if (const int b = BoundaryIndex(rp); b != 0 && InOpen(rc, b + 1)) {
    out.which = AfpCase::kCase4;
    out.consequences_hold =
        InOpen(rn, b + 1) && (OnBoundary(rt, b) || InOpen(rt, b + 1));
    return out;
  }
  return out;
}

std::int64_t AfpCaseReport::violations() const {
  std::int64_t n = unmatched;
  for (const auto& [c, count] : inconsistent) n += count;
  return n;
}

AfpCaseReport CheckAfpCases(const AfpSubspaceRun& run,
                            std::size_t keep_examples) {
  const SubspaceParams params = MatchingPenniesParams();
  AfpCaseReport rep;
  for (std::int64_t t = 4; t <= run.steps; ++t) {
    const AfpCaseResult r =
        ClassifyAfpStep(run.Z(t - 1), run.Z(t), run.ZTilde(t), run.Z(t + 1),
                        params, RegionDeadZone(params.a_max, t + 1));
    bool bad = false;
    if (r.which == AfpCase::kUnmatched) {
      ++rep.unmatched;
      bad = true;
    } else {
      ++rep.matched[static_cast<int>(r.which)];
      if (!r.consequences_hold) {
        ++rep.inconsistent[static_cast<int>(r.which)];
        bad = true;
      }
    }
    if (bad && rep.examples.size() < keep_examples) rep.examples.push_back(t);
  }
  return rep;
}

AfpInvariantReport CheckAfpInvariants(const AfpSubspaceRun& run) {
  const SubspaceParams params = MatchingPenniesParams();
  AfpInvariantReport rep;
  for (std::int64_t t = 2; t <= run.steps + 1; ++t) {
    const Vec2& z = run.Z(t);
    if (std::abs(z[0] - std::round(z[0])) > 1e-9) ++rep.non_integral_z1;
    if (std::abs(z[1]) <= 1e-9) ++rep.z2_near_zero;
    if (Psi(z, params) != std::abs(z[0]) + std::abs(z[1])) ++rep.l1_mismatch;
  }
  return rep;
}

double FitLogLogSlope(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error("slope fit needs two or more matching points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw Error("log of nonpositive value");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fpdyn
