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

#ifndef FPDYN_NORMALIZE_H_
#define FPDYN_NORMALIZE_H_

#include <utility>

#include "fpdyn/game.h"
#include "fpdyn/tiebreak.h"

namespace fpdyn {

// A 2x2 game with an interior equilibrium rewritten into normal form
// (det = 0, a and d above max{0, b, c}) by a constant shift, an optional
// sign flip and an optional relabeling of the column player's strategies.
//
// Flipping the sign of a zero-sum game only preserves the dynamics if the
// players also trade seats: player 1 maximizing -(A + k)' is the original
// column player. `negated` therefore records the map A -> -(A + k)' together
// with that exchange of roles.
struct NormalizedGame {
  GameMatrix original;
  GameMatrix transformed;
  double shift = 0.0;
  bool negated = false;
  bool columns_swapped = false;

  // Original player seated as `transformed_player`.
  Player OriginalPlayer(Player transformed_player) const;
  Player TransformedPlayer(Player original_player) const;
  int ToOriginalIndex(Player transformed_player, int index) const;
  int ToTransformedIndex(Player original_player, int index) const;

  std::pair<MixedStrategy, MixedStrategy> ToTransformed(
      const MixedStrategy& x1, const MixedStrategy& x2) const;
  std::pair<MixedStrategy, MixedStrategy> ToOriginal(
      const MixedStrategy& u1, const MixedStrategy& u2) const;

  // Tiebreakers for a run on `transformed` that replay exactly the decisions
  // `rule1`/`rule2` would make for the original players: tied sets are
  // translated to original labels before the rule sees them.
  TiebreakPair LiftTiebreaks(const TiebreakRule& rule1,
                             const TiebreakRule& rule2) const;
};

// Throws NashError when A lacks a unique interior equilibrium.
NormalizedGame Normalize2x2(const GameMatrix& a);

}  // namespace fpdyn

#endif  // FPDYN_NORMALIZE_H_
