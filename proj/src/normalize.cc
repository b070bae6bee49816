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

#include "fpdyn/normalize.h"

#include <algorithm>
#include <memory>
#include <vector>

#include "fpdyn/error.h"

namespace fpdyn {
namespace {

Player Other(Player p) { return p == Player::kOne ? Player::kTwo : Player::kOne; }

MixedStrategy Reversed(const MixedStrategy& x) {
  std::vector<double> v(x.values().rbegin(), x.values().rend());
  return MixedStrategy(std::move(v));
}

}  // namespace

Player NormalizedGame::OriginalPlayer(Player transformed_player) const {
  return negated ? Other(transformed_player) : transformed_player;
}

Player NormalizedGame::TransformedPlayer(Player original_player) const {
  return negated ? Other(original_player) : original_player;
}

int NormalizedGame::ToOriginalIndex(Player transformed_player,
                                    int index) const {
  if (columns_swapped && transformed_player == Player::kTwo) return 1 - index;
  return index;
}

int NormalizedGame::ToTransformedIndex(Player original_player,
                                       int index) const {
  return ToOriginalIndex(TransformedPlayer(original_player), index);
}

std::pair<MixedStrategy, MixedStrategy> NormalizedGame::ToTransformed(
    const MixedStrategy& x1, const MixedStrategy& x2) const {
  MixedStrategy u1 = negated ? x2 : x1;
  MixedStrategy u2 = negated ? x1 : x2;
  if (columns_swapped) u2 = Reversed(u2);
  return {u1, u2};
}

std::pair<MixedStrategy, MixedStrategy> NormalizedGame::ToOriginal(
    const MixedStrategy& u1, const MixedStrategy& u2) const {
  MixedStrategy v2 = columns_swapped ? Reversed(u2) : u2;
  if (negated) return {v2, u1};
  return {u1, v2};
}

TiebreakPair NormalizedGame::LiftTiebreaks(const TiebreakRule& rule1,
                                           const TiebreakRule& rule2) const {
  auto source1 = std::make_shared<Tiebreaker>(rule1, Player::kOne);
  auto source2 = std::make_shared<Tiebreaker>(rule2, Player::kTwo);
  auto lift = [this, source1, source2](Player seat) {
    const Player orig = OriginalPlayer(seat);
    std::shared_ptr<Tiebreaker> source = orig == Player::kOne ? source1 : source2;
    // Copies of the flags keep the callback valid after *this is gone.
    const bool flip = columns_swapped && seat == Player::kTwo;
    return TiebreakRule::FromCallback(
        [source, flip](std::span<const int> tied, std::int64_t step, Player) {
          std::vector<int> mapped(tied.begin(), tied.end());
          if (flip) {
            for (int& i : mapped) i = 1 - i;
            std::sort(mapped.begin(), mapped.end());
          }
          const int choice = source->Choose(mapped, step);
          return flip ? 1 - choice : choice;
        },
        "lifted-" + source->rule().name());
  };
  return TiebreakPair(lift(Player::kOne), lift(Player::kTwo));
}

NormalizedGame Normalize2x2(const GameMatrix& m) {
  Nash2x2(m);  // rejects games without a unique interior equilibrium
  const double a = m.at(0, 0), b = m.at(0, 1), c = m.at(1, 0), d = m.at(1, 1);
  const double k = -Determinant2x2(m) / (a + d - b - c);
  double e[4] = {a + k, b + k, c + k, d + k};
  NormalizedGame out{m, m, k, false, false};
  if (e[0] < 0.0) {
    // -(A + k)' = [[-a', -c'], [-b', -d']]
    const double t[4] = {-e[0], -e[2], -e[1], -e[3]};
    std::copy(t, t + 4, e);
    out.negated = true;
  }
  if (e[0] + e[3] - e[1] - e[2] < 0.0) {
    std::swap(e[0], e[1]);
    std::swap(e[2], e[3]);
    out.columns_swapped = true;
  }
  out.transformed = GameMatrix(2, 2, {e[0], e[1], e[2], e[3]});
  out.transformed.set_tie_scale(m.tie_scale());
  if (auto failure = Assumption41Failure(out.transformed)) {
    throw AssumptionError("normalization of " + m.ToString() +
                          " did not reach normal form: " + *failure);
  }
  return out;
}

}  // namespace fpdyn
