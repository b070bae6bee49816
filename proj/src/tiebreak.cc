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

#include "fpdyn/tiebreak.h"

#include <algorithm>
#include <string>

#include "fpdyn/error.h"

namespace fpdyn {

const char* PlayerName(Player p) {
  switch (p) {
    case Player::kOne:
      return "player1";
    case Player::kTwo:
      return "player2";
    case Player::kJoint:
      return "joint";
  }
  return "unknown";
}

TiebreakRule TiebreakRule::Lexicographic() {
  return TiebreakRule(Kind::kLexicographic, 0, "lexicographic", nullptr);
}

TiebreakRule TiebreakRule::SeededRandom(std::uint64_t seed) {
  return TiebreakRule(Kind::kSeededRandom, seed, "random", nullptr);
}

TiebreakRule TiebreakRule::FromCallback(Callback callback, std::string name) {
  if (!callback) throw Error("tiebreak callback is empty");
  return TiebreakRule(Kind::kCallback, 0, std::move(name),
                      std::move(callback));
}

TiebreakRule TiebreakRule::AlwaysLast() {
  return FromCallback(
      [](std::span<const int> tied, std::int64_t, Player) {
        return tied.back();
      },
      "last");
}

Tiebreaker::Tiebreaker(TiebreakRule rule, Player player)
    : rule_(std::move(rule)),
      player_(player),
      rng_(DeriveSeed(rule_.seed(), static_cast<std::uint64_t>(player) + 1)) {}

int Tiebreaker::Choose(std::span<const int> tied, std::int64_t step) {
  if (tied.empty()) throw TiebreakContractError("empty tied set");
  if (tied.size() == 1) return tied[0];
  ++ties_;
  switch (rule_.kind()) {
    case TiebreakRule::Kind::kLexicographic:
      return tied[0];
    case TiebreakRule::Kind::kSeededRandom:
      return tied[rng_.UniformIndex(static_cast<int>(tied.size()))];
    case TiebreakRule::Kind::kCallback: {
      int choice = rule_.callback()(tied, step, player_);
      if (std::find(tied.begin(), tied.end(), choice) == tied.end()) {
        throw TiebreakContractError(
            "tiebreak rule '" + rule_.name() + "' returned " +
            std::to_string(choice) + " outside the tied set at step " +
            std::to_string(step) + " for " + PlayerName(player_));
      }
      return choice;
    }
  }
  return tied[0];
}

}  // namespace fpdyn
