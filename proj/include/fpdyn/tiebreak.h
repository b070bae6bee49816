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

#ifndef FPDYN_TIEBREAK_H_
#define FPDYN_TIEBREAK_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "fpdyn/random.h"

namespace fpdyn {

// kJoint identifies the subspace choice map, which breaks ties between two
// joint vertices rather than between one player's strategies.
enum class Player : int { kOne = 0, kTwo = 1, kJoint = 2 };

const char* PlayerName(Player p);

class TiebreakRule {
 public:
  enum class Kind { kLexicographic, kSeededRandom, kCallback };

  // Receives the tied indices in ascending order, the step number and the
  // deciding player; must return one of the tied indices.
  using Callback =
      std::function<int(std::span<const int> tied, std::int64_t step,
                        Player player)>;

  static TiebreakRule Lexicographic();
  // Each player draws from its own stream derived from `seed`.
  static TiebreakRule SeededRandom(std::uint64_t seed);
  static TiebreakRule FromCallback(Callback callback, std::string name);
  // Adversarial rule that always takes the highest tied index.
  static TiebreakRule AlwaysLast();

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  const std::string& name() const { return name_; }
  const Callback& callback() const { return callback_; }

 private:
  TiebreakRule(Kind kind, std::uint64_t seed, std::string name,
               Callback callback)
      : kind_(kind),
        seed_(seed),
        name_(std::move(name)),
        callback_(std::move(callback)) {}

  Kind kind_;
  std::uint64_t seed_;
  std::string name_;
  Callback callback_;
};

// Stateful per-player decision stream. Singleton sets are returned without
// consulting the rule, so streams advance only on genuine ties.
class Tiebreaker {
 public:
  Tiebreaker(TiebreakRule rule, Player player);

  int Choose(std::span<const int> tied, std::int64_t step);

  Player player() const { return player_; }
  const TiebreakRule& rule() const { return rule_; }
  std::uint64_t ties() const { return ties_; }

 private:
  TiebreakRule rule_;
  Player player_;
  Rng rng_;
  std::uint64_t ties_ = 0;
};

struct TiebreakPair {
  explicit TiebreakPair(const TiebreakRule& rule)
      : one(rule, Player::kOne), two(rule, Player::kTwo) {}
  TiebreakPair(const TiebreakRule& rule1, const TiebreakRule& rule2)
      : one(rule1, Player::kOne), two(rule2, Player::kTwo) {}

  Tiebreaker& For(Player p) { return p == Player::kOne ? one : two; }

  Tiebreaker one;
  Tiebreaker two;
};

}  // namespace fpdyn

#endif  // FPDYN_TIEBREAK_H_
