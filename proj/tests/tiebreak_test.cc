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

#include <vector>

#include "fpdyn/error.h"
#include "fpdyn/random.h"
#include "gtest/gtest.h"

namespace fpdyn {
namespace {

TEST(RandomTest, SplitMixReferenceValues) {
  // Published splitmix64 outputs for the state sequence starting at 0.
  EXPECT_EQ(SplitMix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_EQ(DeriveSeed(7, 3), DeriveSeed(7, 3));
}

TEST(RandomTest, StreamsAreReproducible) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    differs |= x != c.NextU64();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomTest, Ranges) {
  Rng rng(1);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.NextDouble();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.Uniform(-2.0, -0.1);
    ASSERT_GE(v, -2.0);
    ASSERT_LT(v, -0.1);
    ++hits[rng.UniformIndex(5)];
  }
  for (int h : hits) EXPECT_GT(h, 1800);
}

TEST(TiebreakTest, LexicographicAndLast) {
  Tiebreaker lex(TiebreakRule::Lexicographic(), Player::kOne);
  Tiebreaker last(TiebreakRule::AlwaysLast(), Player::kTwo);
  const std::vector<int> tied = {1, 4, 6};
  EXPECT_EQ(lex.Choose(tied, 0), 1);
  EXPECT_EQ(last.Choose(tied, 0), 6);
  EXPECT_EQ(lex.ties(), 1u);
}

TEST(TiebreakTest, SeededRandomIsReproducibleAndPerPlayer) {
  Tiebreaker a(TiebreakRule::SeededRandom(5), Player::kOne);
  Tiebreaker b(TiebreakRule::SeededRandom(5), Player::kOne);
  Tiebreaker other(TiebreakRule::SeededRandom(5), Player::kTwo);
  const std::vector<int> tied = {0, 1, 2, 3};
  bool differs = false;
  for (int t = 0; t < 200; ++t) {
    const int x = a.Choose(tied, t);
    EXPECT_EQ(x, b.Choose(tied, t));
    differs |= x != other.Choose(tied, t);
  }
  EXPECT_TRUE(differs);
}

TEST(TiebreakTest, SingletonsDoNotConsumeTheStream) {
  Tiebreaker a(TiebreakRule::SeededRandom(8), Player::kOne);
  Tiebreaker b(TiebreakRule::SeededRandom(8), Player::kOne);
  const std::vector<int> one = {3};
  const std::vector<int> tied = {0, 1, 2, 3, 4, 5, 6, 7};
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.Choose(one, i), 3);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(a.Choose(tied, i), b.Choose(tied, i));
}

TEST(TiebreakTest, CallbackContract) {
  std::vector<std::int64_t> steps;
  Tiebreaker cb(TiebreakRule::FromCallback(
                    [&](std::span<const int> tied, std::int64_t step, Player p) {
                      EXPECT_EQ(p, Player::kTwo);
                      steps.push_back(step);
                      return tied[0];
                    },
                    "first"),
                Player::kTwo);
  const std::vector<int> tied = {2, 5};
  EXPECT_EQ(cb.Choose(tied, 17), 2);
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0], 17);

  Tiebreaker bad(TiebreakRule::FromCallback(
                     [](std::span<const int>, std::int64_t, Player) { return 9; },
                     "bad"),
                 Player::kOne);
  EXPECT_THROW(bad.Choose(tied, 0), TiebreakContractError);
}

}  // namespace
}  // namespace fpdyn
