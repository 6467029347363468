#include "respo/game.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "respo/rng.hpp"
#include "respo/signature.hpp"
#include "respo/ts_io.hpp"
#include "support/oracles.hpp"

using namespace respo;

namespace {

SafetyGame random_game(Rng& rng, uint32_t max_states) {
  uint32_t n = 2 + static_cast<uint32_t>(rng.below(max_states - 1));
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::vector<uint8_t> safe_owned(n), is_bad(n);
  for (uint32_t s = 0; s < n; ++s) {
    safe_owned[s] = rng.below(2) != 0;
    is_bad[s] = rng.below(5) == 0;
    uint32_t deg = static_cast<uint32_t>(rng.below(4));  // 0 exercises completion
    for (uint32_t k = 0; k < deg; ++k)
      edges.emplace_back(s, static_cast<uint32_t>(rng.below(n)));
  }
  return SafetyGame::from_edges(n, static_cast<uint32_t>(rng.below(n)),
                                std::move(edges), std::move(safe_owned),
                                std::move(is_bad));
}

std::vector<char> reference_attractor(const SafetyGame& g) {
  std::vector<std::vector<uint32_t>> succ(g.num_states);
  for (uint32_t s = 0; s < g.num_states; ++s) {
    auto row = g.successors(s);
    succ[s].assign(row.begin(), row.end());
  }
  std::vector<char> owned(g.safe_owned.begin(), g.safe_owned.end());
  std::vector<char> bad(g.is_bad.begin(), g.is_bad.end());
  return respo::testing::fixpoint_attractor(g.num_states, succ, owned, bad);
}

SafetyGame train_station_game(uint64_t coalition) {
  std::ifstream in(std::string(RESPO_MODELS_DIR) + "/trainstation.ts");
  ImportedTs imported = import_ts(in);
  return build_forward_game(imported.lts, *imported.signature, coalition);
}

}  // namespace

TEST(Game, SolveMatchesFixpointOracle) {
  Rng rng(90125);
  for (int i = 0; i < 250; ++i) {
    SafetyGame g = random_game(rng, 50);
    std::vector<char> attr = reference_attractor(g);
    WinningRegion region = solve(g);
    for (uint32_t s = 0; s < g.num_states; ++s)
      ASSERT_EQ(region.safe_wins[s], !attr[s]) << "state " << s << " of " << g.num_states;
    EXPECT_EQ(value(g), region.safe_wins[g.initial] ? 1 : 0);
  }
}

TEST(Game, NoBadStatesMeansSafeWinsEverywhere) {
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    SafetyGame g = random_game(rng, 30);
    std::fill(g.is_bad.begin(), g.is_bad.end(), 0);
    WinningRegion region = solve(g);
    for (uint32_t s = 0; s < g.num_states; ++s) EXPECT_TRUE(region.safe_wins[s]);
    EXPECT_EQ(value(g), 1);
  }
}

TEST(Game, HandingStatesToSafeNeverShrinksTheRegion) {
  Rng rng(311);
  for (int i = 0; i < 60; ++i) {
    SafetyGame g = random_game(rng, 40);
    WinningRegion before = solve(g);
    SafetyGame promoted = g;
    for (uint32_t s = 0; s < g.num_states; ++s)
      if (!promoted.safe_owned[s] && rng.below(3) == 0) promoted.safe_owned[s] = 1;
    WinningRegion after = solve(promoted);
    for (uint32_t s = 0; s < g.num_states; ++s)
      EXPECT_LE(before.safe_wins[s], after.safe_wins[s]);
  }
}

TEST(Game, FromEdgesCompletesEmptyRowsWithSelfLoops) {
  SafetyGame g = SafetyGame::from_edges(3, 0, {{0, 1}, {0, 1}}, {1, 0, 1}, {0, 0, 1});
  ASSERT_EQ(g.successors(0).size(), 1u);  // duplicate merged
  EXPECT_EQ(g.successors(0)[0], 1u);
  ASSERT_EQ(g.successors(1).size(), 1u);
  EXPECT_EQ(g.successors(1)[0], 1u);
  ASSERT_EQ(g.successors(2).size(), 1u);
  EXPECT_EQ(g.successors(2)[0], 2u);
}

TEST(Game, StrategyStaysInsideTheWinningRegion) {
  Rng rng(555);
  int closed_games = 0;
  for (int i = 0; i < 120; ++i) {
    SafetyGame g = random_game(rng, 40);
    WinningRegion region = solve(g);
    std::vector<int64_t> strat = extract_strategy(g, region);
    bool any_winning = false;
    for (uint32_t s = 0; s < g.num_states; ++s) {
      if (!region.safe_wins[s]) {
        EXPECT_EQ(strat[s], -1);
        continue;
      }
      any_winning = true;
      if (!g.safe_owned[s]) {
        EXPECT_EQ(strat[s], -1);
        // Every move the adversary has stays winning, by definition of the region.
        for (uint32_t t : g.successors(s)) EXPECT_TRUE(region.safe_wins[t]);
      } else {
        ASSERT_GE(strat[s], 0);
        EXPECT_TRUE(region.safe_wins[strat[s]]);
        bool is_succ = false;
        for (uint32_t t : g.successors(s))
          if (static_cast<int64_t>(t) == strat[s]) is_succ = true;
        EXPECT_TRUE(is_succ);
      }
    }
    if (any_winning) ++closed_games;

    // Random plays from winning states that follow the strategy never reach bad.
    for (int play = 0; play < 10; ++play) {
      uint32_t s = static_cast<uint32_t>(rng.below(g.num_states));
      if (!region.safe_wins[s]) continue;
      for (uint32_t step = 0; step < 2 * g.num_states; ++step) {
        ASSERT_FALSE(g.is_bad[s]);
        if (g.safe_owned[s]) {
          s = static_cast<uint32_t>(strat[s]);
        } else {
          auto row = g.successors(s);
          s = row[rng.below(row.size())];
        }
      }
      EXPECT_FALSE(g.is_bad[s]);
    }
  }
  EXPECT_GT(closed_games, 0);
}

TEST(Game, TrainStationCoalitionGames) {
  // Aux cooperates alone: nothing prevents the collision.
  EXPECT_EQ(value(train_station_game(0)), 0);
  // The first actor can reroute by itself.
  EXPECT_EQ(value(train_station_game(0b001)), 1);
  // Everyone together certainly can.
  EXPECT_EQ(value(train_station_game(0b111)), 1);
}

TEST(Game, TrainStationStrategyPins) {
  SafetyGame g = train_station_game(0b001);
  WinningRegion region = solve(g);
  ASSERT_TRUE(region.safe_wins[g.initial]);
  std::vector<int64_t> strat = extract_strategy(g, region);
  EXPECT_EQ(strat[1], 7);  // divert to the siding rather than risk state 4
  EXPECT_EQ(strat[0], 1);
}

TEST(Game, BadInitialStateLosesImmediately) {
  SafetyGame g = SafetyGame::from_edges(2, 0, {{0, 1}, {1, 1}}, {1, 1}, {1, 0});
  EXPECT_EQ(value(g), 0);
}
