#include <doctest.h>

#include "support.hpp"

using namespace autwidth;
using support::gameoracle::random_arena;
using support::gameoracle::winner_by_enumeration;
using support::gameoracle::winner_by_pair_enumeration;

namespace {

// simulate random plays against the returned strategy; the winner's strategy
// must hold up (safety: never bad; parity: winning lasso parity)
void check_strategy_soundness(const GameArena& g, const GameSolution& sol, uint32_t seed) {
  int w = sol.winner[static_cast<size_t>(g.initial)];
  std::mt19937 rng(seed);
  for (int play = 0; play < 50; ++play) {
    std::vector<int> when(g.owner.size(), -1);
    std::vector<int> path;
    int v = g.initial;
    bool p1_won_play = false, lassoed = false;
    while (true) {
      if (when[static_cast<size_t>(v)] != -1) {
        lassoed = true;
        if (g.parity) {
          int maxp = 0;
          for (size_t i = static_cast<size_t>(when[static_cast<size_t>(v)]); i < path.size(); ++i)
            maxp = std::max(maxp, g.priority[static_cast<size_t>(path[i])]);
          CHECK(maxp % 2 == w);
        }
        break;
      }
      when[static_cast<size_t>(v)] = static_cast<int>(path.size());
      path.push_back(v);
      if (!g.parity && g.bad[static_cast<size_t>(v)]) {
        p1_won_play = true;  // play reached a bad position
        break;
      }
      const auto& succ = g.succ[static_cast<size_t>(v)];
      if (succ.empty()) {
        // the stuck player loses the play
        p1_won_play = g.owner[static_cast<size_t>(v)] == 0;
        break;
      }
      if (g.owner[static_cast<size_t>(v)] == w) {
        int chosen = sol.strategy[w][static_cast<size_t>(v)];
        REQUIRE(chosen != -1);
        v = chosen;
      } else {
        v = succ[rng() % succ.size()];
      }
    }
    if (!g.parity) {
      if (lassoed) p1_won_play = false;  // infinite safe play: Player 0 wins it
      CHECK(p1_won_play == (w == 1));
    } else if (!lassoed) {
      CHECK(p1_won_play == (w == 1));
    }
  }
}

}  // namespace

TEST_CASE("single safety positions") {
  GameArena g;
  g.add_position(0);
  g.succ[0] = {0};
  g.initial = 0;
  CHECK(solve_safety(g).player0_wins_initial(g));
  g.bad[0] = 1;
  CHECK_FALSE(solve_safety(g).player0_wins_initial(g));
}

TEST_CASE("single parity positions") {
  GameArena g;
  g.parity = true;
  g.add_position(0);
  g.succ[0] = {0};
  g.initial = 0;
  g.priority[0] = 0;
  CHECK(solve_parity(g).player0_wins_initial(g));
  g.priority[0] = 1;
  CHECK_FALSE(solve_parity(g).player0_wins_initial(g));
}

TEST_CASE("safety solver agrees with strategy enumeration on 250 seeded arenas") {
  for (uint32_t seed = 1000; seed < 1250; ++seed) {
    GameArena g = random_arena(seed, 8, 0, false);
    GameSolution sol = solve_safety(g);
    int expect = winner_by_enumeration(g);
    CHECK(sol.winner[static_cast<size_t>(g.initial)] == expect);
    // determinacy: every position has exactly one winner
    for (char w : sol.winner) CHECK((w == 0 || w == 1));
    check_strategy_soundness(g, sol, seed * 31 + 1);
  }
}

TEST_CASE("parity solver agrees with strategy enumeration on 250 seeded arenas") {
  for (uint32_t seed = 2000; seed < 2250; ++seed) {
    GameArena g = random_arena(seed, 8, 3, true);
    GameSolution sol = solve_parity(g);
    int expect = winner_by_enumeration(g);
    CHECK(sol.winner[static_cast<size_t>(g.initial)] == expect);
    check_strategy_soundness(g, sol, seed * 31 + 7);
  }
}

TEST_CASE("both oracles agree on tiny arenas") {
  for (uint32_t seed = 3000; seed < 3120; ++seed) {
    GameArena g = random_arena(seed, 5, 3, seed % 2 == 0);
    int fast = winner_by_enumeration(g);
    int pairs = winner_by_pair_enumeration(g);
    CHECK(fast == pairs);
  }
}

TEST_CASE("parity restricted to priorities {0,1} matches safety") {
  for (uint32_t seed = 4000; seed < 4100; ++seed) {
    GameArena g = random_arena(seed, 8, 0, false);
    // encode: bad positions become absorbing with odd priority
    GameArena p;
    p.parity = true;
    for (int v = 0; v < g.size(); ++v) p.add_position(g.owner[static_cast<size_t>(v)]);
    for (int v = 0; v < g.size(); ++v) {
      if (g.bad[static_cast<size_t>(v)]) {
        p.priority[static_cast<size_t>(v)] = 1;
        p.succ[static_cast<size_t>(v)] = {v};
      } else {
        p.priority[static_cast<size_t>(v)] = 0;
        p.succ[static_cast<size_t>(v)] = g.succ[static_cast<size_t>(v)];
      }
    }
    p.initial = g.initial;
    CHECK(solve_parity(p).player0_wins_initial(p) ==
          solve_safety(g).player0_wins_initial(g));
  }
}
