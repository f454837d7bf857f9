#pragma once

#include <cassert>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace autwidth {

/// Two-player arena. A position with no outgoing edge is losing for its
/// owner. Safety: Player 0 wins a play iff it never visits a bad position.
/// Parity (max-even): Player 0 wins iff the maximum priority seen infinitely
/// often is even.
struct GameArena {
  std::vector<char> owner;                // 0 or 1 per position
  std::vector<std::vector<int>> succ;     // adjacency per position
  int initial = 0;
  bool parity = false;
  std::vector<char> bad;                  // safety condition
  std::vector<int> priority;              // parity condition

  int size() const { return static_cast<int>(owner.size()); }

  int add_position(char who) {
    owner.push_back(who);
    succ.emplace_back();
    if (parity)
      priority.push_back(0);
    else
      bad.push_back(0);
    return size() - 1;
  }
};

struct GameSolution {
  std::vector<char> winner;      // per position
  std::vector<int> strategy[2];  // positional strategy per player, -1 where none

  bool player0_wins_initial(const GameArena& g) const {
    return winner[static_cast<size_t>(g.initial)] == 0;
  }
};

namespace detail {

/// Attractor of `player` to `target` inside the sub-arena `active`; fills a
/// rank per attracted position and a strategy for `player` (lowest-index
/// successor of strictly smaller rank).
inline std::vector<char> attractor(const GameArena& g, const std::vector<char>& active,
                                   const std::vector<char>& target, int player,
                                   std::vector<int>* strategy_out = nullptr) {
  const int n = g.size();
  std::vector<char> in(static_cast<size_t>(n), 0);
  std::vector<int> rank(static_cast<size_t>(n), -1);
  std::vector<int> pending(static_cast<size_t>(n), 0);  // for opponent positions
  std::vector<std::vector<int>> pred(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (!active[static_cast<size_t>(v)]) continue;
    int deg = 0;
    for (int w : g.succ[static_cast<size_t>(v)])
      if (active[static_cast<size_t>(w)]) {
        pred[static_cast<size_t>(w)].push_back(v);
        ++deg;
      }
    pending[static_cast<size_t>(v)] = deg;
  }
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (active[static_cast<size_t>(v)] && target[static_cast<size_t>(v)]) {
      in[static_cast<size_t>(v)] = 1;
      rank[static_cast<size_t>(v)] = 0;
      queue.push_back(v);
    }
  // opponent positions with no active successor fall to the mover's advantage:
  // the owner is stuck, so they are attracted for `player` when owner != player
  for (int v = 0; v < n; ++v)
    if (active[static_cast<size_t>(v)] && !in[static_cast<size_t>(v)] &&
        pending[static_cast<size_t>(v)] == 0 && g.owner[static_cast<size_t>(v)] != player) {
      in[static_cast<size_t>(v)] = 1;
      rank[static_cast<size_t>(v)] = 0;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (int v : pred[static_cast<size_t>(w)]) {
      if (in[static_cast<size_t>(v)]) continue;
      if (g.owner[static_cast<size_t>(v)] == player) {
        in[static_cast<size_t>(v)] = 1;
        rank[static_cast<size_t>(v)] = rank[static_cast<size_t>(w)] + 1;
        queue.push_back(v);
      } else if (--pending[static_cast<size_t>(v)] == 0) {
        in[static_cast<size_t>(v)] = 1;
        int r = 0;
        for (int x : g.succ[static_cast<size_t>(v)])
          if (active[static_cast<size_t>(x)]) r = std::max(r, rank[static_cast<size_t>(x)]);
        rank[static_cast<size_t>(v)] = r + 1;
        queue.push_back(v);
      }
    }
  }
  if (strategy_out) {
    for (int v = 0; v < n; ++v) {
      if (!in[static_cast<size_t>(v)] || g.owner[static_cast<size_t>(v)] != player ||
          target[static_cast<size_t>(v)])
        continue;
      for (int w : g.succ[static_cast<size_t>(v)])
        if (active[static_cast<size_t>(w)] && in[static_cast<size_t>(w)] &&
            rank[static_cast<size_t>(w)] < rank[static_cast<size_t>(v)]) {
          (*strategy_out)[static_cast<size_t>(v)] = w;
          break;  // successors are in index order: lowest index wins ties
        }
    }
  }
  return in;
}

}  // namespace detail

/// Safety solver: Player 1 attracts to bad positions and stuck-Player-0
/// positions; Player 0 wins the complement with any region-preserving move.
inline GameSolution solve_safety(const GameArena& g) {
  if (g.parity) throw std::invalid_argument("solve_safety: arena has a parity condition");
  const int n = g.size();
  std::vector<char> active(static_cast<size_t>(n), 1);
  std::vector<char> target = g.bad;
  target.resize(static_cast<size_t>(n), 0);
  GameSolution sol;
  sol.strategy[0].assign(static_cast<size_t>(n), -1);
  sol.strategy[1].assign(static_cast<size_t>(n), -1);
  std::vector<char> w1 = detail::attractor(g, active, target, 1, &sol.strategy[1]);
  sol.winner.assign(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) sol.winner[static_cast<size_t>(v)] = w1[static_cast<size_t>(v)];
  for (int v = 0; v < n; ++v) {
    if (sol.winner[static_cast<size_t>(v)] != 0 || g.owner[static_cast<size_t>(v)] != 0)
      continue;
    for (int w : g.succ[static_cast<size_t>(v)])
      if (!w1[static_cast<size_t>(w)]) {
        sol.strategy[0][static_cast<size_t>(v)] = w;
        break;
      }
  }
  // Player 1's strategy inside W1 on positions already bad or with all moves
  // staying in W1 is irrelevant for winning; leave those at -1 unless set.
  return sol;
}

/// Zielonka's recursive algorithm, max-even convention, with positional
/// strategies on both winning regions. Stuck positions lose for their owner
/// (handled by routing them to internal sinks).
inline GameSolution solve_parity(const GameArena& g) {
  if (!g.parity) throw std::invalid_argument("solve_parity: arena has no parity condition");
  // extended arena with two absorbing sinks: even (P0 wins) and odd (P1 wins)
  GameArena ext = g;
  ext.bad.clear();
  const int n = g.size();
  const int sink_even = n, sink_odd = n + 1;
  ext.owner.push_back(0);
  ext.owner.push_back(0);
  ext.succ.push_back({sink_even});
  ext.succ.push_back({sink_odd});
  ext.priority.push_back(0);
  ext.priority.push_back(1);
  for (int v = 0; v < n; ++v)
    if (ext.succ[static_cast<size_t>(v)].empty())
      ext.succ[static_cast<size_t>(v)].push_back(ext.owner[static_cast<size_t>(v)] == 0
                                                     ? sink_odd
                                                     : sink_even);
  const int m = ext.size();
  GameSolution sol;
  sol.winner.assign(static_cast<size_t>(m), 0);
  sol.strategy[0].assign(static_cast<size_t>(m), -1);
  sol.strategy[1].assign(static_cast<size_t>(m), -1);

  std::function<void(std::vector<char>)> solve = [&](std::vector<char> active) {
    int top = -1;
    for (int v = 0; v < m; ++v)
      if (active[static_cast<size_t>(v)]) top = std::max(top, ext.priority[static_cast<size_t>(v)]);
    if (top == -1) return;
    const int player = (top % 2 == 0) ? 0 : 1;
    std::vector<char> target(static_cast<size_t>(m), 0);
    for (int v = 0; v < m; ++v)
      target[static_cast<size_t>(v)] =
          (active[static_cast<size_t>(v)] && ext.priority[static_cast<size_t>(v)] == top) ? 1 : 0;
    std::vector<int> astrat(static_cast<size_t>(m), -1);
    std::vector<char> attr = detail::attractor(ext, active, target, player, &astrat);
    std::vector<char> rest = active;
    for (int v = 0; v < m; ++v)
      if (attr[static_cast<size_t>(v)]) rest[static_cast<size_t>(v)] = 0;
    solve(rest);
    bool opponent_empty = true;
    for (int v = 0; v < m; ++v)
      if (rest[static_cast<size_t>(v)] && sol.winner[static_cast<size_t>(v)] == 1 - player) {
        opponent_empty = false;
        break;
      }
    if (opponent_empty) {
      for (int v = 0; v < m; ++v) {
        if (!active[static_cast<size_t>(v)]) continue;
        sol.winner[static_cast<size_t>(v)] = static_cast<char>(player);
        if (ext.owner[static_cast<size_t>(v)] != player) continue;
        if (attr[static_cast<size_t>(v)] && !target[static_cast<size_t>(v)]) {
          sol.strategy[player][static_cast<size_t>(v)] = astrat[static_cast<size_t>(v)];
        } else if (target[static_cast<size_t>(v)]) {
          for (int w : ext.succ[static_cast<size_t>(v)])
            if (active[static_cast<size_t>(w)]) {
              sol.strategy[player][static_cast<size_t>(v)] = w;
              break;
            }
        }
        // positions in `rest` keep the strategy computed by the recursion
      }
      return;
    }
    std::vector<char> opp_target(static_cast<size_t>(m), 0);
    for (int v = 0; v < m; ++v)
      opp_target[static_cast<size_t>(v)] =
          (rest[static_cast<size_t>(v)] && sol.winner[static_cast<size_t>(v)] == 1 - player) ? 1 : 0;
    std::vector<int> bstrat(static_cast<size_t>(m), -1);
    std::vector<char> battr = detail::attractor(ext, active, opp_target, 1 - player, &bstrat);
    std::vector<char> rest2 = active;
    for (int v = 0; v < m; ++v)
      if (battr[static_cast<size_t>(v)]) rest2[static_cast<size_t>(v)] = 0;
    // opponent wins battr: attractor strategy outside the target, recursion's
    // strategy inside it
    for (int v = 0; v < m; ++v) {
      if (!battr[static_cast<size_t>(v)]) continue;
      sol.winner[static_cast<size_t>(v)] = static_cast<char>(1 - player);
      if (ext.owner[static_cast<size_t>(v)] == 1 - player && !opp_target[static_cast<size_t>(v)])
        sol.strategy[1 - player][static_cast<size_t>(v)] = bstrat[static_cast<size_t>(v)];
    }
    solve(rest2);
  };
  std::vector<char> all(static_cast<size_t>(m), 1);
  solve(all);
  sol.winner.resize(static_cast<size_t>(n));
  sol.strategy[0].resize(static_cast<size_t>(n));
  sol.strategy[1].resize(static_cast<size_t>(n));
  // strategies pointing at a sink mean "any move"; mark as none
  for (int v = 0; v < n; ++v)
    for (int p = 0; p < 2; ++p)
      if (sol.strategy[p][static_cast<size_t>(v)] >= n)
        sol.strategy[p][static_cast<size_t>(v)] = -1;
  return sol;
}

}  // namespace autwidth
