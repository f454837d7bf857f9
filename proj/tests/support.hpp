#pragma once

#include <random>

#include "autwidth/constructions.hpp"
#include "autwidth/determinize.hpp"
#include "autwidth/game.hpp"
#include "autwidth/hardness.hpp"
#include "autwidth/lasso.hpp"
#include "autwidth/run_analysis.hpp"

namespace support {

using namespace autwidth;

// ---------------------------------------------------------------------------
// fixed example automata

/// Two states over {a}: 0 --a--> {0, 1}, accepting {1}. Width 2.
inline Automaton e1() {
  Automaton a(Alphabet({"a"}), 2, 0, WordMode::Finite, Acceptance::finite_reach({1}));
  a.add_transition(0, 0, 0);
  a.add_transition(0, 0, 1);
  return a;
}

/// The width-2 family: L = Sigma* a Sigma^{>=m} over {a, b}, with two guessing
/// branches p_1..p_m (exit on b) and q_1..q_m (exit on a).
inline Automaton fig1(int m) {
  // states: 0 = s, 1..m = p_i, m+1..2m = q_i, 2m+1 = t
  const State s = 0, t = 2 * m + 1;
  auto p = [&](int i) { return i; };
  auto q = [&](int i) { return m + i; };
  Automaton a(Alphabet({"a", "b"}), 2 * m + 2, s, WordMode::Finite,
              Acceptance::finite_reach({t}));
  const Symbol A = 0, B = 1;
  a.add_transition(s, A, s);
  a.add_transition(s, B, s);
  a.add_transition(s, A, p(1));
  a.add_transition(s, A, q(1));
  for (int i = 1; i < m; ++i)
    for (Symbol x : {A, B}) {
      a.add_transition(p(i), x, p(i + 1));
      a.add_transition(q(i), x, q(i + 1));
    }
  a.add_transition(p(m), A, p(m));
  a.add_transition(p(m), B, t);
  a.add_transition(q(m), B, q(m));
  a.add_transition(q(m), A, t);
  a.add_transition(t, A, t);
  a.add_transition(t, B, t);
  return a;
}

/// The n-letter fan where the full powerset construction has 3 states but the
/// k-subset construction has C(n,k)+2.
inline Automaton fig2(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
  const State s = 0, t = n + 1;
  Automaton a(Alphabet(names), n + 2, s, WordMode::Finite, Acceptance::finite_reach({t}));
  for (Symbol x = 0; x < n; ++x)
    for (int i = 1; i <= n; ++i) a.add_transition(s, x, i);
  for (int i = 1; i <= n; ++i) a.add_transition(i, static_cast<Symbol>(i - 1), t);
  return a;
}

/// Width 1, exponentially ambiguous: both states accepting, complete
/// transitions between them, L = Sigma*.
inline Automaton sec41() {
  Automaton a(Alphabet({"0", "1"}), 2, 0, WordMode::Finite, Acceptance::finite_reach({0, 1}));
  for (Symbol s : {0, 1})
    for (State p : {0, 1})
      for (State q : {0, 1}) a.add_transition(p, s, q);
  return a;
}

/// Width n, unambiguous: L = Sigma* 0 Sigma^{n-1}.
inline Automaton sec42(int n) {
  Automaton a(Alphabet({"0", "1"}), n + 1, 0, WordMode::Finite, Acceptance::finite_reach({n}));
  a.add_transition(0, 0, 0);
  a.add_transition(0, 1, 0);
  a.add_transition(0, 0, 1);
  for (int i = 1; i < n; ++i) {
    a.add_transition(i, 0, i + 1);
    a.add_transition(i, 1, i + 1);
  }
  return a;
}

/// Width n, exponentially ambiguous: L_n = (0 + (0 1*)^{n-1} 0)*.
inline Automaton sec43(int n) {
  Automaton a(Alphabet({"0", "1"}), n, 0, WordMode::Finite, Acceptance::finite_reach({0}));
  a.add_transition(0, 0, 0);
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n)
      a.add_transition(i, 0, i + 1);
    else
      a.add_transition(i, 0, 0);
    if (i > 0) a.add_transition(i, 1, i);
  }
  return a;
}

inline DiGraph fig3_graph() {
  return DiGraph{4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 1}, {4, 3}}};
}

inline GcInstance running_gc() {
  GcInstance gc;
  gc.x0 = {"x", "y"};
  gc.x1 = {"z"};
  gc.clauses.push_back({GcLiteral{"x", false}, GcLiteral{"y", false}, GcLiteral{"z", false},
                        GcLiteral{"t", false}});
  gc.clauses.push_back({GcLiteral{"x", true}, GcLiteral{"y", false}, GcLiteral{"z", true},
                        GcLiteral{"t", true}});
  for (const char* v : {"x", "y", "z", "t"}) gc.alpha_init[v] = true;
  return gc;
}

// ---------------------------------------------------------------------------
// seeded random instances (raw engine output only, for cross-platform
// determinism)

inline Automaton random_nfa(uint32_t seed, int max_states, int alpha_size,
                            bool complete_rows = false) {
  std::mt19937 rng(seed);
  int n = 1 + static_cast<int>(rng() % static_cast<uint32_t>(max_states));
  std::vector<std::string> names;
  for (int i = 0; i < alpha_size; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  StateSet acc;
  for (State q = 0; q < n; ++q)
    if (rng() % 2) acc.push_back(q);
  Automaton a(Alphabet(names), n, 0, WordMode::Finite, Acceptance::finite_reach(acc));
  for (State q = 0; q < n; ++q)
    for (Symbol s = 0; s < alpha_size; ++s) {
      int added = 0;
      for (State t = 0; t < n; ++t)
        if (rng() % 5 < 2) {
          a.add_transition(q, s, t);
          ++added;
        }
      if (complete_rows && added == 0)
        a.add_transition(q, s, static_cast<State>(rng() % static_cast<uint32_t>(n)));
    }
  return a;
}

inline Automaton random_nca(uint32_t seed, int max_states, int alpha_size) {
  Automaton f = random_nfa(seed, max_states, alpha_size);
  Automaton a(f.alphabet(), f.state_count(), f.initial(), WordMode::Infinite,
              Acceptance::cobuchi(f.acceptance().states));
  for (State q = 0; q < f.state_count(); ++q)
    for (Symbol s = 0; s < f.alphabet().size(); ++s)
      for (State t : f.successors(q, s)) a.add_transition(q, s, t);
  return a;
}

inline Automaton random_nba(uint32_t seed, int max_states, int alpha_size) {
  Automaton f = random_nfa(seed, max_states, alpha_size);
  Automaton a(f.alphabet(), f.state_count(), f.initial(), WordMode::Infinite,
              Acceptance::buchi(f.acceptance().states));
  for (State q = 0; q < f.state_count(); ++q)
    for (Symbol s = 0; s < f.alphabet().size(); ++s)
      for (State t : f.successors(q, s)) a.add_transition(q, s, t);
  return a;
}

inline DiGraph random_strongly_connected_digraph(uint32_t seed, int max_vertices) {
  std::mt19937 rng(seed);
  int n = 2 + static_cast<int>(rng() % static_cast<uint32_t>(max_vertices - 1));
  DiGraph g;
  g.vertex_count = n;
  // a random ring guarantees strong connectivity, then extra edges
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i + 1;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[static_cast<size_t>(i)],
              perm[static_cast<size_t>(rng() % static_cast<uint32_t>(i + 1))]);
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    edges.emplace(perm[static_cast<size_t>(i)], perm[static_cast<size_t>((i + 1) % n)]);
  int extra = static_cast<int>(rng() % static_cast<uint32_t>(n + 1));
  for (int i = 0; i < extra; ++i) {
    int u = 1 + static_cast<int>(rng() % static_cast<uint32_t>(n));
    int v = 1 + static_cast<int>(rng() % static_cast<uint32_t>(n));
    if (u != v) edges.emplace(u, v);
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

// ---------------------------------------------------------------------------
// word-level oracles

inline std::vector<std::vector<Symbol>> all_words(int alpha_size, int max_len) {
  std::vector<std::vector<Symbol>> out{{}};
  size_t lo = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i)
      for (Symbol s = 0; s < alpha_size; ++s) {
        std::vector<Symbol> w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    lo = hi;
  }
  return out;
}

inline std::vector<UPWord> all_upwords(int alpha_size, int max_prefix, int max_period) {
  std::vector<UPWord> out;
  for (const auto& u : all_words(alpha_size, max_prefix))
    for (const auto& v : all_words(alpha_size, max_period))
      if (!v.empty()) out.push_back(UPWord{u, v});
  return out;
}

/// Number of accepting runs by explicit run enumeration (exponential; the
/// independent oracle for the dynamic-programming count).
inline BigInt enumerate_accepting_runs(const Automaton& a, const std::vector<Symbol>& w) {
  BigInt count = 0;
  std::function<void(State, size_t)> rec = [&](State q, size_t i) {
    if (i == w.size()) {
      if (a.is_accepting_state(q)) ++count;
      return;
    }
    for (State t : a.successors(q, w[i])) rec(t, i + 1);
  };
  rec(a.initial(), 0);
  return count;
}

inline bool words_agree(const Automaton& a, const Automaton& b, int max_len) {
  for (const auto& w : all_words(a.alphabet().size(), max_len))
    if (member_finite(a, w) != member_finite(b, w)) return false;
  return true;
}

inline bool upwords_agree(const Automaton& a, const Automaton& b, int max_prefix,
                          int max_period) {
  for (const auto& w : all_upwords(a.alphabet().size(), max_prefix, max_period))
    if (member_up(a, w) != member_up(b, w)) return false;
  return true;
}

/// Exact NFA language inclusion via the joint powerset walk.
inline bool nfa_inclusion(const Automaton& a, const Automaton& b) {
  std::map<std::pair<StateSet, StateSet>, char> seen;
  std::deque<std::pair<StateSet, StateSet>> bfs;
  std::pair<StateSet, StateSet> init{{a.initial()}, {b.initial()}};
  seen[init] = 1;
  bfs.push_back(init);
  while (!bfs.empty()) {
    auto [sa, sb] = bfs.front();
    bfs.pop_front();
    if (intersects(sa, a.acceptance().states) && !intersects(sb, b.acceptance().states))
      return false;
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      std::pair<StateSet, StateSet> nx{a.post(sa, s), b.post(sb, s)};
      if (nx.first.empty()) continue;
      if (seen.emplace(nx, 1).second) bfs.push_back(std::move(nx));
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// game oracles: Player-0 positional strategy enumeration with an exact
// best-response analysis for Player 1

namespace gameoracle {

struct Restricted {
  // graph after fixing player 0's positional strategy
  const GameArena& g;
  const std::vector<int>& sigma0;

  std::vector<int> succs(int v) const {
    if (g.owner[static_cast<size_t>(v)] == 0) {
      if (g.succ[static_cast<size_t>(v)].empty()) return {};
      return {sigma0[static_cast<size_t>(v)]};
    }
    return g.succ[static_cast<size_t>(v)];
  }
};

inline bool p1_beats_safety(const Restricted& r) {
  // player 1 wins iff some bad or stuck-player-0 position is reachable
  std::vector<char> seen(r.g.owner.size(), 0);
  std::deque<int> bfs{r.g.initial};
  seen[static_cast<size_t>(r.g.initial)] = 1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop_front();
    if (r.g.bad[static_cast<size_t>(v)]) return true;
    if (r.g.owner[static_cast<size_t>(v)] == 0 && r.g.succ[static_cast<size_t>(v)].empty())
      return true;
    for (int w : r.succs(v))
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        bfs.push_back(w);
      }
  }
  return false;
}

inline bool p1_beats_parity(const Restricted& r) {
  const int n = static_cast<int>(r.g.owner.size());
  std::vector<char> reach(static_cast<size_t>(n), 0);
  std::deque<int> bfs{r.g.initial};
  reach[static_cast<size_t>(r.g.initial)] = 1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop_front();
    if (r.g.owner[static_cast<size_t>(v)] == 0 && r.g.succ[static_cast<size_t>(v)].empty())
      return true;  // player 0 stuck
    for (int w : r.succs(v))
      if (!reach[static_cast<size_t>(w)]) {
        reach[static_cast<size_t>(w)] = 1;
        bfs.push_back(w);
      }
  }
  // reachable cycle whose maximum priority is odd?
  int maxp = 0;
  for (int v = 0; v < n; ++v)
    if (reach[static_cast<size_t>(v)]) maxp = std::max(maxp, r.g.priority[static_cast<size_t>(v)]);
  for (int p = 1; p <= maxp; p += 2) {
    // nodes with priority <= p, cycle through a priority-p node
    std::vector<char> allowed(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
      allowed[static_cast<size_t>(v)] =
          (reach[static_cast<size_t>(v)] && r.g.priority[static_cast<size_t>(v)] <= p) ? 1 : 0;
    for (int pivot = 0; pivot < n; ++pivot) {
      if (!allowed[static_cast<size_t>(pivot)] || r.g.priority[static_cast<size_t>(pivot)] != p)
        continue;
      // BFS from pivot within allowed, back to pivot
      std::vector<char> seen(static_cast<size_t>(n), 0);
      std::deque<int> q;
      for (int w : r.succs(pivot))
        if (allowed[static_cast<size_t>(w)] && !seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          q.push_back(w);
        }
      bool found = false;
      if (seen[static_cast<size_t>(pivot)]) found = true;
      while (!q.empty() && !found) {
        int v = q.front();
        q.pop_front();
        for (int w : r.succs(v)) {
          if (w == pivot) {
            found = true;
            break;
          }
          if (allowed[static_cast<size_t>(w)] && !seen[static_cast<size_t>(w)]) {
            seen[static_cast<size_t>(w)] = 1;
            q.push_back(w);
          }
        }
      }
      if (found) return true;
    }
  }
  return false;
}

/// Winner at the initial position by enumerating all positional strategies of
/// Player 0 and checking Player 1's exact best response against each.
inline int winner_by_enumeration(const GameArena& g) {
  std::vector<int> p0_nodes;
  for (int v = 0; v < g.size(); ++v)
    if (g.owner[static_cast<size_t>(v)] == 0 && !g.succ[static_cast<size_t>(v)].empty())
      p0_nodes.push_back(v);
  std::vector<int> sigma0(g.owner.size(), -1);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == p0_nodes.size()) {
      Restricted r{g, sigma0};
      bool beaten = g.parity ? p1_beats_parity(r) : p1_beats_safety(r);
      return !beaten;
    }
    for (int w : g.succ[static_cast<size_t>(p0_nodes[i])]) {
      sigma0[static_cast<size_t>(p0_nodes[i])] = w;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0) ? 0 : 1;
}

/// Winner by enumerating both players' positional strategies and analysing
/// the unique induced play; only for very small arenas.
inline int winner_by_pair_enumeration(const GameArena& g) {
  std::vector<int> nodes0, nodes1;
  for (int v = 0; v < g.size(); ++v) {
    if (g.succ[static_cast<size_t>(v)].empty()) continue;
    (g.owner[static_cast<size_t>(v)] == 0 ? nodes0 : nodes1).push_back(v);
  }
  std::vector<int> sig(g.owner.size(), -1);
  auto play_winner = [&]() {
    std::vector<int> when(g.owner.size(), -1);
    std::vector<int> path;
    int v = g.initial;
    while (true) {
      if (when[static_cast<size_t>(v)] != -1) {
        // lasso; decide on the cycle / visited prefix
        if (!g.parity) {
          for (int x : path)
            if (g.bad[static_cast<size_t>(x)]) return 1;
          return 0;
        }
        int start = when[static_cast<size_t>(v)];
        int maxp = 0;
        for (size_t i = static_cast<size_t>(start); i < path.size(); ++i)
          maxp = std::max(maxp, g.priority[static_cast<size_t>(path[i])]);
        return maxp % 2 == 0 ? 0 : 1;
      }
      when[static_cast<size_t>(v)] = static_cast<int>(path.size());
      path.push_back(v);
      if (!g.parity && g.bad[static_cast<size_t>(v)]) return 1;
      if (g.succ[static_cast<size_t>(v)].empty())
        return g.owner[static_cast<size_t>(v)] == 0 ? 1 : 0;
      v = sig[static_cast<size_t>(v)];
    }
  };
  std::function<bool(size_t)> try0 = [&](size_t i) -> bool {
    if (i == nodes0.size()) {
      // all player-1 responses must lose
      std::function<bool(size_t)> try1 = [&](size_t j) -> bool {
        if (j == nodes1.size()) return play_winner() == 0;
        for (int w : g.succ[static_cast<size_t>(nodes1[j])]) {
          sig[static_cast<size_t>(nodes1[j])] = w;
          if (!try1(j + 1)) return false;
        }
        return true;
      };
      return try1(0);
    }
    for (int w : g.succ[static_cast<size_t>(nodes0[i])]) {
      sig[static_cast<size_t>(nodes0[i])] = w;
      if (try0(i + 1)) return true;
    }
    return false;
  };
  return try0(0) ? 0 : 1;
}

inline GameArena random_arena(uint32_t seed, int max_positions, int max_priority,
                              bool parity) {
  std::mt19937 rng(seed);
  GameArena g;
  g.parity = parity;
  int n = 1 + static_cast<int>(rng() % static_cast<uint32_t>(max_positions));
  for (int v = 0; v < n; ++v) g.add_position(static_cast<char>(rng() % 2));
  for (int v = 0; v < n; ++v) {
    int deg = static_cast<int>(rng() % 4);  // dead positions allowed
    std::set<int> sc;
    for (int i = 0; i < deg; ++i) sc.insert(static_cast<int>(rng() % static_cast<uint32_t>(n)));
    g.succ[static_cast<size_t>(v)].assign(sc.begin(), sc.end());
    if (parity)
      g.priority[static_cast<size_t>(v)] =
          static_cast<int>(rng() % static_cast<uint32_t>(max_priority + 1));
    else
      g.bad[static_cast<size_t>(v)] = (rng() % 5 == 0) ? 1 : 0;
  }
  g.initial = static_cast<int>(rng() % static_cast<uint32_t>(n));
  return g;
}

}  // namespace gameoracle

// ---------------------------------------------------------------------------
// direct omega width game (test oracle): pebble positions extended with a
// breakpoint monitor of the runs inside the pebble tube and the breakpoint
// referee for language membership, solved as a max-even parity game

inline bool oracle_width_nca_at_most(const Automaton& a, int k) {
  const StateSet& f = a.acceptance().states;
  std::vector<BreakpointState> ref_pairs;
  Automaton referee = breakpoint_determinize(a, &ref_pairs);
  struct Pos {
    StateSet x;        // pebbles
    StateSet s, t;     // tube monitor (runs inside the tube, breakpoint part)
    State ref;         // referee state
    Symbol sym;        // pending letter, -1 on full positions
    bool operator<(const Pos& o) const {
      return std::tie(x, s, t, ref, sym) < std::tie(o.x, o.s, o.t, o.ref, o.sym);
    }
  };
  GameArena arena;
  arena.parity = true;
  std::map<Pos, int> index;
  std::vector<Pos> nodes;
  std::vector<int> pos_of;
  auto intern = [&](Pos p, char owner) {
    auto [it, fresh] = index.emplace(std::move(p), static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back(it->first);
      int v = arena.add_position(owner);
      if (owner == 1) {
        const Pos& q = it->first;
        bool ref_rejecting = ref_pairs[static_cast<size_t>(q.ref)].y.empty();
        arena.priority[static_cast<size_t>(v)] = ref_rejecting ? 2 : (q.t.empty() ? 1 : 0);
      }
      pos_of.push_back(v);
    }
    return it->second;
  };
  StateSet init{a.initial()};
  intern(Pos{init, init, init, referee.initial(), -1}, 1);
  size_t done = 0;
  while (done < nodes.size()) {
    size_t i = done++;
    Pos cur = nodes[i];
    if (cur.sym == -1) {  // player 1 picks a letter
      for (Symbol s = 0; s < a.alphabet().size(); ++s) {
        Pos nxt = cur;
        nxt.sym = s;
        int u = intern(std::move(nxt), 0);
        arena.succ[static_cast<size_t>(pos_of[i])].push_back(pos_of[static_cast<size_t>(u)]);
      }
    } else {  // player 0 picks a pebble subset
      Symbol s = cur.sym;
      StateSet image = a.post(cur.x, s);
      State ref2 = referee.successors(cur.ref, s)[0];
      StateSet s_img = a.post(cur.s, s);
      StateSet t_img = cur.t.empty() ? StateSet{} : set_intersection(a.post(cur.t, s), f);
      for (int size = 0; size <= std::min<int>(k, static_cast<int>(image.size())); ++size)
        for (StateSet& x2 : detail::k_subsets_of(image, size)) {
          StateSet s2 = set_intersection(s_img, x2);
          StateSet t2 = cur.t.empty() ? s2 : set_intersection(t_img, x2);
          int w = intern(Pos{x2, s2, t2, ref2, -1}, 1);
          arena.succ[static_cast<size_t>(pos_of[i])].push_back(pos_of[static_cast<size_t>(w)]);
        }
    }
  }
  arena.initial = pos_of[0];
  return solve_parity(arena).player0_wins_initial(arena);
}

// ---------------------------------------------------------------------------
// Hamiltonian cycle oracle (exhaustive permutation search)

inline bool has_hamiltonian_cycle(const DiGraph& g) {
  std::set<std::pair<int, int>> es(g.edges.begin(), g.edges.end());
  std::vector<int> rest;
  for (int v = 2; v <= g.vertex_count; ++v) rest.push_back(v);
  if (g.vertex_count == 1) return es.count({1, 1}) != 0;
  bool found = false;
  std::function<void()> dummy;
  std::sort(rest.begin(), rest.end());
  do {
    bool ok = es.count({1, rest[0]}) != 0;
    for (size_t i = 0; ok && i + 1 < rest.size(); ++i)
      ok = es.count({rest[i], rest[i + 1]}) != 0;
    ok = ok && es.count({rest.back(), 1}) != 0;
    if (ok) {
      found = true;
      break;
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return found;
}

}  // namespace support
