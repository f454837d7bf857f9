#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

#include "autwidth/determinize.hpp"

namespace autwidth {

/// Literal over a named variable; `t` is the reserved turn variable.
struct GcLiteral {
  std::string var;
  bool negated = false;
  bool operator==(const GcLiteral& o) const { return var == o.var && negated == o.negated; }
};

inline GcLiteral negate(const GcLiteral& l) { return {l.var, !l.negated}; }

/// Two-player 4-CNF valuation game instance: Player tau rewrites its own
/// variables and the turn variable t is set to tau; falsifying the formula on
/// your own move loses immediately.
struct GcInstance {
  std::vector<std::string> x0;  // Player 0's variables
  std::vector<std::string> x1;  // Player 1's variables
  std::vector<std::array<GcLiteral, 4>> clauses;
  std::map<std::string, bool> alpha_init;  // total over x0, x1 and t

  std::vector<std::string> variables() const {
    std::vector<std::string> v(x0);
    v.insert(v.end(), x1.begin(), x1.end());
    v.push_back("t");
    return v;
  }

  void check() const {
    std::set<std::string> names;
    for (const auto& v : x0)
      if (!names.insert(v).second || v == "t")
        throw std::invalid_argument("gc: duplicate or reserved variable '" + v + "'");
    for (const auto& v : x1)
      if (!names.insert(v).second || v == "t")
        throw std::invalid_argument("gc: duplicate or reserved variable '" + v + "'");
    names.insert("t");
    for (const auto& cl : clauses)
      for (const auto& l : cl)
        if (!names.count(l.var))
          throw std::invalid_argument("gc: unknown variable '" + l.var + "' in clause");
    for (const auto& v : names)
      if (!alpha_init.count(v))
        throw std::invalid_argument("gc: initial valuation misses '" + v + "'");
  }
};

namespace detail {

inline bool formula_true(const GcInstance& gc, const std::vector<std::string>& vars,
                         uint32_t valuation) {
  auto value = [&](const std::string& v) {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == v) return (valuation >> i) & 1u;
    throw std::logic_error("gc: variable lookup failed");
  };
  for (const auto& cl : gc.clauses) {
    bool sat = false;
    for (const auto& l : cl)
      if ((value(l.var) != 0) != l.negated) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

}  // namespace detail

struct GcSolution {
  int winner = 0;
  // positional strategy of the winner: position (turn, valuation) -> chosen
  // successor valuation; valuations are bit vectors over variables() order
  std::map<std::pair<int, uint32_t>, uint32_t> strategy;
};

/// Exact solution of the valuation game by attractor computation on the
/// 2 * 2^|V| position graph. Player 1 moves first; a player with no
/// non-falsifying move is stuck and loses.
inline GcSolution solve_gc(const GcInstance& gc) {
  gc.check();
  std::vector<std::string> vars = gc.variables();
  if (vars.size() > 20) throw std::length_error("solve_gc: more than 20 variables");
  const size_t nv = vars.size();
  auto var_bit = [&](const std::string& v) {
    for (size_t i = 0; i < nv; ++i)
      if (vars[i] == v) return i;
    throw std::logic_error("gc: variable lookup failed");
  };
  const size_t t_bit = var_bit("t");
  uint32_t init_val = 0;
  for (size_t i = 0; i < nv; ++i)
    if (gc.alpha_init.at(vars[i])) init_val |= (1u << i);
  auto moves = [&](int turn, uint32_t val) {
    const std::vector<std::string>& own = turn == 0 ? gc.x0 : gc.x1;
    std::vector<size_t> bits;
    for (const auto& v : own) bits.push_back(var_bit(v));
    uint32_t base = val;
    for (size_t b : bits) base &= ~(1u << b);
    if (turn == 1)
      base |= (1u << t_bit);
    else
      base &= ~(1u << t_bit);
    std::vector<uint32_t> out;
    for (uint32_t m = 0; m < (1u << bits.size()); ++m) {
      uint32_t v2 = base;
      for (size_t j = 0; j < bits.size(); ++j)
        if ((m >> j) & 1u) v2 |= (1u << bits[j]);
      if (detail::formula_true(gc, vars, v2)) out.push_back(v2);
    }
    return out;
  };
  // explore positions reachable from (1, alpha_init)
  std::map<std::pair<int, uint32_t>, std::vector<uint32_t>> adj;
  std::deque<std::pair<int, uint32_t>> bfs{{1, init_val}};
  adj[{1, init_val}];
  while (!bfs.empty()) {
    auto [turn, val] = bfs.front();
    bfs.pop_front();
    std::vector<uint32_t> succ = moves(turn, val);
    for (uint32_t v2 : succ)
      if (adj.emplace(std::make_pair(1 - turn, v2), std::vector<uint32_t>{}).second)
        bfs.push_back({1 - turn, v2});
    adj[{turn, val}] = std::move(succ);
  }
  // Player 1 wins a position iff he can force the play into a stuck Player-0
  // position; infinite play is a Player-0 win
  std::set<std::pair<int, uint32_t>> win1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [pos, succ] : adj) {
      if (win1.count(pos)) continue;
      const int next_turn = 1 - pos.first;
      bool w;
      if (pos.first == 0)
        w = succ.empty() || std::all_of(succ.begin(), succ.end(), [&](uint32_t v2) {
              return win1.count({next_turn, v2}) != 0;
            });
      else
        w = !succ.empty() && std::any_of(succ.begin(), succ.end(), [&](uint32_t v2) {
              return win1.count({next_turn, v2}) != 0;
            });
      if (w) {
        win1.insert(pos);
        changed = true;
      }
    }
  }
  GcSolution sol;
  sol.winner = win1.count({1, init_val}) ? 1 : 0;
  for (const auto& [pos, succ] : adj) {
    auto [turn, val] = pos;
    if (turn != sol.winner || succ.empty()) continue;
    bool pos_won_by_winner = sol.winner == 1 ? win1.count(pos) != 0 : win1.count(pos) == 0;
    if (!pos_won_by_winner) continue;
    for (uint32_t v2 : succ) {
      bool next_ok = sol.winner == 1 ? win1.count({1 - turn, v2}) != 0
                                     : win1.count({1 - turn, v2}) == 0;
      if (next_ok) {
        sol.strategy[pos] = v2;
        break;
      }
    }
  }
  return sol;
}

/// Directed graph on vertices [1, n].
struct DiGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  void check() const {
    for (auto [u, v] : edges)
      if (u < 1 || u > vertex_count || v < 1 || v > vertex_count)
        throw std::invalid_argument("graph: edge endpoint out of range");
  }
};

inline bool is_strongly_connected(const DiGraph& g) {
  if (g.vertex_count == 0) return false;
  auto reach = [&](int start, bool reversed) {
    std::vector<char> seen(static_cast<size_t>(g.vertex_count) + 1, 0);
    std::deque<int> bfs{start};
    seen[static_cast<size_t>(start)] = 1;
    int count = 1;
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop_front();
      for (auto [x, y] : g.edges) {
        if (reversed) std::swap(x, y);
        if (x == u && !seen[static_cast<size_t>(y)]) {
          seen[static_cast<size_t>(y)] = 1;
          ++count;
          bfs.push_back(y);
        }
      }
    }
    return count == g.vertex_count;
  };
  return reach(1, false) && reach(1, true);
}

namespace detail {

struct GcAlphabet {
  std::vector<std::string> names;
  std::map<std::string, Symbol> index;
  void add(const std::string& n) {
    index.emplace(n, static_cast<Symbol>(names.size()));
    names.push_back(n);
  }
  Symbol operator[](const std::string& n) const { return index.at(n); }
};

inline std::string lit_name(const GcLiteral& l) { return l.negated ? "-" + l.var : l.var; }

/// Alphabet of the width reduction, grouped as {a, f_t}, validation letters
/// a_l, Player-1 valuation letters f_l, initialisation letters d_l, clause
/// challenges c_i and variable challenges e_v.
inline GcAlphabet reduction_alphabet(const GcInstance& gc) {
  GcAlphabet al;
  std::vector<GcLiteral> lits;
  for (const auto& v : gc.variables()) {
    lits.push_back({v, false});
    lits.push_back({v, true});
  }
  al.add("a");
  al.add("f_t");
  for (const auto& l : lits) al.add("a_" + lit_name(l));
  for (const auto& v : gc.x1) {
    al.add("f_" + v);
    al.add("f_-" + v);
  }
  for (const auto& l : lits) al.add("d_" + lit_name(l));
  for (size_t i = 0; i < gc.clauses.size(); ++i) al.add("c_" + std::to_string(i + 1));
  for (const auto& v : gc.variables()) al.add("e_" + v);
  return al;
}

}  // namespace detail

/// The valuation gadget automaton B of the width reduction: a safety NFA
/// (every state accepting) whose 2|V| literal states carry valuations as
/// pebble positions. Besides the rows of the transition table, every letter
/// a_l keeps unrelated literal states unchanged -- the validation step reads
/// through pebbles on other variables.
inline Automaton build_b(const GcInstance& gc) {
  gc.check();
  detail::GcAlphabet al = detail::reduction_alphabet(gc);
  std::vector<std::string> vars = gc.variables();
  std::vector<GcLiteral> lits;
  for (const auto& v : vars) {
    lits.push_back({v, false});
    lits.push_back({v, true});
  }
  auto is_x0 = [&](const GcLiteral& l) {
    return std::find(gc.x0.begin(), gc.x0.end(), l.var) != gc.x0.end();
  };
  auto is_x1 = [&](const GcLiteral& l) {
    return std::find(gc.x1.begin(), gc.x1.end(), l.var) != gc.x1.end();
  };
  const State q0 = 0, qtop = 1;
  auto qlit = [&](const GcLiteral& l) -> State {
    for (size_t i = 0; i < lits.size(); ++i)
      if (lits[i] == l) return static_cast<State>(2 + i);
    throw std::logic_error("build_b: literal lookup failed");
  };
  const int n = 2 + 2 * static_cast<int>(vars.size());
  StateSet all_states;
  for (State q = 0; q < n; ++q) all_states.push_back(q);
  Automaton b(Alphabet(al.names), n, q0, WordMode::Finite,
              Acceptance::finite_reach(all_states));
  auto init_lit = [&](const std::string& var) {
    return GcLiteral{var, !gc.alpha_init.at(var)};
  };
  for (const GcLiteral& l : lits) {
    const State ql = qlit(l);
    b.add_transition(q0, al["a"], ql);  // any initial valuation
    for (const GcLiteral& lp : lits) {  // d letters: reset to alpha_init / escape
      if (lp == l)
        b.add_transition(ql, al["d_" + detail::lit_name(lp)], qtop);
      else
        b.add_transition(ql, al["d_" + detail::lit_name(lp)], qlit(init_lit(l.var)));
    }
    // f letters set one Player-1 variable (or t); others are unchanged
    for (const GcLiteral& lp : lits) {
      std::string fname;
      if (is_x1(lp))
        fname = "f_" + detail::lit_name(lp);
      else if (lp.var == "t" && !lp.negated)
        fname = "f_t";
      else
        continue;
      b.add_transition(ql, al[fname], lp.var == l.var ? qlit(lp) : ql);
    }
    // the letter a: free choice on X0, X1 unchanged, t reset to false
    if (is_x0(l)) {
      b.add_transition(ql, al["a"], qlit({l.var, false}));
      b.add_transition(ql, al["a"], qlit({l.var, true}));
    } else if (is_x1(l)) {
      b.add_transition(ql, al["a"], ql);
    } else {
      b.add_transition(ql, al["a"], qlit({"t", true}));
    }
    // a_l validation: own literal loops, its negation escapes, others hold
    for (const GcLiteral& lp : lits) {
      Symbol s = al["a_" + detail::lit_name(lp)];
      if (lp == l)
        b.add_transition(ql, s, ql);
      else if (lp == negate(l))
        b.add_transition(ql, s, qtop);
      else if (lp.var != l.var)
        b.add_transition(ql, s, ql);
    }
    b.add_transition(ql, al["e_" + l.var], qtop);
    for (size_t i = 0; i < gc.clauses.size(); ++i) {
      const auto& cl = gc.clauses[i];
      if (std::find(cl.begin(), cl.end(), l) != cl.end())
        b.add_transition(ql, al["c_" + std::to_string(i + 1)], qtop);
    }
  }
  for (Symbol s = 0; s < b.alphabet().size(); ++s) b.add_transition(qtop, s, qtop);
  return b;
}

/// The scheduling automaton C: a complete DFA tracking prefixes of
///   a Sigma_D (eps+Sigma_V) ( Gamma_1^{|X1|} f_t A_1..A_n a (eps+Sigma_V) (eps+Sigma_C) )*
/// with every state accepting, including the sink that absorbs non-prefixes.
inline Automaton build_c(const GcInstance& gc) {
  gc.check();
  detail::GcAlphabet al = detail::reduction_alphabet(gc);
  const int nx1 = static_cast<int>(gc.x1.size());
  const int ncl = static_cast<int>(gc.clauses.size());
  // symbolic positions, in emission order
  // 0 init, 1 after-a, 2 hub-init (eps+V), 3 hub-plain (Gamma_1 only),
  // 4 hub-loop (V, C or Gamma_1), 5 hub-loop-after-V (C or Gamma_1),
  // 6..6+max(nx1-1,0)-1 gamma counters, then expect-f_t, v_1..v_ncl,
  // after-L_val (expects a), sink last
  const int INIT = 0, AFTER_A = 1, HUB_INIT = 2, HUB_PLAIN = 3, HUB_LOOP = 4, HUB_LOOP_V = 5;
  const int GAMMA0 = 6;                       // gamma counter j in [1, nx1-1]
  const int EXPECT_FT = GAMMA0 + std::max(nx1 - 1, 0);
  const int VAL0 = EXPECT_FT + 1;             // clause position i in [1, ncl]
  const int AFTER_VAL = VAL0 + ncl;
  const int SINK = AFTER_VAL + 1;
  const int n = SINK + 1;
  auto kind_of = [&](const std::string& name) {
    if (name == "a") return 'a';
    if (name == "f_t") return 't';
    if (name.rfind("a_", 0) == 0) return 'A';
    if (name.rfind("f_", 0) == 0) return 'G';
    if (name.rfind("d_", 0) == 0) return 'D';
    if (name.rfind("c_", 0) == 0) return 'C';
    return 'V';  // e_v
  };
  auto gamma_start = [&]() { return nx1 > 1 ? GAMMA0 + 1 - 1 : EXPECT_FT; };
  // gamma counter state after j consumed letters (1 <= j <= nx1-1): GAMMA0 + j - 1
  auto step = [&](int q, Symbol s) -> int {
    const std::string& name = al.names[static_cast<size_t>(s)];
    char k = kind_of(name);
    if (q == SINK) return SINK;
    auto hub_advance = [&]() -> int {
      if (k == 'G') return nx1 >= 1 ? (nx1 == 1 ? EXPECT_FT : gamma_start()) : SINK;
      if (k == 't' && nx1 == 0) return ncl >= 1 ? VAL0 + 1 - 1 : AFTER_VAL;
      return SINK;
    };
    switch (q) {
      case INIT:
        return k == 'a' ? AFTER_A : SINK;
      case AFTER_A:
        return k == 'D' ? HUB_INIT : SINK;
      case HUB_INIT:
        if (k == 'V') return HUB_PLAIN;
        return hub_advance();
      case HUB_PLAIN:
        return hub_advance();
      case HUB_LOOP:
        if (k == 'V') return HUB_LOOP_V;
        if (k == 'C') return HUB_PLAIN;
        return hub_advance();
      case HUB_LOOP_V:
        if (k == 'C') return HUB_PLAIN;
        return hub_advance();
      default:
        break;
    }
    if (q >= GAMMA0 && q < EXPECT_FT) {
      int j = q - GAMMA0 + 1;  // gamma letters consumed so far
      if (k == 'G') return j + 1 < nx1 ? GAMMA0 + j : EXPECT_FT;
      return SINK;
    }
    if (q == EXPECT_FT) {
      if (k == 't') return ncl >= 1 ? VAL0 : AFTER_VAL;
      return SINK;
    }
    if (q >= VAL0 && q < VAL0 + ncl) {
      int i = q - VAL0;  // clause index, 0-based
      if (k == 'A') {
        std::string lit = name.substr(2);
        for (const GcLiteral& l : gc.clauses[static_cast<size_t>(i)])
          if (detail::lit_name(l) == lit)
            return i + 1 < ncl ? VAL0 + i + 1 : AFTER_VAL;
      }
      return SINK;
    }
    if (q == AFTER_VAL) return k == 'a' ? HUB_LOOP : SINK;
    throw std::logic_error("build_c: bad state");
  };
  StateSet all_states;
  for (State q = 0; q < n; ++q) all_states.push_back(q);
  Automaton c(Alphabet(al.names), n, INIT, WordMode::Finite,
              Acceptance::finite_reach(all_states));
  for (State q = 0; q < n; ++q)
    for (Symbol s = 0; s < c.alphabet().size(); ++s) c.add_transition(q, s, step(q, s));
  return c;
}

struct Reduction {
  Automaton automaton;  // universal safety NFA
  int k = 0;            // target width bound |V|
  State sink = 0;       // the merged accepting sink
};

/// Cartesian product of B and C with all states of the form (q, sink_C) or
/// (q_top, q') merged into one accepting sink, plus escape transitions to the
/// sink wherever C falls off the prefix language. Universality is asserted.
inline Reduction build_reduction(const GcInstance& gc) {
  Automaton b = build_b(gc);
  Automaton c = build_c(gc);
  const State btop = 1;
  const State csink = c.state_count() - 1;
  std::map<std::pair<State, State>, int> index;
  std::vector<std::pair<State, State>> nodes;
  auto intern = [&](State qb, State qc) {
    auto [it, fresh] =
        index.emplace(std::make_pair(qb, qc), static_cast<int>(nodes.size()));
    if (fresh) nodes.emplace_back(qb, qc);
    return it->second;
  };
  intern(b.initial(), c.initial());
  std::vector<std::vector<std::pair<Symbol, int>>> trans;
  const int TOP = -1;  // resolved after reachable exploration
  std::vector<std::vector<Symbol>> to_top;
  for (size_t i = 0; i < nodes.size(); ++i) {
    trans.emplace_back();
    to_top.emplace_back();
    auto [qb, qc] = nodes[i];
    for (Symbol s = 0; s < b.alphabet().size(); ++s) {
      State qc2 = c.successors(qc, s)[0];
      if (qc2 == csink) {
        to_top.back().push_back(s);  // escape regardless of B
        continue;
      }
      for (State qb2 : b.successors(qb, s)) {
        if (qb2 == btop)
          to_top.back().push_back(s);
        else
          trans.back().emplace_back(s, intern(qb2, qc2));
      }
    }
  }
  const State top_state = static_cast<State>(nodes.size());
  const int n = top_state + 1;
  StateSet all_states;
  for (State q = 0; q < n; ++q) all_states.push_back(q);
  Automaton a(b.alphabet(), n, 0, WordMode::Finite, Acceptance::finite_reach(all_states));
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (auto [s, j] : trans[i]) a.add_transition(static_cast<State>(i), s, j);
    for (Symbol s : to_top[i]) a.add_transition(static_cast<State>(i), s, top_state);
  }
  for (Symbol s = 0; s < a.alphabet().size(); ++s) a.add_transition(top_state, s, top_state);
  (void)TOP;
  if (!is_deterministic(c) || !is_complete_deterministic(c))
    throw std::logic_error("build_reduction: C is not a complete DFA");
  // Lemma: the product is universal; every reachable powerset state must be
  // accepting and alive
  {
    std::map<StateSet, char> seen;
    std::deque<StateSet> bfs{{a.initial()}};
    seen[{a.initial()}] = 1;
    while (!bfs.empty()) {
      StateSet d = bfs.front();
      bfs.pop_front();
      for (Symbol s = 0; s < a.alphabet().size(); ++s) {
        StateSet d2 = a.post(d, s);
        if (d2.empty()) throw std::logic_error("build_reduction: product is not universal");
        if (seen.emplace(d2, 1).second) bfs.push_back(std::move(d2));
      }
    }
  }
  return Reduction{std::move(a), static_cast<int>(gc.variables().size()), top_state};
}

/// Hamiltonicity-to-DBP reduction: the 3n-state coBuchi automaton over
/// {a_1..a_n, #} whose only nondeterminism is the choice of graph edge when
/// leaving a cloud.
inline Automaton build_ham_nca(const DiGraph& g) {
  g.check();
  const int n = g.vertex_count;
  if (n < 1) throw std::invalid_argument("build_ham_nca: empty graph");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
  names.push_back("#");
  const Symbol hash = static_cast<Symbol>(n);
  auto p = [&](int i) { return 3 * (i - 1); };
  auto q = [&](int i) { return 3 * (i - 1) + 1; };
  auto r = [&](int i) { return 3 * (i - 1) + 2; };
  StateSet accepting;
  for (int i = 1; i <= n; ++i) {
    accepting.push_back(p(i));
    accepting.push_back(q(i));
  }
  Automaton a(Alphabet(names), 3 * n, p(1), WordMode::Infinite,
              Acceptance::cobuchi(std::move(accepting)));
  for (int i = 1; i <= n; ++i) {
    a.add_transition(p(i), static_cast<Symbol>(i - 1), q(i));
    for (int j = 1; j <= n; ++j)
      if (j != i) a.add_transition(p(i), static_cast<Symbol>(j - 1), r(i));
    a.add_transition(q(i), hash, p(i));
  }
  for (auto [u, v] : g.edges) a.add_transition(r(u), hash, p(v));
  return a;
}

}  // namespace autwidth
