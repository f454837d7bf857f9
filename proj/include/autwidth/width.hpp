#pragma once

#include "autwidth/gfg.hpp"

namespace autwidth {

/// Player 0's move discipline in width and simulation games. Duplicate: any
/// subset of the joint image, up to k pebbles (pebbles may fork). NoDuplicate:
/// k tokens, each following one transition (merging allowed, forking not);
/// a stuck token dies.
enum class MoveMode { Duplicate, NoDuplicate };

/// Pebble vector: sorted; duplicate entries are meaningful in NoDuplicate
/// mode (co-located tokens), absent in Duplicate mode.
using PebbleVec = std::vector<State>;

struct WidthStrategy {
  // chosen pebble move per (pebbles, referee set after the letter, symbol)
  std::map<std::tuple<PebbleVec, StateSet, Symbol>, PebbleVec> choice;
};

struct WidthGameOutcome {
  bool player0_wins = false;
  WidthStrategy strategy;
};

namespace detail {

inline std::vector<PebbleVec> duplicate_moves(const StateSet& image, int k) {
  // every subset of the image of size at most k, the empty set included
  std::vector<PebbleVec> out;
  for (int size = 0; size <= std::min<int>(k, static_cast<int>(image.size())); ++size)
    for (StateSet& x : k_subsets_of(image, size)) out.push_back(std::move(x));
  return out;
}

inline std::vector<PebbleVec> token_moves(const Automaton& a, const PebbleVec& tokens,
                                          Symbol s) {
  // each token follows one transition and dies when it has none
  std::set<PebbleVec> dedup;
  PebbleVec cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == tokens.size()) {
      PebbleVec v = cur;
      std::sort(v.begin(), v.end());
      dedup.insert(std::move(v));
      return;
    }
    const StateSet& succ = a.successors(tokens[i], s);
    if (succ.empty()) {
      rec(i + 1);
      return;
    }
    for (State t : succ) {
      cur.push_back(t);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return {dedup.begin(), dedup.end()};
}

}  // namespace detail

/// Solve the width game Gw(a, k): Player 1 plays letters, Player 0 maintains
/// at most k pebbles, and loses any position where the word so far is in the
/// language (tracked by the lazily built powerset referee) while no pebble is
/// accepting.
inline WidthGameOutcome solve_width_game(const Automaton& a, int k,
                                         MoveMode mode = MoveMode::Duplicate,
                                         GameArena* arena_out = nullptr) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("solve_width_game: finite-word automata only");
  if (k < 1) throw std::invalid_argument("solve_width_game: k must be positive");
  const StateSet& f = a.acceptance().states;
  std::map<StateSet, int> ref_index;
  std::vector<StateSet> refs;
  auto intern_ref = [&](StateSet d) {
    auto [it, fresh] = ref_index.emplace(std::move(d), static_cast<int>(refs.size()));
    if (fresh) refs.push_back(it->first);
    return it->second;
  };
  GameArena arena;
  std::map<std::pair<PebbleVec, int>, int> p1_index;
  std::vector<std::pair<PebbleVec, int>> p1_nodes;
  std::vector<int> p1_pos;
  std::map<std::tuple<PebbleVec, int, Symbol>, int> p0_index;
  std::vector<std::tuple<PebbleVec, int, Symbol>> p0_nodes;
  std::vector<int> p0_pos;
  auto intern_p1 = [&](PebbleVec x, int r) {
    auto [it, fresh] =
        p1_index.emplace(std::make_pair(std::move(x), r), static_cast<int>(p1_nodes.size()));
    if (fresh) {
      p1_nodes.push_back(it->first);
      int v = arena.add_position(1);
      const PebbleVec& pebbles = it->first.first;
      bool ref_acc = intersects(refs[static_cast<size_t>(r)], f);
      bool peb_acc = std::any_of(pebbles.begin(), pebbles.end(),
                                 [&](State q) { return contains(f, q); });
      arena.bad[static_cast<size_t>(v)] = (ref_acc && !peb_acc) ? 1 : 0;
      p1_pos.push_back(v);
    }
    return it->second;
  };
  auto intern_p0 = [&](PebbleVec x, int r2, Symbol s) {
    auto [it, fresh] = p0_index.emplace(std::make_tuple(std::move(x), r2, s),
                                        static_cast<int>(p0_nodes.size()));
    if (fresh) {
      p0_nodes.push_back(it->first);
      p0_pos.push_back(arena.add_position(0));
    }
    return it->second;
  };
  PebbleVec start = mode == MoveMode::Duplicate
                        ? PebbleVec{a.initial()}
                        : PebbleVec(static_cast<size_t>(k), a.initial());
  intern_p1(start, intern_ref(StateSet{a.initial()}));
  size_t done1 = 0, done0 = 0;
  while (done1 < p1_nodes.size() || done0 < p0_nodes.size()) {
    if (done1 < p1_nodes.size()) {
      size_t i = done1++;
      auto [pebbles, r] = p1_nodes[i];
      for (Symbol s = 0; s < a.alphabet().size(); ++s) {
        int r2 = intern_ref(a.post(refs[static_cast<size_t>(r)], s));
        int u = intern_p0(pebbles, r2, s);
        arena.succ[static_cast<size_t>(p1_pos[i])].push_back(p0_pos[static_cast<size_t>(u)]);
      }
    } else {
      size_t j = done0++;
      auto [pebbles, r2, s] = p0_nodes[j];
      std::vector<PebbleVec> moves;
      if (mode == MoveMode::Duplicate) {
        StateSet dedup = pebbles;
        normalize(dedup);
        moves = detail::duplicate_moves(a.post(dedup, s), k);
      } else {
        moves = detail::token_moves(a, pebbles, s);
      }
      for (PebbleVec& x : moves) {
        int w = intern_p1(std::move(x), r2);
        arena.succ[static_cast<size_t>(p0_pos[j])].push_back(p1_pos[static_cast<size_t>(w)]);
      }
    }
  }
  arena.initial = p1_pos[0];
  if (arena_out) *arena_out = arena;
  GameSolution sol = solve_safety(arena);
  WidthGameOutcome out;
  out.player0_wins = sol.player0_wins_initial(arena);
  if (out.player0_wins) {
    std::map<int, int> pos_to_p1;
    for (size_t i = 0; i < p1_nodes.size(); ++i) pos_to_p1[p1_pos[i]] = static_cast<int>(i);
    for (size_t j = 0; j < p0_nodes.size(); ++j) {
      if (sol.winner[static_cast<size_t>(p0_pos[j])] != 0) continue;
      int tgt = sol.strategy[0][static_cast<size_t>(p0_pos[j])];
      if (tgt == -1) continue;
      auto [pebbles, r2, s] = p0_nodes[j];
      out.strategy.choice[std::make_tuple(pebbles, refs[static_cast<size_t>(r2)], s)] =
          p1_nodes[static_cast<size_t>(pos_to_p1.at(tgt))].first;
    }
  }
  return out;
}

inline bool width_at_most(const Automaton& a, int k, MoveMode mode = MoveMode::Duplicate) {
  return solve_width_game(a, k, mode).player0_wins;
}

struct WidthPerK {
  int k = 0;
  bool player0_wins = false;
  int construction_states = 0;  // reachable size of the k-construction
};

struct WidthReport {
  int width = -1;  // -1 when not determined within the explored range
  std::vector<WidthPerK> per_k;
  WidthStrategy strategy;  // pebble strategy at the winning k (finite words)
};

/// Least k such that Player 0 wins Gw(a, k), by solving the width game for
/// increasing k. Always terminates at k = n.
inline WidthReport width_nfa(const Automaton& a, MoveMode mode = MoveMode::Duplicate,
                             int max_k = -1, int from_k = 1) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("width_nfa: finite-word automata only");
  WidthReport rep;
  int limit = max_k == -1 ? a.state_count() : std::min(max_k, a.state_count());
  for (int k = std::max(1, from_k); k <= limit; ++k) {
    WidthGameOutcome o = solve_width_game(a, k, mode);
    rep.per_k.push_back({k, o.player0_wins, k_subset(a, k).state_count()});
    if (o.player0_wins) {
      rep.width = k;
      rep.strategy = std::move(o.strategy);
      break;
    }
  }
  return rep;
}

/// Least k such that the k-breakpoint construction is GFG (the coBuchi width,
/// via the parity letter game). Guaranteed to stop at k = n.
inline WidthReport width_nca(const Automaton& a, int max_k = -1, int from_k = 1) {
  if (a.mode() != WordMode::Infinite || a.acceptance().kind != AccKind::CoBuchi)
    throw std::invalid_argument("width_nca: coBuchi automata only");
  WidthReport rep;
  int limit = max_k == -1 ? a.state_count() : std::min(max_k, a.state_count());
  for (int k = std::max(1, from_k); k <= limit; ++k) {
    Automaton ak = k_breakpoint(a, k);
    bool gfg = gfg_check_nca(ak).gfg;
    rep.per_k.push_back({k, gfg, ak.state_count()});
    if (gfg) {
      rep.width = k;
      break;
    }
  }
  return rep;
}

/// Incremental determinisation: grow k until the k-subset construction is
/// GFG, then prune it with the letter-game strategy and minimise.
inline std::pair<WidthReport, Automaton> incremental_determinize_nfa(const Automaton& a) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("incremental_determinize_nfa: finite-word automata only");
  WidthReport rep;
  for (int k = 1; k <= a.state_count(); ++k) {
    Automaton ak = k_subset(a, k);
    GfgOutcome o = gfg_check_nfa(ak);
    rep.per_k.push_back({k, o.gfg, ak.state_count()});
    if (o.gfg) {
      rep.width = k;
      Automaton dfa = minimize_dfa(prune_to_dfa(ak, o.strategy));
      return {rep, dfa};
    }
  }
  throw std::logic_error("incremental_determinize_nfa: no k succeeded");  // unreachable
}

/// Incremental GFG construction for coBuchi automata: the k-breakpoint
/// automaton at the width, which is GFG and language-equivalent.
inline std::pair<WidthReport, Automaton> incremental_gfg_nca(const Automaton& a) {
  WidthReport rep = width_nca(a);
  return {rep, k_breakpoint(a, rep.width)};
}

struct DetWidthReport {
  int det_width = -1;
  std::vector<WidthPerK> per_k;  // player0_wins here means "k-construction is DBP"
  bool refused = false;          // a k-construction exceeded the state budget
  int refused_k = -1;
  int refused_states = 0;
};

/// Least k at which the k-construction (subset / breakpoint / Safra) is
/// determinisable by pruning. Declared in safra.hpp-dependent form for NBAs;
/// see det_width() in safra.hpp which dispatches all three cases.
inline DetWidthReport det_width_finite(const Automaton& a, int state_budget = 50000,
                                       double pruning_budget = 1e6) {
  DetWidthReport rep;
  for (int k = 1; k <= a.state_count(); ++k) {
    Automaton ak = k_subset(a, k);
    if (ak.state_count() > state_budget) {
      rep.refused = true;
      rep.refused_k = k;
      rep.refused_states = ak.state_count();
      return rep;
    }
    (void)pruning_budget;  // finite words: DBP check is the letter game, no search
    bool dbp = dbp_check_nfa(ak).first;
    rep.per_k.push_back({k, dbp, ak.state_count()});
    if (dbp) {
      rep.det_width = k;
      return rep;
    }
  }
  return rep;
}

inline DetWidthReport det_width_nca(const Automaton& a, int state_budget = 50000,
                                    double pruning_budget = 1e6) {
  DetWidthReport rep;
  for (int k = 1; k <= a.state_count(); ++k) {
    Automaton ak = k_breakpoint(a, k);
    if (ak.state_count() > state_budget) {
      rep.refused = true;
      rep.refused_k = k;
      rep.refused_states = ak.state_count();
      return rep;
    }
    bool dbp = dbp_check_nca(ak, pruning_budget).first;
    rep.per_k.push_back({k, dbp, ak.state_count()});
    if (dbp) {
      rep.det_width = k;
      return rep;
    }
  }
  return rep;
}

}  // namespace autwidth
