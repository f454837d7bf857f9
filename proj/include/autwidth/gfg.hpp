#pragma once

#include <map>
#include <tuple>

#include "autwidth/constructions.hpp"
#include "autwidth/game.hpp"
#include "autwidth/lasso.hpp"

namespace autwidth {

/// Raised when a search would exceed its configured budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::string what, double needed, double budget, int choice_points)
      : std::runtime_error(std::move(what)),
        needed(needed),
        budget(budget),
        choice_points(choice_points) {}
  double needed;
  double budget;
  int choice_points;
};

/// One retained successor per nondeterministic (state, symbol) choice point,
/// sorted by (state, symbol). The induced automaton is deterministic and its
/// transitions are a subset of the original's.
struct Pruning {
  std::vector<std::tuple<State, Symbol, State>> kept;
};

inline Automaton apply_pruning(const Automaton& a, const Pruning& p) {
  Automaton out(a.alphabet(), a.state_count(), a.initial(), a.mode(), a.acceptance());
  std::map<std::pair<State, Symbol>, State> keep;
  for (auto [q, s, t] : p.kept) keep[{q, s}] = t;
  for (State q = 0; q < a.state_count(); ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      const StateSet& succ = a.successors(q, s);
      if (succ.empty()) continue;
      if (succ.size() == 1) {
        out.add_transition(q, s, succ[0]);
        continue;
      }
      auto it = keep.find({q, s});
      if (it == keep.end())
        throw std::invalid_argument("apply_pruning: unresolved choice point");
      if (!contains(succ, it->second))
        throw std::invalid_argument("apply_pruning: retained successor not a transition");
      out.add_transition(q, s, it->second);
    }
  return out;
}

/// Positional strategy of the letter game: the token move for each
/// (token state, referee state after the letter, letter).
struct LetterStrategy {
  static constexpr State kDeadToken = -1;
  // referee states, interned; exactly one of the two vectors is used
  std::vector<StateSet> referee_sets;
  std::vector<BreakpointState> referee_pairs;
  std::map<std::tuple<State, int, Symbol>, State> choice;
};

struct GfgOutcome {
  bool gfg = false;
  LetterStrategy strategy;  // meaningful only when gfg holds
};

namespace detail {

/// Letter game skeleton shared by the NFA (safety) and NCA (parity) checkers.
/// Player 1 plays letters, Player 0 moves a token along transitions of `a`;
/// the referee deterministically tracks language membership. The token may
/// die (no transition), encoded as an absorbing non-accepting sentinel.
template <typename RefState, typename RefStep>
struct LetterGame {
  const Automaton& a;
  RefStep ref_step;  // RefState x Symbol -> RefState
  std::vector<RefState> refs;
  std::map<RefState, int> ref_index;
  // full positions (player 1): token (or -1) x referee id
  std::map<std::pair<State, int>, int> p1_index;
  std::vector<std::pair<State, int>> p1_nodes;
  // intermediate positions (player 0): token x referee-after id x symbol
  std::map<std::tuple<State, int, Symbol>, int> p0_index;
  std::vector<std::tuple<State, int, Symbol>> p0_nodes;
  GameArena arena;
  std::vector<int> pos_of_p1, pos_of_p0;  // node id -> arena position

  LetterGame(const Automaton& a, RefState ref0, RefStep step, bool parity)
      : a(a), ref_step(std::move(step)) {
    arena.parity = parity;
    int r0 = intern_ref(std::move(ref0));
    int start = intern_p1(a.initial(), r0);
    (void)start;
    for (size_t i = 0; i < p1_nodes.size() || pending_p0_ < p0_nodes.size();) {
      if (i < p1_nodes.size()) {
        auto [q, r] = p1_nodes[i];
        int vpos = pos_of_p1[i];
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
          int r2 = intern_ref(ref_step(refs[static_cast<size_t>(r)], s));
          int u = intern_p0(q, r2, s);
          arena.succ[static_cast<size_t>(vpos)].push_back(pos_of_p0[static_cast<size_t>(u)]);
        }
        ++i;
      } else {
        size_t j = pending_p0_++;
        auto [q, r2, s] = p0_nodes[j];
        int upos = pos_of_p0[j];
        if (q == LetterStrategy::kDeadToken || a.successors(q, s).empty()) {
          int w = intern_p1(LetterStrategy::kDeadToken, r2);
          arena.succ[static_cast<size_t>(upos)].push_back(pos_of_p1[static_cast<size_t>(w)]);
        } else {
          for (State t : a.successors(q, s)) {
            int w = intern_p1(t, r2);
            arena.succ[static_cast<size_t>(upos)].push_back(pos_of_p1[static_cast<size_t>(w)]);
          }
        }
      }
    }
    arena.initial = pos_of_p1[0];
  }

  int intern_ref(RefState r) {
    auto [it, fresh] = ref_index.emplace(std::move(r), static_cast<int>(refs.size()));
    if (fresh) refs.push_back(it->first);
    return it->second;
  }
  int intern_p1(State q, int r) {
    auto [it, fresh] = p1_index.emplace(std::make_pair(q, r), static_cast<int>(p1_nodes.size()));
    if (fresh) {
      p1_nodes.emplace_back(q, r);
      pos_of_p1.push_back(arena.add_position(1));
    }
    return it->second;
  }
  int intern_p0(State q, int r2, Symbol s) {
    auto [it, fresh] =
        p0_index.emplace(std::make_tuple(q, r2, s), static_cast<int>(p0_nodes.size()));
    if (fresh) {
      p0_nodes.emplace_back(q, r2, s);
      pos_of_p0.push_back(arena.add_position(0));
    }
    return it->second;
  }

  /// Extract the Player-0 choices on its winning region.
  void fill_strategy(const GameSolution& sol, LetterStrategy& out) const {
    for (size_t j = 0; j < p0_nodes.size(); ++j) {
      int upos = pos_of_p0[j];
      if (sol.winner[static_cast<size_t>(upos)] != 0) continue;
      int tgt = sol.strategy[0][static_cast<size_t>(upos)];
      if (tgt == -1) continue;
      // map the arena position back to the token it carries
      auto found = pos_to_p1_.find(tgt);
      State token = found == pos_to_p1_.end()
                        ? LetterStrategy::kDeadToken
                        : p1_nodes[static_cast<size_t>(found->second)].first;
      out.choice[p0_nodes[j]] = token;
    }
  }

  void build_reverse_index() {
    for (size_t i = 0; i < p1_nodes.size(); ++i) pos_to_p1_[pos_of_p1[i]] = static_cast<int>(i);
  }

  std::map<int, int> pos_to_p1_;

 private:
  size_t pending_p0_ = 0;
};

}  // namespace detail

/// GFG check for finite-word NFAs: safety letter game against the powerset
/// referee. A full position (q, d) is bad iff d accepts and q does not.
inline GfgOutcome gfg_check_nfa(const Automaton& a) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("gfg_check_nfa: finite-word automata only");
  auto step = [&a](const StateSet& d, Symbol s) { return a.post(d, s); };
  detail::LetterGame<StateSet, decltype(step)> game(a, StateSet{a.initial()}, step, false);
  for (size_t i = 0; i < game.p1_nodes.size(); ++i) {
    auto [q, r] = game.p1_nodes[i];
    bool ref_acc = intersects(game.refs[static_cast<size_t>(r)], a.acceptance().states);
    bool token_acc = q != LetterStrategy::kDeadToken && a.is_accepting_state(q);
    if (ref_acc && !token_acc) game.arena.bad[static_cast<size_t>(game.pos_of_p1[i])] = 1;
  }
  GameSolution sol = solve_safety(game.arena);
  GfgOutcome out;
  out.gfg = sol.player0_wins_initial(game.arena);
  if (out.gfg) {
    game.build_reverse_index();
    out.strategy.referee_sets = game.refs;
    game.fill_strategy(sol, out.strategy);
  }
  return out;
}

/// GFG check for coBuchi NFAs: parity letter game against the breakpoint
/// referee. Priorities on full positions (max-even): 2 when the referee state
/// rejects (its breakpoint set is empty), else 1 when the token is outside F,
/// else 0 -- encoding "referee accepts => token run accepts".
inline GfgOutcome gfg_check_nca(const Automaton& a) {
  if (a.mode() != WordMode::Infinite || a.acceptance().kind != AccKind::CoBuchi)
    throw std::invalid_argument("gfg_check_nca: coBuchi automata only");
  const StateSet& f = a.acceptance().states;
  auto step = [&a, &f](const BreakpointState& d, Symbol s) {
    StateSet x2 = a.post(d.x, s);
    StateSet y2 = d.y.empty() ? x2 : set_intersection(a.post(d.y, s), f);
    return BreakpointState{std::move(x2), std::move(y2)};
  };
  detail::LetterGame<BreakpointState, decltype(step)> game(
      a, BreakpointState{{a.initial()}, {a.initial()}}, step, true);
  for (size_t i = 0; i < game.p1_nodes.size(); ++i) {
    auto [q, r] = game.p1_nodes[i];
    const BreakpointState& d = game.refs[static_cast<size_t>(r)];
    int prio = 0;
    if (d.y.empty())
      prio = 2;
    else if (q == LetterStrategy::kDeadToken || !a.is_accepting_state(q))
      prio = 1;
    game.arena.priority[static_cast<size_t>(game.pos_of_p1[i])] = prio;
  }
  GameSolution sol = solve_parity(game.arena);
  GfgOutcome out;
  out.gfg = sol.player0_wins_initial(game.arena);
  if (out.gfg) {
    game.build_reverse_index();
    out.strategy.referee_pairs = game.refs;
    game.fill_strategy(sol, out.strategy);
  }
  return out;
}

/// Restrict a GFG NFA to the strategy's choices, yielding an equivalent DFA
/// (verified against the powerset construction before returning).
inline Automaton prune_to_dfa(const Automaton& a, const LetterStrategy& strategy) {
  if (strategy.referee_sets.empty())
    throw std::invalid_argument("prune_to_dfa: strategy has no powerset referee");
  std::map<StateSet, int> ref_index;
  for (size_t i = 0; i < strategy.referee_sets.size(); ++i)
    ref_index[strategy.referee_sets[i]] = static_cast<int>(i);
  std::map<std::pair<State, Symbol>, State> kept;
  std::set<std::pair<State, int>> seen;
  std::deque<std::pair<State, int>> bfs;
  auto ref_of = [&](const StateSet& d) {
    auto it = ref_index.find(d);
    if (it == ref_index.end())
      throw std::invalid_argument("prune_to_dfa: strategy inconsistent with arena");
    return it->second;
  };
  std::pair<State, int> init{a.initial(), ref_of(StateSet{a.initial()})};
  seen.insert(init);
  bfs.push_back(init);
  while (!bfs.empty()) {
    auto [q, r] = bfs.front();
    bfs.pop_front();
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      const StateSet& succ = a.successors(q, s);
      StateSet d2 = a.post(strategy.referee_sets[static_cast<size_t>(r)], s);
      if (succ.empty()) continue;  // the token dies; nothing to keep
      int r2 = ref_of(d2);
      State t;
      if (succ.size() == 1) {
        t = succ[0];
      } else {
        auto it = strategy.choice.find(std::make_tuple(q, r2, s));
        if (it == strategy.choice.end())
          throw std::invalid_argument("prune_to_dfa: strategy inconsistent with arena");
        t = it->second;
      }
      if (t == LetterStrategy::kDeadToken) continue;
      auto ins = kept.emplace(std::make_pair(q, s), t);
      (void)ins;  // first decision wins; later referees share the residual
      if (seen.emplace(t, r2).second) bfs.push_back({t, r2});
    }
  }
  // assemble the pruned automaton on the visited states
  std::map<State, State> number;
  std::vector<State> order;
  std::function<void(State)> visit = [&](State q) {
    if (number.emplace(q, static_cast<State>(order.size())).second) order.push_back(q);
  };
  visit(a.initial());
  for (size_t i = 0; i < order.size(); ++i)
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      auto it = kept.find({order[i], s});
      if (it != kept.end()) visit(it->second);
    }
  StateSet accepting;
  for (size_t i = 0; i < order.size(); ++i)
    if (a.is_accepting_state(order[i])) accepting.push_back(static_cast<State>(i));
  Automaton out(a.alphabet(), static_cast<int>(order.size()), 0, WordMode::Finite,
                Acceptance::finite_reach(std::move(accepting)));
  for (size_t i = 0; i < order.size(); ++i)
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      auto it = kept.find({order[i], s});
      if (it != kept.end()) out.add_transition(static_cast<State>(i), s, number[it->second]);
    }
  if (!dfa_equivalent(out, subset_construction(a)))
    throw std::runtime_error("prune_to_dfa: pruned automaton is not language-equal");
  return out;
}

/// DBP check on finite words coincides with the GFG check; the pruning reads
/// off the strategy on its reachable part, defaulting to the lowest-index
/// successor elsewhere.
inline std::pair<bool, std::optional<Pruning>> dbp_check_nfa(const Automaton& a) {
  GfgOutcome g = gfg_check_nfa(a);
  if (!g.gfg) return {false, std::nullopt};
  // walk the strategy to collect its choices per (state, symbol)
  std::map<std::pair<State, Symbol>, State> kept;
  std::map<StateSet, int> ref_index;
  for (size_t i = 0; i < g.strategy.referee_sets.size(); ++i)
    ref_index[g.strategy.referee_sets[i]] = static_cast<int>(i);
  std::set<std::pair<State, int>> seen;
  std::deque<std::pair<State, int>> bfs;
  std::pair<State, int> init{a.initial(), ref_index.at(StateSet{a.initial()})};
  seen.insert(init);
  bfs.push_back(init);
  while (!bfs.empty()) {
    auto [q, r] = bfs.front();
    bfs.pop_front();
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      const StateSet& succ = a.successors(q, s);
      if (succ.empty()) continue;
      int r2 = ref_index.at(a.post(g.strategy.referee_sets[static_cast<size_t>(r)], s));
      State t = succ.size() == 1 ? succ[0]
                                 : g.strategy.choice.at(std::make_tuple(q, r2, s));
      if (t == LetterStrategy::kDeadToken) continue;
      if (succ.size() > 1) kept.emplace(std::make_pair(q, s), t);
      if (seen.emplace(t, r2).second) bfs.push_back({t, r2});
    }
  }
  Pruning p;
  for (auto [q, s] : a.nondeterministic_choice_points()) {
    auto it = kept.find({q, s});
    State t = it != kept.end() ? it->second : a.successors(q, s)[0];
    p.kept.emplace_back(q, s, t);
  }
  return {true, p};
}

/// L(a) included in L(d) for an NCA `a` and a (possibly partial) DCA `d`:
/// emptiness of a x dual(d), where the dual is the Buchi automaton on the
/// complemented acceptance set and a rejecting-sink completion of d.
inline bool inclusion_nca_in_dca(const Automaton& a, const Automaton& d) {
  if (!(a.alphabet() == d.alphabet()))
    throw std::invalid_argument("inclusion_nca_in_dca: alphabet mismatch");
  if (a.acceptance().kind != AccKind::CoBuchi || d.acceptance().kind != AccKind::CoBuchi)
    throw std::invalid_argument("inclusion_nca_in_dca: coBuchi automata only");
  if (!is_deterministic(d))
    throw std::invalid_argument("inclusion_nca_in_dca: d must be deterministic");
  const int sink = d.state_count();  // completion; dual-Buchi accepting
  const int dn = d.state_count() + 1;
  auto node = [&](State p, State q) { return p * dn + q; };
  Automaton prod(a.alphabet(), a.state_count() * dn, node(a.initial(), d.initial()),
                 WordMode::Infinite, Acceptance::buchi({}));
  for (State p = 0; p < a.state_count(); ++p)
    for (State q = 0; q < dn; ++q)
      for (Symbol s = 0; s < a.alphabet().size(); ++s) {
        State q2 = sink;
        if (q != sink) {
          const StateSet& dd = d.successors(q, s);
          q2 = dd.empty() ? sink : dd[0];
        }
        for (State p2 : a.successors(p, s)) prod.add_transition(node(p, q), s, node(p2, q2));
      }
  // accepting lasso of the product: loop inside F_a, with a dual-Buchi state
  StateSet good, bad;
  for (State p = 0; p < a.state_count(); ++p)
    for (State q = 0; q < dn; ++q) {
      if (q == sink || !d.is_accepting_state(q)) good.push_back(node(p, q));
      if (!a.is_accepting_state(p)) bad.push_back(node(p, q));
    }
  prod.acceptance() = Acceptance::rabin({RabinPair{std::move(good), std::move(bad)}});
  return !accepting_lasso(prod).has_value();
}

namespace detail {

/// Exhaustive pruning search shared by the NCA and Rabin DBP checkers.
/// Assignments are explored in lexicographic order (choice points by
/// (state, symbol), successors by index), so the first witness is canonical.
/// Verdicts are memoised per pruning restricted to its reachable part.
template <typename Equivalent>
inline std::pair<bool, std::optional<Pruning>> dbp_search(const Automaton& a, double budget,
                                                          const Equivalent& equivalent) {
  auto cps = a.nondeterministic_choice_points();
  double combos = 1;
  for (auto [q, s] : cps) {
    combos *= static_cast<double>(a.successors(q, s).size());
    if (combos > budget)
      throw BudgetError("pruning search exceeds budget", combos, budget,
                        static_cast<int>(cps.size()));
  }
  std::map<std::vector<State>, bool> memo;
  std::vector<State> picked(cps.size(), -1);
  std::function<std::optional<Pruning>(size_t)> rec =
      [&](size_t i) -> std::optional<Pruning> {
    if (i == cps.size()) {
      Pruning p;
      for (size_t j = 0; j < cps.size(); ++j)
        p.kept.emplace_back(cps[j].first, cps[j].second, picked[j]);
      Automaton cand = apply_pruning(a, p);
      // memo key: choices at choice points reachable under this pruning
      std::vector<char> reach = detail::reachable_mask(cand);
      std::vector<State> key(picked);
      for (size_t j = 0; j < cps.size(); ++j)
        if (!reach[static_cast<size_t>(cps[j].first)]) key[j] = -1;
      auto it = memo.find(key);
      bool ok;
      if (it != memo.end()) {
        ok = it->second;
      } else {
        ok = equivalent(cand);
        memo.emplace(std::move(key), ok);
      }
      if (ok) return p;
      return std::nullopt;
    }
    for (State t : a.successors(cps[i].first, cps[i].second)) {
      picked[i] = t;
      if (auto r = rec(i + 1)) return r;
    }
    picked[i] = -1;
    return std::nullopt;
  };
  auto witness = rec(0);
  return {witness.has_value(), witness};
}

}  // namespace detail

/// DBP check for coBuchi NFAs: exhaustive search over prunings with the exact
/// inclusion test (L(d) <= L(a) holds for free since d is a sub-automaton).
inline std::pair<bool, std::optional<Pruning>> dbp_check_nca(const Automaton& a,
                                                             double budget = 1e6) {
  if (a.mode() != WordMode::Infinite || a.acceptance().kind != AccKind::CoBuchi)
    throw std::invalid_argument("dbp_check_nca: coBuchi automata only");
  auto result = detail::dbp_search(
      a, budget, [&](const Automaton& cand) { return inclusion_nca_in_dca(a, cand); });
  if (result.first && !gfg_check_nca(a).gfg)
    throw std::logic_error("dbp_check_nca: DBP accepted but GFG check refused");
  return result;
}

/// DBP check for Rabin automata: candidate prunings checked by emptiness of
/// a x dual(d); the dual Streett obligations are verified on candidate loops.
inline std::pair<bool, std::optional<Pruning>> dbp_check_rabin(const Automaton& a,
                                                               double budget = 1e6) {
  if (a.mode() != WordMode::Infinite || a.acceptance().kind != AccKind::Rabin)
    throw std::invalid_argument("dbp_check_rabin: Rabin automata only");
  auto equivalent = [&](const Automaton& d) {
    const int sink = d.state_count();
    const int dn = d.state_count() + 1;
    auto node = [&](State p, State q) { return p * dn + q; };
    Automaton prod(a.alphabet(), a.state_count() * dn, node(a.initial(), d.initial()),
                   WordMode::Infinite, Acceptance::buchi({}));
    for (State p = 0; p < a.state_count(); ++p)
      for (State q = 0; q < dn; ++q)
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
          State q2 = sink;
          if (q != sink) {
            const StateSet& dd = d.successors(q, s);
            q2 = dd.empty() ? sink : dd[0];
          }
          for (State p2 : a.successors(p, s)) prod.add_transition(node(p, q), s, node(p2, q2));
        }
    auto lift_a = [&](const StateSet& xs) {
      StateSet out;
      for (State p : xs)
        for (State q = 0; q < dn; ++q) out.push_back(node(p, q));
      normalize(out);
      return out;
    };
    auto lift_d = [&](const StateSet& xs) {
      StateSet out;
      for (State q : xs)
        for (State p = 0; p < a.state_count(); ++p) out.push_back(node(p, q));
      normalize(out);
      return out;
    };
    std::vector<RabinPair> rabin;
    for (const RabinPair& rp : a.acceptance().pairs)
      rabin.push_back(RabinPair{lift_a(rp.good), lift_a(rp.bad)});
    std::vector<StreettPair> streett;
    for (const RabinPair& dp : d.acceptance().pairs)
      streett.push_back(StreettPair{lift_d(dp.bad), lift_d(dp.good)});
    return !rabin_streett_nonempty(prod, rabin, streett);
  };
  return detail::dbp_search(a, budget, equivalent);
}

}  // namespace autwidth
