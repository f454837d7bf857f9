#pragma once

#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "autwidth/automaton.hpp"

namespace autwidth {

/// Reachable powerset DFA. The empty set is not materialised: where all runs
/// die the DFA is partial. A set-state accepts iff it meets F.
inline Automaton subset_construction(const Automaton& a,
                                     std::vector<StateSet>* sets_out = nullptr) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("subset_construction: finite-word automata only");
  std::map<StateSet, int> index;
  std::vector<StateSet> sets;
  auto intern = [&](StateSet x) {
    auto [it, fresh] = index.emplace(std::move(x), static_cast<int>(sets.size()));
    if (fresh) sets.push_back(it->first);
    return it->second;
  };
  intern(StateSet{a.initial()});
  std::vector<std::vector<std::pair<Symbol, int>>> trans;
  for (size_t i = 0; i < sets.size(); ++i) {
    trans.emplace_back();
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      StateSet nx = a.post(sets[i], s);
      if (nx.empty()) continue;
      trans.back().emplace_back(s, intern(std::move(nx)));
    }
  }
  StateSet accepting;
  for (size_t i = 0; i < sets.size(); ++i)
    if (intersects(sets[i], a.acceptance().states)) accepting.push_back(static_cast<State>(i));
  Automaton out(a.alphabet(), static_cast<int>(sets.size()), 0, WordMode::Finite,
                Acceptance::finite_reach(std::move(accepting)));
  for (size_t i = 0; i < sets.size(); ++i)
    for (auto [s, j] : trans[i]) out.add_transition(static_cast<State>(i), s, j);
  if (sets_out) *sets_out = sets;
  return out;
}

/// One breakpoint pair (X, Y) with Y tracking runs that stayed accepting
/// since the last breakpoint.
struct BreakpointState {
  StateSet x;
  StateSet y;
  bool operator<(const BreakpointState& o) const {
    return x < o.x || (x == o.x && y < o.y);
  }
  bool operator==(const BreakpointState& o) const { return x == o.x && y == o.y; }
};

/// Breakpoint determinisation of a coBuchi NFA: complete DCA over pairs
/// (X, Y), Y subset of X; a pair accepts iff Y is non-empty.
inline Automaton breakpoint_determinize(const Automaton& a,
                                        std::vector<BreakpointState>* pairs_out = nullptr) {
  if (a.mode() != WordMode::Infinite || a.acceptance().kind != AccKind::CoBuchi)
    throw std::invalid_argument("breakpoint_determinize: coBuchi automata only");
  const StateSet& f = a.acceptance().states;
  std::map<BreakpointState, int> index;
  std::vector<BreakpointState> pairs;
  auto intern = [&](BreakpointState p) {
    auto [it, fresh] = index.emplace(std::move(p), static_cast<int>(pairs.size()));
    if (fresh) pairs.push_back(it->first);
    return it->second;
  };
  intern(BreakpointState{{a.initial()}, {a.initial()}});
  std::vector<std::vector<std::pair<Symbol, int>>> trans;
  for (size_t i = 0; i < pairs.size(); ++i) {
    trans.emplace_back();
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      StateSet x2 = a.post(pairs[i].x, s);
      StateSet y2;
      if (pairs[i].y.empty())
        y2 = x2;  // breakpoint: restart the tracked set
      else
        y2 = set_intersection(a.post(pairs[i].y, s), f);
      trans.back().emplace_back(s, intern(BreakpointState{std::move(x2), std::move(y2)}));
    }
  }
  StateSet accepting;
  for (size_t i = 0; i < pairs.size(); ++i)
    if (!pairs[i].y.empty()) accepting.push_back(static_cast<State>(i));
  Automaton out(a.alphabet(), static_cast<int>(pairs.size()), 0, WordMode::Infinite,
                Acceptance::cobuchi(std::move(accepting)));
  for (size_t i = 0; i < pairs.size(); ++i)
    for (auto [s, j] : trans[i]) out.add_transition(static_cast<State>(i), s, j);
  if (pairs_out) *pairs_out = pairs;
  return out;
}

/// Canonical minimal DFA for the language of a (possibly partial) DFA.
/// States with empty residual are dropped, so the result is partial where the
/// language allows it; numbering is breadth-first from the initial state.
inline Automaton minimize_dfa(const Automaton& a) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("minimize_dfa: finite-word automata only");
  if (!is_deterministic(a)) throw std::invalid_argument("minimize_dfa: input not deterministic");
  const int nsym = a.alphabet().size();
  const int n = a.state_count();
  const int sink = n;  // completion
  auto step = [&](State q, Symbol s) -> State {
    if (q == sink) return sink;
    const StateSet& t = a.successors(q, s);
    return t.empty() ? sink : t[0];
  };
  // Moore partition refinement over the completed automaton
  std::vector<int> cls(static_cast<size_t>(n) + 1, 0);
  for (State q = 0; q < n; ++q) cls[static_cast<size_t>(q)] = a.is_accepting_state(q) ? 1 : 0;
  cls[static_cast<size_t>(sink)] = 0;
  int ncls = 2;
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::vector<int>, int> sig_index;
    std::vector<int> next(static_cast<size_t>(n) + 1, 0);
    for (State q = 0; q <= n; ++q) {
      std::vector<int> sig{cls[static_cast<size_t>(q)]};
      for (Symbol s = 0; s < nsym; ++s)
        sig.push_back(cls[static_cast<size_t>(step(q, s))]);
      auto [it, fresh] = sig_index.emplace(std::move(sig), static_cast<int>(sig_index.size()));
      (void)fresh;
      next[static_cast<size_t>(q)] = it->second;
    }
    if (static_cast<int>(sig_index.size()) != ncls) changed = true;
    ncls = static_cast<int>(sig_index.size());
    cls = std::move(next);
  }
  // drop classes with empty residual (cannot reach an accepting class)
  std::vector<std::vector<int>> cls_succ(static_cast<size_t>(ncls));
  std::vector<char> cls_acc(static_cast<size_t>(ncls), 0);
  for (State q = 0; q <= n; ++q) {
    for (Symbol s = 0; s < nsym; ++s)
      cls_succ[static_cast<size_t>(cls[static_cast<size_t>(q)])].push_back(
          cls[static_cast<size_t>(step(q, s))]);
    if (q < n && a.is_accepting_state(q)) cls_acc[static_cast<size_t>(cls[static_cast<size_t>(q)])] = 1;
  }
  std::vector<char> productive(static_cast<size_t>(ncls), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (int c = 0; c < ncls; ++c) {
      if (productive[static_cast<size_t>(c)]) continue;
      bool p = cls_acc[static_cast<size_t>(c)];
      for (int d : cls_succ[static_cast<size_t>(c)]) p = p || productive[static_cast<size_t>(d)];
      if (p) {
        productive[static_cast<size_t>(c)] = 1;
        changed = true;
      }
    }
  }
  const int init_cls = cls[static_cast<size_t>(a.initial())];
  // BFS renumbering over productive classes (keep the initial class even if dead)
  std::vector<int> number(static_cast<size_t>(ncls), -1);
  std::vector<int> order;
  auto visit = [&](int c) {
    if (number[static_cast<size_t>(c)] == -1) {
      number[static_cast<size_t>(c)] = static_cast<int>(order.size());
      order.push_back(c);
    }
  };
  // class representative transition table
  std::vector<std::vector<int>> cls_step(static_cast<size_t>(ncls),
                                         std::vector<int>(static_cast<size_t>(nsym), -1));
  for (State q = 0; q <= n; ++q)
    for (Symbol s = 0; s < nsym; ++s)
      cls_step[static_cast<size_t>(cls[static_cast<size_t>(q)])][static_cast<size_t>(s)] =
          cls[static_cast<size_t>(step(q, s))];
  visit(init_cls);
  for (size_t i = 0; i < order.size(); ++i)
    for (Symbol s = 0; s < nsym; ++s) {
      int d = cls_step[static_cast<size_t>(order[i])][static_cast<size_t>(s)];
      if (productive[static_cast<size_t>(d)]) visit(d);
    }
  StateSet accepting;
  for (size_t i = 0; i < order.size(); ++i)
    if (cls_acc[static_cast<size_t>(order[i])]) accepting.push_back(static_cast<State>(i));
  Automaton out(a.alphabet(), static_cast<int>(order.size()), 0, WordMode::Finite,
                Acceptance::finite_reach(std::move(accepting)));
  for (size_t i = 0; i < order.size(); ++i)
    for (Symbol s = 0; s < nsym; ++s) {
      int d = cls_step[static_cast<size_t>(order[i])][static_cast<size_t>(s)];
      if (productive[static_cast<size_t>(d)] && number[static_cast<size_t>(d)] != -1)
        out.add_transition(static_cast<State>(i), s, number[static_cast<size_t>(d)]);
    }
  return out;
}

/// Language equality of two deterministic finite-word automata over the same
/// alphabet, by a product walk with implicit rejecting sinks.
inline bool dfa_equivalent(const Automaton& a, const Automaton& b, State start_a = -1,
                           State start_b = -1) {
  if (!(a.alphabet() == b.alphabet()))
    throw std::invalid_argument("dfa_equivalent: alphabet mismatch");
  if (!is_deterministic(a) || !is_deterministic(b))
    throw std::invalid_argument("dfa_equivalent: inputs must be deterministic");
  const State DEAD = -1;
  auto acc = [](const Automaton& x, State q) { return q != DEAD && x.is_accepting_state(q); };
  auto step = [](const Automaton& x, State q, Symbol s) -> State {
    if (q == DEAD) return DEAD;
    const StateSet& t = x.successors(q, s);
    return t.empty() ? DEAD : t[0];
  };
  std::pair<State, State> init{start_a == -1 ? a.initial() : start_a,
                               start_b == -1 ? b.initial() : start_b};
  std::set<std::pair<State, State>> seen{init};
  std::queue<std::pair<State, State>> bfs;
  bfs.push(init);
  while (!bfs.empty()) {
    auto [p, q] = bfs.front();
    bfs.pop();
    if (acc(a, p) != acc(b, q)) return false;
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      std::pair<State, State> nx{step(a, p, s), step(b, q, s)};
      if (nx.first == DEAD && nx.second == DEAD) continue;
      if (seen.insert(nx).second) bfs.push(nx);
    }
  }
  return true;
}

/// Canonical renumbering (breadth-first from the initial state, successors in
/// symbol order then target order). Two automata are isomorphic iff their
/// canonical forms compare equal with ==.
struct CanonicalForm {
  int states = 0;
  State initial = 0;
  std::vector<std::tuple<State, Symbol, State>> transitions;
  StateSet accepting;
  std::vector<RabinPair> pairs;
  bool operator==(const CanonicalForm& o) const {
    return states == o.states && initial == o.initial && transitions == o.transitions &&
           accepting == o.accepting && pairs_equal(o);
  }
  bool pairs_equal(const CanonicalForm& o) const {
    if (pairs.size() != o.pairs.size()) return false;
    for (size_t i = 0; i < pairs.size(); ++i)
      if (pairs[i].good != o.pairs[i].good || pairs[i].bad != o.pairs[i].bad) return false;
    return true;
  }
};

inline CanonicalForm canonical_form(const Automaton& a) {
  std::vector<int> number(static_cast<size_t>(a.state_count()), -1);
  std::vector<State> order;
  auto visit = [&](State q) {
    if (number[static_cast<size_t>(q)] == -1) {
      number[static_cast<size_t>(q)] = static_cast<int>(order.size());
      order.push_back(q);
    }
  };
  visit(a.initial());
  for (size_t i = 0; i < order.size(); ++i)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (State t : a.successors(order[i], s)) visit(t);
  CanonicalForm cf;
  cf.states = static_cast<int>(order.size());
  cf.initial = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (State t : a.successors(order[i], s))
        cf.transitions.emplace_back(static_cast<State>(i), s, number[static_cast<size_t>(t)]);
  std::sort(cf.transitions.begin(), cf.transitions.end());
  auto renum = [&](const StateSet& xs) {
    StateSet out;
    for (State q : xs)
      if (number[static_cast<size_t>(q)] != -1) out.push_back(number[static_cast<size_t>(q)]);
    normalize(out);
    return out;
  };
  cf.accepting = renum(a.acceptance().states);
  for (const RabinPair& p : a.acceptance().pairs)
    cf.pairs.push_back(RabinPair{renum(p.good), renum(p.bad)});
  return cf;
}

}  // namespace autwidth
