#pragma once

#include <map>

#include "autwidth/determinize.hpp"

namespace autwidth {

namespace detail {

/// All size-k subsets of the sorted set `u`, in lexicographic order of their
/// sorted state lists.
inline std::vector<StateSet> k_subsets_of(const StateSet& u, int k) {
  std::vector<StateSet> out;
  StateSet cur;
  std::function<void(size_t)> rec = [&](size_t from) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    size_t need = static_cast<size_t>(k) - cur.size();
    for (size_t i = from; i + need <= u.size(); ++i) {
      cur.push_back(u[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Successor sets offered to the k-bounded constructions: the full image if it
/// fits, otherwise every subset of size exactly k.
inline std::vector<StateSet> capped_images(const StateSet& image, int k) {
  if (static_cast<int>(image.size()) <= k) return {image};
  return k_subsets_of(image, k);
}

}  // namespace detail

/// k-subset construction: the powerset construction with every tracked set
/// capped at size k; branching happens exactly on overflow. Reachable part
/// only; missing transitions stay missing (no empty-set state).
inline Automaton k_subset(const Automaton& a, int k,
                          std::vector<StateSet>* sets_out = nullptr) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("k_subset: finite-word automata only");
  if (k < 1 || k > a.state_count()) throw std::invalid_argument("k_subset: k out of range");
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
      StateSet image = a.post(sets[i], s);
      if (image.empty()) continue;
      for (StateSet& x : detail::capped_images(image, k))
        trans.back().emplace_back(s, intern(std::move(x)));
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

/// k-breakpoint construction of a coBuchi NFA: pairs (X, Y) with |X| <= k and
/// Y tracking runs accepting since the last breakpoint; overflow branches over
/// all size-k subsets of the X-image.
inline Automaton k_breakpoint(const Automaton& a, int k,
                              std::vector<BreakpointState>* pairs_out = nullptr) {
  if (a.mode() != WordMode::Infinite || a.acceptance().kind != AccKind::CoBuchi)
    throw std::invalid_argument("k_breakpoint: coBuchi automata only");
  if (k < 1 || k > a.state_count()) throw std::invalid_argument("k_breakpoint: k out of range");
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
      const BreakpointState cur = pairs[i];  // copy: intern may grow `pairs`
      StateSet image = a.post(cur.x, s);
      if (cur.y.empty()) {
        for (StateSet& x2 : detail::capped_images(image, k))
          trans.back().emplace_back(s, intern(BreakpointState{x2, x2}));
      } else {
        StateSet tracked = set_intersection(a.post(cur.y, s), f);
        for (StateSet& x2 : detail::capped_images(image, k)) {
          StateSet y2 = set_intersection(x2, tracked);
          trans.back().emplace_back(s, intern(BreakpointState{std::move(x2), std::move(y2)}));
        }
      }
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

}  // namespace autwidth
