#pragma once

#include <deque>
#include <queue>

#include "autwidth/automaton.hpp"

namespace autwidth {

namespace detail {

/// Strongly connected components of the subgraph induced by `allowed`,
/// iterative Tarjan. Returns component id per state (-1 outside `allowed`).
inline std::vector<int> scc_ids(const Automaton& a, const std::vector<char>& allowed,
                                int& comp_count) {
  const int n = a.state_count();
  const int nsym = a.alphabet().size();
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> onstk(n, 0);
  std::vector<int> stk;
  int counter = 0;
  comp_count = 0;

  struct Frame {
    State v;
    Symbol s;
    size_t i;
  };
  for (State root = 0; root < n; ++root) {
    if (!allowed[static_cast<size_t>(root)] || idx[root] != -1) continue;
    std::vector<Frame> frames{{root, 0, 0}};
    idx[root] = low[root] = counter++;
    stk.push_back(root);
    onstk[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      bool descended = false;
      while (f.s < nsym) {
        const StateSet& succ = a.successors(f.v, f.s);
        while (f.i < succ.size()) {
          State w = succ[f.i++];
          if (!allowed[static_cast<size_t>(w)]) continue;
          if (idx[w] == -1) {
            idx[w] = low[w] = counter++;
            stk.push_back(w);
            onstk[w] = 1;
            frames.push_back({w, 0, 0});
            descended = true;
            break;
          }
          if (onstk[w]) low[f.v] = std::min(low[f.v], idx[w]);
        }
        if (descended) break;
        ++f.s;
        f.i = 0;
      }
      if (descended) continue;
      State v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == idx[v]) {
        while (true) {
          State w = stk.back();
          stk.pop_back();
          onstk[w] = 0;
          comp[w] = comp_count;
          if (w == v) break;
        }
        ++comp_count;
      }
    }
  }
  return comp;
}

inline std::vector<char> reachable_mask(const Automaton& a) {
  std::vector<char> seen(static_cast<size_t>(a.state_count()), 0);
  std::deque<State> bfs{a.initial()};
  seen[static_cast<size_t>(a.initial())] = 1;
  while (!bfs.empty()) {
    State q = bfs.front();
    bfs.pop_front();
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (State t : a.successors(q, s))
        if (!seen[static_cast<size_t>(t)]) {
          seen[static_cast<size_t>(t)] = 1;
          bfs.push_back(t);
        }
  }
  return seen;
}

/// Shortest symbol path from `from` to a state satisfying `goal`, moving only
/// through `allowed` states (the start needs not be allowed).
inline std::optional<std::vector<Symbol>> bfs_path(
    const Automaton& a, State from, const std::vector<char>& allowed,
    const std::function<bool(State)>& goal) {
  if (goal(from)) return std::vector<Symbol>{};
  std::vector<State> prev_state(static_cast<size_t>(a.state_count()), -1);
  std::vector<Symbol> prev_sym(static_cast<size_t>(a.state_count()), -1);
  std::vector<char> seen(static_cast<size_t>(a.state_count()), 0);
  seen[static_cast<size_t>(from)] = 1;
  std::deque<State> bfs{from};
  while (!bfs.empty()) {
    State q = bfs.front();
    bfs.pop_front();
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (State t : a.successors(q, s)) {
        if (!allowed[static_cast<size_t>(t)] || seen[static_cast<size_t>(t)]) continue;
        seen[static_cast<size_t>(t)] = 1;
        prev_state[static_cast<size_t>(t)] = q;
        prev_sym[static_cast<size_t>(t)] = s;
        if (goal(t)) {
          std::vector<Symbol> path;
          for (State cur = t; cur != from; cur = prev_state[static_cast<size_t>(cur)])
            path.push_back(prev_sym[static_cast<size_t>(cur)]);
          std::reverse(path.begin(), path.end());
          return path;
        }
        bfs.push_back(t);
      }
  }
  return std::nullopt;
}

/// Non-empty cycle through `pivot` staying inside `allowed`.
inline std::optional<std::vector<Symbol>> cycle_through(const Automaton& a, State pivot,
                                                        const std::vector<char>& allowed) {
  // one BFS per first edge would be wasteful; instead search for a path from
  // pivot back to pivot of length >= 1 by tracking the first step separately
  for (Symbol s = 0; s < a.alphabet().size(); ++s)
    if (contains(a.successors(pivot, s), pivot)) return std::vector<Symbol>{s};
  std::vector<State> prev_state(static_cast<size_t>(a.state_count()), -1);
  std::vector<Symbol> prev_sym(static_cast<size_t>(a.state_count()), -1);
  std::vector<char> seen(static_cast<size_t>(a.state_count()), 0);
  std::deque<State> bfs;
  for (Symbol s = 0; s < a.alphabet().size(); ++s)
    for (State t : a.successors(pivot, s)) {
      if (t == pivot || !allowed[static_cast<size_t>(t)] || seen[static_cast<size_t>(t)])
        continue;
      seen[static_cast<size_t>(t)] = 1;
      prev_state[static_cast<size_t>(t)] = pivot;
      prev_sym[static_cast<size_t>(t)] = s;
      bfs.push_back(t);
    }
  while (!bfs.empty()) {
    State q = bfs.front();
    bfs.pop_front();
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (State t : a.successors(q, s)) {
        if (t == pivot) {
          std::vector<Symbol> cyc{s};
          for (State cur = q; cur != pivot; cur = prev_state[static_cast<size_t>(cur)])
            cyc.push_back(prev_sym[static_cast<size_t>(cur)]);
          std::reverse(cyc.begin(), cyc.end());
          return cyc;
        }
        if (!allowed[static_cast<size_t>(t)] || seen[static_cast<size_t>(t)]) continue;
        seen[static_cast<size_t>(t)] = 1;
        prev_state[static_cast<size_t>(t)] = q;
        prev_sym[static_cast<size_t>(t)] = s;
        bfs.push_back(t);
      }
  }
  return std::nullopt;
}

/// Shortest word from the initial state to `target` (unrestricted).
inline std::vector<Symbol> stem_to(const Automaton& a, State target) {
  std::vector<char> all(static_cast<size_t>(a.state_count()), 1);
  auto p = bfs_path(a, a.initial(), all, [&](State q) { return q == target; });
  if (!p) throw std::logic_error("stem_to: target not reachable");
  return *p;
}

}  // namespace detail

/// Shortest accepting word of a finite-word automaton, or nullopt if empty.
inline std::optional<std::vector<Symbol>> shortest_accepting_word(const Automaton& a) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("shortest_accepting_word: finite-word automata only");
  std::vector<char> all(static_cast<size_t>(a.state_count()), 1);
  return detail::bfs_path(a, a.initial(), all,
                          [&](State q) { return a.is_accepting_state(q); });
}

/// Accepting lasso of an infinite-word automaton (Buchi, coBuchi or Rabin), or
/// nullopt if the language is empty.
inline std::optional<UPWord> accepting_lasso(const Automaton& a) {
  if (a.mode() != WordMode::Infinite)
    throw std::invalid_argument("accepting_lasso: infinite-word automata only");
  std::vector<char> reach = detail::reachable_mask(a);
  auto try_pair = [&](const StateSet& good, const StateSet& bad,
                      bool loop_inside_good) -> std::optional<UPWord> {
    // loop avoiding `bad`; if loop_inside_good, the whole loop stays in `good`,
    // otherwise it must merely visit `good`.
    std::vector<char> allowed(static_cast<size_t>(a.state_count()), 0);
    for (State q = 0; q < a.state_count(); ++q) {
      bool ok = reach[static_cast<size_t>(q)] && !contains(bad, q);
      if (loop_inside_good) ok = ok && contains(good, q);
      allowed[static_cast<size_t>(q)] = ok ? 1 : 0;
    }
    for (State pivot = 0; pivot < a.state_count(); ++pivot) {
      if (!allowed[static_cast<size_t>(pivot)]) continue;
      if (!loop_inside_good && !contains(good, pivot)) continue;
      auto cyc = detail::cycle_through(a, pivot, allowed);
      if (cyc) return UPWord{detail::stem_to(a, pivot), *cyc};
    }
    return std::nullopt;
  };
  const Acceptance& acc = a.acceptance();
  switch (acc.kind) {
    case AccKind::Buchi:
      return try_pair(acc.states, {}, false);
    case AccKind::CoBuchi:
      return try_pair(acc.states, {}, true);
    case AccKind::Rabin:
      for (const RabinPair& p : acc.pairs)
        if (auto w = try_pair(p.good, p.bad, false)) return w;
      return std::nullopt;
    default:
      throw std::invalid_argument("accepting_lasso: unsupported acceptance");
  }
}

/// Membership of the ultimately periodic word u v^omega: product of the
/// automaton with the lasso positions, searched for an accepting cycle.
inline bool member_up(const Automaton& a, const UPWord& w) {
  if (a.mode() != WordMode::Infinite)
    throw std::invalid_argument("member_up: infinite-word automata only");
  if (w.period.empty()) throw std::invalid_argument("member_up: empty period");
  const int plen = static_cast<int>(w.prefix.size());
  const int total = plen + static_cast<int>(w.period.size());
  auto sym_at = [&](int i) {
    return i < plen ? w.prefix[static_cast<size_t>(i)]
                    : w.period[static_cast<size_t>(i - plen)];
  };
  auto next_pos = [&](int i) { return i + 1 < total ? i + 1 : plen; };
  const int n = a.state_count();
  auto node = [&](State q, int i) { return q * total + i; };
  Automaton prod(a.alphabet(), n * total, node(a.initial(), 0), WordMode::Infinite,
                 Acceptance::buchi({}));
  for (State q = 0; q < n; ++q)
    for (int i = 0; i < total; ++i)
      for (State t : a.successors(q, sym_at(i)))
        prod.add_transition(node(q, i), sym_at(i), node(t, next_pos(i)));
  auto lift = [&](const StateSet& xs) {
    StateSet out;
    for (State q : xs)
      for (int i = 0; i < total; ++i) out.push_back(node(q, i));
    normalize(out);
    return out;
  };
  const Acceptance& acc = a.acceptance();
  switch (acc.kind) {
    case AccKind::Buchi:
      prod.acceptance() = Acceptance::buchi(lift(acc.states));
      break;
    case AccKind::CoBuchi:
      prod.acceptance() = Acceptance::cobuchi(lift(acc.states));
      break;
    case AccKind::Rabin: {
      std::vector<RabinPair> ps;
      for (const RabinPair& p : acc.pairs)
        ps.push_back(RabinPair{lift(p.good), lift(p.bad)});
      prod.acceptance() = Acceptance::rabin(std::move(ps));
      break;
    }
    default:
      throw std::invalid_argument("member_up: unsupported acceptance");
  }
  return accepting_lasso(prod).has_value();
}

/// Streett pair (E, F): a loop is fine iff it meets E or avoids F.
struct StreettPair {
  StateSet e;
  StateSet f;
};

/// True iff some reachable loop satisfies one of the Rabin pairs and all of
/// the Streett pairs. Recursive SCC filtering on the Streett obligations.
inline bool rabin_streett_nonempty(const Automaton& a,
                                   const std::vector<RabinPair>& rabin,
                                   const std::vector<StreettPair>& streett) {
  std::vector<char> reach = detail::reachable_mask(a);
  for (const RabinPair& rp : rabin) {
    std::vector<char> base(static_cast<size_t>(a.state_count()), 0);
    for (State q = 0; q < a.state_count(); ++q)
      base[static_cast<size_t>(q)] =
          (reach[static_cast<size_t>(q)] && !contains(rp.bad, q)) ? 1 : 0;
    // worklist of node masks to decompose
    std::vector<std::vector<char>> work{base};
    while (!work.empty()) {
      std::vector<char> cur = std::move(work.back());
      work.pop_back();
      int ncomp = 0;
      std::vector<int> comp = detail::scc_ids(a, cur, ncomp);
      for (int c = 0; c < ncomp; ++c) {
        StateSet members;
        for (State q = 0; q < a.state_count(); ++q)
          if (cur[static_cast<size_t>(q)] && comp[static_cast<size_t>(q)] == c)
            members.push_back(q);
        // needs an actual cycle: more than one node, or a self-loop
        bool has_cycle = members.size() > 1;
        if (!has_cycle) {
          State q = members[0];
          for (Symbol s = 0; s < a.alphabet().size() && !has_cycle; ++s)
            has_cycle = contains(a.successors(q, s), q);
        }
        if (!has_cycle) continue;
        if (!intersects(members, rp.good)) continue;
        StateSet to_remove;
        for (const StreettPair& sp : streett)
          if (!intersects(members, sp.e) && intersects(members, sp.f)) {
            StateSet hit = set_intersection(members, sp.f);
            to_remove.insert(to_remove.end(), hit.begin(), hit.end());
          }
        normalize(to_remove);
        if (to_remove.empty()) return true;  // full closed walk of the SCC works
        std::vector<char> sub(static_cast<size_t>(a.state_count()), 0);
        for (State q : members)
          if (!contains(to_remove, q)) sub[static_cast<size_t>(q)] = 1;
        work.push_back(std::move(sub));
      }
    }
  }
  return false;
}

}  // namespace autwidth
