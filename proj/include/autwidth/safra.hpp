#pragma once

#include "autwidth/width.hpp"

namespace autwidth {

/// Safra tree: nodes in depth-first pre-order (so siblings are ordered
/// left-to-right by index and node 0 is the root), with per-node state set
/// (sigma), colour (chi) and name (lambda, injective into [1, 2n]).
struct SafraState {
  std::vector<int> parent;  // parent[0] == -1
  std::vector<StateSet> sigma;
  std::vector<char> green;
  std::vector<int> name;

  int node_count() const { return static_cast<int>(parent.size()); }

  bool operator<(const SafraState& o) const {
    return std::tie(parent, sigma, green, name) <
           std::tie(o.parent, o.sigma, o.green, o.name);
  }
  bool operator==(const SafraState& o) const {
    return parent == o.parent && sigma == o.sigma && green == o.green && name == o.name;
  }
};

namespace detail {

/// Scratch tree during a Safra transition; nodes carry explicit child lists
/// so insertions and deletions are cheap, and a final pre-order pass
/// canonicalises the result.
struct SafraScratch {
  std::vector<int> parent;
  std::vector<std::vector<int>> kids;
  std::vector<StateSet> sigma;
  std::vector<int> name;
  std::vector<char> alive;

  explicit SafraScratch(const SafraState& st) {
    int m = st.node_count();
    parent.assign(st.parent.begin(), st.parent.end());
    sigma.assign(st.sigma.begin(), st.sigma.end());
    name.assign(st.name.begin(), st.name.end());
    kids.resize(static_cast<size_t>(m));
    alive.assign(static_cast<size_t>(m), 1);
    for (int v = 1; v < m; ++v)
      kids[static_cast<size_t>(st.parent[static_cast<size_t>(v)])].push_back(v);
    // pre-order index order already lists siblings left-to-right
  }

  bool is_ancestor(int anc, int v) const {
    for (int cur = v; cur != -1; cur = parent[static_cast<size_t>(cur)])
      if (cur == anc) return true;
    return false;
  }

  void preorder(int v, std::vector<int>& out) const {
    if (!alive[static_cast<size_t>(v)]) return;
    out.push_back(v);
    for (int c : kids[static_cast<size_t>(v)]) preorder(c, out);
  }

  void kill_subtree(int v) {
    alive[static_cast<size_t>(v)] = 0;
    for (int c : kids[static_cast<size_t>(v)]) kill_subtree(c);
  }
};

/// Steps (iv)-(vi) of the Safra transition plus invariant checks and
/// canonicalisation; shared by the full and the k-bounded construction.
inline SafraState safra_finish(SafraScratch& t, int max_name) {
  // (iv) keep only the oldest copy of every state: nodes in pre-order, a
  // state survives in a node only below the deepest node that already kept it
  std::vector<int> order;
  t.preorder(0, order);
  std::map<State, int> tip;
  for (int v : order) {
    StateSet kept;
    for (State q : t.sigma[static_cast<size_t>(v)]) {
      auto it = tip.find(q);
      if (it == tip.end() || t.is_ancestor(it->second, v)) {
        kept.push_back(q);
        tip[q] = v;
      }
    }
    t.sigma[static_cast<size_t>(v)] = std::move(kept);
  }
  // (v) drop empty non-root nodes (their subtrees are empty as well)
  for (int v : order)
    if (v != 0 && t.alive[static_cast<size_t>(v)] && t.sigma[static_cast<size_t>(v)].empty())
      t.kill_subtree(v);
  // (vi) green a node whose children cover it, removing the whole subtree
  // below; an empty root stays white (a dead run must not accept)
  std::vector<char> green(t.parent.size(), 0);
  order.clear();
  t.preorder(0, order);
  for (int v : order) {
    if (!t.alive[static_cast<size_t>(v)]) continue;  // below a node greened earlier
    StateSet uni;
    for (int c : t.kids[static_cast<size_t>(v)])
      if (t.alive[static_cast<size_t>(c)]) {
        const StateSet& cs = t.sigma[static_cast<size_t>(c)];
        uni.insert(uni.end(), cs.begin(), cs.end());
      }
    normalize(uni);
    if (!t.sigma[static_cast<size_t>(v)].empty() && uni == t.sigma[static_cast<size_t>(v)]) {
      green[static_cast<size_t>(v)] = 1;
      for (int c : t.kids[static_cast<size_t>(v)])
        if (t.alive[static_cast<size_t>(c)]) t.kill_subtree(c);
    }
  }
  // canonical pre-order renumbering of the surviving nodes
  order.clear();
  t.preorder(0, order);
  std::map<int, int> renum;
  SafraState out;
  for (int v : order) {
    int id = static_cast<int>(renum.size());
    renum[v] = id;
    out.parent.push_back(v == 0 ? -1 : renum.at(t.parent[static_cast<size_t>(v)]));
    out.sigma.push_back(t.sigma[static_cast<size_t>(v)]);
    out.green.push_back(green[static_cast<size_t>(v)]);
    out.name.push_back(t.name[static_cast<size_t>(v)]);
  }
  // invariants of Safra states, checked on every constructed tree
  std::vector<StateSet> child_union(out.parent.size());
  for (size_t v = out.parent.size(); v-- > 1;) {
    if (!is_subset(out.sigma[v], out.sigma[static_cast<size_t>(out.parent[v])]) )
      throw std::logic_error("safra: child not contained in parent");
    StateSet& cu = child_union[static_cast<size_t>(out.parent[v])];
    for (State q : out.sigma[v]) {
      if (contains(cu, q)) throw std::logic_error("safra: siblings overlap");
      cu.push_back(q);
    }
    normalize(cu);
    if (out.sigma[v].empty()) throw std::logic_error("safra: empty non-root node");
  }
  for (size_t v = 0; v < out.parent.size(); ++v)
    if (!out.sigma[v].empty() && child_union[v] == out.sigma[v] && !out.green[v])
      throw std::logic_error("safra: children cover a white parent");
  std::vector<char> used(static_cast<size_t>(max_name) + 1, 0);
  for (int nm : out.name) {
    if (nm < 1 || nm > max_name || used[static_cast<size_t>(nm)])
      throw std::logic_error("safra: bad name labelling");
    used[static_cast<size_t>(nm)] = 1;
  }
  return out;
}

/// Steps (i)-(ii): spawn a right-most child under every node intersecting F,
/// labelled by the accepting part and named with the lowest name unused in
/// the pre-transition tree.
inline void safra_spawn(SafraScratch& t, const StateSet& f, int max_name) {
  std::vector<char> used(static_cast<size_t>(max_name) + 1, 0);
  for (int nm : t.name) used[static_cast<size_t>(nm)] = 1;
  int next_free = 1;
  auto fresh = [&]() {
    while (next_free <= max_name && used[static_cast<size_t>(next_free)]) ++next_free;
    if (next_free > max_name) throw std::logic_error("safra: out of names");
    used[static_cast<size_t>(next_free)] = 1;
    return next_free;
  };
  int original = static_cast<int>(t.parent.size());
  for (int v = 0; v < original; ++v) {
    StateSet hit = set_intersection(t.sigma[static_cast<size_t>(v)], f);
    if (hit.empty()) continue;
    int nv = static_cast<int>(t.parent.size());
    t.parent.push_back(v);
    t.kids.emplace_back();
    t.sigma.push_back(std::move(hit));
    t.name.push_back(fresh());
    t.alive.push_back(1);
    t.kids[static_cast<size_t>(v)].push_back(nv);
  }
}

}  // namespace detail

namespace detail {

template <typename RootImages>
inline Automaton safra_like(const Automaton& a, int max_name, const RootImages& root_images,
                            std::vector<SafraState>* states_out) {
  const StateSet& f = a.acceptance().states;
  std::map<SafraState, int> index;
  std::vector<SafraState> states;
  auto intern = [&](SafraState st) {
    auto [it, fresh] = index.emplace(std::move(st), static_cast<int>(states.size()));
    if (fresh) states.push_back(it->first);
    return it->second;
  };
  SafraState init;
  init.parent = {-1};
  init.sigma = {StateSet{a.initial()}};
  init.green = {0};
  init.name = {1};
  intern(init);
  std::vector<std::vector<std::pair<Symbol, int>>> trans;
  for (size_t i = 0; i < states.size(); ++i) {
    trans.emplace_back();
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      const SafraState cur = states[i];  // copy: intern may grow `states`
      SafraScratch base(cur);
      safra_spawn(base, f, max_name);
      // step (iii): subset construction locally; the root may branch
      StateSet root_image = a.post(base.sigma[0], s);
      for (const StateSet& root_set : root_images(root_image)) {
        SafraScratch t = base;
        std::vector<int> order;
        t.preorder(0, order);
        for (int v : order)
          t.sigma[static_cast<size_t>(v)] =
              v == 0 ? root_set
                     : set_intersection(a.post(t.sigma[static_cast<size_t>(v)], s), root_set);
        trans.back().emplace_back(s, intern(safra_finish(t, max_name)));
      }
    }
  }
  std::vector<RabinPair> pairs(static_cast<size_t>(max_name));
  for (size_t i = 0; i < states.size(); ++i) {
    const SafraState& st = states[i];
    std::vector<char> present(static_cast<size_t>(max_name) + 1, 0);
    for (int v = 0; v < st.node_count(); ++v) {
      int nm = st.name[static_cast<size_t>(v)];
      present[static_cast<size_t>(nm)] = 1;
      if (st.green[static_cast<size_t>(v)])
        pairs[static_cast<size_t>(nm - 1)].good.push_back(static_cast<State>(i));
    }
    for (int nm = 1; nm <= max_name; ++nm)
      if (!present[static_cast<size_t>(nm)])
        pairs[static_cast<size_t>(nm - 1)].bad.push_back(static_cast<State>(i));
  }
  Automaton out(a.alphabet(), static_cast<int>(states.size()), 0, WordMode::Infinite,
                Acceptance::rabin(std::move(pairs)));
  for (size_t i = 0; i < states.size(); ++i)
    for (auto [s, j] : trans[i]) out.add_transition(static_cast<State>(i), s, j);
  if (states_out) *states_out = states;
  return out;
}

}  // namespace detail

/// Safra determinisation of a Buchi NFA into a deterministic Rabin automaton
/// with 2n pairs indexed by node names.
inline Automaton safra(const Automaton& a, std::vector<SafraState>* states_out = nullptr) {
  if (a.mode() != WordMode::Infinite || a.acceptance().kind != AccKind::Buchi)
    throw std::invalid_argument("safra: Buchi automata only");
  return detail::safra_like(
      a, 2 * a.state_count(),
      [](const StateSet& image) { return std::vector<StateSet>{image}; }, states_out);
}

/// k-Safra construction: the root set is capped at size k (all size-k subsets
/// on overflow) and propagated down by intersection, giving a nondeterministic
/// Rabin automaton that preserves the language.
inline Automaton k_safra(const Automaton& a, int k,
                         std::vector<SafraState>* states_out = nullptr) {
  if (a.mode() != WordMode::Infinite || a.acceptance().kind != AccKind::Buchi)
    throw std::invalid_argument("k_safra: Buchi automata only");
  if (k < 1 || k > a.state_count()) throw std::invalid_argument("k_safra: k out of range");
  return detail::safra_like(
      a, 2 * a.state_count(),
      [k](const StateSet& image) { return detail::capped_images(image, k); }, states_out);
}

/// Least k at which the k-construction (subset, breakpoint or Safra,
/// depending on the input's acceptance) is determinisable by pruning.
inline DetWidthReport det_width(const Automaton& a, int state_budget = 50000,
                                double pruning_budget = 1e6) {
  switch (a.acceptance().kind) {
    case AccKind::FiniteReach:
      return det_width_finite(a, state_budget, pruning_budget);
    case AccKind::CoBuchi:
      return det_width_nca(a, state_budget, pruning_budget);
    case AccKind::Buchi: {
      DetWidthReport rep;
      for (int k = 1; k <= a.state_count(); ++k) {
        Automaton ak = k_safra(a, k);
        if (ak.state_count() > state_budget) {
          rep.refused = true;
          rep.refused_k = k;
          rep.refused_states = ak.state_count();
          return rep;
        }
        bool dbp = dbp_check_rabin(ak, pruning_budget).first;
        rep.per_k.push_back({k, dbp, ak.state_count()});
        if (dbp) {
          rep.det_width = k;
          return rep;
        }
      }
      return rep;
    }
    default:
      throw std::invalid_argument("det_width: NFA, NCA or NBA input expected");
  }
}

}  // namespace autwidth
