#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace autwidth {

using State = int;
using Symbol = int;

/// Sorted, duplicate-free set of states. Equality of the representation is
/// equality of the set.
using StateSet = std::vector<State>;

inline void normalize(StateSet& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

inline bool contains(const StateSet& xs, State q) {
  return std::binary_search(xs.begin(), xs.end(), q);
}

inline bool is_subset(const StateSet& xs, const StateSet& ys) {
  return std::includes(ys.begin(), ys.end(), xs.begin(), xs.end());
}

inline bool intersects(const StateSet& xs, const StateSet& ys) {
  auto i = xs.begin();
  auto j = ys.begin();
  while (i != xs.end() && j != ys.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

inline StateSet set_intersection(const StateSet& xs, const StateSet& ys) {
  StateSet out;
  std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(),
                        std::back_inserter(out));
  return out;
}

/// Ordered list of distinct printable symbol names.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t i = 0; i < names_.size(); ++i) {
      const std::string& n = names_[i];
      if (n.empty()) throw std::invalid_argument("alphabet: empty symbol name");
      for (char c : n)
        if (std::isspace(static_cast<unsigned char>(c)))
          throw std::invalid_argument("alphabet: whitespace in symbol name '" + n + "'");
      if (!index_.emplace(n, static_cast<Symbol>(i)).second)
        throw std::invalid_argument("alphabet: duplicate symbol name '" + n + "'");
    }
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Symbol s) const { return names_.at(static_cast<size_t>(s)); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Symbol> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Symbol index_of(const std::string& name) const {
    auto s = find(name);
    if (!s) throw std::invalid_argument("alphabet: unknown symbol '" + name + "'");
    return *s;
  }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

enum class WordMode { Finite, Infinite };

enum class AccKind { FiniteReach, Buchi, CoBuchi, Rabin };

struct RabinPair {
  StateSet good;  // visited infinitely often
  StateSet bad;   // visited finitely often
};

/// Acceptance condition. `states` is F for FiniteReach/Buchi/CoBuchi; for
/// CoBuchi a run accepts iff it visits non-F states finitely often.
struct Acceptance {
  AccKind kind = AccKind::FiniteReach;
  StateSet states;
  std::vector<RabinPair> pairs;

  static Acceptance finite_reach(StateSet f) {
    normalize(f);
    return Acceptance{AccKind::FiniteReach, std::move(f), {}};
  }
  static Acceptance buchi(StateSet f) {
    normalize(f);
    return Acceptance{AccKind::Buchi, std::move(f), {}};
  }
  static Acceptance cobuchi(StateSet f) {
    normalize(f);
    return Acceptance{AccKind::CoBuchi, std::move(f), {}};
  }
  static Acceptance rabin(std::vector<RabinPair> ps) {
    for (auto& p : ps) {
      normalize(p.good);
      normalize(p.bad);
    }
    return Acceptance{AccKind::Rabin, {}, std::move(ps)};
  }
};

/// Ultimately periodic word u v^omega, by symbol indices. The period is
/// non-empty.
struct UPWord {
  std::vector<Symbol> prefix;
  std::vector<Symbol> period;

  bool operator==(const UPWord& o) const {
    return prefix == o.prefix && period == o.period;
  }
};

/// Nondeterministic automaton with a partial transition relation: a missing
/// transition kills the run.
class Automaton {
 public:
  Automaton() = default;

  Automaton(Alphabet alphabet, int state_count, State initial, WordMode mode,
            Acceptance acceptance)
      : alphabet_(std::move(alphabet)),
        state_count_(state_count),
        initial_(initial),
        mode_(mode),
        acceptance_(std::move(acceptance)),
        delta_(static_cast<size_t>(std::max(state_count, 0)) *
               static_cast<size_t>(alphabet_.size())) {}

  const Alphabet& alphabet() const { return alphabet_; }
  int state_count() const { return state_count_; }
  State initial() const { return initial_; }
  WordMode mode() const { return mode_; }
  const Acceptance& acceptance() const { return acceptance_; }
  Acceptance& acceptance() { return acceptance_; }

  void add_transition(State p, Symbol s, State q) {
    auto& v = delta_.at(slot(p, s));
    auto it = std::lower_bound(v.begin(), v.end(), q);
    if (it == v.end() || *it != q) v.insert(it, q);  // duplicates are idempotent
  }

  const StateSet& successors(State p, Symbol s) const {
    return delta_.at(slot(p, s));
  }

  StateSet post(const StateSet& xs, Symbol s) const {
    StateSet out;
    for (State q : xs) {
      const StateSet& nx = successors(q, s);
      out.insert(out.end(), nx.begin(), nx.end());
    }
    normalize(out);
    return out;
  }

  bool is_accepting_state(State q) const { return contains(acceptance_.states, q); }

  /// Mask of F over [0, state_count) for FiniteReach/Buchi/CoBuchi.
  std::vector<char> accepting_mask() const {
    std::vector<char> m(static_cast<size_t>(state_count_), 0);
    for (State q : acceptance_.states)
      if (q >= 0 && q < state_count_) m[static_cast<size_t>(q)] = 1;
    return m;
  }

  std::vector<std::pair<State, Symbol>> nondeterministic_choice_points() const {
    std::vector<std::pair<State, Symbol>> cps;
    for (State q = 0; q < state_count_; ++q)
      for (Symbol s = 0; s < alphabet_.size(); ++s)
        if (successors(q, s).size() > 1) cps.emplace_back(q, s);
    return cps;
  }

 private:
  size_t slot(State p, Symbol s) const {
    if (p < 0 || p >= state_count_) throw std::out_of_range("automaton: state out of range");
    if (s < 0 || s >= alphabet_.size()) throw std::out_of_range("automaton: symbol out of range");
    return static_cast<size_t>(p) * static_cast<size_t>(alphabet_.size()) +
           static_cast<size_t>(s);
  }

  Alphabet alphabet_;
  int state_count_ = 0;
  State initial_ = 0;
  WordMode mode_ = WordMode::Finite;
  Acceptance acceptance_;
  std::vector<StateSet> delta_;
};

inline bool is_deterministic(const Automaton& a) {
  for (State q = 0; q < a.state_count(); ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      if (a.successors(q, s).size() > 1) return false;
  return true;
}

inline bool is_complete_deterministic(const Automaton& a) {
  for (State q = 0; q < a.state_count(); ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      if (a.successors(q, s).size() != 1) return false;
  return true;
}

/// Human-readable diagnostics; empty iff all structural invariants hold.
inline std::vector<std::string> validate(const Automaton& a) {
  std::vector<std::string> out;
  auto in_range = [&](State q) { return q >= 0 && q < a.state_count(); };
  if (a.state_count() <= 0) out.push_back("state count must be positive");
  if (!in_range(a.initial()))
    out.push_back("initial state " + std::to_string(a.initial()) + " out of range");
  for (State q = 0; q < a.state_count(); ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (State t : a.successors(q, s))
        if (!in_range(t))
          out.push_back("transition target out of range: " + std::to_string(q) + " --" +
                        a.alphabet().name(s) + "--> " + std::to_string(t));
  const Acceptance& acc = a.acceptance();
  auto check_set = [&](const StateSet& xs, const std::string& what) {
    for (State q : xs)
      if (!in_range(q)) out.push_back(what + " state " + std::to_string(q) + " out of range");
  };
  check_set(acc.states, "accepting");
  for (size_t i = 0; i < acc.pairs.size(); ++i) {
    check_set(acc.pairs[i].good, "rabin pair " + std::to_string(i) + " G");
    check_set(acc.pairs[i].bad, "rabin pair " + std::to_string(i) + " B");
  }
  bool finite_kind = acc.kind == AccKind::FiniteReach;
  if (a.mode() == WordMode::Finite && !finite_kind)
    out.push_back("infinite-word acceptance with word_mode=finite");
  if (a.mode() == WordMode::Infinite && finite_kind)
    out.push_back("finite-word acceptance with word_mode=infinite");
  return out;
}

using AcceptanceBuilder = std::function<Acceptance(
    const std::vector<std::pair<State, State>>& pair_states, const Automaton& a,
    const Automaton& b)>;

/// Synchronous product on reachable pairs. The acceptance of the result is
/// assembled by `build` from the pair list (index in the list = product state).
inline Automaton product(const Automaton& a, const Automaton& b, WordMode mode,
                         const AcceptanceBuilder& build) {
  if (!(a.alphabet() == b.alphabet()))
    throw std::invalid_argument("product: alphabet mismatch");
  std::vector<std::pair<State, State>> pairs;
  std::unordered_map<int64_t, int> index;
  auto key = [&](State p, State q) {
    return static_cast<int64_t>(p) * (b.state_count() + 1) + q;
  };
  auto intern = [&](State p, State q) {
    auto [it, fresh] = index.emplace(key(p, q), static_cast<int>(pairs.size()));
    if (fresh) pairs.emplace_back(p, q);
    return it->second;
  };
  intern(a.initial(), b.initial());
  std::vector<std::vector<std::pair<Symbol, int>>> trans;
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    trans.emplace_back();
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (State p2 : a.successors(p, s))
        for (State q2 : b.successors(q, s))
          trans.back().emplace_back(s, intern(p2, q2));
  }
  Automaton out(a.alphabet(), static_cast<int>(pairs.size()), 0, mode,
                build(pairs, a, b));
  for (size_t i = 0; i < pairs.size(); ++i)
    for (auto [s, j] : trans[i]) out.add_transition(static_cast<State>(i), s, j);
  return out;
}

}  // namespace autwidth
