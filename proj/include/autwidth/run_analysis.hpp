#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "autwidth/automaton.hpp"

namespace autwidth {

using BigInt = boost::multiprecision::cpp_int;

/// Membership on finite words by on-the-fly subset propagation.
inline bool member_finite(const Automaton& a, const std::vector<Symbol>& word) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("member_finite: automaton is not on finite words");
  StateSet cur{a.initial()};
  for (Symbol s : word) {
    cur = a.post(cur, s);
    if (cur.empty()) return false;
  }
  return intersects(cur, a.acceptance().states);
}

/// Number of accepting runs of `word`, exact (ambiguity of the word).
inline BigInt count_accepting_runs(const Automaton& a, const std::vector<Symbol>& word) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("count_accepting_runs: automaton is not on finite words");
  std::vector<BigInt> cnt(static_cast<size_t>(a.state_count()), 0);
  cnt[static_cast<size_t>(a.initial())] = 1;
  for (Symbol s : word) {
    std::vector<BigInt> nxt(cnt.size(), 0);
    for (State q = 0; q < a.state_count(); ++q) {
      if (cnt[static_cast<size_t>(q)] == 0) continue;
      for (State t : a.successors(q, s)) nxt[static_cast<size_t>(t)] += cnt[static_cast<size_t>(q)];
    }
    cnt.swap(nxt);
  }
  BigInt total = 0;
  for (State q : a.acceptance().states) total += cnt[static_cast<size_t>(q)];
  return total;
}

/// Maximum ambiguity over all words of each length up to max_len.
/// Guard: |Sigma|^max_len <= 10^7.
inline std::vector<std::pair<int, BigInt>> max_ambiguity_profile(const Automaton& a,
                                                                 int max_len) {
  if (a.mode() != WordMode::Finite)
    throw std::invalid_argument("max_ambiguity_profile: automaton is not on finite words");
  double words = 1;
  for (int i = 0; i < max_len; ++i) {
    words *= a.alphabet().size();
    if (words > 1e7)
      throw std::length_error("max_ambiguity_profile: |Sigma|^max_len exceeds 10^7");
  }
  std::vector<BigInt> best(static_cast<size_t>(max_len) + 1, 0);
  std::vector<char> acc = a.accepting_mask();
  // DFS over the word trie, carrying per-state run counts.
  std::vector<BigInt> cnt(static_cast<size_t>(a.state_count()), 0);
  cnt[static_cast<size_t>(a.initial())] = 1;
  auto accepted = [&](const std::vector<BigInt>& c) {
    BigInt t = 0;
    for (State q = 0; q < a.state_count(); ++q)
      if (acc[static_cast<size_t>(q)]) t += c[static_cast<size_t>(q)];
    return t;
  };
  std::function<void(int, const std::vector<BigInt>&)> walk =
      [&](int len, const std::vector<BigInt>& c) {
        BigInt t = accepted(c);
        if (t > best[static_cast<size_t>(len)]) best[static_cast<size_t>(len)] = t;
        if (len == max_len) return;
        bool alive = false;
        for (const BigInt& x : c)
          if (x != 0) { alive = true; break; }
        if (!alive) return;
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
          std::vector<BigInt> nxt(c.size(), 0);
          for (State q = 0; q < a.state_count(); ++q) {
            if (c[static_cast<size_t>(q)] == 0) continue;
            for (State x : a.successors(q, s))
              nxt[static_cast<size_t>(x)] += c[static_cast<size_t>(q)];
          }
          walk(len + 1, nxt);
        }
      };
  walk(0, cnt);
  std::vector<std::pair<int, BigInt>> out;
  for (int l = 0; l <= max_len; ++l) out.emplace_back(l, best[static_cast<size_t>(l)]);
  return out;
}

}  // namespace autwidth
