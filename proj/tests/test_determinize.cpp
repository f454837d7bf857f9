#include <doctest.h>

#include "support.hpp"

using namespace autwidth;
using support::all_upwords;
using support::all_words;

TEST_CASE("subset construction of E1") {
  std::vector<StateSet> sets;
  Automaton d = subset_construction(support::e1(), &sets);
  REQUIRE(d.state_count() == 2);
  CHECK(sets[0] == StateSet{0});
  CHECK(sets[1] == StateSet{0, 1});
  CHECK(d.is_accepting_state(1));
  CHECK_FALSE(d.is_accepting_state(0));
  // L = a a*
  CHECK_FALSE(member_finite(d, {}));
  CHECK(member_finite(d, {0}));
  CHECK(member_finite(d, {0, 0, 0}));
}

TEST_CASE("subset construction of fig2 has exactly 3 states") {
  for (int n : {3, 4, 5}) CHECK(subset_construction(support::fig2(n)).state_count() == 3);
}

TEST_CASE("subset construction of a DFA is isomorphic to it") {
  Automaton d = subset_construction(support::fig1(2));
  CHECK(canonical_form(subset_construction(d)) == canonical_form(d));
}

TEST_CASE("subset construction preserves the language and the 2^n bound") {
  for (uint32_t seed = 50; seed < 80; ++seed) {
    Automaton a = support::random_nfa(seed, 5, 2);
    Automaton d = subset_construction(a);
    CHECK(is_deterministic(d));
    CHECK(support::words_agree(a, d, 8));
    double bound = 1;
    for (int i = 0; i < a.state_count(); ++i) bound *= 2;
    CHECK(d.state_count() <= bound);
  }
}

TEST_CASE("breakpoint determinisation of a deterministic coBuchi input") {
  // single accepting self-loop: pairs stay ({q},{q})
  Automaton a(Alphabet({"a"}), 1, 0, WordMode::Infinite, Acceptance::cobuchi({0}));
  a.add_transition(0, 0, 0);
  std::vector<BreakpointState> pairs;
  Automaton d = breakpoint_determinize(a, &pairs);
  REQUIRE(d.state_count() == 1);
  CHECK(pairs[0].x == StateSet{0});
  CHECK(pairs[0].y == StateSet{0});
  CHECK(member_up(d, UPWord{{}, {0}}));
}

TEST_CASE("breakpoint determinisation: language preserved, 3^n + 1 bound") {
  for (uint32_t seed = 100; seed < 140; ++seed) {
    Automaton a = support::random_nca(seed, 4, 2);
    Automaton d = breakpoint_determinize(a);
    CHECK(is_complete_deterministic(d));
    CHECK(support::upwords_agree(a, d, 2, 4));
    double bound = 1;
    for (int i = 0; i < a.state_count(); ++i) bound *= 3;
    CHECK(d.state_count() <= bound + 1);
  }
}

TEST_CASE("minimize_dfa: fig1 (m=3) minimises to m + 2 states") {
  Automaton d = subset_construction(support::fig1(3));
  Automaton m = minimize_dfa(d);
  CHECK(m.state_count() == 5);
  CHECK(support::words_agree(m, d, 7));
}

TEST_CASE("minimize_dfa: sec 4.2 at n = 3 needs the full 2^n states") {
  Automaton m = minimize_dfa(subset_construction(support::sec42(3)));
  CHECK(m.state_count() == 8);
}

TEST_CASE("minimize_dfa: sec 4.3 at n = 3 needs 2^n - 1 states") {
  Automaton m = minimize_dfa(subset_construction(support::sec43(3)));
  CHECK(m.state_count() == 7);
}

TEST_CASE("minimize_dfa is idempotent and language-preserving") {
  for (uint32_t seed = 150; seed < 180; ++seed) {
    Automaton a = support::random_nfa(seed, 5, 2);
    Automaton d = subset_construction(a);
    Automaton m = minimize_dfa(d);
    CHECK(support::words_agree(d, m, 8));
    Automaton mm = minimize_dfa(m);
    CHECK(canonical_form(mm) == canonical_form(m));
    CHECK(dfa_equivalent(m, d));
  }
}

TEST_CASE("canonical minimal DFAs coincide for equivalent inputs") {
  // two distinct NFAs for a a* minimise to the same canonical DFA
  Automaton m1 = minimize_dfa(subset_construction(support::e1()));
  Automaton b(Alphabet({"a"}), 3, 0, WordMode::Finite, Acceptance::finite_reach({1, 2}));
  b.add_transition(0, 0, 1);
  b.add_transition(1, 0, 2);
  b.add_transition(2, 0, 2);
  Automaton m2 = minimize_dfa(subset_construction(b));
  CHECK(canonical_form(m1) == canonical_form(m2));
}
