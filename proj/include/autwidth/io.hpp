#pragma once

#include <sstream>

#include "autwidth/hardness.hpp"

namespace autwidth {

/// Parse failure with the 1-based input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

namespace detail {

/// Line-oriented tokenizer. A line whose first non-blank character is '#' is
/// a comment; elsewhere '#' is ordinary data (it is a common alphabet token).
inline std::vector<std::pair<int, std::vector<std::string>>> tokenize_lines(
    const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#') continue;
    out.emplace_back(no, std::move(toks));
  }
  return out;
}

inline int parse_int(const std::string& tok, int line, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer for " + what + ", got '" + tok + "'");
  }
}

}  // namespace detail

/// Automaton file format:
///   @type nfa|nca|nba|dra
///   @alphabet <tok>...
///   @states <n>
///   @initial <i>
///   @accepting <i>...            (absent or empty allowed; forbidden for dra)
///   @rabin G: <i>... | B: <i>... (dra only, one line per pair)
///   @trans <p> <sym> <q>
/// Directives come before transitions; duplicate @trans lines are idempotent.
inline Automaton parse_automaton(const std::string& text) {
  auto lines = detail::tokenize_lines(text);
  std::string type;
  std::optional<Alphabet> alphabet;
  std::optional<int> states;
  std::optional<int> initial;
  StateSet accepting;
  bool accepting_seen = false;
  std::vector<RabinPair> pairs;
  std::vector<std::tuple<int, State, std::string, State>> transitions;
  bool saw_trans = false;
  for (auto& [no, toks] : lines) {
    const std::string& head = toks[0];
    if (head != "@trans" && saw_trans)
      throw ParseError(no, "directive '" + head + "' after the first @trans");
    if (head == "@type") {
      if (toks.size() != 2) throw ParseError(no, "@type expects one value");
      type = toks[1];
      if (type != "nfa" && type != "nca" && type != "nba" && type != "dra")
        throw ParseError(no, "unknown automaton type '" + type + "'");
    } else if (head == "@alphabet") {
      try {
        alphabet = Alphabet(std::vector<std::string>(toks.begin() + 1, toks.end()));
      } catch (const std::invalid_argument& e) {
        throw ParseError(no, e.what());
      }
    } else if (head == "@states") {
      if (toks.size() != 2) throw ParseError(no, "@states expects one value");
      states = detail::parse_int(toks[1], no, "@states");
      if (*states <= 0) throw ParseError(no, "@states must be positive");
    } else if (head == "@initial") {
      if (toks.size() != 2) throw ParseError(no, "@initial expects one value");
      initial = detail::parse_int(toks[1], no, "@initial");
    } else if (head == "@accepting") {
      accepting_seen = true;
      for (size_t i = 1; i < toks.size(); ++i)
        accepting.push_back(detail::parse_int(toks[i], no, "@accepting"));
    } else if (head == "@rabin") {
      RabinPair p;
      size_t i = 1;
      if (i >= toks.size() || toks[i] != "G:") throw ParseError(no, "@rabin expects 'G:'");
      for (++i; i < toks.size() && toks[i] != "|"; ++i)
        p.good.push_back(detail::parse_int(toks[i], no, "@rabin G"));
      if (i >= toks.size()) throw ParseError(no, "@rabin expects '|' between G and B");
      ++i;
      if (i >= toks.size() || toks[i] != "B:") throw ParseError(no, "@rabin expects 'B:'");
      for (++i; i < toks.size(); ++i)
        p.bad.push_back(detail::parse_int(toks[i], no, "@rabin B"));
      pairs.push_back(std::move(p));
    } else if (head == "@trans") {
      saw_trans = true;
      if (toks.size() != 4) throw ParseError(no, "@trans expects <p> <sym> <q>");
      transitions.emplace_back(no, detail::parse_int(toks[1], no, "@trans source"), toks[2],
                               detail::parse_int(toks[3], no, "@trans target"));
    } else {
      throw ParseError(no, "unknown directive '" + head + "'");
    }
  }
  if (type.empty()) throw ParseError(1, "missing @type");
  if (!alphabet) throw ParseError(1, "missing @alphabet");
  if (!states) throw ParseError(1, "missing @states");
  if (!initial) throw ParseError(1, "missing @initial");
  if (type == "dra" && accepting_seen) throw ParseError(1, "@accepting not allowed for dra");
  if (type != "dra" && !pairs.empty()) throw ParseError(1, "@rabin only allowed for dra");
  WordMode mode = type == "nfa" ? WordMode::Finite : WordMode::Infinite;
  Acceptance acc;
  if (type == "nfa")
    acc = Acceptance::finite_reach(std::move(accepting));
  else if (type == "nca")
    acc = Acceptance::cobuchi(std::move(accepting));
  else if (type == "nba")
    acc = Acceptance::buchi(std::move(accepting));
  else
    acc = Acceptance::rabin(std::move(pairs));
  Automaton a(*alphabet, *states, *initial, mode, std::move(acc));
  for (auto& [no, p, sym, q] : transitions) {
    auto s = a.alphabet().find(sym);
    if (!s) throw ParseError(no, "unknown symbol '" + sym + "'");
    if (p < 0 || p >= *states) throw ParseError(no, "transition source out of range");
    if (q < 0 || q >= *states) throw ParseError(no, "transition target out of range");
    a.add_transition(p, *s, q);
  }
  std::vector<std::string> diags = validate(a);
  if (!diags.empty()) throw ParseError(1, diags[0]);
  return a;
}

inline std::string type_tag(const Automaton& a) {
  switch (a.acceptance().kind) {
    case AccKind::FiniteReach: return "nfa";
    case AccKind::Buchi: return "nba";
    case AccKind::CoBuchi: return "nca";
    case AccKind::Rabin: return "dra";
  }
  return "nfa";
}

inline std::string write_automaton(const Automaton& a) {
  std::ostringstream out;
  out << "@type " << type_tag(a) << "\n@alphabet";
  for (const std::string& n : a.alphabet().names()) out << ' ' << n;
  out << "\n@states " << a.state_count() << "\n@initial " << a.initial() << "\n";
  if (a.acceptance().kind == AccKind::Rabin) {
    for (const RabinPair& p : a.acceptance().pairs) {
      out << "@rabin G:";
      for (State q : p.good) out << ' ' << q;
      out << " | B:";
      for (State q : p.bad) out << ' ' << q;
      out << "\n";
    }
  } else if (!a.acceptance().states.empty()) {
    out << "@accepting";
    for (State q : a.acceptance().states) out << ' ' << q;
    out << "\n";
  }
  for (State p = 0; p < a.state_count(); ++p)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (State q : a.successors(p, s))
        out << "@trans " << p << ' ' << a.alphabet().name(s) << ' ' << q << "\n";
  return out.str();
}

/// Gc instance format:
///   @vars0 <name>...
///   @vars1 <name>...
///   @clause <lit> <lit> <lit> <lit>   (lit = name or -name; t allowed)
///   @init name=0|1 ...
inline GcInstance parse_gc(const std::string& text) {
  GcInstance gc;
  auto lines = detail::tokenize_lines(text);
  auto parse_lit = [](const std::string& tok) {
    if (tok.size() > 1 && tok[0] == '-') return GcLiteral{tok.substr(1), true};
    return GcLiteral{tok, false};
  };
  for (auto& [no, toks] : lines) {
    const std::string& head = toks[0];
    if (head == "@vars0") {
      gc.x0.assign(toks.begin() + 1, toks.end());
    } else if (head == "@vars1") {
      gc.x1.assign(toks.begin() + 1, toks.end());
    } else if (head == "@clause") {
      if (toks.size() != 5) throw ParseError(no, "@clause expects exactly 4 literals");
      std::array<GcLiteral, 4> cl;
      for (int i = 0; i < 4; ++i) cl[static_cast<size_t>(i)] = parse_lit(toks[static_cast<size_t>(i) + 1]);
      gc.clauses.push_back(std::move(cl));
    } else if (head == "@init") {
      for (size_t i = 1; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos || eq == 0 || eq + 2 != toks[i].size() ||
            (toks[i][eq + 1] != '0' && toks[i][eq + 1] != '1'))
          throw ParseError(no, "@init expects name=0|1, got '" + toks[i] + "'");
        gc.alpha_init[toks[i].substr(0, eq)] = toks[i][eq + 1] == '1';
      }
    } else {
      throw ParseError(no, "unknown directive '" + head + "'");
    }
  }
  try {
    gc.check();
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
  return gc;
}

inline std::string write_gc(const GcInstance& gc) {
  std::ostringstream out;
  out << "@vars0";
  for (const auto& v : gc.x0) out << ' ' << v;
  out << "\n@vars1";
  for (const auto& v : gc.x1) out << ' ' << v;
  out << "\n";
  for (const auto& cl : gc.clauses) {
    out << "@clause";
    for (const auto& l : cl) out << ' ' << detail::lit_name(l);
    out << "\n";
  }
  out << "@init";
  for (const auto& v : gc.variables()) out << ' ' << v << '=' << (gc.alpha_init.at(v) ? 1 : 0);
  out << "\n";
  return out.str();
}

/// Graph format: @vertices <n>, then @edge <i> <j> with 1-based endpoints.
inline DiGraph parse_graph(const std::string& text) {
  DiGraph g;
  bool saw_vertices = false;
  for (auto& [no, toks] : detail::tokenize_lines(text)) {
    const std::string& head = toks[0];
    if (head == "@vertices") {
      if (toks.size() != 2) throw ParseError(no, "@vertices expects one value");
      g.vertex_count = detail::parse_int(toks[1], no, "@vertices");
      saw_vertices = true;
    } else if (head == "@edge") {
      if (toks.size() != 3) throw ParseError(no, "@edge expects two endpoints");
      int u = detail::parse_int(toks[1], no, "@edge");
      int v = detail::parse_int(toks[2], no, "@edge");
      if (!saw_vertices) throw ParseError(no, "@edge before @vertices");
      if (u < 1 || u > g.vertex_count || v < 1 || v > g.vertex_count)
        throw ParseError(no, "edge endpoint out of range");
      g.edges.emplace_back(u, v);
    } else {
      throw ParseError(no, "unknown directive '" + head + "'");
    }
  }
  if (!saw_vertices) throw ParseError(1, "missing @vertices");
  return g;
}

inline std::string write_graph(const DiGraph& g) {
  std::ostringstream out;
  out << "@vertices " << g.vertex_count << "\n";
  for (auto [u, v] : g.edges) out << "@edge " << u << ' ' << v << "\n";
  return out.str();
}

/// Word helpers for the CLI: whitespace-separated symbol names; an
/// ultimately periodic word is written "u tokens : v tokens".
inline std::vector<Symbol> parse_word(const Automaton& a, const std::string& text) {
  std::istringstream in(text);
  std::vector<Symbol> w;
  std::string tok;
  while (in >> tok) w.push_back(a.alphabet().index_of(tok));
  return w;
}

inline UPWord parse_upword(const Automaton& a, const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("upword: expected 'prefix : period'");
  UPWord w{parse_word(a, text.substr(0, colon)), parse_word(a, text.substr(colon + 1))};
  if (w.period.empty()) throw std::invalid_argument("upword: empty period");
  return w;
}

inline std::string format_word(const Automaton& a, const std::vector<Symbol>& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.alphabet().name(w[i]);
  }
  return out;
}

}  // namespace autwidth
