#pragma once

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "autwidth/io.hpp"
#include "autwidth/lasso.hpp"
#include "autwidth/run_analysis.hpp"
#include "autwidth/safra.hpp"
#include "autwidth/sim.hpp"

namespace autwidth {

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << content;
}

inline const char* bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace detail

/// Command-line driver. Exit codes: 0 for computed verdicts (true or false
/// alike), 1 for usage or input errors, 2 for budget or guard refusals.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"width, GFG/DBP and incremental determinisation toolkit"};
  app.require_subcommand(1);

  std::string file_a, file_b, out_file, method, word_text, upword_text;
  int opt_k = 1, max_k = -1, from_k = 1, max_len = 8, up_prefix = 2, up_period = 4;
  int state_budget = 50000;
  double pruning_budget = 1e6;
  bool no_duplication = false;

  auto* width_cmd = app.add_subcommand("width", "width of an automaton");
  width_cmd->add_option("file", file_a)->required();
  width_cmd->add_option("--max-k", max_k);
  width_cmd->add_option("--from-k", from_k);
  width_cmd->add_flag("--no-duplication", no_duplication);

  auto* gfg_cmd = app.add_subcommand("gfg", "good-for-games check");
  gfg_cmd->add_option("file", file_a)->required();
  gfg_cmd->add_option("--out", out_file);

  auto* dbp_cmd = app.add_subcommand("dbp", "determinisable-by-pruning check");
  dbp_cmd->add_option("file", file_a)->required();
  dbp_cmd->add_option("--out", out_file);
  dbp_cmd->add_option("--budget", pruning_budget);

  auto* detw_cmd = app.add_subcommand("detwidth", "least k with a DBP k-construction");
  detw_cmd->add_option("file", file_a)->required();
  detw_cmd->add_option("--state-budget", state_budget);
  detw_cmd->add_option("--budget", pruning_budget);

  auto* det_cmd = app.add_subcommand("determinize", "apply a determinisation construction");
  det_cmd->add_option("file", file_a)->required();
  det_cmd->add_option("--method", method)->required();
  det_cmd->add_option("--out", out_file)->required();

  auto* sim_cmd = app.add_subcommand("sim", "multipebble simulation");
  sim_cmd->add_option("file_a", file_a)->required();
  sim_cmd->add_option("file_b", file_b)->required();
  sim_cmd->add_option("--k", opt_k)->required();
  sim_cmd->add_flag("--no-duplication", no_duplication);

  auto* member_cmd = app.add_subcommand("member", "word membership");
  member_cmd->add_option("file", file_a)->required();
  member_cmd->add_option("--word", word_text);
  member_cmd->add_option("--upword", upword_text);

  auto* amb_cmd = app.add_subcommand("ambiguity", "max ambiguity per word length");
  amb_cmd->add_option("file", file_a)->required();
  amb_cmd->add_option("--max-len", max_len)->required();

  auto* gc_cmd = app.add_subcommand("solve-gc", "solve a formula game instance");
  gc_cmd->add_option("file", file_a)->required();

  auto* rgc_cmd = app.add_subcommand("reduce-gc", "formula game to width instance");
  rgc_cmd->add_option("file", file_a)->required();
  rgc_cmd->add_option("--out", out_file)->required();

  auto* rham_cmd = app.add_subcommand("reduce-ham", "digraph to DBP instance");
  rham_cmd->add_option("file", file_a)->required();
  rham_cmd->add_option("--out", out_file)->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "sampled language equivalence");
  equiv_cmd->add_option("file_a", file_a)->required();
  equiv_cmd->add_option("file_b", file_b)->required();
  equiv_cmd->add_option("--max-len", max_len);
  equiv_cmd->add_option("--up-prefix", up_prefix);
  equiv_cmd->add_option("--up-period", up_period);

  std::vector<const char*> argv{"autwidth"};
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (width_cmd->parsed()) {
      Automaton a = parse_automaton(detail::slurp(file_a));
      WidthReport rep;
      if (a.mode() == WordMode::Finite) {
        rep = width_nfa(a, no_duplication ? MoveMode::NoDuplicate : MoveMode::Duplicate,
                        max_k, from_k);
      } else if (a.acceptance().kind == AccKind::CoBuchi) {
        if (no_duplication) throw CLI::ValidationError("--no-duplication is for NFAs");
        rep = width_nca(a, max_k, from_k);
      } else {
        err << "width: no decision procedure for this acceptance\n";
        return 1;
      }
      for (const WidthPerK& pk : rep.per_k)
        out << "k=" << pk.k << " gfg=" << detail::bool_str(pk.player0_wins)
            << " states=" << pk.construction_states << "\n";
      if (rep.width == -1)
        out << "width=unknown\n";
      else
        out << "width=" << rep.width << "\n";
      return 0;
    }
    if (gfg_cmd->parsed()) {
      Automaton a = parse_automaton(detail::slurp(file_a));
      if (a.mode() == WordMode::Finite) {
        GfgOutcome o = gfg_check_nfa(a);
        out << "verdict=" << detail::bool_str(o.gfg) << "\n";
        if (!out_file.empty() && o.gfg) {
          detail::spit(out_file, write_automaton(prune_to_dfa(a, o.strategy)));
          out << "pruning=" << out_file << "\n";
        }
      } else if (a.acceptance().kind == AccKind::CoBuchi) {
        if (!out_file.empty()) throw CLI::ValidationError("--out is only for NFAs");
        out << "verdict=" << detail::bool_str(gfg_check_nca(a).gfg) << "\n";
      } else {
        err << "gfg: no decision procedure for this acceptance\n";
        return 1;
      }
      return 0;
    }
    if (dbp_cmd->parsed()) {
      Automaton a = parse_automaton(detail::slurp(file_a));
      std::pair<bool, std::optional<Pruning>> r;
      if (a.mode() == WordMode::Finite)
        r = dbp_check_nfa(a);
      else if (a.acceptance().kind == AccKind::CoBuchi)
        r = dbp_check_nca(a, pruning_budget);
      else if (a.acceptance().kind == AccKind::Rabin)
        r = dbp_check_rabin(a, pruning_budget);
      else {
        err << "dbp: no decision procedure for this acceptance\n";
        return 1;
      }
      out << "verdict=" << detail::bool_str(r.first) << "\n";
      if (!out_file.empty() && r.first) {
        detail::spit(out_file, write_automaton(apply_pruning(a, *r.second)));
        out << "pruning=" << out_file << "\n";
      }
      return 0;
    }
    if (detw_cmd->parsed()) {
      Automaton a = parse_automaton(detail::slurp(file_a));
      DetWidthReport rep = det_width(a, state_budget, pruning_budget);
      for (const WidthPerK& pk : rep.per_k)
        out << "k=" << pk.k << " dbp=" << detail::bool_str(pk.player0_wins)
            << " states=" << pk.construction_states << "\n";
      if (rep.refused) {
        out << "error=state budget exceeded: k=" << rep.refused_k << " needs "
            << rep.refused_states << " states, budget " << state_budget << "\n";
        return 2;
      }
      out << "detwidth=" << rep.det_width << "\n";
      return 0;
    }
    if (det_cmd->parsed()) {
      Automaton a = parse_automaton(detail::slurp(file_a));
      std::string base = method;
      int k = 0;
      auto colon = method.find(':');
      if (colon != std::string::npos) {
        base = method.substr(0, colon);
        try {
          k = std::stoi(method.substr(colon + 1));
        } catch (const std::exception&) {
          throw CLI::ValidationError("bad k in --method '" + method + "'");
        }
      }
      Automaton result = a;
      if (base == "subset")
        result = subset_construction(a);
      else if (base == "k-subset")
        result = k_subset(a, k);
      else if (base == "breakpoint")
        result = breakpoint_determinize(a);
      else if (base == "k-breakpoint")
        result = k_breakpoint(a, k);
      else if (base == "safra")
        result = safra(a);
      else if (base == "k-safra")
        result = k_safra(a, k);
      else
        throw CLI::ValidationError("unknown --method '" + method + "'");
      detail::spit(out_file, write_automaton(result));
      out << "states=" << result.state_count() << "\n";
      out << "out=" << out_file << "\n";
      return 0;
    }
    if (sim_cmd->parsed()) {
      Automaton a = parse_automaton(detail::slurp(file_a));
      Automaton b = parse_automaton(detail::slurp(file_b));
      bool v = decide_sim(a, b, opt_k,
                          no_duplication ? MoveMode::NoDuplicate : MoveMode::Duplicate);
      out << "sim=" << detail::bool_str(v) << "\n";
      return 0;
    }
    if (member_cmd->parsed()) {
      Automaton a = parse_automaton(detail::slurp(file_a));
      if (word_text.empty() == upword_text.empty())
        throw CLI::ValidationError("member needs exactly one of --word / --upword");
      bool v;
      if (!word_text.empty())
        v = member_finite(a, parse_word(a, word_text));
      else
        v = member_up(a, parse_upword(a, upword_text));
      out << "member=" << detail::bool_str(v) << "\n";
      return 0;
    }
    if (amb_cmd->parsed()) {
      Automaton a = parse_automaton(detail::slurp(file_a));
      for (auto& [len, count] : max_ambiguity_profile(a, max_len))
        out << "len=" << len << " max=" << count << "\n";
      return 0;
    }
    if (gc_cmd->parsed()) {
      GcInstance gc = parse_gc(detail::slurp(file_a));
      out << "winner=" << solve_gc(gc).winner << "\n";
      return 0;
    }
    if (rgc_cmd->parsed()) {
      GcInstance gc = parse_gc(detail::slurp(file_a));
      Reduction red = build_reduction(gc);
      detail::spit(out_file, write_automaton(red.automaton));
      out << "k=" << red.k << "\n";
      out << "states=" << red.automaton.state_count() << "\n";
      return 0;
    }
    if (rham_cmd->parsed()) {
      DiGraph g = parse_graph(detail::slurp(file_a));
      if (!is_strongly_connected(g))
        out << "warning=graph is not strongly connected\n";
      Automaton a = build_ham_nca(g);
      detail::spit(out_file, write_automaton(a));
      out << "states=" << a.state_count() << "\n";
      return 0;
    }
    if (equiv_cmd->parsed()) {
      Automaton a = parse_automaton(detail::slurp(file_a));
      Automaton b = parse_automaton(detail::slurp(file_b));
      if (!(a.alphabet() == b.alphabet()))
        throw CLI::ValidationError("equiv: alphabet mismatch");
      if ((a.mode() == WordMode::Finite) != (b.mode() == WordMode::Finite))
        throw CLI::ValidationError("equiv: word modes differ");
      if (a.mode() == WordMode::Finite) {
        std::vector<Symbol> w;
        std::function<bool(int)> walk = [&](int remaining) {
          if (member_finite(a, w) != member_finite(b, w)) return false;
          if (remaining == 0) return true;
          for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            w.push_back(s);
            if (!walk(remaining - 1)) return false;
            w.pop_back();
          }
          return true;
        };
        if (walk(max_len)) {
          out << "equiv=true\n";
        } else {
          out << "equiv=false\n";
          out << "counterexample=" << format_word(a, w) << "\n";
        }
      } else {
        for (int pl = 0; pl <= up_prefix; ++pl)
          for (int ql = 1; ql <= up_period; ++ql) {
            std::vector<Symbol> u(static_cast<size_t>(pl), 0), v(static_cast<size_t>(ql), 0);
            std::function<bool(size_t)> enumerate = [&](size_t pos) {
              if (pos == u.size() + v.size()) {
                UPWord w{u, v};
                return member_up(a, w) == member_up(b, w);
              }
              std::vector<Symbol>& vec = pos < u.size() ? u : v;
              size_t idx = pos < u.size() ? pos : pos - u.size();
              for (Symbol s = 0; s < a.alphabet().size(); ++s) {
                vec[idx] = s;
                if (!enumerate(pos + 1)) return false;
              }
              return true;
            };
            if (!enumerate(0)) {
              out << "equiv=false\n";
              out << "counterexample=" << format_word(a, u) << " : " << format_word(a, v)
                  << "\n";
              return 0;
            }
          }
        out << "equiv=true\n";
      }
      return 0;
    }
    err << "no subcommand\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const BudgetError& e) {
    out << "error=" << e.what() << ": needs " << e.needed << ", budget " << e.budget << " ("
        << e.choice_points << " choice points)\n";
    return 2;
  } catch (const std::length_error& e) {
    out << "error=" << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << file_a << ": " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 1;
  }
}

}  // namespace autwidth
