#pragma once

// Command dispatch for the evoline tool. Kept in a header so tests can
// drive the exact code path the binary uses.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evoline/algebra.hpp"
#include "evoline/automorphism.hpp"
#include "evoline/digraph.hpp"
#include "evoline/document.hpp"
#include "evoline/error.hpp"
#include "evoline/report.hpp"
#include "evoline/structure.hpp"

namespace evoline::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCategory::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Algebra load_algebra(const std::string& path) {
  try {
    return parse_algebra(read_file(path));
  } catch (const Error& e) {
    raise(e.category(), path + ": " + e.what());
  }
}

/// --max-n wins over EVOLINE_MAX_N, which wins over the built-in default.
inline SearchOptions search_options(std::optional<std::size_t> max_n) {
  SearchOptions o;
  if (const char* env = std::getenv("EVOLINE_MAX_N"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      o.max_dim = v;
    } catch (const std::exception&) {
      raise(ErrorCategory::Usage, std::string("EVOLINE_MAX_N must be a nonnegative integer, got '") + env + "'");
    }
  }
  if (max_n) o.max_dim = *max_n;
  return o;
}

inline void emit_json(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << "\n"; }

inline int report_error(const Error& e, bool json, std::ostream& out, std::ostream& err) {
  if (json) {
    emit_json(out, {{"error", {{"category", std::string(category_name(e.category()))}, {"message", e.what()}}}});
  } else {
    err << "error [" << category_name(e.category()) << "]: " << e.what() << "\n";
  }
  return kExitError;
}

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of evolution algebras through their attached digraphs", "evoline"};
  app.require_subcommand(1);

  bool json = false;
  std::optional<std::size_t> max_n;
  std::string file;
  std::string file_b;
  std::string dot_path;
  std::string ideal_path;

  auto* analyze_cmd = app.add_subcommand("analyze", "Full report: regularity, annihilator, graph, nilpotency, automorphisms");
  analyze_cmd->add_option("FILE", file, "Algebra document (JSON)")->required();
  analyze_cmd->add_flag("--json", json, "Emit JSON");
  analyze_cmd->add_option("--max-n", max_n, "Permutation search bound");

  auto* graph_cmd = app.add_subcommand("graph", "Attached weighted digraph in DOT form");
  graph_cmd->add_option("FILE", file, "Algebra document (JSON)")->required();
  graph_cmd->add_option("--dot", dot_path, "Write DOT to this path ('-' for stdout)");

  auto* nil_cmd = app.add_subcommand("nilpotency", "Nilpotency decided by graph, ordering and power chains");
  nil_cmd->add_option("FILE", file, "Algebra document (JSON)")->required();
  nil_cmd->add_flag("--json", json, "Emit JSON");

  auto* dec_cmd = app.add_subcommand("decompose", "Split along weak components of the attached graph");
  dec_cmd->add_option("FILE", file, "Algebra document (JSON)")->required();
  dec_cmd->add_flag("--json", json, "Emit JSON");

  auto* aut_cmd = app.add_subcommand("aut", "Automorphism group (requires E = E²)");
  aut_cmd->add_option("FILE", file, "Algebra document (JSON)")->required();
  aut_cmd->add_flag("--json", json, "Emit JSON");
  aut_cmd->add_option("--max-n", max_n, "Permutation search bound");

  auto* iso_cmd = app.add_subcommand("iso", "Monomial isomorphism between two algebras with E = E²");
  iso_cmd->add_option("FILE_A", file, "First algebra")->required();
  iso_cmd->add_option("FILE_B", file_b, "Second algebra")->required();
  iso_cmd->add_flag("--json", json, "Emit JSON");
  iso_cmd->add_option("--max-n", max_n, "Permutation search bound");

  auto* quo_cmd = app.add_subcommand("quotient", "Quotient by an ideal given as coordinate rows");
  quo_cmd->add_option("FILE", file, "Algebra document (JSON)")->required();
  quo_cmd->add_option("--ideal", ideal_path, "JSON array of ideal basis rows")->required();
  quo_cmd->add_flag("--json", json, "Emit JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (analyze_cmd->parsed()) {
      const AnalysisReport r = analyze(load_algebra(file), search_options(max_n));
      if (json) {
        emit_json(out, render_json(r));
      } else {
        out << render_text(r);
      }
    } else if (graph_cmd->parsed()) {
      const std::string dot = to_dot(attach_graph(load_algebra(file)));
      if (dot_path.empty() || dot_path == "-") {
        out << dot;
      } else {
        std::ofstream f(dot_path, std::ios::binary);
        if (!f) raise(ErrorCategory::ParseError, "cannot write '" + dot_path + "'");
        f << dot;
      }
    } else if (nil_cmd->parsed()) {
      const NilpotencyReport n = nilpotency_report(load_algebra(file));
      if (json) {
        emit_json(out, nilpotency_json(n));
      } else {
        out << render_nilpotency_text(n);
      }
    } else if (dec_cmd->parsed()) {
      const Decomposition d = decompose(load_algebra(file));
      if (json) {
        emit_json(out, decomposition_json(d));
      } else {
        out << render_decomposition_text(d);
      }
    } else if (aut_cmd->parsed()) {
      const AutomorphismGroup g = automorphism_group(load_algebra(file), search_options(max_n));
      if (json) {
        emit_json(out, group_json(g));
      } else {
        out << render_group_text(g);
      }
    } else if (iso_cmd->parsed()) {
      const Algebra a = load_algebra(file);
      const Algebra b = load_algebra(file_b);
      const auto m = is_isomorphic_regular(a, b, search_options(max_n));
      if (json) {
        emit_json(out, {{"isomorphic", m.has_value()}, {"map", m ? monomial_json(*m) : nlohmann::ordered_json(nullptr)}});
      } else if (m) {
        out << "isomorphism: " << m->to_string() << "\n";
      } else {
        out << "not isomorphic\n";
      }
    } else if (quo_cmd->parsed()) {
      const Algebra alg = load_algebra(file);
      Subspace ideal;
      try {
        ideal = parse_ideal(read_file(ideal_path), alg);
      } catch (const Error& e) {
        raise(e.category(), ideal_path + ": " + e.what());
      }
      const Quotient q = quotient(alg, ideal);
      if (json) {
        const nlohmann::ordered_json doc = nlohmann::ordered_json::parse(serialize_algebra(q.algebra));
        emit_json(out, {{"quotient", doc}, {"chosen", detail::indices_json(q.chosen)}, {"ideal_dim", ideal.dim()}});
      } else {
        out << serialize_algebra(q.algebra);
      }
    }
  } catch (const Error& e) {
    return report_error(e, json, out, err);
  }
  return kExitOk;
}

}  // namespace evoline::cli
