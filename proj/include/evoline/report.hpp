#pragma once

// Analysis reports shared by the text and JSON front ends. Both renderings
// are built from the same AnalysisReport value.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evoline/algebra.hpp"
#include "evoline/automorphism.hpp"
#include "evoline/digraph.hpp"
#include "evoline/document.hpp"
#include "evoline/error.hpp"
#include "evoline/structure.hpp"

namespace evoline {

struct Refusal {
  ErrorCategory category;
  std::string reason;
};

struct AutomorphismSection {
  std::optional<AutomorphismGroup> group;
  std::optional<Refusal> refusal;
};

struct AnalysisReport {
  Algebra algebra;
  Scalar determinant;
  bool regular = false;
  Subspace annihilator;
  WeightedDigraph graph;
  std::vector<std::vector<std::size_t>> components;
  Decomposition decomposition;
  NilpotencyReport nilpotency;
  std::optional<WitnessVerification> witness_check;
  AutomorphismSection automorphisms;
};

inline AutomorphismSection automorphism_section(const Algebra& alg, const SearchOptions& options) {
  AutomorphismSection s;
  try {
    s.group = automorphism_group(alg, options);
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::NotRegular && e.category() != ErrorCategory::SizeLimit) throw;
    s.refusal = Refusal{e.category(), e.what()};
  }
  return s;
}

inline AnalysisReport analyze(const Algebra& alg, const SearchOptions& options = {}) {
  AnalysisReport r{alg,
                   determinant(alg.structure()),
                   false,
                   annihilator(alg),
                   attach_graph(alg),
                   {},
                   decompose(alg),
                   nilpotency_report(alg),
                   std::nullopt,
                   {}};
  r.regular = !r.determinant.is_zero();
  r.components = weak_components(r.graph.unweighted());
  if (r.nilpotency.witness) {
    r.witness_check = verify_non_nil_witness(alg, *r.nilpotency.witness, 3 * alg.dim());
  }
  r.automorphisms = automorphism_section(alg, options);

  if (r.regular && !r.annihilator.is_zero()) {
    raise(ErrorCategory::InternalInconsistency, "regular algebra with nonzero annihilator");
  }
  if (r.regular == (r.automorphisms.refusal && r.automorphisms.refusal->category == ErrorCategory::NotRegular)) {
    raise(ErrorCategory::InternalInconsistency, "automorphism refusal disagrees with regularity");
  }
  if (r.regular && r.nilpotency.nilpotent()) {
    raise(ErrorCategory::InternalInconsistency, "a nilpotent algebra cannot satisfy E = E²");
  }
  return r;
}

namespace detail {

inline std::string format_combination(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    std::string coeff = v[i].to_string();
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (out.empty()) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    if (coeff != "1") out += coeff + "*";
    out += "e" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

inline std::string join_indices(const std::vector<std::size_t>& xs, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(xs[i] + 1);
  }
  return s;
}

inline std::string join_sizes(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(xs[i]);
  }
  return s;
}

inline nlohmann::ordered_json indices_json(const std::vector<std::size_t>& xs) {
  auto a = nlohmann::ordered_json::array();
  for (auto x : xs) a.push_back(x + 1);
  return a;
}

inline nlohmann::ordered_json vector_json(const Vector& v) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& c : v.coords()) a.push_back(c.to_string());
  return a;
}

inline nlohmann::ordered_json matrix_json(const Matrix& m) {
  auto a = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
  return a;
}

inline nlohmann::ordered_json optional_index(const std::optional<std::size_t>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json sizes_json(const std::vector<std::size_t>& xs) {
  auto a = nlohmann::ordered_json::array();
  for (auto x : xs) a.push_back(x);
  return a;
}

}  // namespace detail

inline std::string render_structure_text(const Algebra& alg) {
  std::string out;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    out += "  e" + std::to_string(i + 1) + "^2 = " + detail::format_combination(alg.basis_square(i)) + "\n";
  }
  return out;
}

inline std::string render_graph_text(const WeightedDigraph& g) {
  std::string out = "graph edges:";
  if (g.weights().empty()) out += " none";
  for (const auto& [e, w] : g.weights()) {
    out += " " + std::to_string(e.first + 1) + "->" + std::to_string(e.second + 1) + " [" + w.to_string() + "]";
  }
  out += "\nweak components:";
  for (const auto& part : weak_components(g.unweighted())) out += " {" + detail::join_indices(part, ", ") + "}";
  return out + "\n";
}

inline std::string render_nilpotency_text(const NilpotencyReport& n) {
  std::string out;
  if (n.nilpotent()) {
    out += "nilpotent: true, right index " + std::to_string(*n.right_index) + "\n";
    out += "  full index: " + std::to_string(*n.full_index) + "\n";
    out += "  triangular order: " + detail::join_indices(*n.triangular_order) + "\n";
  } else {
    out += "nilpotent: false\n";
  }
  out += "  right chain dims: " + detail::join_sizes(n.right_chain.dims()) + "\n";
  out += "  full chain dims: " + detail::join_sizes(n.full_chain.dims()) + "\n";
  if (n.witness) {
    const auto& w = *n.witness;
    out += "  shortest cycle: " + detail::join_indices(w.cycle, " -> ") + " -> " + std::to_string(w.cycle.front() + 1) +
           "\n";
    out += "  non-nil witness: x = " + detail::format_combination(w.x.coords()) + ", x^(" +
           std::to_string(w.cycle.size() + 1) + ") = " + w.scalar_c.to_string() + "*x on the cycle coordinates\n";
  }
  return out;
}

inline std::string render_decomposition_text(const Decomposition& d) {
  std::string out = "components: " + std::to_string(d.components.size()) + "\n";
  for (const auto& c : d.components) {
    out += "  {" + detail::join_indices(c.indices, ", ") + "}\n";
    // Squares are written with the original basis names.
    for (std::size_t k = 0; k < c.indices.size(); ++k) {
      const Vector sq = c.algebra.basis_square(k);
      Vector lifted(sq.spec(), c.indices.back() + 1);
      for (std::size_t t = 0; t < c.indices.size(); ++t) lifted[c.indices[t]] = sq[t];
      out += "    e" + std::to_string(c.indices[k] + 1) + "^2 = " + detail::format_combination(lifted) + "\n";
    }
  }
  if (d.basis_dependent) {
    out += "caveat: annihilator is nonzero, so this split depends on the natural basis\n";
  } else {
    out += "caveat: none (annihilator is zero; this is the ideal decomposition)\n";
  }
  return out;
}

inline std::string render_group_text(const AutomorphismGroup& g) {
  std::string out = "automorphism group: order " + std::to_string(g.order()) + "\n";
  for (const auto& m : g.elements) out += "  " + m.to_string() + "\n";
  return out;
}

inline std::string render_text(const AnalysisReport& r) {
  std::string out;
  out += "field: " + r.algebra.spec().tag() + "\n";
  out += "dimension: " + std::to_string(r.algebra.dim()) + "\n";
  out += "structure constants:\n" + render_structure_text(r.algebra);
  out += std::string("regular (E = E²): ") + (r.regular ? "true" : "false") + " (det = " + r.determinant.to_string() +
         ")\n";
  out += "annihilator: dim " + std::to_string(r.annihilator.dim());
  for (std::size_t k = 0; k < r.annihilator.basis().size(); ++k) {
    out += (k ? ", " : ", basis ") + r.annihilator.basis()[k].to_string();
  }
  out += "\n";
  out += render_graph_text(r.graph);
  out += render_nilpotency_text(r.nilpotency);
  out += "decomposition: " + std::to_string(r.decomposition.components.size()) + " component(s)";
  out += r.decomposition.basis_dependent ? ", basis-dependent (annihilator is nonzero)\n" : ", ideal decomposition\n";
  if (r.automorphisms.group) {
    out += render_group_text(*r.automorphisms.group);
  } else {
    out += "automorphisms: refused [" + std::string(category_name(r.automorphisms.refusal->category)) +
           "]: " + r.automorphisms.refusal->reason + "\n";
  }
  return out;
}

inline nlohmann::ordered_json graph_json(const WeightedDigraph& g) {
  nlohmann::ordered_json j;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [e, w] : g.weights()) {
    edges.push_back({{"from", e.first + 1}, {"to", e.second + 1}, {"weight", w.to_string()}});
  }
  j["vertices"] = g.size();
  j["edges"] = edges;
  auto comps = nlohmann::ordered_json::array();
  for (const auto& part : weak_components(g.unweighted())) comps.push_back(detail::indices_json(part));
  j["components"] = comps;
  return j;
}

inline nlohmann::ordered_json nilpotency_json(const NilpotencyReport& n) {
  nlohmann::ordered_json j;
  j["nilpotent"] = n.nilpotent();
  j["acyclic"] = n.acyclic;
  j["triangular_order"] =
      n.triangular_order ? detail::indices_json(*n.triangular_order) : nlohmann::ordered_json(nullptr);
  j["right_index"] = detail::optional_index(n.right_index);
  j["full_index"] = detail::optional_index(n.full_index);
  j["right_chain_dims"] = detail::sizes_json(n.right_chain.dims());
  j["full_chain_dims"] = detail::sizes_json(n.full_chain.dims());
  if (n.witness) {
    const auto& w = *n.witness;
    j["witness"] = {{"cycle", detail::indices_json(w.cycle)},
                    {"x", detail::vector_json(w.x.coords())},
                    {"c", w.scalar_c.to_string()}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline nlohmann::ordered_json decomposition_json(const Decomposition& d) {
  nlohmann::ordered_json j;
  auto comps = nlohmann::ordered_json::array();
  for (const auto& c : d.components) {
    comps.push_back({{"indices", detail::indices_json(c.indices)}, {"matrix", detail::matrix_json(c.algebra.structure())}});
  }
  j["components"] = comps;
  j["basis_dependent"] = d.basis_dependent;
  return j;
}

inline nlohmann::ordered_json monomial_json(const MonomialMap& m) {
  auto lambda = nlohmann::ordered_json::array();
  for (const auto& l : m.lambda) lambda.push_back(l.to_string());
  return {{"sigma", detail::indices_json(m.sigma)}, {"lambda", lambda}};
}

inline nlohmann::ordered_json group_json(const AutomorphismGroup& g) {
  auto elems = nlohmann::ordered_json::array();
  for (const auto& m : g.elements) elems.push_back(monomial_json(m));
  return {{"status", "computed"}, {"order", g.order()}, {"elements", elems}};
}

inline nlohmann::ordered_json refusal_json(const Refusal& r) {
  return {{"status", "refused"}, {"category", std::string(category_name(r.category))}, {"reason", r.reason}};
}

inline nlohmann::ordered_json render_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["field"] = r.algebra.spec().tag();
  j["dim"] = r.algebra.dim();
  j["matrix"] = detail::matrix_json(r.algebra.structure());
  j["regular"] = {{"value", r.regular}, {"determinant", r.determinant.to_string()}};
  auto ann = nlohmann::ordered_json::array();
  for (const auto& b : r.annihilator.basis()) ann.push_back(detail::vector_json(b));
  j["annihilator"] = {{"dim", r.annihilator.dim()}, {"basis", ann}};
  j["graph"] = graph_json(r.graph);
  j["nilpotency"] = nilpotency_json(r.nilpotency);
  j["decomposition"] = decomposition_json(r.decomposition);
  j["automorphisms"] = r.automorphisms.group ? group_json(*r.automorphisms.group)
                                             : refusal_json(*r.automorphisms.refusal);
  auto caveats = nlohmann::ordered_json::array();
  if (r.decomposition.basis_dependent) caveats.push_back("decomposition_basis_dependent");
  if (r.automorphisms.refusal) caveats.push_back("automorphisms_refused");
  j["caveats"] = caveats;
  return j;
}

}  // namespace evoline
