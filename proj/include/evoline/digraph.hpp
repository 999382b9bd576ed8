#pragma once

// The digraph attached to an evolution algebra relative to its natural
// basis: vertex i has an arrow to j exactly when alpha_ij != 0. Vertices
// are 0-based in the API; rendered output numbers them from 1.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "evoline/algebra.hpp"
#include "evoline/error.hpp"
#include "evoline/scalar.hpp"

namespace evoline {

using Edge = std::pair<std::size_t, std::size_t>;

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n) : n_(n), out_(n), in_(n) {}
  Digraph(std::size_t n, const std::vector<Edge>& edges) : Digraph(n) {
    for (const auto& [i, j] : edges) add_edge(i, j);
  }

  void add_edge(std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_) raise(ErrorCategory::DimensionMismatch, "edge endpoint out of range");
    auto& o = out_[i];
    auto pos = std::lower_bound(o.begin(), o.end(), j);
    if (pos != o.end() && *pos == j) return;
    o.insert(pos, j);
    auto& in = in_[j];
    in.insert(std::lower_bound(in.begin(), in.end(), i), i);
  }

  std::size_t size() const { return n_; }
  const std::vector<std::size_t>& successors(std::size_t i) const { return out_[i]; }
  const std::vector<std::size_t>& predecessors(std::size_t i) const { return in_[i]; }
  bool has_edge(std::size_t i, std::size_t j) const {
    return std::binary_search(out_[i].begin(), out_[i].end(), j);
  }

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n_; ++i) {
      for (auto j : out_[i]) e.emplace_back(i, j);
    }
    return e;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.n_ == b.n_ && a.out_ == b.out_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

class WeightedDigraph {
 public:
  explicit WeightedDigraph(std::size_t n) : n_(n) {}

  void set_weight(std::size_t i, std::size_t j, const Scalar& w) {
    if (i >= n_ || j >= n_) raise(ErrorCategory::DimensionMismatch, "edge endpoint out of range");
    if (w.is_zero()) raise(ErrorCategory::InternalInconsistency, "edge weights must be nonzero");
    weights_.insert_or_assign(Edge{i, j}, w);
  }

  std::size_t size() const { return n_; }
  const std::map<Edge, Scalar>& weights() const { return weights_; }
  std::optional<Scalar> weight(std::size_t i, std::size_t j) const {
    auto it = weights_.find({i, j});
    if (it == weights_.end()) return std::nullopt;
    return it->second;
  }

  Digraph unweighted() const {
    Digraph g(n_);
    for (const auto& [e, w] : weights_) g.add_edge(e.first, e.second);
    return g;
  }

 private:
  std::size_t n_;
  std::map<Edge, Scalar> weights_;
};

inline WeightedDigraph attach_graph(const Algebra& alg) {
  WeightedDigraph g(alg.dim());
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      if (!alg.constant(i, j).is_zero()) g.set_weight(i, j, alg.constant(i, j));
    }
  }
  return g;
}

/// Components of the underlying undirected graph, each sorted, ordered by
/// smallest member.
inline std::vector<std::vector<std::size_t>> weak_components(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> label(n, n);
  std::vector<std::vector<std::size_t>> parts;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != n) continue;
    std::vector<std::size_t> part;
    std::vector<std::size_t> stack{s};
    label[s] = parts.size();
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      part.push_back(v);
      for (const auto* nbrs : {&g.successors(v), &g.predecessors(v)}) {
        for (auto w : *nbrs) {
          if (label[w] == n) {
            label[w] = parts.size();
            stack.push_back(w);
          }
        }
      }
    }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  return parts;
}

inline bool is_weakly_connected(const Digraph& g) { return weak_components(g).size() <= 1; }

/// A shortest oriented cycle v_1 -> ... -> v_r -> v_1 (a loop has r = 1).
/// Ties go to the smallest starting vertex, then the lexicographically
/// smallest vertex sequence. A shortest cycle has no chords.
inline std::optional<std::vector<std::size_t>> find_oriented_cycle(const Digraph& g) {
  const std::size_t n = g.size();
  std::optional<std::vector<std::size_t>> best;
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  for (std::size_t s = 0; s < n; ++s) {
    if (best && best->size() == 1) break;
    // BFS in ascending neighbour order yields lexicographically least shortest paths.
    std::vector<std::size_t> parent(n, unseen);
    std::vector<std::size_t> depth(n, unseen);
    std::queue<std::size_t> queue;
    depth[s] = 0;
    queue.push(s);
    std::optional<std::vector<std::size_t>> local;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop();
      if (local && depth[v] + 1 > local->size()) break;
      if (best && depth[v] + 1 > best->size()) break;
      if (g.has_edge(v, s)) {
        std::vector<std::size_t> path;
        for (auto u = v; u != unseen; u = parent[u]) path.push_back(u);
        std::reverse(path.begin(), path.end());
        if (!local || path.size() < local->size() || (path.size() == local->size() && path < *local)) {
          local = std::move(path);
        }
        continue;
      }
      for (auto w : g.successors(v)) {
        if (depth[w] == unseen) {
          depth[w] = depth[v] + 1;
          parent[w] = v;
          queue.push(w);
        }
      }
    }
    if (local && (!best || local->size() < best->size())) best = std::move(local);
  }
  return best;
}

/// Repeatedly moves a current sink (largest index first) to the last open
/// position. Position k of the result holds the vertex placed there; every
/// edge then goes from a smaller position to a larger one. Empty when the
/// graph has an oriented cycle.
inline std::optional<std::vector<std::size_t>> sink_elimination_order(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> out_degree(n);
  for (std::size_t v = 0; v < n; ++v) out_degree[v] = g.successors(v).size();
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> order(n);
  for (std::size_t pos = n; pos-- > 0;) {
    std::size_t sink = n;
    for (std::size_t v = n; v-- > 0;) {
      if (!removed[v] && out_degree[v] == 0) {
        sink = v;
        break;
      }
    }
    if (sink == n) return std::nullopt;
    removed[sink] = true;
    order[pos] = sink;
    for (auto u : g.predecessors(sink)) {
      if (!removed[u]) --out_degree[u];
    }
  }
  return order;
}

/// DOT rendering with 1-based vertex names. `labels`, when given, supplies
/// one vertex label per vertex.
inline std::string to_dot(const WeightedDigraph& g, const std::vector<std::string>* labels = nullptr) {
  std::string out = "digraph G {\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    out += "  " + std::to_string(v + 1);
    if (labels && v < labels->size()) out += " [label=\"" + (*labels)[v] + "\"]";
    out += ";\n";
  }
  for (const auto& [e, w] : g.weights()) {
    out += "  " + std::to_string(e.first + 1) + " -> " + std::to_string(e.second + 1) + " [label=\"" +
           w.to_string() + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace evoline
