#pragma once

// Automorphisms and isomorphisms of evolution algebras with E = E^2.
//
// For such algebras every natural basis is a rescaled permutation of any
// other, so every automorphism is monomial: e_i -> lambda_i e_sigma(i) with
// sigma an automorphism of the attached (unweighted) digraph. Preserving
// e_i^2 turns into lambda_j = w_ij lambda_i^2 along every edge (i, j), with
// w_ij = alpha_{sigma(i) sigma(j)} / alpha_ij. Every vertex has an incoming
// edge, so walking predecessors always closes a cycle; going once around a
// cycle of length L pins the start value to a root of u^(2^L - 1) = c, and
// the rest propagates forward along edges.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evoline/algebra.hpp"
#include "evoline/digraph.hpp"
#include "evoline/error.hpp"
#include "evoline/linalg.hpp"
#include "evoline/scalar.hpp"

namespace evoline {

inline constexpr std::size_t kDefaultMaxSearchDim = 12;

/// e_i -> lambda_i e_sigma(i).
struct MonomialMap {
  std::vector<std::size_t> sigma;
  std::vector<Scalar> lambda;

  static MonomialMap identity(const FieldSpec& spec, std::size_t n) {
    MonomialMap m;
    for (std::size_t i = 0; i < n; ++i) {
      m.sigma.push_back(i);
      m.lambda.push_back(Scalar::one(spec));
    }
    return m;
  }

  std::size_t size() const { return sigma.size(); }

  /// Row i is the image of e_i.
  Matrix to_matrix(const FieldSpec& spec) const {
    Matrix m(spec, size(), size());
    for (std::size_t i = 0; i < size(); ++i) m(i, sigma[i]) = lambda[i];
    return m;
  }

  /// (this o other)(e_i) = this(other(e_i)).
  MonomialMap compose(const MonomialMap& other) const {
    MonomialMap r;
    for (std::size_t i = 0; i < other.size(); ++i) {
      r.sigma.push_back(sigma[other.sigma[i]]);
      r.lambda.push_back(other.lambda[i] * lambda[other.sigma[i]]);
    }
    return r;
  }

  MonomialMap inverse() const {
    MonomialMap r;
    r.sigma.assign(size(), 0);
    r.lambda.assign(size(), Scalar());
    for (std::size_t i = 0; i < size(); ++i) {
      r.sigma[sigma[i]] = i;
      r.lambda[sigma[i]] = lambda[i].inv();
    }
    return r;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (sigma[i] != i || !lambda[i].is_one()) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) s += ", ";
      s += "e" + std::to_string(i + 1) + " -> " + lambda[i].to_string() + "*e" + std::to_string(sigma[i] + 1);
    }
    return s;
  }

  friend bool operator==(const MonomialMap& a, const MonomialMap& b) {
    return a.sigma == b.sigma && a.lambda == b.lambda;
  }
  friend bool operator<(const MonomialMap& a, const MonomialMap& b) {
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    return std::lexicographical_compare(a.lambda.begin(), a.lambda.end(), b.lambda.begin(), b.lambda.end());
  }
};

/// True when the linear map with rows `images` (images of the basis of
/// `from`, in coordinates of `to`) is multiplicative on all basis pairs.
inline bool is_homomorphism(const Algebra& from, const Algebra& to, const Matrix& images) {
  const std::size_t n = from.dim();
  if (images.rows() != n || images.cols() != to.dim()) return false;
  const auto rows = images.row_vectors();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Vector lhs = detail::product_coords(to.structure(), rows[i], rows[j]);
      const Vector rhs = i == j ? from.basis_square(i) * images : Vector(to.spec(), to.dim());
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

inline bool is_automorphism(const Algebra& alg, const MonomialMap& m) {
  return m.size() == alg.dim() && is_homomorphism(alg, alg, m.to_matrix(alg.spec()));
}

struct SearchOptions {
  std::size_t max_dim = kDefaultMaxSearchDim;
  RootOptions roots;
};

namespace detail {

struct VertexSignature {
  std::size_t in_degree;
  std::size_t out_degree;
  bool loop;
  friend bool operator==(const VertexSignature&, const VertexSignature&) = default;
};

inline VertexSignature signature(const Digraph& g, std::size_t v) {
  return {g.predecessors(v).size(), g.successors(v).size(), g.has_edge(v, v)};
}

class IsoSearch {
 public:
  IsoSearch(const Digraph& a, const Digraph& b, std::size_t limit) : a_(a), b_(b), limit_(limit) {}

  std::vector<std::vector<std::size_t>> run() {
    const std::size_t n = a_.size();
    if (n != b_.size()) return {};
    candidates_.assign(n, {});
    for (std::size_t v = 0; v < n; ++v) {
      const auto sv = signature(a_, v);
      for (std::size_t w = 0; w < n; ++w) {
        if (signature(b_, w) == sv) candidates_[v].push_back(w);
      }
      if (candidates_[v].empty()) return {};
    }
    // Most constrained vertices first.
    order_.resize(n);
    for (std::size_t v = 0; v < n; ++v) order_[v] = v;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return candidates_[x].size() < candidates_[y].size();
    });
    map_.assign(n, n);
    used_.assign(n, false);
    extend(0);
    std::sort(found_.begin(), found_.end());
    return found_;
  }

 private:
  bool consistent(std::size_t v, std::size_t image, std::size_t depth) const {
    if (a_.has_edge(v, v) != b_.has_edge(image, image)) return false;
    for (std::size_t k = 0; k < depth; ++k) {
      const std::size_t u = order_[k];
      const std::size_t iu = map_[u];
      if (a_.has_edge(v, u) != b_.has_edge(image, iu)) return false;
      if (a_.has_edge(u, v) != b_.has_edge(iu, image)) return false;
    }
    return true;
  }

  void extend(std::size_t depth) {
    if (found_.size() >= limit_) return;
    if (depth == order_.size()) {
      found_.push_back(map_);
      return;
    }
    const std::size_t v = order_[depth];
    for (auto w : candidates_[v]) {
      if (used_[w] || !consistent(v, w, depth)) continue;
      map_[v] = w;
      used_[w] = true;
      extend(depth + 1);
      used_[w] = false;
      map_[v] = order_.size();
      if (found_.size() >= limit_) return;
    }
  }

  const Digraph& a_;
  const Digraph& b_;
  std::size_t limit_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
  std::vector<std::vector<std::size_t>> found_;
};

inline void check_search_size(std::size_t n, const SearchOptions& options) {
  if (n > options.max_dim) {
    raise(ErrorCategory::SizeLimit, "dimension " + std::to_string(n) + " exceeds the permutation search bound " +
                                        std::to_string(options.max_dim));
  }
}

}  // namespace detail

/// Bijections sigma with (i,j) in E(a) <=> (sigma(i), sigma(j)) in E(b),
/// sorted lexicographically.
inline std::vector<std::vector<std::size_t>> graph_isomorphisms(const Digraph& a, const Digraph& b,
                                                                const SearchOptions& options = {},
                                                                std::size_t limit = static_cast<std::size_t>(-1)) {
  detail::check_search_size(a.size(), options);
  return detail::IsoSearch(a, b, limit).run();
}

inline std::vector<std::vector<std::size_t>> graph_automorphisms(const Digraph& g, const SearchOptions& options = {}) {
  return graph_isomorphisms(g, g, options);
}

/// Length of the cycle closed by walking smallest predecessors back from v.
inline std::size_t back_walk_cycle_length(const Digraph& g, std::size_t v) {
  std::vector<std::size_t> position(g.size(), g.size());
  std::size_t step = 0;
  std::size_t cur = v;
  while (position[cur] == g.size()) {
    position[cur] = step++;
    if (g.predecessors(cur).empty()) raise(ErrorCategory::NotRegular, "vertex without incoming edge");
    cur = g.predecessors(cur).front();
  }
  return step - position[cur];
}

/// All solutions lambda in (F^x)^n of lambda_j = w_ij lambda_i^2 over the
/// edges of g, where `weights` gives w for each edge. Every vertex must have
/// an incoming edge.
class MonomialSystem {
 public:
  MonomialSystem(const Digraph& g, std::map<Edge, Scalar> weights, FieldSpec spec, RootOptions roots = {})
      : g_(g), w_(std::move(weights)), spec_(spec), roots_(roots) {}

  std::vector<std::vector<Scalar>> solve(std::size_t limit = static_cast<std::size_t>(-1)) {
    limit_ = limit;
    solutions_.clear();
    std::vector<std::optional<Scalar>> partial(g_.size());
    search(partial);
    return solutions_;
  }

 private:
  const Scalar& weight(std::size_t i, std::size_t j) const { return w_.at(Edge{i, j}); }

  bool propagate(std::vector<std::optional<Scalar>>& lam, std::size_t seed) const {
    std::vector<std::size_t> work{seed};
    while (!work.empty()) {
      const auto a = work.back();
      work.pop_back();
      const Scalar sq = *lam[a] * *lam[a];
      for (auto b : g_.successors(a)) {
        const Scalar value = weight(a, b) * sq;
        if (!lam[b]) {
          lam[b] = value;
          work.push_back(b);
        } else if (!(*lam[b] == value)) {
          return false;
        }
      }
    }
    return true;
  }

  void search(std::vector<std::optional<Scalar>>& lam) {
    if (solutions_.size() >= limit_) return;
    std::size_t start = g_.size();
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (!lam[v]) {
        start = v;
        break;
      }
    }
    if (start == g_.size()) {
      std::vector<Scalar> full;
      for (auto& v : lam) full.push_back(*v);
      solutions_.push_back(std::move(full));
      return;
    }

    // Walk back i_0 = start, i_1, ... until a vertex repeats.
    std::vector<std::size_t> walk;
    std::vector<std::size_t> position(g_.size(), g_.size());
    std::size_t cur = start;
    while (position[cur] == g_.size()) {
      if (lam[cur]) {
        // Assigned sets are closed under successors, so this cannot happen;
        // recheck instead of re-solving.
        if (!propagate(lam, cur)) return;
        search(lam);
        return;
      }
      position[cur] = walk.size();
      walk.push_back(cur);
      if (g_.predecessors(cur).empty()) raise(ErrorCategory::NotRegular, "vertex without incoming edge");
      cur = g_.predecessors(cur).front();
    }
    // walk[r..s] is the cycle: walk[t+1] -> walk[t], and walk[s] is preceded by walk[r].
    const std::size_t r = position[cur];
    const std::size_t s = walk.size() - 1;
    const std::size_t length = s + 1 - r;
    if (length >= 64) raise(ErrorCategory::SizeLimit, "cycle too long for root extraction");
    // Forward around the cycle: walk[r] -> walk[s] -> ... -> walk[r+1] -> walk[r].
    Scalar k = Scalar::one(spec_);
    std::size_t from = walk[r];
    for (std::size_t t = s + 1; t-- > r;) {
      const std::size_t to = walk[t];
      k = weight(from, to) * k * k;
      from = to;
    }
    const std::uint64_t degree = (std::uint64_t{1} << length) - 1;
    for (const auto& u : nth_root_set(spec_, degree, k.inv(), roots_)) {
      auto next = lam;
      next[walk[r]] = u;
      if (propagate(next, walk[r])) search(next);
      if (solutions_.size() >= limit_) return;
    }
  }

  const Digraph& g_;
  std::map<Edge, Scalar> w_;
  FieldSpec spec_;
  RootOptions roots_;
  std::size_t limit_ = 0;
  std::vector<std::vector<Scalar>> solutions_;
};

namespace detail {

inline void require_regular(const Algebra& alg) {
  if (!is_regular(alg)) {
    raise(ErrorCategory::NotRegular, "E ≠ E²: automorphism group may be infinite");
  }
}

// w_ij = beta_{sigma(i) sigma(j)} / alpha_ij over the edges of a.
inline std::map<Edge, Scalar> monomial_weights(const Algebra& a, const Algebra& b, const Digraph& g,
                                               const std::vector<std::size_t>& sigma) {
  std::map<Edge, Scalar> w;
  for (const auto& [i, j] : g.edges()) w.emplace(Edge{i, j}, b.constant(sigma[i], sigma[j]) / a.constant(i, j));
  return w;
}

}  // namespace detail

/// Diagonal automorphisms: mu_j = mu_i^2 along every edge.
inline std::vector<MonomialMap> diagonal_kernel(const Algebra& alg, const SearchOptions& options = {}) {
  detail::require_regular(alg);
  const Digraph g = attach_graph(alg).unweighted();
  std::map<Edge, Scalar> ones;
  for (const auto& e : g.edges()) ones.emplace(e, Scalar::one(alg.spec()));
  MonomialSystem system(g, std::move(ones), alg.spec(), options.roots);
  std::vector<MonomialMap> out;
  for (auto& mu : system.solve()) {
    MonomialMap m = MonomialMap::identity(alg.spec(), alg.dim());
    m.lambda = std::move(mu);
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct AutomorphismGroup {
  Algebra algebra;
  std::vector<MonomialMap> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(const MonomialMap& m) const { return std::binary_search(elements.begin(), elements.end(), m); }
};

/// Closure under composition and inverses, and presence of the identity.
inline bool satisfies_group_axioms(const AutomorphismGroup& group) {
  if (group.elements.empty()) return false;
  if (!group.contains(MonomialMap::identity(group.algebra.spec(), group.algebra.dim()))) return false;
  for (const auto& a : group.elements) {
    if (!group.contains(a.inverse())) return false;
    for (const auto& b : group.elements) {
      if (!group.contains(a.compose(b))) return false;
    }
  }
  return true;
}

inline AutomorphismGroup automorphism_group(const Algebra& alg, const SearchOptions& options = {}) {
  detail::require_regular(alg);
  detail::check_search_size(alg.dim(), options);
  const Digraph g = attach_graph(alg).unweighted();
  AutomorphismGroup group{alg, {}};
  for (const auto& sigma : graph_automorphisms(g, options)) {
    MonomialSystem system(g, detail::monomial_weights(alg, alg, g, sigma), alg.spec(), options.roots);
    for (auto& lambda : system.solve()) {
      MonomialMap m{sigma, std::move(lambda)};
      if (!is_automorphism(alg, m)) {
        raise(ErrorCategory::InternalInconsistency, "monomial solution fails the product check: " + m.to_string());
      }
      group.elements.push_back(std::move(m));
    }
  }
  std::sort(group.elements.begin(), group.elements.end());
  if (!satisfies_group_axioms(group)) {
    raise(ErrorCategory::InternalInconsistency, "automorphism set is not closed under composition");
  }
  return group;
}

/// An isomorphism a -> b as a monomial map (e_i -> lambda_i f_sigma(i)), or
/// nothing if the algebras are not isomorphic.
inline std::optional<MonomialMap> is_isomorphic_regular(const Algebra& a, const Algebra& b,
                                                        const SearchOptions& options = {}) {
  if (a.dim() != b.dim() || !(a.spec() == b.spec())) return std::nullopt;
  detail::require_regular(a);
  detail::require_regular(b);
  detail::check_search_size(a.dim(), options);
  const Digraph ga = attach_graph(a).unweighted();
  const Digraph gb = attach_graph(b).unweighted();
  for (const auto& sigma : graph_isomorphisms(ga, gb, options)) {
    MonomialSystem system(ga, detail::monomial_weights(a, b, ga, sigma), a.spec(), options.roots);
    auto found = system.solve(1);
    if (found.empty()) continue;
    MonomialMap m{sigma, std::move(found.front())};
    if (!is_homomorphism(a, b, m.to_matrix(a.spec()))) {
      raise(ErrorCategory::InternalInconsistency, "isomorphism candidate fails the product check");
    }
    return m;
  }
  return std::nullopt;
}

}  // namespace evoline
