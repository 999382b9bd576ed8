#pragma once

// Nilpotency, power chains, non-nil witnesses and decomposition.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "evoline/algebra.hpp"
#include "evoline/digraph.hpp"
#include "evoline/error.hpp"
#include "evoline/linalg.hpp"

namespace evoline {

/// Span of all products u * w with u, w ranging over the given bases.
inline Subspace subspace_product(const Algebra& alg, const Subspace& u, const Subspace& w) {
  std::vector<Vector> products;
  for (const auto& a : u.basis()) {
    for (const auto& b : w.basis()) {
      Vector p = detail::product_coords(alg.structure(), a, b);
      if (!p.is_zero()) products.push_back(std::move(p));
    }
  }
  return Subspace::span(alg.spec(), products, alg.dim());
}

struct PowerChain {
  enum class Kind { Right, Full };

  Kind kind = Kind::Right;
  /// subspaces[k] is the (k+1)-th term; the last term is repeated by the
  /// next step of the recursion.
  std::vector<Subspace> subspaces;
  bool stabilized = false;
  bool reaches_zero = false;

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& s : subspaces) d.push_back(s.dim());
    return d;
  }

  /// Smallest k with the k-th term zero (1-based), if any.
  std::optional<std::size_t> index() const {
    if (!reaches_zero) return std::nullopt;
    return subspaces.size();
  }
};

/// E^<1> = E, E^<k+1> = E^<k> E.
inline PowerChain right_power_chain(const Algebra& alg) {
  PowerChain chain;
  chain.kind = PowerChain::Kind::Right;
  const Subspace whole = Subspace::full(alg.spec(), alg.dim());
  chain.subspaces.push_back(whole);
  while (true) {
    const Subspace& last = chain.subspaces.back();
    if (last.is_zero()) break;
    Subspace next = subspace_product(alg, last, whole);
    if (next == last) break;
    if (!last.contains(next)) raise(ErrorCategory::InternalInconsistency, "right power chain is not decreasing");
    chain.subspaces.push_back(std::move(next));
  }
  chain.stabilized = true;
  chain.reaches_zero = chain.subspaces.back().is_zero();
  return chain;
}

/// E^1 = E, E^{k+1} = sum_{i=1..k} E^i E^{k+1-i}.
///
/// The sequence is decreasing but may pause and drop again: with
/// e1^2 = e2, e2^2 = e3, e3^2 = e4 one gets E^3 = E^4 and E^5 < E^4. Once
/// E^k = E^{k+1} = ... = E^{2k}, every later term is the same sum
/// sum_{t<=k} E^t E^k, so the chain is fixed from there on. The repeated
/// tail is dropped from `subspaces`.
inline PowerChain full_power_chain(const Algebra& alg) {
  PowerChain chain;
  chain.kind = PowerChain::Kind::Full;
  chain.subspaces.push_back(Subspace::full(alg.spec(), alg.dim()));
  std::size_t plateau_start = 1;
  while (!chain.subspaces.back().is_zero()) {
    const std::size_t k = chain.subspaces.size();
    if (k >= 2 * plateau_start) {
      chain.subspaces.resize(plateau_start);
      break;
    }
    Subspace next = Subspace::zero(alg.spec(), alg.dim());
    // Commutativity makes the terms i and k+1-i equal; visit each pair once.
    for (std::size_t i = 1; i <= (k + 1) / 2; ++i) {
      next = next + subspace_product(alg, chain.subspaces[i - 1], chain.subspaces[k - i]);
    }
    const Subspace& last = chain.subspaces.back();
    if (!last.contains(next)) raise(ErrorCategory::InternalInconsistency, "full power chain is not decreasing");
    if (!(next == last)) plateau_start = k + 1;
    chain.subspaces.push_back(std::move(next));
  }
  chain.stabilized = true;
  chain.reaches_zero = chain.subspaces.back().is_zero();
  return chain;
}

struct NonNilWitness {
  std::vector<std::size_t> cycle;
  Element x;
  Scalar scalar_c;
};

struct NilpotencyReport {
  bool acyclic = false;
  std::optional<std::vector<std::size_t>> triangular_order;
  std::optional<std::size_t> right_index;
  std::optional<std::size_t> full_index;
  std::optional<NonNilWitness> witness;
  PowerChain right_chain;
  PowerChain full_chain;

  bool nilpotent() const { return acyclic; }
};

/// Structural constants relabelled so that position k holds vertex order[k].
inline Matrix permute_structure(const Matrix& a, const std::vector<std::size_t>& order) {
  Matrix p(a.spec(), a.rows(), a.cols());
  for (std::size_t r = 0; r < order.size(); ++r) {
    for (std::size_t c = 0; c < order.size(); ++c) p(r, c) = a(order[r], order[c]);
  }
  return p;
}

inline bool is_strictly_upper_triangular(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i && j < a.cols(); ++j) {
      if (!a(i, j).is_zero()) return false;
    }
  }
  return true;
}

/// x = sum of the cycle's basis vectors and c = product of its weights.
inline NonNilWitness make_witness(const Algebra& alg, const std::vector<std::size_t>& cycle) {
  if (cycle.empty()) raise(ErrorCategory::WitnessFailed, "empty cycle");
  Vector x(alg.spec(), alg.dim());
  Scalar c = Scalar::one(alg.spec());
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const auto from = cycle[k];
    const auto to = cycle[(k + 1) % cycle.size()];
    x[from] = Scalar::one(alg.spec());
    c *= alg.constant(from, to);
  }
  if (c.is_zero()) raise(ErrorCategory::WitnessFailed, "cycle uses a missing edge");
  return NonNilWitness{cycle, alg.element(std::move(x)), c};
}

inline NilpotencyReport nilpotency_report(const Algebra& alg) {
  const Digraph g = attach_graph(alg).unweighted();
  NilpotencyReport report;
  const auto cycle = find_oriented_cycle(g);
  report.triangular_order = sink_elimination_order(g);
  report.right_chain = right_power_chain(alg);
  report.full_chain = full_power_chain(alg);
  report.right_index = report.right_chain.index();
  report.full_index = report.full_chain.index();
  report.acyclic = !cycle.has_value();

  const bool agree = report.acyclic == report.triangular_order.has_value() &&
                     report.acyclic == report.right_index.has_value() &&
                     report.acyclic == report.full_index.has_value();
  if (!agree) {
    raise(ErrorCategory::InternalInconsistency,
          "nilpotency routes disagree: acyclic=" + std::to_string(report.acyclic) +
              " triangular=" + std::to_string(report.triangular_order.has_value()) +
              " right=" + std::to_string(report.right_index.has_value()) +
              " full=" + std::to_string(report.full_index.has_value()));
  }
  if (report.triangular_order &&
      !is_strictly_upper_triangular(permute_structure(alg.structure(), *report.triangular_order))) {
    raise(ErrorCategory::InternalInconsistency, "sink elimination order does not triangularize A");
  }
  if (report.right_index && *report.right_index > alg.dim() + 1) {
    raise(ErrorCategory::InternalInconsistency, "right nilpotency index exceeds dim + 1");
  }
  if (cycle) report.witness = make_witness(alg, *cycle);
  return report;
}

struct WitnessVerification {
  /// x^(r+1) and c x agree on the cycle coordinates.
  bool congruence_holds = false;
  /// x^(k) != 0 for every k up to the bound.
  bool nonzero_through_bound = false;
  std::size_t bound = 0;
  Vector power_restricted;
  Vector scaled_restricted;
};

inline Vector restrict_to(const Vector& v, const std::vector<std::size_t>& indices) {
  Vector r(v.spec(), v.size());
  for (auto i : indices) r[i] = v[i];
  return r;
}

inline WitnessVerification verify_non_nil_witness(const Algebra& alg, const NonNilWitness& w, std::size_t bound) {
  WitnessVerification v;
  v.bound = bound;
  const std::size_t r = w.cycle.size();
  v.power_restricted = restrict_to(left_normed_power(alg, w.x, r + 1).coords(), w.cycle);
  v.scaled_restricted = restrict_to((w.scalar_c * w.x).coords(), w.cycle);
  v.congruence_holds = v.power_restricted == v.scaled_restricted;
  v.nonzero_through_bound = true;
  Vector p = w.x.coords();
  for (std::size_t k = 1; k <= bound; ++k) {
    if (k > 1) p = detail::product_coords(alg.structure(), p, w.x.coords());
    if (p.is_zero()) {
      v.nonzero_through_bound = false;
      break;
    }
  }
  if (!v.congruence_holds || !v.nonzero_through_bound) {
    raise(ErrorCategory::WitnessFailed,
          "non-nil witness failed: x^(r+1) on cycle = " + v.power_restricted.to_string() +
              ", c x on cycle = " + v.scaled_restricted.to_string());
  }
  return v;
}

struct NilAt {
  std::size_t k;
};
struct NotNilCertified {
  /// x^(first) == x^(repeat) with first < repeat, both nonzero.
  std::size_t first;
  std::size_t repeat;
};
struct Inconclusive {};

using NilCheck = std::variant<NilAt, NotNilCertified, Inconclusive>;

/// Follows the left-normed powers of x. Since x^(k+1) depends only on
/// x^(k), a repeated nonzero power forces the sequence to cycle forever.
inline NilCheck bounded_nil_check(const Algebra& alg, const Element& x, std::optional<std::size_t> max_steps = {}) {
  detail::check_member(alg, x);
  const std::size_t limit = max_steps.value_or(alg.dim() + 1);
  if (limit == 0) raise(ErrorCategory::DimensionMismatch, "max_steps must be >= 1");
  std::vector<Vector> seen;
  Vector p = x.coords();
  for (std::size_t k = 1; k <= limit; ++k) {
    if (k > 1) p = detail::product_coords(alg.structure(), p, x.coords());
    if (p.is_zero()) return NilAt{k};
    for (std::size_t j = 0; j < seen.size(); ++j) {
      if (seen[j] == p) return NotNilCertified{j + 1, k};
    }
    seen.push_back(p);
  }
  return Inconclusive{};
}

struct Component {
  std::vector<std::size_t> indices;
  Algebra algebra;
};

struct Decomposition {
  std::vector<Component> components;
  /// Set when ann(E) != 0: the split then depends on the chosen natural basis.
  bool basis_dependent = false;
};

inline Algebra restrict_algebra(const Algebra& alg, const std::vector<std::size_t>& indices) {
  Matrix a(alg.spec(), indices.size(), indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    for (std::size_t c = 0; c < indices.size(); ++c) a(r, c) = alg.constant(indices[r], indices[c]);
  }
  return Algebra(std::move(a));
}

inline Decomposition decompose(const Algebra& alg) {
  Decomposition d;
  for (auto& part : weak_components(attach_graph(alg).unweighted())) {
    Algebra sub = restrict_algebra(alg, part);
    d.components.push_back(Component{std::move(part), std::move(sub)});
  }
  d.basis_dependent = !annihilator(alg).is_zero();
  return d;
}

}  // namespace evoline
