// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "evoline/evoline.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

using namespace evoline;
namespace oracle = evoline::testing;

namespace {

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kF3 = FieldSpec::prime(3);
const FieldSpec kF5 = FieldSpec::prime(5);
const FieldSpec kF7 = FieldSpec::prime(7);

constexpr std::uint64_t kFuzzSeed = 20240601;
constexpr std::size_t kFuzzCount = 1000;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // 0 = none stated
  std::function<Outcome()> run;
};

std::string str(std::size_t x) { return std::to_string(x); }

std::map<Edge, Scalar> weights(const FieldSpec& f, std::initializer_list<std::pair<Edge, long long>> xs) {
  std::map<Edge, Scalar> m;
  for (const auto& [e, w] : xs) m.emplace(e, Scalar::from_int(f, w));
  return m;
}

const std::vector<Algebra>& corpus() {
  static const std::vector<Algebra> c = oracle::fuzz_corpus(kFuzzCount, kFuzzSeed);
  return c;
}

// Groups produced by criteria 5 and 6, re-checked in criterion 8.
std::vector<AutomorphismGroup>& computed_groups() {
  static std::vector<AutomorphismGroup> g;
  return g;
}

Outcome worked_examples() {
  Outcome o;
  const Algebra e24 = Algebra::from_ints(kQ, {{0, 1}, {0, 1}});
  if (attach_graph(e24).weights() != weights(kQ, {{{0, 1}, 1}, {{1, 1}, 1}})) o.fail("two-bases graph under B");
  const Algebra e24b = rebase(e24, BasisChange(Matrix::from_ints(kQ, {{1, 1}, {1, -1}})));
  if (!(e24b.structure() == Matrix::from_ints(kQ, {{1, -1}, {1, -1}}))) o.fail("two-bases A' under B'");
  if (attach_graph(e24b).weights() != weights(kQ, {{{0, 0}, 1}, {{0, 1}, -1}, {{1, 0}, 1}, {{1, 1}, -1}})) {
    o.fail("two-bases graph under B'");
  }

  const Algebra e25 = Algebra::from_ints(kQ, {{0, 1, 1}, {0, 0, 0}, {0, 0, 0}});
  if (!is_weakly_connected(attach_graph(e25).unweighted())) o.fail("three-dim graph under B not connected");
  const Algebra e25b = rebase(e25, BasisChange(Matrix::from_ints(kQ, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}})));
  if (weak_components(attach_graph(e25b).unweighted()) != std::vector<std::vector<std::size_t>>{{0, 1}, {2}}) {
    o.fail("three-dim components under B'");
  }

  const Algebra e23 = Algebra::from_ints(kQ, {{2, 3}, {5, 7}});
  if (attach_graph(e23).weights() != weights(kQ, {{{0, 0}, 2}, {{0, 1}, 3}, {{1, 0}, 5}, {{1, 1}, 7}})) {
    o.fail("two-dim full pattern");
  }
  o.detail = o.ok ? "3 fixtures, all edges and weights exact" : o.detail;
  return o;
}

Outcome nilpotency_fuzz() {
  Outcome o;
  std::size_t acyclic = 0;
  for (std::size_t k = 0; k < corpus().size() && o.ok; ++k) {
    const Algebra& alg = corpus()[k];
    const std::string tag = "instance " + str(k) + ": ";
    try {
      const NilpotencyReport r = nilpotency_report(alg);
      const bool agree = r.acyclic == r.triangular_order.has_value() && r.acyclic == r.right_index.has_value() &&
                         r.acyclic == r.full_index.has_value();
      if (!agree) o.fail(tag + "routes disagree");
      if (r.acyclic) {
        ++acyclic;
        if (!is_strictly_upper_triangular(permute_structure(alg.structure(), *r.triangular_order))) {
          o.fail(tag + "permuted A not strictly upper triangular");
        }
        // E^<n+1> = 0.
        Subspace term = Subspace::full(alg.spec(), alg.dim());
        const Subspace whole = term;
        for (std::size_t step = 1; step <= alg.dim(); ++step) term = subspace_product(alg, term, whole);
        if (!term.is_zero()) o.fail(tag + "E^<n+1> != 0");
      } else {
        if (!r.witness) o.fail(tag + "cyclic but no witness");
        verify_non_nil_witness(alg, *r.witness, 3 * alg.dim());
      }
    } catch (const Error& e) {
      o.fail(tag + e.what());
    }
  }
  if (o.ok) o.detail = str(corpus().size()) + " instances, " + str(acyclic) + " nilpotent";
  return o;
}

Outcome annihilator_oracle() {
  Outcome o;
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < corpus().size(); ++k) {
    const Subspace a = annihilator(corpus()[k]);
    if (!(a == oracle::brute_force_annihilator(corpus()[k]))) o.fail("instance " + str(k));
    nonzero += !a.is_zero();
  }
  if (o.ok) o.detail = str(corpus().size()) + " instances, " + str(nonzero) + " with ann(E) != 0";
  return o;
}

bool supports_disjoint(const Vector& x, const Vector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero() && !y[i].is_zero()) return false;
  }
  return true;
}

Outcome regularity_and_supports() {
  Outcome o;
  std::mt19937_64 rng(kFuzzSeed + 4);
  std::size_t regular = 0;
  std::size_t pairs = 0;
  for (std::size_t k = 0; k < corpus().size(); ++k) {
    const Algebra& alg = corpus()[k];
    const std::size_t n = alg.dim();
    const FieldSpec& s = alg.spec();
    std::vector<Vector> squares;
    for (std::size_t i = 0; i < n; ++i) squares.push_back(alg.basis_square(i));
    const bool by_span = Subspace::span(s, squares, n).dim() == n;
    const bool by_det = !determinant(alg.structure()).is_zero();
    if (is_regular(alg) != by_det || by_det != by_span) o.fail("instance " + str(k) + ": regularity routes differ");
    if (!by_det) continue;
    ++regular;

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Vector p = multiply(alg, alg.basis(i), alg.basis(j)).coords();
        if (p.is_zero() && !supports_disjoint(Vector::unit(s, n, i), Vector::unit(s, n, j))) {
          o.fail("instance " + str(k) + ": basis pair");
        }
      }
    }
    if (n < 2) {
      // No nonzero pair multiplies to zero here; confirm the kernel is trivial.
      const Scalar x = alg.constant(0, 0);
      if (x.is_zero()) o.fail("instance " + str(k) + ": regular 1-dim with zero square");
      continue;
    }
    std::size_t found = 0;
    for (std::size_t attempt = 0; found < 100 && attempt < 1000; ++attempt) {
      // x supported on a random proper subset, then y drawn from {y : x y = 0}.
      Vector x(s, n);
      const std::size_t keep = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
      std::vector<std::size_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      for (std::size_t t = 0; t < keep; ++t) x[idx[t]] = oracle::random_scalar(rng, s, true);
      Matrix m(s, n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = x[i] * alg.constant(i, j);
      }
      const Subspace ker = left_kernel(m);
      Vector y(s, n);
      for (const auto& b : ker.basis()) y = y + oracle::random_scalar(rng, s) * b;
      if (y.is_zero()) continue;
      if (!multiply(alg, alg.element(x), alg.element(y)).is_zero()) o.fail("instance " + str(k) + ": kernel vector");
      if (!supports_disjoint(x, y)) o.fail("instance " + str(k) + ": zero product with overlapping supports");
      ++found;
    }
    if (found < 100) o.fail("instance " + str(k) + ": only " + str(found) + " zero-product pairs");
    pairs += found;
  }
  if (o.ok) o.detail = str(regular) + " regular instances, " + str(pairs) + " random zero-product pairs";
  return o;
}

bool matches_brute_force(const Algebra& alg) {
  const auto want = oracle::brute_force_automorphisms(oracle::to_int_matrix(alg.structure()),
                                                      static_cast<long long>(alg.spec().characteristic()));
  AutomorphismGroup g = automorphism_group(alg);
  const bool same = oracle::as_matrices(g) == want;
  computed_groups().push_back(std::move(g));
  return same;
}

Outcome automorphism_oracle() {
  Outcome o;
  std::size_t regular = 0;
  std::size_t refused = 0;
  for (long long a = 0; a < 3; ++a) {
    for (long long b = 0; b < 3; ++b) {
      for (long long c = 0; c < 3; ++c) {
        for (long long d = 0; d < 3; ++d) {
          const Algebra alg = Algebra::from_ints(kF3, {{a, b}, {c, d}});
          const std::string tag = "F3 [[" + std::to_string(a) + "," + std::to_string(b) + "],[" +
                                  std::to_string(c) + "," + std::to_string(d) + "]]";
          if (is_regular(alg)) {
            ++regular;
            if (!matches_brute_force(alg)) o.fail(tag + ": set differs");
            continue;
          }
          try {
            (void)automorphism_group(alg);
            o.fail(tag + ": non-regular instance not refused");
          } catch (const Error& e) {
            if (e.category() != ErrorCategory::NotRegular) o.fail(tag + ": wrong refusal category");
            ++refused;
          }
        }
      }
    }
  }
  std::mt19937_64 rng(kFuzzSeed + 5);
  for (int k = 0; k < 50; ++k) {
    if (!matches_brute_force(oracle::random_regular_algebra(rng, kF7, 2, 0.6))) o.fail("F7 n=2 sample " + str(k));
  }
  for (int k = 0; k < 50; ++k) {
    if (!matches_brute_force(oracle::random_regular_algebra(rng, kF3, 3, 0.45))) o.fail("F3 n=3 sample " + str(k));
  }
  if (o.ok) {
    o.detail = "F3 n=2: " + str(regular) + " regular equal, " + str(refused) +
               " singular refused (NotRegular); 50 F7 n=2 and 50 F3 n=3 equal";
  }
  return o;
}

Outcome named_counts() {
  Outcome o;
  const Algebra cycle_f7 = Algebra::from_ints(kF7, {{0, 1}, {1, 0}});
  const Algebra cycle_q = Algebra::from_ints(kQ, {{0, 1}, {1, 0}});
  const Algebra idem_q = Algebra::from_ints(kQ, {{1}});
  // The brute-force oracle fixes each constant before it is compared.
  const auto oracle_order = [](const Algebra& a) {
    return oracle::brute_force_automorphisms(oracle::to_int_matrix(a.structure()),
                                             static_cast<long long>(a.spec().characteristic()))
        .size();
  };
  const std::size_t want_f7 = oracle_order(cycle_f7);
  // Over Q only mu^3 = 1 with mu = 1 survives; the same system over F5 and
  // F11 (no primitive cube roots of unity) is brute-forced as the witness.
  const std::size_t want_q = oracle_order(Algebra::from_ints(kF5, {{0, 1}, {1, 0}}));
  const std::size_t want_q11 = oracle_order(Algebra::from_ints(FieldSpec::prime(11), {{0, 1}, {1, 0}}));
  const std::size_t want_idem = oracle_order(Algebra::from_ints(kF7, {{1}}));
  if (want_f7 != 6 || want_q != 2 || want_q11 != 2 || want_idem != 1) o.fail("oracle disagrees with frozen constants");

  AutomorphismGroup g1 = automorphism_group(cycle_f7);
  AutomorphismGroup g2 = automorphism_group(cycle_q);
  AutomorphismGroup g3 = automorphism_group(idem_q);
  if (g1.order() != 6) o.fail("2-cycle over F7: order " + str(g1.order()));
  if (g2.order() != 2) o.fail("2-cycle over Q: order " + str(g2.order()));
  if (g3.order() != 1) o.fail("e1^2 = e1: order " + str(g3.order()));
  computed_groups().push_back(std::move(g1));
  computed_groups().push_back(std::move(g2));
  computed_groups().push_back(std::move(g3));
  if (o.ok) o.detail = "orders 6, 2, 1";
  return o;
}

Outcome refusal() {
  Outcome o;
  const Algebra e41 = Algebra::from_ints(kQ, {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}});
  if (!determinant(e41.structure()).is_zero() || is_regular(e41)) o.fail("not detected as singular");
  try {
    (void)automorphism_group(e41);
    o.fail("automorphism_group did not refuse");
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::NotRegular) o.fail("wrong category");
  }
  const auto r = oracle::run_cli({"aut", std::string(EVOLINE_SAMPLES_DIR) + "/example41.json"});
  if (r.code != 1 || r.err != "error [NotRegular]: E ≠ E²: automorphism group may be infinite\n") {
    o.fail("CLI refusal text or status");
  }
  if (o.ok) o.detail = "det = 0, aut exits 1 with [NotRegular]";
  return o;
}

Outcome group_axioms() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& g : computed_groups()) {
    const FieldSpec& s = g.algebra.spec();
    const std::size_t n = g.algebra.dim();
    std::vector<Matrix> mats;
    for (const auto& m : g.elements) mats.push_back(m.to_matrix(s));
    const auto member = [&](const Matrix& m) { return std::find(mats.begin(), mats.end(), m) != mats.end(); };
    if (!member(Matrix::identity(s, n))) o.fail("identity missing");
    for (const auto& a : mats) {
      const auto inv = inverse(a);
      if (!inv || !member(*inv)) o.fail("inverse missing");
      for (const auto& b : mats) {
        if (!member(a * b)) o.fail("not closed");
      }
    }
    ++checked;
  }
  if (checked == 0) o.fail("no groups recorded");
  if (o.ok) o.detail = str(checked) + " groups: identity, inverses, closure by matrix products";
  return o;
}

Outcome rigidity() {
  Outcome o;
  std::mt19937_64 rng(kFuzzSeed + 9);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k) % 5;
    const Algebra alg = oracle::random_regular_algebra(rng, kF5, n, 0.5);
    std::vector<std::size_t> perm;
    const Matrix p = oracle::random_monomial_change(rng, kF5, n, &perm);
    const Algebra moved = rebase(alg, BasisChange(p));
    const auto iso = is_isomorphic_regular(alg, moved);
    if (!iso || !is_homomorphism(alg, moved, iso->to_matrix(kF5))) o.fail("instance " + str(k) + ": no isomorphism");
    const auto g = attach_graph(alg);
    const auto h = attach_graph(moved);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto w = h.weight(i, j);
        const auto v = g.weight(perm[i], perm[j]);
        if (w.has_value() != v.has_value()) o.fail("instance " + str(k) + ": edge sets differ");
        if (w && v && !(*w == p(i, perm[i]) * p(i, perm[i]) * *v / p(j, perm[j]))) {
          o.fail("instance " + str(k) + ": weight relabeling");
        }
      }
    }
  }
  if (o.ok) o.detail = "100 rebases recovered; graphs agree under the relabeling";
  return o;
}

Outcome cli_contract() {
  Outcome o;
  const std::string samples = EVOLINE_SAMPLES_DIR;
  std::size_t n = 0;
  for (const auto& c : oracle::golden_cases()) {
    const auto args = oracle::resolve_args(c, samples);
    const auto first = oracle::run_cli(args);
    const auto second = oracle::run_cli(args);
    if (first.out != second.out || first.err != second.err || first.code != second.code) {
      o.fail(c.name + ": runs differ");
    }
    const std::string diff = oracle::compare_golden(EVOLINE_GOLDEN_DIR, c, first);
    if (!diff.empty()) o.fail(diff);
    ++n;
  }
  if (o.ok) o.detail = str(n) + " golden cases, byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked examples", 1.0, worked_examples},
      {2, "nilpotency equivalence fuzz", 30.0, nilpotency_fuzz},
      {3, "annihilator oracle", 0.0, annihilator_oracle},
      {4, "regularity and disjoint supports", 0.0, regularity_and_supports},
      {5, "automorphism oracle equivalence", 60.0, automorphism_oracle},
      {6, "named automorphism counts", 0.0, named_counts},
      {7, "non-regular refusal", 0.0, refusal},
      {8, "group axioms", 0.0, group_axioms},
      {9, "natural-basis rigidity", 0.0, rigidity},
      {10, "CLI golden contract", 0.0, cli_contract},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.time_limit_s) + " s");
    }
    failures += !o.ok;
    std::printf("criterion %2d %s  %-34s %7.3f s  %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title.c_str(), secs,
                o.detail.c_str());
  }
  std::printf("%s: %d of %zu criteria failed\n", failures ? "FAIL" : "PASS", failures, criteria.size());
  return failures ? 1 : 0;
}
