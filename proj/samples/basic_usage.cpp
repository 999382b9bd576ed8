// Builds the three-dimensional algebra e1^2 = e2 + e3, e2^2 = e3^2 = 0 and
// prints what the library finds out about it.

#include <iostream>

#include "evoline/evoline.hpp"

int main() {
  using namespace evoline;
  const FieldSpec q = FieldSpec::rationals();
  const Algebra alg = Algebra::from_ints(q, {{0, 1, 1}, {0, 0, 0}, {0, 0, 0}});

  const auto report = nilpotency_report(alg);
  std::cout << "nilpotent: " << std::boolalpha << report.nilpotent() << ", right index "
            << *report.right_index << "\n";

  // f1 = e1, f2 = e2 + e3, f3 = e3 is another natural basis with a disconnected graph.
  const Algebra rebased = rebase(alg, BasisChange(Matrix::from_ints(q, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}})));
  std::cout << "components after rebase: " << decompose(rebased).components.size() << "\n";
  std::cout << to_dot(attach_graph(rebased));
}
