#pragma once

// Evolution algebras given by a natural basis e_1..e_n and the matrix of
// structural constants A, where row i holds the coordinates of e_i^2 and
// e_i e_j = 0 for i != j.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "evoline/error.hpp"
#include "evoline/linalg.hpp"
#include "evoline/scalar.hpp"

namespace evoline {

class Element;

class Algebra {
 public:
  explicit Algebra(Matrix structure) {
    if (!structure.is_square()) raise(ErrorCategory::ShapeError, "structural constants must form a square matrix");
    if (structure.rows() == 0) raise(ErrorCategory::ShapeError, "an evolution algebra needs dimension >= 1");
    data_ = std::make_shared<const Matrix>(std::move(structure));
  }

  static Algebra from_ints(const FieldSpec& spec, std::initializer_list<std::initializer_list<long long>> rows) {
    return Algebra(Matrix::from_ints(spec, rows));
  }

  const FieldSpec& spec() const { return data_->spec(); }
  std::size_t dim() const { return data_->rows(); }
  const Matrix& structure() const { return *data_; }
  const Scalar& constant(std::size_t i, std::size_t j) const { return (*data_)(i, j); }

  /// Coordinates of e_i^2.
  Vector basis_square(std::size_t i) const { return data_->row(i); }

  /// Two handles denote the same algebra only if they share an origin.
  bool same_as(const Algebra& o) const { return data_ == o.data_; }

  Element element(Vector coords) const;
  Element basis(std::size_t i) const;
  Element zero() const;

 private:
  std::shared_ptr<const Matrix> data_;
};

class Element {
 public:
  const Algebra& algebra() const { return alg_; }
  const Vector& coords() const { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }
  bool is_zero() const { return coords_.is_zero(); }

  friend Element operator+(const Element& a, const Element& b) {
    a.check_same(b);
    return Element(a.alg_, a.coords_ + b.coords_);
  }
  friend Element operator-(const Element& a, const Element& b) {
    a.check_same(b);
    return Element(a.alg_, a.coords_ - b.coords_);
  }
  friend Element operator*(const Scalar& s, const Element& x) { return Element(x.alg_, s * x.coords_); }

  friend bool operator==(const Element& a, const Element& b) {
    return a.alg_.same_as(b.alg_) && a.coords_ == b.coords_;
  }

  void check_same(const Element& o) const {
    if (!alg_.same_as(o.alg_)) raise(ErrorCategory::AlgebraMismatch, "elements belong to different algebras");
  }

 private:
  friend class Algebra;
  Element(Algebra alg, Vector coords) : alg_(std::move(alg)), coords_(std::move(coords)) {}

  Algebra alg_;
  Vector coords_;
};

inline Element Algebra::element(Vector coords) const {
  if (coords.size() != dim()) raise(ErrorCategory::DimensionMismatch, "element length differs from algebra dimension");
  if (!(coords.spec() == spec())) raise(ErrorCategory::FieldMismatch, "element coordinates outside " + spec().tag());
  return Element(*this, std::move(coords));
}
inline Element Algebra::basis(std::size_t i) const { return Element(*this, Vector::unit(spec(), dim(), i)); }
inline Element Algebra::zero() const { return Element(*this, Vector(spec(), dim())); }

namespace detail {

inline void check_member(const Algebra& alg, const Element& x) {
  if (!x.algebra().same_as(alg)) raise(ErrorCategory::AlgebraMismatch, "element does not belong to this algebra");
}

// xy = sum_i x_i y_i e_i^2 on raw coordinates.
inline Vector product_coords(const Matrix& a, const Vector& x, const Vector& y) {
  Vector w(a.spec(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i].is_zero() || y[i].is_zero()) continue;
    w[i] = x[i] * y[i];
  }
  return w * a;
}

}  // namespace detail

inline Element multiply(const Algebra& alg, const Element& x, const Element& y) {
  detail::check_member(alg, x);
  detail::check_member(alg, y);
  return alg.element(detail::product_coords(alg.structure(), x.coords(), y.coords()));
}

/// x^(1) = x, x^(k+1) = x^(k) x.
inline Element left_normed_power(const Algebra& alg, const Element& x, std::size_t k) {
  detail::check_member(alg, x);
  if (k == 0) raise(ErrorCategory::DimensionMismatch, "power exponent must be >= 1");
  Vector p = x.coords();
  for (std::size_t step = 1; step < k && !p.is_zero(); ++step) {
    p = detail::product_coords(alg.structure(), p, x.coords());
  }
  return alg.element(std::move(p));
}

/// Indices (0-based, ascending) of nonzero coordinates.
inline std::vector<std::size_t> support(const Vector& x) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) s.push_back(i);
  }
  return s;
}
inline std::vector<std::size_t> support(const Element& x) { return support(x.coords()); }

/// ann(E) is spanned by the basis vectors with zero square.
inline Subspace annihilator(const Algebra& alg) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    if (alg.basis_square(i).is_zero()) gens.push_back(Vector::unit(alg.spec(), alg.dim(), i));
  }
  return Subspace::span(alg.spec(), gens, alg.dim());
}

/// E = E^2, equivalently det(A) != 0.
inline bool is_regular(const Algebra& alg) { return !determinant(alg.structure()).is_zero(); }

/// Rows of an invertible matrix give f_1..f_n in old coordinates.
class BasisChange {
 public:
  explicit BasisChange(Matrix p) : p_(std::move(p)) {
    if (!p_.is_square()) raise(ErrorCategory::NonSquare, "basis change must be square");
    auto inv = inverse(p_);
    if (!inv) raise(ErrorCategory::SingularChange, "basis change matrix is singular");
    inv_ = std::move(*inv);
  }

  const Matrix& matrix() const { return p_; }
  const Matrix& inverse_matrix() const { return inv_; }

 private:
  Matrix p_;
  Matrix inv_;
};

class NotNaturalError : public Error {
 public:
  NotNaturalError(std::size_t i, std::size_t j, Vector product)
      : Error(ErrorCategory::NotNatural, "f" + std::to_string(i + 1) + " f" + std::to_string(j + 1) +
                                             " = " + product.to_string() + " is nonzero"),
        i_(i),
        j_(j),
        product_(std::move(product)) {}

  std::size_t first() const { return i_; }
  std::size_t second() const { return j_; }
  const Vector& product() const { return product_; }

 private:
  std::size_t i_;
  std::size_t j_;
  Vector product_;
};

/// Re-expresses the algebra in the basis given by the rows of P, which must
/// itself be natural.
inline Algebra rebase(const Algebra& alg, const BasisChange& change) {
  const Matrix& p = change.matrix();
  const std::size_t n = alg.dim();
  if (p.rows() != n) raise(ErrorCategory::DimensionMismatch, "basis change size differs from algebra dimension");
  if (!(p.spec() == alg.spec())) raise(ErrorCategory::FieldMismatch, "basis change over a different field");
  const auto f = p.row_vectors();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector prod = detail::product_coords(alg.structure(), f[i], f[j]);
      if (!prod.is_zero()) throw NotNaturalError(i, j, std::move(prod));
    }
  }
  Matrix next(alg.spec(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector sq = detail::product_coords(alg.structure(), f[i], f[i]) * change.inverse_matrix();
    for (std::size_t j = 0; j < n; ++j) next(i, j) = sq[j];
  }
  return Algebra(std::move(next));
}

class NotAnIdealError : public Error {
 public:
  NotAnIdealError(std::size_t j, Vector witness)
      : Error(ErrorCategory::NotAnIdeal, "e" + std::to_string(j + 1) + " times an ideal generator gives " +
                                             witness.to_string() + ", outside the subspace"),
        j_(j),
        witness_(std::move(witness)) {}

  std::size_t basis_index() const { return j_; }
  const Vector& witness() const { return witness_; }

 private:
  std::size_t j_;
  Vector witness_;
};

/// E I is contained in I.
inline bool is_ideal(const Algebra& alg, const Subspace& ideal) {
  for (const auto& b : ideal.basis()) {
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      if (!ideal.contains(detail::product_coords(alg.structure(), Vector::unit(alg.spec(), alg.dim(), j), b))) {
        return false;
      }
    }
  }
  return true;
}

struct Quotient {
  Algebra algebra;
  /// Indices i whose coclasses e_i + I form the chosen natural basis.
  std::vector<std::size_t> chosen;
  /// n x q matrix: row i holds the coordinates of e_i + I.
  Matrix projection;

  Vector project(const Vector& x) const { return x * projection; }
};

inline Quotient quotient(const Algebra& alg, const Subspace& ideal) {
  const std::size_t n = alg.dim();
  const FieldSpec& spec = alg.spec();
  ideal.check_subspace(Subspace::zero(spec, n));
  if (ideal.is_full()) raise(ErrorCategory::NotProper, "quotient by the whole algebra");
  for (const auto& b : ideal.basis()) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector prod = detail::product_coords(alg.structure(), Vector::unit(spec, n, j), b);
      if (!ideal.contains(prod)) throw NotAnIdealError(j, std::move(prod));
    }
  }

  // Greedy leftmost choice of independent coclasses.
  std::vector<std::size_t> chosen;
  std::vector<Vector> frame = ideal.basis();
  Subspace acc = ideal;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e = Vector::unit(spec, n, i);
    if (acc.contains(e)) continue;
    chosen.push_back(i);
    frame.push_back(e);
    acc = Subspace::span(spec, frame, n);
  }
  const std::size_t q = chosen.size();

  // Coordinates in the basis (chosen e's, then I's basis); keep the first q.
  std::vector<Vector> rows;
  for (auto i : chosen) rows.push_back(Vector::unit(spec, n, i));
  rows.insert(rows.end(), ideal.basis().begin(), ideal.basis().end());
  const auto to_frame = inverse(Matrix::from_rows(spec, rows, n));
  if (!to_frame) raise(ErrorCategory::InternalInconsistency, "quotient frame is not a basis");
  Matrix projection(spec, n, q);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < q; ++k) projection(i, k) = (*to_frame)(i, k);
  }

  Matrix structure(spec, q, q);
  for (std::size_t k = 0; k < q; ++k) {
    const Vector image = alg.basis_square(chosen[k]) * projection;
    for (std::size_t t = 0; t < q; ++t) structure(k, t) = image[t];
  }
  // Leftover coclasses annihilate the chosen basis, so their squares lie in I.
  for (std::size_t i = 0, c = 0; i < n; ++i) {
    if (c < q && chosen[c] == i) {
      ++c;
      continue;
    }
    if (!ideal.contains(alg.basis_square(i))) {
      raise(ErrorCategory::InternalInconsistency, "leftover coclass is not in the quotient annihilator");
    }
  }
  return Quotient{Algebra(std::move(structure)), std::move(chosen), std::move(projection)};
}

}  // namespace evoline
