#pragma once

// Dense exact linear algebra over a FieldSpec. Vectors are rows and
// matrices act on the right: x * M.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evoline/error.hpp"
#include "evoline/scalar.hpp"

namespace evoline {

class Vector {
 public:
  Vector() = default;
  Vector(const FieldSpec& spec, std::size_t n) : spec_(spec), coords_(n, Scalar::zero(spec)) {}
  Vector(const FieldSpec& spec, std::vector<Scalar> coords) : spec_(spec), coords_(std::move(coords)) {
    for (const auto& c : coords_) {
      if (!(c.spec() == spec_)) raise(ErrorCategory::FieldMismatch, "vector coordinate outside " + spec_.tag());
    }
  }

  static Vector unit(const FieldSpec& spec, std::size_t n, std::size_t i) {
    Vector v(spec, n);
    v.coords_.at(i) = Scalar::one(spec);
    return v;
  }

  static Vector from_ints(const FieldSpec& spec, std::initializer_list<long long> values) {
    std::vector<Scalar> c;
    c.reserve(values.size());
    for (long long v : values) c.push_back(Scalar::from_int(spec, v));
    return Vector(spec, std::move(c));
  }

  const FieldSpec& spec() const { return spec_; }
  std::size_t size() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Scalar>& coords() const { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  Vector& operator+=(const Vector& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Vector& operator*=(const Scalar& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Scalar& s, Vector v) { return v *= s; }
  friend Vector operator*(Vector v, const Scalar& s) { return v *= s; }
  Vector operator-() const {
    Vector r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.spec_ == b.spec_ && a.coords_ == b.coords_;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ", ";
      s += coords_[i].to_string();
    }
    return s + ")";
  }

 private:
  void check_compatible(const Vector& o) const {
    if (!(spec_ == o.spec_)) raise(ErrorCategory::FieldMismatch, "vectors over different fields");
    if (size() != o.size()) raise(ErrorCategory::DimensionMismatch, "vector lengths differ");
  }

  FieldSpec spec_;
  std::vector<Scalar> coords_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldSpec& spec, std::size_t rows, std::size_t cols)
      : spec_(spec), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(spec)) {}

  static Matrix identity(const FieldSpec& spec, std::size_t n) {
    Matrix m(spec, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(spec);
    return m;
  }

  /// Every row must have length `cols`; an empty row list needs `cols` explicitly.
  static Matrix from_rows(const FieldSpec& spec, std::span<const Vector> rows, std::size_t cols) {
    Matrix m(spec, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) raise(ErrorCategory::DimensionMismatch, "ragged matrix rows");
      if (!(rows[i].spec() == spec)) raise(ErrorCategory::FieldMismatch, "matrix row outside " + spec.tag());
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_ints(const FieldSpec& spec, std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<Vector> vs;
    for (auto r : rows) vs.push_back(Vector::from_ints(spec, r));
    return from_rows(spec, vs, vs.empty() ? 0 : vs.front().size());
  }

  const FieldSpec& spec() const { return spec_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    return Vector(spec_, std::vector<Scalar>(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                             entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
  }

  std::vector<Vector> row_vectors() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Matrix transpose() const {
    Matrix t(spec_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) raise(ErrorCategory::DimensionMismatch, "matrix product shape mismatch");
    Matrix c(a.spec_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  /// Row vector times matrix.
  friend Vector operator*(const Vector& x, const Matrix& m) {
    if (x.size() != m.rows_) raise(ErrorCategory::DimensionMismatch, "vector-matrix shape mismatch");
    Vector out(m.spec_, m.cols_);
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < m.cols_; ++j) out[j] += x[i] * m(i, j);
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.spec_ == b.spec_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  FieldSpec spec_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

inline Scalar determinant(const Matrix& a) {
  if (!a.is_square()) raise(ErrorCategory::NonSquare, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix m = a;
  Scalar det = Scalar::one(a.spec());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Scalar::zero(a.spec());
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    const Scalar p = m(col, col);
    det *= p;
    const Scalar p_inv = p.inv();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      const Scalar f = m(r, col) * p_inv;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

namespace detail {

// In-place reduced row echelon form; returns pivot columns. Zero rows are
// moved to the bottom and counted out by the pivot list length.
inline std::vector<std::size_t> rref_in_place(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    const Scalar inv = m(r, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// A subspace stored by its reduced row echelon basis, so equality of
/// subspaces is equality of bases.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(const FieldSpec& spec, std::size_t n) { return Subspace(spec, n, {}, {}); }
  static Subspace full(const FieldSpec& spec, std::size_t n) {
    std::vector<Vector> basis;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < n; ++i) {
      basis.push_back(Vector::unit(spec, n, i));
      pivots.push_back(i);
    }
    return Subspace(spec, n, std::move(basis), std::move(pivots));
  }

  static Subspace span(const FieldSpec& spec, std::span<const Vector> vectors, std::size_t n) {
    Matrix m = Matrix::from_rows(spec, vectors, n);
    auto pivots = detail::rref_in_place(m);
    std::vector<Vector> basis;
    basis.reserve(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i) basis.push_back(m.row(i));
    return Subspace(spec, n, std::move(basis), std::move(pivots));
  }

  const FieldSpec& spec() const { return spec_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_; }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after eliminating the pivot columns.
  Vector reduce(const Vector& v) const {
    check_vector(v);
    Vector r = v;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const Scalar f = r[pivots_[k]];
      if (!f.is_zero()) r -= f * basis_[k];
    }
    return r;
  }

  bool contains(const Vector& v) const { return reduce(v).is_zero(); }

  bool contains(const Subspace& w) const {
    check_subspace(w);
    for (const auto& b : w.basis_) {
      if (!contains(b)) return false;
    }
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.spec_ == b.spec_ && a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  void check_subspace(const Subspace& w) const {
    if (!(spec_ == w.spec_)) raise(ErrorCategory::FieldMismatch, "subspaces over different fields");
    if (ambient_ != w.ambient_) raise(ErrorCategory::DimensionMismatch, "subspaces in different ambient spaces");
  }

 private:
  Subspace(const FieldSpec& spec, std::size_t n, std::vector<Vector> basis, std::vector<std::size_t> pivots)
      : spec_(spec), ambient_(n), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  void check_vector(const Vector& v) const {
    if (!(spec_ == v.spec())) raise(ErrorCategory::FieldMismatch, "vector outside the subspace field");
    if (v.size() != ambient_) raise(ErrorCategory::DimensionMismatch, "vector length differs from ambient dimension");
  }

  FieldSpec spec_;
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace span(const FieldSpec& spec, std::span<const Vector> vectors, std::size_t n) {
  return Subspace::span(spec, vectors, n);
}

inline Subspace operator+(const Subspace& u, const Subspace& w) {
  u.check_subspace(w);
  std::vector<Vector> all = u.basis();
  all.insert(all.end(), w.basis().begin(), w.basis().end());
  return Subspace::span(u.spec(), all, u.ambient_dim());
}

/// {x : x * m = 0}.
inline Subspace left_kernel(const Matrix& m) {
  // x * m = 0  <=>  m^T x^T = 0: read the null space off the RREF of m^T.
  Matrix t = m.transpose();
  const std::size_t n = m.rows();
  auto pivots = detail::rref_in_place(t);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.spec(), n);
    v[free] = Scalar::one(m.spec());
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -t(k, free);
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.spec(), basis, n);
}

inline Subspace intersection(const Subspace& u, const Subspace& w) {
  u.check_subspace(w);
  if (u.is_zero() || w.is_zero()) return Subspace::zero(u.spec(), u.ambient_dim());
  // (a, b) with a*U + b*W = 0 gives a*U in both.
  std::vector<Vector> stacked = u.basis();
  stacked.insert(stacked.end(), w.basis().begin(), w.basis().end());
  const Matrix m = Matrix::from_rows(u.spec(), stacked, u.ambient_dim());
  const Subspace k = left_kernel(m);
  const Matrix ub = Matrix::from_rows(u.spec(), u.basis(), u.ambient_dim());
  std::vector<Vector> common;
  for (const auto& coeffs : k.basis()) {
    Vector a(u.spec(), std::vector<Scalar>(coeffs.coords().begin(),
                                           coeffs.coords().begin() + static_cast<std::ptrdiff_t>(u.dim())));
    common.push_back(a * ub);
  }
  return Subspace::span(u.spec(), common, u.ambient_dim());
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) raise(ErrorCategory::NonSquare, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  Matrix aug(a.spec(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Scalar::one(a.spec());
  }
  auto pivots = detail::rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(a.spec(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  }
  return inv;
}

}  // namespace evoline
