#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "cliffcorr/gf.hpp"

namespace cliffcorr {

/// Coefficient vector over GF(p).  Used both for algebra elements (coordinates
/// over a fixed basis) and for module elements (column vectors).
class Vec {
 public:
  Vec(std::uint64_t p, std::size_t n);
  static Vec from_ints(std::uint64_t p, std::initializer_list<std::uint64_t> vals);
  static Vec from_ints(std::uint64_t p, const std::vector<std::uint64_t>& vals);
  static Vec unit(std::uint64_t p, std::size_t n, std::size_t i);

  std::size_t size() const { return v_.size(); }
  std::uint64_t modulus() const { return p_; }
  Fp at(std::size_t i) const;
  void set(std::size_t i, Fp x);
  bool is_zero() const;

  Vec operator+(const Vec& o) const;
  Vec operator-(const Vec& o) const;
  Vec scale(Fp c) const;
  bool operator==(const Vec& o) const { return p_ == o.p_ && v_ == o.v_; }
  bool operator!=(const Vec& o) const { return !(*this == o); }

 private:
  friend class Matrix;
  std::uint64_t p_;
  std::vector<std::uint32_t> v_;
};

class Matrix;
struct RrefResult;
RrefResult rref(const Matrix& m);

/// Dense matrix over GF(p), row-major.  Vectors act as columns: a linear map
/// is applied as matrix * vector.
class Matrix {
 public:
  Matrix(std::uint64_t p, std::size_t rows, std::size_t cols);
  static Matrix identity(std::uint64_t p, std::size_t n);
  static Matrix from_rows(std::uint64_t p, const std::vector<Vec>& rows);
  static Matrix from_ints(std::uint64_t p, std::size_t rows, std::size_t cols,
                          std::initializer_list<std::uint64_t> vals);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t modulus() const { return p_; }

  Fp at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Fp x);

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scale(Fp c) const;
  Vec operator*(const Vec& column) const;
  Matrix transpose() const;

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  void set_row(std::size_t i, const Vec& r);

  /// Stacks this above other (same cols) / left of other (same rows).
  Matrix vstack(const Matrix& other) const;
  Matrix hstack(const Matrix& other) const;

  /// Kronecker product: entry ((i*o.rows+k), (j*o.cols+l)) = a[i][j]*o[k][l].
  Matrix kron(const Matrix& o) const;

  /// Row-major flattening to a vector of length rows*cols.
  Vec flatten() const;
  static Matrix unflatten(const Vec& flat, std::size_t rows, std::size_t cols);

  bool is_zero() const;
  std::size_t rank() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  std::uint64_t p_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> a_;
  std::uint64_t raw(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  friend struct RrefResult;
  friend RrefResult rref(const Matrix& m);
};

/// Reduced row echelon form: leading ones, zeros above and below each pivot,
/// zero rows at the bottom.  Deterministic, hence canonical.
struct RrefResult {
  Matrix mat;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, ascending
  std::size_t rank() const { return pivots.size(); }
};
RrefResult rref(const Matrix& m);

/// One solution X of A*X = rhs (free variables set to zero), or nullopt if the
/// system is inconsistent.  rhs columns are independent right-hand sides.
std::optional<Matrix> solve(const Matrix& a, const Matrix& rhs);
std::optional<Vec> solve_vec(const Matrix& a, const Vec& b);

/// Subspace of GF(p)^ambient represented by its unique RREF basis, stored as
/// rows.  Equality of subspaces is therefore bitwise equality of bases.
class Subspace {
 public:
  static Subspace from_rows(const Matrix& rows);
  static Subspace from_rows(std::uint64_t p, const std::vector<Vec>& rows);
  static Subspace zero(std::uint64_t p, std::size_t ambient);
  static Subspace full(std::uint64_t p, std::size_t ambient);

  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::uint64_t modulus() const { return basis_.modulus(); }
  const Matrix& basis() const { return basis_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Residual of v after eliminating all basis components.
  Vec reduce(Vec v) const;
  /// Coordinates x with x * basis = v, if v lies in the subspace.
  std::optional<Vec> coordinates_of(const Vec& v) const;

  Subspace sum(const Subspace& other) const;
  /// Intersection via the nullspace of the stacked constraint system.
  Subspace intersect(const Subspace& other) const;

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  explicit Subspace(Matrix basis);
  std::vector<std::size_t> pivots_;
  Matrix basis_;
};

/// Right nullspace {x : m*x = 0}, returned with kernel vectors as rows.
Subspace nullspace(const Matrix& m);

/// Row space of an arbitrary matrix.
Subspace row_space(const Matrix& m);

/// Column space, i.e. the row space of the transpose.
Subspace column_space(const Matrix& m);

}  // namespace cliffcorr
