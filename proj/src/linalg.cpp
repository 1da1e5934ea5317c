#include "cliffcorr/linalg.hpp"

#include <algorithm>

namespace cliffcorr {

namespace {

constexpr std::size_t kMaxAmbient = 4096;

void check_same_field(std::uint64_t a, std::uint64_t b) {
  if (a != b) throw InvalidInput("mixed characteristics in linear algebra operation");
}

}  // namespace

Vec::Vec(std::uint64_t p, std::size_t n) : p_(p), v_(n, 0) { require_odd_prime(p); }

Vec Vec::from_ints(std::uint64_t p, std::initializer_list<std::uint64_t> vals) {
  return from_ints(p, std::vector<std::uint64_t>(vals));
}

Vec Vec::from_ints(std::uint64_t p, const std::vector<std::uint64_t>& vals) {
  Vec v(p, vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v.v_[i] = static_cast<std::uint32_t>(vals[i] % p);
  return v;
}

Vec Vec::unit(std::uint64_t p, std::size_t n, std::size_t i) {
  Vec v(p, n);
  v.set(i, Fp::one(p));
  return v;
}

Fp Vec::at(std::size_t i) const {
  if (i >= v_.size()) throw InvalidInput("vector index out of range");
  return Fp(v_[i], p_);
}

void Vec::set(std::size_t i, Fp x) {
  if (i >= v_.size()) throw InvalidInput("vector index out of range");
  check_same_field(p_, x.modulus());
  v_[i] = static_cast<std::uint32_t>(x.value());
}

bool Vec::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](std::uint32_t x) { return x == 0; });
}

Vec Vec::operator+(const Vec& o) const {
  check_same_field(p_, o.p_);
  if (size() != o.size()) throw InvalidInput("vector size mismatch");
  Vec r(p_, size());
  for (std::size_t i = 0; i < size(); ++i) {
    std::uint64_t s = std::uint64_t{v_[i]} + o.v_[i];
    r.v_[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

Vec Vec::operator-(const Vec& o) const {
  check_same_field(p_, o.p_);
  if (size() != o.size()) throw InvalidInput("vector size mismatch");
  Vec r(p_, size());
  for (std::size_t i = 0; i < size(); ++i) {
    std::uint64_t s = std::uint64_t{v_[i]} + p_ - o.v_[i];
    r.v_[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

Vec Vec::scale(Fp c) const {
  check_same_field(p_, c.modulus());
  Vec r(p_, size());
  for (std::size_t i = 0; i < size(); ++i) r.v_[i] = static_cast<std::uint32_t>(v_[i] * c.value() % p_);
  return r;
}

Matrix::Matrix(std::uint64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  require_odd_prime(p);
}

Matrix Matrix::identity(std::uint64_t p, std::size_t n) {
  Matrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(std::uint64_t p, const std::vector<Vec>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(p, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check_same_field(p, rows[i].modulus());
    if (rows[i].size() != cols) throw InvalidInput("ragged rows in matrix construction");
    for (std::size_t j = 0; j < cols; ++j) m.a_[i * cols + j] = rows[i].v_[j];
  }
  return m;
}

Matrix Matrix::from_ints(std::uint64_t p, std::size_t rows, std::size_t cols,
                         std::initializer_list<std::uint64_t> vals) {
  if (vals.size() != rows * cols) throw InvalidInput("matrix literal has wrong size");
  Matrix m(p, rows, cols);
  std::size_t k = 0;
  for (std::uint64_t v : vals) m.a_[k++] = static_cast<std::uint32_t>(v % p);
  return m;
}

Fp Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw InvalidInput("matrix index out of range");
  return Fp(raw(i, j), p_);
}

void Matrix::set(std::size_t i, std::size_t j, Fp x) {
  if (i >= rows_ || j >= cols_) throw InvalidInput("matrix index out of range");
  check_same_field(p_, x.modulus());
  a_[i * cols_ + j] = static_cast<std::uint32_t>(x.value());
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_same_field(p_, o.p_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch in addition");
  Matrix r(p_, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) {
    std::uint64_t s = std::uint64_t{a_[k]} + o.a_[k];
    r.a_[k] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_same_field(p_, o.p_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch in subtraction");
  Matrix r(p_, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) {
    std::uint64_t s = std::uint64_t{a_[k]} + p_ - o.a_[k];
    r.a_[k] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_same_field(p_, o.p_);
  if (cols_ != o.rows_) throw InvalidInput("matrix shape mismatch in product");
  Matrix r(p_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t aik = raw(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        std::uint64_t s = r.a_[i * o.cols_ + j] + aik * o.raw(k, j) % p_;
        r.a_[i * o.cols_ + j] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
      }
    }
  }
  return r;
}

Matrix Matrix::scale(Fp c) const {
  check_same_field(p_, c.modulus());
  Matrix r(p_, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = static_cast<std::uint32_t>(a_[k] * c.value() % p_);
  return r;
}

Vec Matrix::operator*(const Vec& column) const {
  check_same_field(p_, column.modulus());
  if (column.size() != cols_) throw InvalidInput("matrix/vector shape mismatch");
  Vec r(p_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = (acc + raw(i, j) * column.v_[j]) % p_;
    r.v_[i] = static_cast<std::uint32_t>(acc);
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(p_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r.a_[j * rows_ + i] = raw(i, j);
  }
  return r;
}

Vec Matrix::row(std::size_t i) const {
  if (i >= rows_) throw InvalidInput("row index out of range");
  Vec r(p_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) r.v_[j] = a_[i * cols_ + j];
  return r;
}

Vec Matrix::col(std::size_t j) const {
  if (j >= cols_) throw InvalidInput("column index out of range");
  Vec r(p_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) r.v_[i] = a_[i * cols_ + j];
  return r;
}

void Matrix::set_row(std::size_t i, const Vec& r) {
  if (i >= rows_ || r.size() != cols_) throw InvalidInput("row assignment shape mismatch");
  check_same_field(p_, r.modulus());
  for (std::size_t j = 0; j < cols_; ++j) a_[i * cols_ + j] = r.v_[j];
}

Matrix Matrix::vstack(const Matrix& other) const {
  check_same_field(p_, other.p_);
  if (cols_ != other.cols_) throw InvalidInput("vstack column mismatch");
  Matrix r(p_, rows_ + other.rows_, cols_);
  std::copy(a_.begin(), a_.end(), r.a_.begin());
  std::copy(other.a_.begin(), other.a_.end(), r.a_.begin() + static_cast<std::ptrdiff_t>(a_.size()));
  return r;
}

Matrix Matrix::hstack(const Matrix& other) const {
  check_same_field(p_, other.p_);
  if (rows_ != other.rows_) throw InvalidInput("hstack row mismatch");
  Matrix r(p_, rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r.a_[i * r.cols_ + j] = raw(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) r.a_[i * r.cols_ + cols_ + j] = other.raw(i, j);
  }
  return r;
}

Matrix Matrix::kron(const Matrix& o) const {
  check_same_field(p_, o.p_);
  Matrix r(p_, rows_ * o.rows_, cols_ * o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      std::uint64_t aij = raw(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < o.rows_; ++k) {
        for (std::size_t l = 0; l < o.cols_; ++l) {
          r.a_[(i * o.rows_ + k) * r.cols_ + (j * o.cols_ + l)] =
              static_cast<std::uint32_t>(aij * o.raw(k, l) % p_);
        }
      }
    }
  }
  return r;
}

Vec Matrix::flatten() const {
  Vec r(p_, a_.size());
  for (std::size_t k = 0; k < a_.size(); ++k) r.v_[k] = a_[k];
  return r;
}

Matrix Matrix::unflatten(const Vec& flat, std::size_t rows, std::size_t cols) {
  if (flat.size() != rows * cols) throw InvalidInput("unflatten size mismatch");
  Matrix m(flat.modulus(), rows, cols);
  for (std::size_t k = 0; k < rows * cols; ++k) m.a_[k] = flat.v_[k];
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::uint32_t x) { return x == 0; });
}

std::size_t Matrix::rank() const { return rref(*this).rank(); }

bool Matrix::operator==(const Matrix& o) const {
  return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

RrefResult rref(const Matrix& m) {
  Matrix r = m;
  const std::uint64_t p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < r.cols_ && lead < r.rows_; ++col) {
    std::size_t sel = lead;
    while (sel < r.rows_ && r.raw(sel, col) == 0) ++sel;
    if (sel == r.rows_) continue;
    if (sel != lead) {
      for (std::size_t j = 0; j < r.cols_; ++j) std::swap(r.a_[sel * r.cols_ + j], r.a_[lead * r.cols_ + j]);
    }
    std::uint64_t inv = Fp(r.raw(lead, col), p).inv().value();
    for (std::size_t j = col; j < r.cols_; ++j) {
      r.a_[lead * r.cols_ + j] = static_cast<std::uint32_t>(r.raw(lead, j) * inv % p);
    }
    for (std::size_t i = 0; i < r.rows_; ++i) {
      if (i == lead) continue;
      std::uint64_t f = r.raw(i, col);
      if (f == 0) continue;
      for (std::size_t j = col; j < r.cols_; ++j) {
        std::uint64_t s = r.raw(i, j) + (p - f) * r.raw(lead, j) % p;
        r.a_[i * r.cols_ + j] = static_cast<std::uint32_t>(s >= p ? s - p : s);
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(r), std::move(pivots)};
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& rhs) {
  check_same_field(a.modulus(), rhs.modulus());
  if (a.rows() != rhs.rows()) throw InvalidInput("solve: row mismatch between matrix and right-hand side");
  RrefResult r = rref(a.hstack(rhs));
  for (std::size_t k = 0; k < r.pivots.size(); ++k) {
    if (r.pivots[k] >= a.cols()) return std::nullopt;  // pivot in the rhs part: inconsistent
  }
  Matrix x(a.modulus(), a.cols(), rhs.cols());
  for (std::size_t k = 0; k < r.pivots.size(); ++k) {
    for (std::size_t j = 0; j < rhs.cols(); ++j) x.set(r.pivots[k], j, r.mat.at(k, a.cols() + j));
  }
  return x;
}

std::optional<Vec> solve_vec(const Matrix& a, const Vec& b) {
  Matrix rhs(a.modulus(), b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs.set(i, 0, b.at(i));
  std::optional<Matrix> x = solve(a, rhs);
  if (!x) return std::nullopt;
  return x->col(0);
}

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() > kMaxAmbient) {
    throw HypothesisFailure("ambient dimension " + std::to_string(basis_.cols()) +
                            " exceeds the supported bound " + std::to_string(kMaxAmbient));
  }
  pivots_ = rref(basis_).pivots;  // basis_ is already reduced; this only records pivots
}

Subspace Subspace::from_rows(const Matrix& rows) {
  RrefResult r = rref(rows);
  Matrix basis(rows.modulus(), r.rank(), rows.cols());
  for (std::size_t i = 0; i < r.rank(); ++i) basis.set_row(i, r.mat.row(i));
  return Subspace(std::move(basis));
}

Subspace Subspace::from_rows(std::uint64_t p, const std::vector<Vec>& rows) {
  return from_rows(Matrix::from_rows(p, rows));
}

Subspace Subspace::zero(std::uint64_t p, std::size_t ambient) {
  return Subspace(Matrix(p, 0, ambient));
}

Subspace Subspace::full(std::uint64_t p, std::size_t ambient) {
  return Subspace(Matrix::identity(p, ambient));
}

Vec Subspace::reduce(Vec v) const {
  check_same_field(modulus(), v.modulus());
  if (v.size() != ambient()) throw InvalidInput("vector/ambient size mismatch");
  for (std::size_t r = 0; r < dim(); ++r) {
    Fp c = v.at(pivots_[r]);
    if (!c.is_zero()) v = v - basis_.row(r).scale(c);
  }
  return v;
}

bool Subspace::contains(const Vec& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient() != ambient()) throw InvalidInput("subspace ambient mismatch");
  for (std::size_t r = 0; r < other.dim(); ++r) {
    if (!contains(other.basis_.row(r))) return false;
  }
  return true;
}

std::optional<Vec> Subspace::coordinates_of(const Vec& v) const {
  Vec coords(modulus(), dim());
  Vec rest = v;
  for (std::size_t r = 0; r < dim(); ++r) {
    Fp c = rest.at(pivots_[r]);
    coords.set(r, c);
    if (!c.is_zero()) rest = rest - basis_.row(r).scale(c);
  }
  if (!rest.is_zero()) return std::nullopt;
  return coords;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient() != ambient()) throw InvalidInput("subspace ambient mismatch");
  return from_rows(basis_.vstack(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient() != ambient()) throw InvalidInput("subspace ambient mismatch");
  if (dim() == 0 || other.dim() == 0) return zero(modulus(), ambient());
  // x in both spans iff x = a*U = b*W; solve U^T a - W^T b = 0.
  Matrix neg = other.basis_.transpose().scale(-Fp::one(modulus()));
  Subspace ns = nullspace(basis_.transpose().hstack(neg));
  std::vector<Vec> rows;
  rows.reserve(ns.dim());
  for (std::size_t r = 0; r < ns.dim(); ++r) {
    Vec ab = ns.basis().row(r);
    Vec x(modulus(), ambient());
    for (std::size_t i = 0; i < dim(); ++i) x = x + basis_.row(i).scale(ab.at(i));
    rows.push_back(x);
  }
  if (rows.empty()) return zero(modulus(), ambient());
  return from_rows(modulus(), rows);
}

Subspace nullspace(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> kernel;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec x(m.modulus(), m.cols());
    x.set(f, Fp::one(m.modulus()));
    for (std::size_t k = 0; k < r.pivots.size(); ++k) x.set(r.pivots[k], -r.mat.at(k, f));
    kernel.push_back(x);
  }
  if (kernel.empty()) return Subspace::zero(m.modulus(), m.cols());
  return Subspace::from_rows(m.modulus(), kernel);
}

Subspace row_space(const Matrix& m) { return Subspace::from_rows(m); }

Subspace column_space(const Matrix& m) { return Subspace::from_rows(m.transpose()); }

}  // namespace cliffcorr
