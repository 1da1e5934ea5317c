#pragma once

#include <cstdint>
#include <vector>

#include "cliffcorr/linalg.hpp"

namespace cliffcorr {

/// Finite group given by its multiplication table.  Element 0 is the identity
/// for tables built by the named constructors; from_table finds the identity.
class CayleyTable {
 public:
  /// Z/n with mul(i, j) = i + j mod n.
  static CayleyTable cyclic(std::size_t n);

  /// Validates the group axioms: closure, identity, inverses, associativity.
  static CayleyTable from_table(std::vector<std::vector<std::size_t>> table);

  /// Closure of permutation generators on {0..n_points-1} under composition,
  /// with mul(f, g) the map x -> f[g[x]].  Elements are indexed in BFS order
  /// from the identity, generators applied in the order given, so the
  /// numbering is deterministic.
  static CayleyTable from_permutations(std::size_t n_points,
                                       const std::vector<std::vector<std::size_t>>& generators);

  /// Index (g, h) -> g * other.order() + h, componentwise product.
  CayleyTable direct_product(const CayleyTable& other) const;

  std::size_t order() const { return table_.size(); }
  std::size_t mul(std::size_t g, std::size_t h) const { return table_[g][h]; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t g) const;

  /// For tables built by from_permutations: the permutation of each element,
  /// in index order.  Empty otherwise.
  const std::vector<std::vector<std::size_t>>& permutations() const { return perms_; }

 private:
  CayleyTable() = default;
  void validate(bool check_associativity) const;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::vector<std::size_t>> perms_;
};

/// Associative unital algebra over GF(p) given by structure constants on a
/// fixed basis.  Construction always validates bilinearity data: the unit law
/// and full associativity (as commutation of left and right multiplication
/// operators), so an Algebra that exists is a genuine algebra.  Validation is
/// O(dim^5) scalar work, which is cheap at the intended scale (dim <= ~64).
class Algebra {
 public:
  /// products[i*dim + j] holds the coordinates of b_i * b_j.
  static Algebra from_structure_constants(std::uint64_t p, std::size_t dim,
                                          std::vector<Vec> products, Vec one);

  static Algebra group_algebra(std::uint64_t p, const CayleyTable& g);

  /// Basis u_g with u_g u_h = cocycle(g, h) u_{gh}.  Entries must be nonzero;
  /// the cocycle identity and normalization are enforced by the constructor's
  /// associativity and unit checks.
  static Algebra twisted_group_algebra(std::uint64_t p, const CayleyTable& g,
                                       const Matrix& cocycle);

  /// Basis a_i u_g indexed g*base.dim() + i, with (a u_g)(b u_h) =
  /// a theta_g(b) u_{gh} where theta_g is action[g] on base coordinates.
  /// The constructor checks imply the action is by automorphisms and is a
  /// homomorphism from the group.
  static Algebra skew_group_algebra(const Algebra& base, const CayleyTable& g,
                                    const std::vector<Matrix>& action);

  /// Full d x d matrix algebra, basis E_{ij} indexed i*d + j.
  static Algebra matrix_algebra(std::uint64_t p, std::size_t d);

  /// Block-diagonal sum; the unit is (1_a, 1_b).
  static Algebra direct_sum(const Algebra& a, const Algebra& b);

  std::size_t dim() const { return n_; }
  std::uint64_t modulus() const { return p_; }
  const Vec& one() const { return one_; }
  const Vec& structure(std::size_t i, std::size_t j) const { return c_[i * n_ + j]; }

  /// Matrix of y -> b_i * y in basis coordinates (columns convention).
  const Matrix& basis_left_mult(std::size_t i) const { return lmul_[i]; }
  /// Matrix of x -> x * b_j.
  const Matrix& basis_right_mult(std::size_t j) const { return rmul_[j]; }
  Matrix left_mult(const Vec& x) const;
  Matrix right_mult(const Vec& y) const;

  Vec mul(const Vec& x, const Vec& y) const;
  bool is_commutative() const;
  Algebra opposite() const;

  /// Structural equality: same modulus, dimension, structure constants, unit.
  bool operator==(const Algebra& o) const;
  bool operator!=(const Algebra& o) const { return !(*this == o); }

 private:
  Algebra(std::uint64_t p, std::size_t dim, std::vector<Vec> products, Vec one);
  void validate() const;
  std::uint64_t p_;
  std::size_t n_;
  std::vector<Vec> c_;
  Vec one_;
  std::vector<Matrix> lmul_, rmul_;
};

/// Unital subalgebra of an ambient algebra, spanned by explicitly chosen basis
/// rows.  The rows are kept exactly as given (not canonicalized), so the
/// induced local algebra's structure constants are reproducible: transporting
/// the same basis into a larger subalgebra yields a structurally equal local
/// algebra.  The ambient unit must lie in the span.
class Subalgebra {
 public:
  /// basis_rows must be independent and their span closed under
  /// multiplication and containing the ambient unit.
  static Subalgebra from_basis(const Algebra& ambient, const Matrix& basis_rows);

  /// Canonicalizes the rows (RREF of the span) first, then from_basis.
  static Subalgebra from_span(const Algebra& ambient, const Matrix& spanning_rows);

  const Algebra& ambient() const { return ambient_; }
  /// The induced algebra on the stored basis.
  const Algebra& algebra() const { return local_; }
  const Matrix& basis_rows() const { return rows_; }
  std::size_t dim() const { return rows_.rows(); }
  Subspace span() const;

  Vec to_ambient(const Vec& local) const;
  /// Coordinates in the stored basis; InvalidInput if the element is outside.
  Vec to_local(const Vec& ambient_elem) const;
  Matrix to_local_rows(const Matrix& ambient_rows) const;

  /// Re-expresses this subalgebra inside a larger one over the same ambient.
  /// The result's local algebra is structurally equal to this->algebra().
  Subalgebra transport(const Subalgebra& larger) const;

 private:
  Subalgebra(Algebra ambient, Matrix rows, Algebra local);
  Algebra ambient_;
  Matrix rows_;
  Algebra local_;
};

/// Smallest unital subalgebra containing the generators.
Subalgebra subalgebra_from_generators(const Algebra& ambient, const std::vector<Vec>& gens);

/// Span of all pairwise products u_i * w_j of basis elements.
Subspace product_space(const Algebra& a, const Subspace& u, const Subspace& w);

/// Center as a subspace: elements commuting with every basis element.
Subspace center_space(const Algebra& a);
Subalgebra center(const Algebra& a);

/// The primitive central idempotents, sorted by coefficient vector.  Splits
/// the unit by repeatedly separating eigenvalues of central elements; throws
/// HypothesisFailure when the center is not separable (repeated eigenvalue
/// structure) or an eigenvalue lives outside GF(p) ("not split").  The seed
/// only matters for root extraction over large fields.
std::vector<Vec> primitive_central_idempotents(const Algebra& a, std::uint64_t seed);

/// A primitive idempotent of a split semisimple algebra, found by randomized
/// search: draw x, split its minimal polynomial, test each spectral idempotent
/// f for dim f*A*f == 1.  Deterministic for a fixed seed; HypothesisFailure
/// once the draw budget is exhausted.
Vec primitive_idempotent(const Algebra& a, std::uint64_t seed);

}  // namespace cliffcorr
