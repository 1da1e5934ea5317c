#pragma once

#include <cstdint>
#include <vector>

#include "cliffcorr/algebra.hpp"
#include "cliffcorr/linalg.hpp"

namespace cliffcorr {

/// Left module over an algebra: one matrix per basis element, validated on
/// construction to respect the structure constants and send the unit to the
/// identity.  Elements are column vectors.
class Module {
 public:
  Module(Algebra a, std::vector<Matrix> action);

  const Algebra& algebra() const { return a_; }
  std::size_t dim() const { return dim_; }
  std::uint64_t modulus() const { return a_.modulus(); }
  const Matrix& action(std::size_t i) const { return rho_[i]; }
  const std::vector<Matrix>& actions() const { return rho_; }

  /// rho(x) for an arbitrary algebra element.
  Matrix act(const Vec& x) const;
  Vec apply(const Vec& x, const Vec& m) const;

  /// Same algebra (structurally) and the same action matrices.
  bool operator==(const Module& o) const;
  bool operator!=(const Module& o) const { return !(*this == o); }

 private:
  Algebra a_;
  std::vector<Matrix> rho_;
  std::size_t dim_;
};

/// The algebra acting on itself by left multiplication.
Module regular_module(const Algebra& a);

/// The same space viewed over a subalgebra, in the subalgebra's own basis.
Module restrict_module(const Module& m, const Subalgebra& b);

Module direct_sum(const Module& m, const Module& n);

bool is_invariant_subspace(const Module& m, const Subspace& s);

/// Module structure on an invariant subspace, in the coordinates of the
/// subspace's canonical basis.  InvalidInput if the subspace is not invariant.
Module submodule(const Module& m, const Subspace& s);

/// Quotient by an invariant subspace.  Quotient coordinates are the free
/// coordinates of the subspace's RREF basis; projection * section = identity
/// and the projection kills exactly the subspace.
struct QuotientModule {
  Module module;
  Matrix projection;
  Matrix section;
};
QuotientModule quotient_module(const Module& m, const Subspace& s);

/// Basis of the space of module homomorphisms M -> N, i.e. matrices H with
/// H rho_M(x) = rho_N(x) H for all x.  The basis is canonical (RREF of the
/// solution space), so repeated calls agree exactly.
std::vector<Matrix> hom_space(const Module& m, const Module& n);

/// End(M)^op on the canonical hom_space basis.  The product is reversed
/// composition: the matrix of e1 * e2 is act(e2) * act(e1); this makes M a
/// right module over the endomorphism algebra via m . e = act(e) * m.
struct EndoAlgebra {
  Algebra algebra;
  std::vector<Matrix> basis;
  Matrix act(const Vec& e) const;
};
EndoAlgebra endo_algebra_op(const Module& m);

/// dim Hom(simple, n); equals the multiplicity of the simple in n when n is
/// semisimple.  Requires End(simple) to be one-dimensional.
std::size_t multiplicity(const Module& simple, const Module& n);

/// True when End(M) is one-dimensional: M is nonzero and every endomorphism
/// is scalar.  Over a split semisimple algebra this picks out exactly the
/// simple modules.
bool is_abs_simple(const Module& m);

/// Isomorphy test for two simple modules over the same algebra: by Schur's
/// lemma they are isomorphic exactly when a nonzero homomorphism exists, and
/// then every nonzero homomorphism is invertible (checked, since a violation
/// would disprove simplicity of the inputs).
bool simple_modules_isomorphic(const Module& m, const Module& n);

/// A simple direct summand: the image of a primitive idempotent of End(m)^op.
/// The input must be semisimple for the result to be simple.
Module extract_simple(const Module& m, std::uint64_t seed);

/// One matrix block of a split semisimple algebra: the primitive central
/// idempotent, a simple module for it, and its multiplicity in the regular
/// module (equal to its dimension in the split case).
struct WedderburnBlock {
  Vec central_idempotent;
  Module simple;
  std::size_t multiplicity;
};

/// Certified decomposition of a split semisimple algebra.  Blocks are sorted
/// by central idempotent coefficients; the witnessing checks (scalar
/// endomorphisms, surjectivity onto each matrix block, component dimensions
/// d_i^2 summing to dim A) have all been rerun against this exact algebra.
struct WedderburnCertificate {
  Algebra algebra;
  std::vector<WedderburnBlock> blocks;
  std::vector<std::size_t> dims() const;
};

/// Decomposes and certifies, or throws HypothesisFailure naming the failed
/// hypothesis ("not split", "not semisimple", "center not separable").
WedderburnCertificate wedderburn(const Algebra& a, std::uint64_t seed);

}  // namespace cliffcorr
