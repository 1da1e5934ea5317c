#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cliffcorr/algebra.hpp"
#include "cliffcorr/linalg.hpp"
#include "cliffcorr/module.hpp"

namespace cliffcorr {

/// The induced module M = A (x)_B V: the quotient of A (x) V by the span of
/// all a*b (x) v - a (x) b*v, with A acting by left multiplication on the
/// first factor.  Carries the quotient data (projection from and section into
/// A (x) V), the embedding iota: V -> M, v -> 1 (x) v (injective and
/// B-equivariant, both verified), and both endomorphism algebras
/// E = End_A(M)^op and F = End_B(M|_B)^op together with E's copy inside F
/// (every A-intertwiner is a B-intertwiner; the inclusion is verified and the
/// induced local algebra on E's basis inside F is structurally equal to E).
struct InducedModule {
  Module m;
  Matrix iota;
  Matrix proj;
  Matrix sec;
  Subalgebra sub;
  Module v;
  EndoAlgebra e;
  EndoAlgebra f;
  Subalgebra e_in_f;
};

/// Builds the induced module.  V must be a module over b.algebra() and b must
/// sit inside a; for group-algebra pairs kH in kG the result has dimension
/// [G:H] * dim V.
InducedModule induce(const Algebra& a, const Subalgebra& b, const Module& v);

/// The annihilator of an absolutely simple module V over a certified split
/// semisimple B, in B's own coordinates.  J is the kernel of the
/// representation; p_idem = 1 - e_V where e_V is the unique block idempotent
/// acting as the identity on V.  Verified: p_idem is central, idempotent,
/// annihilates V, and generates J as p_idem * B.  p_primitive records whether
/// p_idem happens to be one of the primitive central idempotents itself
/// (it is the sum of all blocks away from V, so this holds only for
/// two-block B).
struct AnnihilatorData {
  Subspace j;
  Vec p_idem;
  bool p_primitive;
};
AnnihilatorData annihilator_and_p(const WedderburnCertificate& cert_b, const Module& v);

/// Sum of the images of all homomorphisms V -> N, over the common algebra of
/// V and N.  V must be absolutely simple (scalar endomorphisms).
Subspace v_socle(const Module& v, const Module& n);

/// Result of the stability test.  n is the multiplicity of V in the
/// restriction of the induced module; when stable it equals dim M / dim V.
struct StabilityResult {
  bool stable;
  std::size_t n;
};

/// V is stable when the restriction of A (x)_B V back to B is V-isotypic,
/// tested as: the V-socle of the restriction is the whole space.
StabilityResult is_stable(const Algebra& a, const Subalgebra& b, const Module& v);

/// Whether A*J = J*A as subspaces of A.  J is given in ambient coordinates.
bool is_invariant(const Algebra& a, const Subspace& j);

/// B is a normal subring of A when I intersect B is A-invariant for every
/// two-sided ideal I of A.  A must be certified split semisimple, so the
/// ideals are exactly the 2^r sums of block components; r is capped at 12.
bool is_normal_subring(const Algebra& a, const WedderburnCertificate& cert,
                       const Subalgebra& b);

/// M (x)_E U for a right E-module structure on M (m.e = act(e)*m) and a left
/// E-module U: the quotient of M (x) U by all m.e (x) u - m (x) e.u, with A
/// acting on the first factor.
Module tensor_over_E(const InducedModule& im, const Module& u);

/// Hom_A(M, N) as a left E-module: e.f sends m to f(e(m)), i.e. the matrix of
/// e.f is act(f) * act(e).  Coordinates are taken in the canonical hom basis.
Module hom_as_E_module(const InducedModule& im, const Module& n);

/// Whether the evaluation map M (x)_E Hom_A(M,N) -> N, m (x) f -> f(m), is
/// bijective (N is static).  Built explicitly and tested by rank.
bool static_check_A(const InducedModule& im, const Module& n);

/// Whether the unit map U -> Hom_A(M, M (x)_E U), u -> (m -> m (x) u), is
/// bijective (U is static).  Built explicitly and tested by rank.
bool static_check_E(const InducedModule& im, const Module& u);

/// Verdict on a candidate stabilizer S with B <= S <= A.  The definition
/// side requires: S certified split semisimple, B normal in S, V S-stable,
/// and the V-socle of A (x)_B V equal to the image of S (x)_B V inside it.
/// The criterion side requires: J S-invariant and S + AJ + JA = A, for
/// J = ann_B V.  Whenever S is certified, the two sides are asserted to
/// agree; a disagreement is reported as a theorem-check failure.
struct StabilizerReport {
  Subalgebra s;
  bool s_semisimple = false;
  bool b_normal_in_s = false;
  bool v_s_stable = false;
  bool socle_match = false;
  bool j_s_invariant = false;
  bool decomposition = false;
  bool definition_ok() const {
    return s_semisimple && b_normal_in_s && v_s_stable && socle_match;
  }
  bool criterion_ok() const { return j_s_invariant && decomposition; }
};

StabilizerReport is_stabilizer(const Algebra& a, const Subalgebra& b, const Module& v,
                               const Subalgebra& s, std::uint64_t seed);

/// The two canonical stabilizer constructions from p = p_idem of ann_B V,
/// both verified: S_min = B + (1-p)A(1-p) and S_max = pAp + (1-p)A(1-p).
/// B <= S_min <= S_max is checked, and both reports must come back all-true.
std::pair<StabilizerReport, StabilizerReport> rieffel_stabilizers(
    const Algebra& a, const Subalgebra& b, const Module& v, std::uint64_t seed);

/// One entry of the through-S correspondence: a simple S-module containing V
/// on restriction to B, and its induction up to A (verified absolutely
/// simple, containing V, and pairwise distinct across the list).
struct InducedPair {
  Module s_simple;
  Module a_simple;
};
std::vector<InducedPair> induce_through_stabilizer(const Algebra& a, const Subalgebra& b,
                                                   const Module& v, const Subalgebra& s,
                                                   std::uint64_t seed);

/// One verified pair of the correspondence: a simple E-module, its image
/// M (x)_E U over A, and the round-trip confirmation
/// hom_as_E_module(M, image) isomorphic to U.
struct CorrespondencePair {
  Module e_simple;
  Module a_simple;
  bool round_trip;
};

/// Full record of the correspondence between simple E-modules and simple
/// A-modules containing V on restriction to B.  Every verification below is
/// enforced during construction; a report that exists has passed all of them.
struct CorrespondenceReport {
  bool hyp_a_semisimple;
  bool hyp_b_semisimple;
  bool hyp_b_normal;
  bool hyp_v_abs_simple;
  bool stable;
  std::size_t stable_multiplicity;
  std::size_t dim_e;
  std::vector<CorrespondencePair> pairs;
  bool oracle_complete;
  std::vector<std::string> warnings;
  InducedModule induced;
};

/// Builds and verifies the correspondence.  Hypotheses (A, B certified split
/// semisimple; B normal in A; V absolutely simple) raise HypothesisFailure
/// with "hypotheses violated"; any failed verification of a proved statement
/// raises TheoremCheckFailure.  Pairs are listed in the canonical block order
/// of E's certificate.
CorrespondenceReport correspond(const Algebra& a, const Subalgebra& b, const Module& v,
                                std::uint64_t seed);

/// Four independently computed dimensions that must agree for a stabilizer S:
/// dim End_A(V^A), dim Hom_B(V, V^A|_B), dim Hom_B(V, V^S|_B), dim End_S(V^S).
struct EndalgChain {
  std::size_t dim_end_a;
  std::size_t dim_hom_down_a;
  std::size_t dim_hom_down_s;
  std::size_t dim_end_s;
};
EndalgChain endalg_chain_check(const Algebra& a, const Subalgebra& b, const Module& v,
                               const Subalgebra& s, std::uint64_t seed);

/// Certification of F = End_B(M|_B)^op: F is split semisimple, E sits inside
/// it as a subalgebra, and the multiset of F's block dimensions equals the
/// multiset of positive multiplicities of B-simples in M|_B.  Since F is
/// semisimple every F-module is projective, which is recorded implicitly by
/// the certificate.
struct FAlgebraReport {
  WedderburnCertificate cert_f;
  bool e_embedded;
  std::vector<std::size_t> f_block_dims;
  std::vector<std::size_t> restriction_multiplicities;
};
FAlgebraReport f_algebra_check(const InducedModule& im, std::uint64_t seed);

/// F (x)_E U, computed by reusing the induction machinery with F as the
/// ambient algebra and E's verified copy inside F as the subalgebra.
Module restrict_to_F(const InducedModule& im, const Module& u);

/// A presentation (+)M -> M -> N -> 0 of a simple A-module N containing V:
/// pi(a (x) v) = a * emb(v) for a chosen embedding emb: V -> N, verified
/// surjective; head stacks one map M -> M per simple summand of ker(pi)
/// (a surjection onto the summand followed by its inclusion), and
/// column_space(head) = ker(pi) is verified.
struct Presentation {
  Matrix pi;
  Matrix head;
  std::size_t copies;
};
Presentation build_presentation(const InducedModule& im, const Module& n,
                                std::uint64_t seed);

}  // namespace cliffcorr
