#include <algorithm>
#include <cstdint>
#include <vector>

#include "cliffcorr/algebra.hpp"
#include "cliffcorr/clifford.hpp"
#include "cliffcorr/errors.hpp"
#include "cliffcorr/gf.hpp"
#include "cliffcorr/linalg.hpp"
#include "cliffcorr/module.hpp"
#include "doctest.h"

using namespace cliffcorr;

namespace {

// S3 on 3 points, BFS numbering 0=e, 1=(01), 2=(012), 3=(12), 4=(02), 5=(021).
CayleyTable s3_table() {
  return CayleyTable::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
}

Matrix unit_rows(std::uint64_t p, std::size_t n, const std::vector<std::size_t>& idx) {
  std::vector<Vec> rows;
  for (std::size_t i : idx) rows.push_back(Vec::unit(p, n, i));
  return Matrix::from_rows(p, rows);
}

// Span of the group elements at the given indices, in the given order, so the
// local basis of the subalgebra matches the index list one to one.
Subalgebra group_sub(const Algebra& ga, const std::vector<std::size_t>& elems) {
  return Subalgebra::from_basis(ga, unit_rows(ga.modulus(), ga.dim(), elems));
}

Subalgebra full_sub(const Algebra& a) {
  return Subalgebra::from_basis(a, Matrix::identity(a.modulus(), a.dim()));
}

// One-dimensional module with the i-th local basis element acting as vals[i].
Module character(const Algebra& local, const std::vector<std::uint64_t>& vals) {
  std::uint64_t p = local.modulus();
  std::vector<Matrix> act;
  for (std::uint64_t v : vals) {
    Matrix m(p, 1, 1);
    m.set(0, 0, Fp(v, p));
    act.push_back(m);
  }
  return Module(local, std::move(act));
}

struct S3Fixture {
  Algebra a;
  Subalgebra b;      // spanned by e, (012), (021)
  Module triv;
  Module omega;      // (012) acts as 2, a primitive cube root of 1 mod 7
  Module omega2;
  S3Fixture()
      : a(Algebra::group_algebra(7, s3_table())),
        b(group_sub(a, {0, 2, 5})),
        triv(character(b.algebra(), {1, 1, 1})),
        omega(character(b.algebra(), {1, 2, 4})),
        omega2(character(b.algebra(), {1, 4, 2})) {}
};

// D4 from r = (0123), s = (02)-style reflection; z = r^2 generates the center.
struct D4Fixture {
  CayleyTable t;
  Algebra a;
  std::size_t r_idx, z_idx;
  Subalgebra b;
  Module sign;   // z acts as -1
  D4Fixture()
      : t(CayleyTable::from_permutations(4, {{1, 2, 3, 0}, {0, 3, 2, 1}})),
        a(Algebra::group_algebra(7, t)),
        r_idx(find_perm({1, 2, 3, 0})),
        z_idx(t.mul(r_idx, r_idx)),
        b(group_sub(a, {0, z_idx})),
        sign(character(b.algebra(), {1, 6})) {}
  std::size_t find_perm(const std::vector<std::size_t>& perm) const {
    for (std::size_t g = 0; g < t.order(); ++g)
      if (t.permutations()[g] == perm) return g;
    throw std::logic_error("generator not found");
  }
};

// Q8 via its left-regular permutation action on {1,-1,i,-i,j,-j,k,-k}.
struct Q8Fixture {
  CayleyTable t;
  Algebra a;
  std::size_t i_idx;
  std::vector<std::size_t> i_chain;  // e, i, i^2, i^3
  Subalgebra b;
  Module chi2;   // i acts as 2 (a square root of -1 mod 5)
  Module chi4;   // i acts as 4 = -1
  Module chi1;
  Q8Fixture()
      : t(CayleyTable::from_permutations(
            8, {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}})),
        a(Algebra::group_algebra(5, t)),
        i_idx(find_perm({2, 3, 1, 0, 6, 7, 5, 4})),
        i_chain({0, i_idx, t.mul(i_idx, i_idx), t.mul(t.mul(i_idx, i_idx), i_idx)}),
        b(group_sub(a, i_chain)),
        chi2(character(b.algebra(), {1, 2, 4, 3})),
        chi4(character(b.algebra(), {1, 4, 1, 4})),
        chi1(character(b.algebra(), {1, 1, 1, 1})) {}
  std::size_t find_perm(const std::vector<std::size_t>& perm) const {
    for (std::size_t g = 0; g < t.order(); ++g)
      if (t.permutations()[g] == perm) return g;
    throw std::logic_error("generator not found");
  }
};

const Module& block_of_dim(const WedderburnCertificate& cert, std::size_t d) {
  for (const auto& block : cert.blocks)
    if (block.simple.dim() == d) return block.simple;
  throw std::logic_error("no block of that dimension");
}

Subspace ambient_span(const Subalgebra& b, const Subspace& local) {
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < local.dim(); ++r)
    rows.push_back(b.to_ambient(local.basis().row(r)));
  if (rows.empty()) return Subspace::zero(b.ambient().modulus(), b.ambient().dim());
  return Subspace::from_rows(b.ambient().modulus(), rows);
}

}  // namespace

TEST_SUITE("clifford") {

TEST_CASE("induction dimensions, iota, and the two endomorphism algebras") {
  S3Fixture fx;

  InducedModule up_triv = induce(fx.a, fx.b, fx.triv);
  CHECK(up_triv.m.dim() == 2);          // index [S3 : A3]
  CHECK(up_triv.iota.rank() == 1);
  CHECK(up_triv.e.algebra.dim() == 2);  // M = trivial + sign
  CHECK(up_triv.f.algebra.dim() == 4);  // restriction is trivial^2

  InducedModule up_omega = induce(fx.a, fx.b, fx.omega);
  CHECK(up_omega.m.dim() == 2);
  CHECK(up_omega.e.algebra.dim() == 1);
  CHECK(up_omega.f.algebra.dim() == 2);  // restriction is omega + omega^2

  // B = A: the induced module is V itself and iota is bijective.
  Subalgebra full = full_sub(fx.a);
  WedderburnCertificate cert_a = wedderburn(fx.a, 0);
  const Module& two_dim = block_of_dim(cert_a, 2);
  InducedModule self = induce(fx.a, full, two_dim);
  CHECK(self.m.dim() == 2);
  CHECK(self.iota.rank() == 2);
  CHECK(self.e.algebra.dim() == 1);
  CHECK(self.f.algebra.dim() == self.e.algebra.dim());

  // V must be a module over the subalgebra's own local algebra.
  CHECK_THROWS_AS(induce(fx.a, fx.b, character(fx.a, {1, 1, 1, 1, 1, 1})), InvalidInput);
}

TEST_CASE("v_socle on characters and restrictions") {
  S3Fixture fx;
  CHECK(v_socle(fx.omega, fx.omega).dim() == 1);

  Algebra kc2 = Algebra::group_algebra(7, CayleyTable::cyclic(2));
  Module c2_triv = character(kc2, {1, 1});
  Module c2_sign = character(kc2, {1, 6});
  CHECK(v_socle(c2_triv, c2_sign).dim() == 0);
  CHECK(v_socle(c2_triv, regular_module(kc2)).dim() == 1);

  // (omega induced to S3) restricted to A3 is omega + omega^2: one copy each.
  InducedModule up = induce(fx.a, fx.b, fx.omega);
  Module down = restrict_module(up.m, fx.b);
  CHECK(v_socle(fx.omega, down).dim() == 1);
  CHECK(v_socle(fx.omega2, down).dim() == 1);
  CHECK(v_socle(fx.triv, down).dim() == 0);

  CHECK_THROWS_WITH_AS(v_socle(direct_sum(fx.triv, fx.triv), fx.triv),
                       "V not absolutely simple", HypothesisFailure);
}

TEST_CASE("stability of characters under induction") {
  S3Fixture fx;
  StabilityResult st = is_stable(fx.a, fx.b, fx.triv);
  CHECK(st.stable);
  CHECK(st.n == 2);

  StabilityResult sw = is_stable(fx.a, fx.b, fx.omega);
  CHECK_FALSE(sw.stable);
  CHECK(sw.n == 1);  // the socle holds a single copy of omega

  D4Fixture d4;
  StabilityResult sd = is_stable(d4.a, d4.b, d4.sign);
  CHECK(sd.stable);
  CHECK(sd.n == 4);

  Q8Fixture q8;
  CHECK_FALSE(is_stable(q8.a, q8.b, q8.chi2).stable);
  CHECK(is_stable(q8.a, q8.b, q8.chi4).stable);
  CHECK(is_stable(q8.a, q8.b, q8.chi4).n == 2);
}

TEST_CASE("annihilator data and the idempotent 1 - e_V") {
  // kC2, V = sign: e_V = (4,3) so p = (4,4), the averaging idempotent e+.
  Algebra kc2 = Algebra::group_algebra(7, CayleyTable::cyclic(2));
  Module sign = character(kc2, {1, 6});
  WedderburnCertificate cert = wedderburn(kc2, 0);
  AnnihilatorData ann = annihilator_and_p(cert, sign);
  CHECK(ann.p_idem == Vec::from_ints(7, {4, 4}));
  CHECK(ann.j.dim() == 1);
  CHECK(ann.j.contains(Vec::from_ints(7, {1, 1})));
  CHECK(ann.p_primitive);  // two blocks, so the complement is a single block

  // One-block B: the representation is faithful and p = 0.
  Algebra k = Algebra::matrix_algebra(7, 1);
  WedderburnCertificate cert_k = wedderburn(k, 0);
  AnnihilatorData ann_k = annihilator_and_p(cert_k, character(k, {1}));
  CHECK(ann_k.j.dim() == 0);
  CHECK(ann_k.p_idem == Vec(7, 1));
  CHECK_FALSE(ann_k.p_primitive);

  // kA3, V = omega: p is the sum of the trivial and omega^2 block idempotents.
  S3Fixture fx;
  WedderburnCertificate cert_b = wedderburn(fx.b.algebra(), 0);
  AnnihilatorData ann_w = annihilator_and_p(cert_b, fx.omega);
  CHECK(ann_w.j.dim() == 2);
  CHECK(ann_w.p_idem == Vec::from_ints(7, {3, 1, 4}));
  CHECK_FALSE(ann_w.p_primitive);

  CHECK_THROWS_AS(annihilator_and_p(cert, fx.omega), InvalidInput);
}

TEST_CASE("ideal invariance matches stability on the normal pair") {
  S3Fixture fx;
  CHECK(is_invariant(fx.a, Subspace::zero(7, 6)));
  CHECK(is_invariant(fx.a, fx.b.span()));

  WedderburnCertificate cert_b = wedderburn(fx.b.algebra(), 0);
  Subspace j_omega = ambient_span(fx.b, annihilator_and_p(cert_b, fx.omega).j);
  Subspace j_triv = ambient_span(fx.b, annihilator_and_p(cert_b, fx.triv).j);
  CHECK_FALSE(is_invariant(fx.a, j_omega));
  CHECK(is_invariant(fx.a, j_triv));
  CHECK(is_invariant(fx.a, j_omega) == is_stable(fx.a, fx.b, fx.omega).stable);
  CHECK(is_invariant(fx.a, j_triv) == is_stable(fx.a, fx.b, fx.triv).stable);

  CHECK_THROWS_AS(is_invariant(fx.a, Subspace::zero(7, 5)), InvalidInput);
}

TEST_CASE("normal subrings via the full ideal lattice") {
  S3Fixture fx;
  WedderburnCertificate cert_a = wedderburn(fx.a, 0);
  CHECK(is_normal_subring(fx.a, cert_a, fx.b));
  CHECK(is_normal_subring(fx.a, cert_a, full_sub(fx.a)));

  // The span of e and a transposition meets the (trivial + 2-dim) ideal in
  // span{1 + t}, which is not invariant.
  Subalgebra t_sub = group_sub(fx.a, {0, 1});
  CHECK_FALSE(is_normal_subring(fx.a, cert_a, t_sub));

  D4Fixture d4;
  WedderburnCertificate cert_d4 = wedderburn(d4.a, 0);
  CHECK(is_normal_subring(d4.a, cert_d4, d4.b));

  Q8Fixture q8;
  WedderburnCertificate cert_q8 = wedderburn(q8.a, 0);
  CHECK(is_normal_subring(q8.a, cert_q8, q8.b));

  // Certificate for a different algebra is rejected.
  CHECK_THROWS_AS(is_normal_subring(d4.a, cert_a, d4.b), InvalidInput);

  // More than 12 blocks is out of contract.
  Algebra many = Algebra::matrix_algebra(7, 1);
  for (int i = 0; i < 12; ++i) many = Algebra::direct_sum(many, Algebra::matrix_algebra(7, 1));
  WedderburnCertificate cert_many = wedderburn(many, 0);
  CHECK(cert_many.blocks.size() == 13);
  CHECK_THROWS_AS(is_normal_subring(many, cert_many, full_sub(many)), HypothesisFailure);
}

TEST_CASE("tensor over E and hom as E-module") {
  S3Fixture fx;
  InducedModule im = induce(fx.a, fx.b, fx.triv);

  // Tensoring with the regular E-module recovers M.
  Module reg_e = regular_module(im.e.algebra);
  Module back = tensor_over_E(im, reg_e);
  CHECK(back.dim() == im.m.dim());

  // The zero module tensors to the zero module.
  std::vector<Matrix> none(im.e.algebra.dim(), Matrix(7, 0, 0));
  Module zero_u(im.e.algebra, none);
  CHECK(tensor_over_E(im, zero_u).dim() == 0);
  CHECK(hom_as_E_module(im, tensor_over_E(im, zero_u)).dim() == 0);

  // Hom_A(M, M) is the regular-type E-module; Hom_A(M, N) has the Frobenius
  // dimension dim Hom_B(V, N restricted).
  CHECK(hom_as_E_module(im, im.m).dim() == 2);
  Module sign_s3 = character(fx.a, {1, 6, 1, 6, 6, 1});
  CHECK(hom_as_E_module(im, sign_s3).dim() == 1);

  WedderburnCertificate cert_a = wedderburn(fx.a, 0);
  CHECK(hom_as_E_module(im, block_of_dim(cert_a, 2)).dim() == 0);

  // The two E-simples tensor to the trivial and sign modules of S3.
  WedderburnCertificate cert_e = wedderburn(im.e.algebra, 0);
  REQUIRE(cert_e.blocks.size() == 2);
  Module n0 = tensor_over_E(im, cert_e.blocks[0].simple);
  Module n1 = tensor_over_E(im, cert_e.blocks[1].simple);
  CHECK(n0.dim() == 1);
  CHECK(n1.dim() == 1);
  Module triv_s3 = character(fx.a, {1, 1, 1, 1, 1, 1});
  bool hits_triv = simple_modules_isomorphic(n0, triv_s3) || simple_modules_isomorphic(n1, triv_s3);
  bool hits_sign = simple_modules_isomorphic(n0, sign_s3) || simple_modules_isomorphic(n1, sign_s3);
  CHECK(hits_triv);
  CHECK(hits_sign);
  CHECK_FALSE(simple_modules_isomorphic(n0, n1));

  CHECK_THROWS_AS(tensor_over_E(im, fx.triv), InvalidInput);
}

TEST_CASE("static checks match the socle criterion") {
  S3Fixture fx;
  InducedModule im = induce(fx.a, fx.b, fx.triv);
  WedderburnCertificate cert_a = wedderburn(fx.a, 0);

  Module triv_s3 = character(fx.a, {1, 1, 1, 1, 1, 1});
  Module sign_s3 = character(fx.a, {1, 6, 1, 6, 6, 1});
  const Module& two_dim = block_of_dim(cert_a, 2);

  CHECK(static_check_A(im, im.m));
  CHECK(static_check_A(im, triv_s3));
  CHECK(static_check_A(im, sign_s3));
  CHECK_FALSE(static_check_A(im, two_dim));
  CHECK_FALSE(static_check_A(im, regular_module(fx.a)));

  // A module is static exactly when its restriction is V-isotypic.
  std::vector<Module> sweep = {im.m, triv_s3, sign_s3, two_dim, regular_module(fx.a),
                               direct_sum(triv_s3, sign_s3)};
  for (const Module& n : sweep) {
    bool isotypic = v_socle(fx.triv, restrict_module(n, fx.b)).dim() == n.dim();
    CHECK(static_check_A(im, n) == isotypic);
  }

  // In the stable case every E-module that we can certify is static.
  WedderburnCertificate cert_e = wedderburn(im.e.algebra, 0);
  for (const auto& block : cert_e.blocks) CHECK(static_check_E(im, block.simple));
  CHECK(static_check_E(im, regular_module(im.e.algebra)));
  std::vector<Matrix> none(im.e.algebra.dim(), Matrix(7, 0, 0));
  CHECK(static_check_E(im, Module(im.e.algebra, none)));
}

TEST_CASE("stabilizer reports and the definition-criterion agreement") {
  S3Fixture fx;

  // S = B is a stabilizer for omega: the socle of the induced module is
  // exactly the embedded copy of V.
  StabilizerReport at_b = is_stabilizer(fx.a, fx.b, fx.omega, fx.b, 0);
  CHECK(at_b.definition_ok());
  CHECK(at_b.criterion_ok());

  // S = A fails for omega (not stable), and the criterion fails with it.
  StabilizerReport at_a = is_stabilizer(fx.a, fx.b, fx.omega, full_sub(fx.a), 0);
  CHECK_FALSE(at_a.definition_ok());
  CHECK_FALSE(at_a.criterion_ok());
  CHECK_FALSE(at_a.v_s_stable);

  // For the trivial character the roles flip: B is too small, A works.
  StabilizerReport triv_b = is_stabilizer(fx.a, fx.b, fx.triv, fx.b, 0);
  CHECK_FALSE(triv_b.definition_ok());
  CHECK_FALSE(triv_b.socle_match);
  CHECK_FALSE(triv_b.criterion_ok());
  StabilizerReport triv_a = is_stabilizer(fx.a, fx.b, fx.triv, full_sub(fx.a), 0);
  CHECK(triv_a.definition_ok());
  CHECK(triv_a.criterion_ok());

  // S must contain B.
  CHECK_THROWS_AS(is_stabilizer(fx.a, fx.b, fx.omega, group_sub(fx.a, {0, 1}), 0),
                  InvalidInput);
}

TEST_CASE("the two canonical stabilizers") {
  S3Fixture fx;

  // omega: S_min collapses to B itself, since q lies in B already.  S_max is
  // one dimension bigger: it also separates the two linear blocks of A, which
  // B cannot tell apart.
  auto [min_w, max_w] = rieffel_stabilizers(fx.a, fx.b, fx.omega, 0);
  CHECK(min_w.s.span() == fx.b.span());
  CHECK(min_w.s.dim() == 3);
  CHECK(max_w.s.dim() == 4);
  CHECK(max_w.s.span().contains(fx.b.span()));
  CHECK(min_w.definition_ok());
  CHECK(max_w.definition_ok());

  // trivial: S_min is a proper intermediate algebra and S_max is all of A.
  auto [min_t, max_t] = rieffel_stabilizers(fx.a, fx.b, fx.triv, 0);
  CHECK(min_t.s.dim() == 4);
  CHECK(max_t.s.dim() == 6);
  CHECK(max_t.s.span().contains(min_t.s.span()));
  CHECK(min_t.s.span().contains(fx.b.span()));
  CHECK(min_t.definition_ok());
  CHECK(max_t.definition_ok());

  // D4, sign of the center: stability makes S_max = A.
  D4Fixture d4;
  auto [min_d, max_d] = rieffel_stabilizers(d4.a, d4.b, d4.sign, 0);
  CHECK(max_d.s.dim() == 8);
  CHECK(min_d.definition_ok());
  CHECK(max_d.definition_ok());

  // B = A degenerates to S_min = S_max = A.
  WedderburnCertificate cert_a = wedderburn(fx.a, 0);
  Subalgebra full = full_sub(fx.a);
  auto [min_f, max_f] = rieffel_stabilizers(fx.a, full, block_of_dim(cert_a, 2), 0);
  CHECK(min_f.s.dim() == 6);
  CHECK(max_f.s.dim() == 6);

  // Q8 over GF(5): both constructions verify for the non-stable character.
  Q8Fixture q8;
  auto [min_q, max_q] = rieffel_stabilizers(q8.a, q8.b, q8.chi2, 0);
  CHECK(min_q.definition_ok());
  CHECK(max_q.definition_ok());
  CHECK(max_q.s.span().contains(min_q.s.span()));

  // Non-normal B is rejected as a hypothesis violation.
  CHECK_THROWS_AS(
      rieffel_stabilizers(fx.a, group_sub(fx.a, {0, 1}),
                          character(group_sub(fx.a, {0, 1}).algebra(), {1, 1}), 0),
      HypothesisFailure);
}

TEST_CASE("induction through a stabilizer") {
  S3Fixture fx;

  // omega through S = B: one pair, landing on the 2-dimensional simple.
  auto pairs_w = induce_through_stabilizer(fx.a, fx.b, fx.omega, fx.b, 0);
  REQUIRE(pairs_w.size() == 1);
  CHECK(pairs_w[0].s_simple.dim() == 1);
  CHECK(pairs_w[0].a_simple.dim() == 2);
  WedderburnCertificate cert_a = wedderburn(fx.a, 0);
  CHECK(simple_modules_isomorphic(pairs_w[0].a_simple, block_of_dim(cert_a, 2)));

  // trivial through S = A: the identity correspondence on the two linear
  // simples whose restriction contains the trivial character.
  auto pairs_t = induce_through_stabilizer(fx.a, fx.b, fx.triv, full_sub(fx.a), 0);
  REQUIRE(pairs_t.size() == 2);
  CHECK(pairs_t[0].a_simple.dim() == 1);
  CHECK(pairs_t[1].a_simple.dim() == 1);
  CHECK_FALSE(simple_modules_isomorphic(pairs_t[0].a_simple, pairs_t[1].a_simple));

  // B is not a stabilizer for the trivial character.
  CHECK_THROWS_WITH_AS(induce_through_stabilizer(fx.a, fx.b, fx.triv, fx.b, 0),
                       "S is not a stabilizer for V", HypothesisFailure);
}

TEST_CASE("the correspondence on S3 over A3") {
  S3Fixture fx;

  CorrespondenceReport triv = correspond(fx.a, fx.b, fx.triv, 0);
  CHECK(triv.stable);
  CHECK(triv.stable_multiplicity == 2);
  CHECK(triv.dim_e == 2);
  REQUIRE(triv.pairs.size() == 2);
  CHECK(triv.pairs[0].a_simple.dim() == 1);
  CHECK(triv.pairs[1].a_simple.dim() == 1);
  CHECK(triv.pairs[0].round_trip);
  CHECK(triv.pairs[1].round_trip);
  CHECK(triv.oracle_complete);
  REQUIRE(triv.warnings.size() == 1);
  CHECK(triv.warnings[0].find("not primitive") != std::string::npos);

  CorrespondenceReport omega = correspond(fx.a, fx.b, fx.omega, 0);
  CHECK_FALSE(omega.stable);
  CHECK(omega.dim_e == 1);
  REQUIRE(omega.pairs.size() == 1);
  CHECK(omega.pairs[0].a_simple.dim() == 2);
  CHECK(omega.pairs[0].round_trip);
  CHECK(omega.oracle_complete);

  // Path consistency: inducing through S_min gives the same simple list.
  auto [min_w, max_w] = rieffel_stabilizers(fx.a, fx.b, fx.omega, 0);
  auto through = induce_through_stabilizer(fx.a, fx.b, fx.omega, min_w.s, 0);
  REQUIRE(through.size() == omega.pairs.size());
  CHECK(simple_modules_isomorphic(through[0].a_simple, omega.pairs[0].a_simple));
}

TEST_CASE("the correspondence on D4 and Q8") {
  D4Fixture d4;
  CorrespondenceReport rep = correspond(d4.a, d4.b, d4.sign, 0);
  CHECK(rep.stable);
  CHECK(rep.stable_multiplicity == 4);
  CHECK(rep.dim_e == 4);
  CHECK_FALSE(rep.induced.e.algebra.is_commutative());
  WedderburnCertificate cert_e = wedderburn(rep.induced.e.algebra, 0);
  CHECK(cert_e.dims() == std::vector<std::size_t>{2});
  REQUIRE(rep.pairs.size() == 1);
  CHECK(rep.pairs[0].e_simple.dim() == 2);
  CHECK(rep.pairs[0].a_simple.dim() == 2);  // dim V * dim U
  REQUIRE(rep.warnings.size() == 1);
  CHECK(rep.warnings[0].find("happens to be") != std::string::npos);

  Q8Fixture q8;
  CorrespondenceReport chi2 = correspond(q8.a, q8.b, q8.chi2, 0);
  CHECK_FALSE(chi2.stable);
  CHECK(chi2.dim_e == 1);
  REQUIRE(chi2.pairs.size() == 1);
  CHECK(chi2.pairs[0].a_simple.dim() == 2);

  CorrespondenceReport chi4 = correspond(q8.a, q8.b, q8.chi4, 0);
  CHECK(chi4.stable);
  CHECK(chi4.dim_e == 2);
  REQUIRE(chi4.pairs.size() == 2);
  CHECK(chi4.pairs[0].a_simple.dim() == 1);
  CHECK(chi4.pairs[1].a_simple.dim() == 1);

  // The chi2 answer agrees with the through-stabilizer path.
  auto [min_q, max_q] = rieffel_stabilizers(q8.a, q8.b, q8.chi2, 0);
  auto through = induce_through_stabilizer(q8.a, q8.b, q8.chi2, min_q.s, 0);
  REQUIRE(through.size() == 1);
  CHECK(simple_modules_isomorphic(through[0].a_simple, chi2.pairs[0].a_simple));
}

TEST_CASE("correspond rejects broken hypotheses") {
  S3Fixture fx;

  // Non-normal subalgebra.
  Subalgebra t_sub = group_sub(fx.a, {0, 1});
  Module t_triv = character(t_sub.algebra(), {1, 1});
  CHECK_THROWS_AS(correspond(fx.a, t_sub, t_triv, 0), HypothesisFailure);

  // Non-semisimple ambient algebra.
  Algebra bad = Algebra::group_algebra(3, CayleyTable::cyclic(3));
  Module bad_triv = character(bad, {1, 1, 1});
  CHECK_THROWS_AS(correspond(bad, full_sub(bad), bad_triv, 0), HypothesisFailure);

  // V must be absolutely simple.
  CHECK_THROWS_AS(correspond(fx.a, fx.b, direct_sum(fx.triv, fx.triv), 0),
                  HypothesisFailure);
}

TEST_CASE("endomorphism dimension chain") {
  S3Fixture fx;
  EndalgChain ch = endalg_chain_check(fx.a, fx.b, fx.omega, fx.b, 0);
  CHECK(ch.dim_end_a == 1);
  CHECK(ch.dim_hom_down_a == 1);
  CHECK(ch.dim_hom_down_s == 1);
  CHECK(ch.dim_end_s == 1);

  EndalgChain ct = endalg_chain_check(fx.a, fx.b, fx.triv, full_sub(fx.a), 0);
  CHECK(ct.dim_end_a == 2);
  CHECK(ct.dim_end_s == 2);

  D4Fixture d4;
  EndalgChain cd = endalg_chain_check(d4.a, d4.b, d4.sign, full_sub(d4.a), 0);
  CHECK(cd.dim_end_a == 4);

  Q8Fixture q8;
  EndalgChain cq = endalg_chain_check(q8.a, q8.b, q8.chi2, q8.b, 0);
  CHECK(cq.dim_end_a == 1);
  CHECK(cq.dim_end_s == 1);

  CHECK_THROWS_AS(endalg_chain_check(fx.a, fx.b, fx.triv, fx.b, 0), HypothesisFailure);
}

TEST_CASE("F certification and restriction to F") {
  S3Fixture fx;

  // Stable trivial character: the restriction is trivial^2, so F is one
  // 2-by-2 block.
  InducedModule im_t = induce(fx.a, fx.b, fx.triv);
  FAlgebraReport ft = f_algebra_check(im_t, 0);
  CHECK(ft.e_embedded);
  CHECK(ft.f_block_dims == std::vector<std::size_t>{2});
  CHECK(ft.restriction_multiplicities == std::vector<std::size_t>{2});

  // omega: restriction is omega + omega^2, two blocks of multiplicity one.
  InducedModule im_w = induce(fx.a, fx.b, fx.omega);
  FAlgebraReport fw = f_algebra_check(im_w, 0);
  CHECK(fw.f_block_dims == std::vector<std::size_t>{1, 1});

  // B = A: F equals E.
  WedderburnCertificate cert_a = wedderburn(fx.a, 0);
  InducedModule self = induce(fx.a, full_sub(fx.a), block_of_dim(cert_a, 2));
  FAlgebraReport fs = f_algebra_check(self, 0);
  CHECK(fs.f_block_dims == std::vector<std::size_t>{1});
  CHECK(self.f.algebra.dim() == self.e.algebra.dim());

  // F tensor_E (regular E) is F itself; with E = F the module is unchanged.
  Module reg_e = regular_module(im_t.e.algebra);
  CHECK(restrict_to_F(im_t, reg_e).dim() == im_t.f.algebra.dim());
  Module reg_self = regular_module(self.e.algebra);
  CHECK(restrict_to_F(self, reg_self).dim() == reg_self.dim());

  // A 1-dimensional E-simple restricts to a 2-dimensional F-module here:
  // dim F * dim U minus the relation rank.
  WedderburnCertificate cert_e = wedderburn(im_t.e.algebra, 0);
  Module u = cert_e.blocks[0].simple;
  CHECK(restrict_to_F(im_t, u).dim() == 2);
}

TEST_CASE("presentations of simples containing V") {
  S3Fixture fx;

  // omega: pi is bijective onto the 2-dimensional simple.
  CorrespondenceReport omega = correspond(fx.a, fx.b, fx.omega, 0);
  Presentation pw = build_presentation(omega.induced, omega.pairs[0].a_simple, 0);
  CHECK(pw.copies == 0);
  CHECK(pw.pi.rank() == 2);
  CHECK(pw.head.cols() == 0);

  // trivial: M is trivial + sign, so each linear target leaves a
  // 1-dimensional kernel covered by one copy of M.
  CorrespondenceReport triv = correspond(fx.a, fx.b, fx.triv, 0);
  Module triv_s3 = character(fx.a, {1, 1, 1, 1, 1, 1});
  Module sign_s3 = character(fx.a, {1, 6, 1, 6, 6, 1});
  for (const Module* n : {&triv_s3, &sign_s3}) {
    Presentation pr = build_presentation(triv.induced, *n, 0);
    CHECK(pr.copies == 1);
    CHECK(pr.pi.rank() == 1);
    CHECK(column_space(pr.head) == nullspace(pr.pi));
  }

  // A simple that does not contain V is out of contract.
  WedderburnCertificate cert_a = wedderburn(fx.a, 0);
  CHECK_THROWS_WITH_AS(build_presentation(triv.induced, block_of_dim(cert_a, 2), 0),
                       "N does not contain V on restriction", HypothesisFailure);
}

}  // TEST_SUITE
