#include "cliffcorr/clifford.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "cliffcorr/errors.hpp"

namespace cliffcorr {

namespace {

struct RawInduced {
  Module m;
  Matrix iota;
  Matrix proj;
  Matrix sec;
};

// Quotient of A (x) V by the bimodule relations a*beta (x) v - a (x) beta.v,
// one generator per (subalgebra basis element, A basis element, V basis
// element).  The relation span is invariant under the left A-action on the
// first factor, so the quotient is again an A-module.
RawInduced induce_raw(const Algebra& a, const Subalgebra& b, const Module& v) {
  if (!(b.ambient() == a))
    throw InvalidInput("ambient mismatch: the subalgebra does not live in the given algebra");
  if (!(v.algebra() == b.algebra()))
    throw InvalidInput("ambient mismatch: V is not a module over the subalgebra");
  std::uint64_t p = a.modulus();
  std::size_t da = a.dim(), dv = v.dim(), dt = da * dv;

  std::vector<Matrix> t_act;
  t_act.reserve(da);
  Matrix iv = Matrix::identity(p, dv);
  for (std::size_t k = 0; k < da; ++k) t_act.push_back(a.basis_left_mult(k).kron(iv));
  Module tmod(a, std::move(t_act));

  std::vector<Vec> rels;
  rels.reserve(b.dim() * da * dv);
  for (std::size_t r = 0; r < b.dim(); ++r) {
    Vec beta = b.basis_rows().row(r);
    Matrix rm = a.right_mult(beta);
    const Matrix& rho = v.action(r);
    for (std::size_t i = 0; i < da; ++i) {
      Vec prod = rm.col(i);
      for (std::size_t j = 0; j < dv; ++j) {
        Vec g(p, dt);
        for (std::size_t s = 0; s < da; ++s) g.set(s * dv + j, prod.at(s));
        for (std::size_t t = 0; t < dv; ++t)
          g.set(i * dv + t, g.at(i * dv + t) - rho.at(t, j));
        rels.push_back(std::move(g));
      }
    }
  }
  Subspace rel = Subspace::from_rows(p, rels);
  QuotientModule q = quotient_module(tmod, rel);

  Matrix iota(p, q.module.dim(), dv);
  for (std::size_t j = 0; j < dv; ++j) {
    Vec t(p, dt);
    for (std::size_t s = 0; s < da; ++s) t.set(s * dv + j, a.one().at(s));
    Vec c = q.projection * t;
    for (std::size_t i = 0; i < q.module.dim(); ++i) iota.set(i, j, c.at(i));
  }
  if (iota.rank() != dv) throw TheoremCheckFailure("iota is not injective");
  for (std::size_t r = 0; r < b.dim(); ++r) {
    Matrix lhs = q.module.act(b.basis_rows().row(r)) * iota;
    Matrix rhs = iota * v.action(r);
    if (!(lhs == rhs))
      throw TheoremCheckFailure("iota is not equivariant over the subalgebra");
  }
  return {std::move(q.module), std::move(iota), std::move(q.projection),
          std::move(q.section)};
}

// M (x) U with A on the first factor, modulo m.e (x) u - m (x) e.u.
QuotientModule tensor_quotient(const InducedModule& im, const Module& u) {
  if (!(u.algebra() == im.e.algebra))
    throw InvalidInput("algebra mismatch: U is not a module over E");
  std::uint64_t p = im.m.modulus();
  std::size_t dm = im.m.dim(), du = u.dim(), dt = dm * du;
  std::size_t da = im.m.algebra().dim();

  std::vector<Matrix> t_act;
  t_act.reserve(da);
  Matrix iu = Matrix::identity(p, du);
  for (std::size_t k = 0; k < da; ++k) t_act.push_back(im.m.action(k).kron(iu));
  Module tmod(im.m.algebra(), std::move(t_act));

  std::vector<Vec> rels;
  rels.reserve(im.e.basis.size() * dm * du);
  for (std::size_t r = 0; r < im.e.basis.size(); ++r) {
    const Matrix& h = im.e.basis[r];
    const Matrix& rho = u.action(r);
    for (std::size_t i = 0; i < dm; ++i) {
      for (std::size_t j = 0; j < du; ++j) {
        Vec g(p, dt);
        for (std::size_t s = 0; s < dm; ++s) g.set(s * du + j, h.at(s, i));
        for (std::size_t t = 0; t < du; ++t)
          g.set(i * du + t, g.at(i * du + t) - rho.at(t, j));
        rels.push_back(std::move(g));
      }
    }
  }
  Subspace rel = rels.empty() ? Subspace::zero(p, dt) : Subspace::from_rows(p, rels);
  return quotient_module(tmod, rel);
}

Subspace ambient_ideal(const Algebra& a, const Subalgebra& b, const Subspace& j_local) {
  std::vector<Vec> rows;
  rows.reserve(j_local.dim());
  for (std::size_t r = 0; r < j_local.dim(); ++r)
    rows.push_back(b.to_ambient(j_local.basis().row(r)));
  if (rows.empty()) return Subspace::zero(a.modulus(), a.dim());
  return Subspace::from_rows(a.modulus(), rows);
}

Subspace image_of_sub_tensor(const RawInduced& raw, const Subalgebra& s, const Module& v) {
  std::uint64_t p = raw.m.modulus();
  std::size_t dv = v.dim();
  std::size_t da = s.basis_rows().cols();
  std::vector<Vec> rows;
  rows.reserve(s.dim() * dv);
  for (std::size_t r = 0; r < s.dim(); ++r) {
    Vec srow = s.basis_rows().row(r);
    for (std::size_t j = 0; j < dv; ++j) {
      Vec t(p, da * dv);
      for (std::size_t i = 0; i < da; ++i) t.set(i * dv + j, srow.at(i));
      rows.push_back(raw.proj * t);
    }
  }
  return Subspace::from_rows(p, rows);
}

Matrix flattened_rows(const std::vector<Matrix>& mats, std::uint64_t p, std::size_t len) {
  Matrix out(p, mats.size(), len);
  for (std::size_t i = 0; i < mats.size(); ++i) out.set_row(i, mats[i].flatten());
  return out;
}

}  // namespace

InducedModule induce(const Algebra& a, const Subalgebra& b, const Module& v) {
  RawInduced raw = induce_raw(a, b, v);
  EndoAlgebra e = endo_algebra_op(raw.m);
  Module down = restrict_module(raw.m, b);
  EndoAlgebra f = endo_algebra_op(down);

  std::uint64_t p = a.modulus();
  std::size_t dm = raw.m.dim();
  Matrix fflat = flattened_rows(f.basis, p, dm * dm).transpose();
  Matrix e_rows(p, e.basis.size(), f.basis.size());
  for (std::size_t i = 0; i < e.basis.size(); ++i) {
    auto coords = solve_vec(fflat, e.basis[i].flatten());
    if (!coords) throw TheoremCheckFailure("an A-endomorphism is not a B-endomorphism");
    e_rows.set_row(i, *coords);
  }
  Subalgebra e_in_f = [&] {
    try {
      return Subalgebra::from_basis(f.algebra, e_rows);
    } catch (const InvalidInput& err) {
      throw TheoremCheckFailure(std::string("E's copy inside F is not a subalgebra: ") +
                                err.what());
    }
  }();
  if (!(e_in_f.algebra() == e.algebra))
    throw TheoremCheckFailure("E's copy inside F has different structure constants");

  return {std::move(raw.m), std::move(raw.iota), std::move(raw.proj), std::move(raw.sec),
          b,               v,                    std::move(e),        std::move(f),
          std::move(e_in_f)};
}

AnnihilatorData annihilator_and_p(const WedderburnCertificate& cert_b, const Module& v) {
  if (!(cert_b.algebra == v.algebra()))
    throw InvalidInput("certificate missing: the certificate is not for V's algebra");
  if (hom_space(v, v).size() != 1) throw HypothesisFailure("V not absolutely simple");
  const Algebra& balg = cert_b.algebra;
  std::uint64_t p = balg.modulus();
  std::size_t n = balg.dim(), dv = v.dim();

  Matrix rep_rows(p, n, dv * dv);
  for (std::size_t r = 0; r < n; ++r) rep_rows.set_row(r, v.action(r).flatten());
  Subspace j = nullspace(rep_rows.transpose());

  Matrix id = Matrix::identity(p, dv);
  std::optional<Vec> e_v;
  for (const auto& block : cert_b.blocks) {
    Matrix act = v.act(block.central_idempotent);
    if (act == id) {
      if (e_v) throw TheoremCheckFailure("two central idempotents act as the identity on V");
      e_v = block.central_idempotent;
    } else if (!act.is_zero()) {
      throw TheoremCheckFailure(
          "a central idempotent acts neither as zero nor as the identity on simple V");
    }
  }
  if (!e_v) throw TheoremCheckFailure("no central idempotent acts as the identity on V");

  Vec p_idem = balg.one() - *e_v;
  if (balg.mul(p_idem, p_idem) != p_idem)
    throw TheoremCheckFailure("1 - e_V is not idempotent");
  if (!(balg.left_mult(p_idem) == balg.right_mult(p_idem)))
    throw TheoremCheckFailure("1 - e_V is not central");
  if (!v.act(p_idem).is_zero())
    throw TheoremCheckFailure("1 - e_V does not annihilate V");
  Subspace pb = product_space(balg, Subspace::from_rows(p, {p_idem}), Subspace::full(p, n));
  if (!(pb == j))
    throw TheoremCheckFailure("the kernel of the representation is not generated by 1 - e_V");

  bool primitive = false;
  for (const auto& block : cert_b.blocks)
    if (block.central_idempotent == p_idem) primitive = true;
  return {std::move(j), std::move(p_idem), primitive};
}

Subspace v_socle(const Module& v, const Module& n) {
  if (!(v.algebra() == n.algebra()))
    throw InvalidInput("the two modules are over different algebras");
  if (hom_space(v, v).size() != 1) throw HypothesisFailure("V not absolutely simple");
  Subspace s = Subspace::zero(n.modulus(), n.dim());
  for (const Matrix& h : hom_space(v, n)) s = s.sum(column_space(h));
  return s;
}

StabilityResult is_stable(const Algebra& a, const Subalgebra& b, const Module& v) {
  RawInduced raw = induce_raw(a, b, v);
  Module down = restrict_module(raw.m, b);
  Subspace soc = v_socle(v, down);
  bool stable = soc.dim() == raw.m.dim();
  std::size_t n = multiplicity(v, down);
  if (stable && (v.dim() == 0 || raw.m.dim() % v.dim() != 0 || n != raw.m.dim() / v.dim()))
    throw TheoremCheckFailure("stable multiplicity does not match the dimension ratio");
  return {stable, n};
}

bool is_invariant(const Algebra& a, const Subspace& j) {
  if (j.ambient() != a.dim() || j.modulus() != a.modulus())
    throw InvalidInput("ideal coordinates do not match the algebra");
  Subspace full = Subspace::full(a.modulus(), a.dim());
  return product_space(a, full, j) == product_space(a, j, full);
}

bool is_normal_subring(const Algebra& a, const WedderburnCertificate& cert,
                       const Subalgebra& b) {
  if (!(cert.algebra == a))
    throw InvalidInput("no certificate: the certificate does not match the algebra");
  if (!(b.ambient() == a)) throw InvalidInput("subalgebra ambient mismatch");
  std::size_t r = cert.blocks.size();
  if (r > 12)
    throw HypothesisFailure("too many blocks: the ideal lattice sweep is capped at 12");
  std::uint64_t p = a.modulus();
  std::vector<Subspace> components;
  components.reserve(r);
  for (const auto& block : cert.blocks)
    components.push_back(column_space(a.right_mult(block.central_idempotent)));
  Subspace bspan = b.span();
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    Subspace ideal = Subspace::zero(p, a.dim());
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (std::size_t{1} << i)) ideal = ideal.sum(components[i]);
    if (!is_invariant(a, ideal.intersect(bspan))) return false;
  }
  return true;
}

Module tensor_over_E(const InducedModule& im, const Module& u) {
  return tensor_quotient(im, u).module;
}

Module hom_as_E_module(const InducedModule& im, const Module& n) {
  if (!(n.algebra() == im.m.algebra()))
    throw InvalidInput("algebra mismatch: N is not a module over the ambient algebra");
  std::uint64_t p = im.m.modulus();
  auto homs = hom_space(im.m, n);
  std::size_t d = homs.size();
  std::size_t de = im.e.algebra.dim();
  std::vector<Matrix> act(de, Matrix(p, d, d));
  if (d > 0) {
    Matrix flat = flattened_rows(homs, p, n.dim() * im.m.dim()).transpose();
    for (std::size_t r = 0; r < de; ++r) {
      for (std::size_t jj = 0; jj < d; ++jj) {
        Matrix comp = homs[jj] * im.e.basis[r];
        auto coords = solve_vec(flat, comp.flatten());
        if (!coords)
          throw TheoremCheckFailure("a hom composite escapes the hom space");
        for (std::size_t i = 0; i < d; ++i) act[r].set(i, jj, coords->at(i));
      }
    }
  }
  return Module(im.e.algebra, std::move(act));
}

bool static_check_A(const InducedModule& im, const Module& n) {
  Module hu = hom_as_E_module(im, n);
  auto homs = hom_space(im.m, n);
  QuotientModule q = tensor_quotient(im, hu);
  std::uint64_t p = im.m.modulus();
  std::size_t dm = im.m.dim(), d = homs.size();

  Matrix phi_t(p, n.dim(), dm * d);
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t s = 0; s < n.dim(); ++s) phi_t.set(s, i * d + j, homs[j].at(s, i));
  Matrix phi = phi_t * q.section;
  if (!(phi * q.projection == phi_t))
    throw TheoremCheckFailure("evaluation is not well defined on the tensor quotient");
  return q.module.dim() == n.dim() && phi.rank() == n.dim();
}

bool static_check_E(const InducedModule& im, const Module& u) {
  QuotientModule q = tensor_quotient(im, u);
  auto homs = hom_space(im.m, q.module);
  std::size_t du = u.dim(), t = homs.size();
  if (t != du) return false;
  if (du == 0) return true;
  std::uint64_t p = im.m.modulus();
  std::size_t dm = im.m.dim();

  Matrix flat = flattened_rows(homs, p, q.module.dim() * dm).transpose();
  Matrix coords(p, t, du);
  for (std::size_t j = 0; j < du; ++j) {
    Matrix psi_j(p, q.module.dim(), dm);
    for (std::size_t i = 0; i < dm; ++i) {
      Vec c = q.projection.col(i * du + j);
      for (std::size_t s = 0; s < q.module.dim(); ++s) psi_j.set(s, i, c.at(s));
    }
    auto c = solve_vec(flat, psi_j.flatten());
    if (!c) throw TheoremCheckFailure("the unit map is not an intertwiner");
    for (std::size_t i = 0; i < t; ++i) coords.set(i, j, c->at(i));
  }
  return coords.rank() == du;
}

StabilizerReport is_stabilizer(const Algebra& a, const Subalgebra& b, const Module& v,
                               const Subalgebra& s, std::uint64_t seed) {
  if (!(b.ambient() == a) || !(s.ambient() == a))
    throw InvalidInput("ambient mismatch in the stabilizer test");
  if (!s.span().contains(b.span()))
    throw InvalidInput("containment violation: B is not contained in S");

  WedderburnCertificate cert_b = wedderburn(b.algebra(), derive_seed(seed, 0xb5));
  AnnihilatorData ann = annihilator_and_p(cert_b, v);

  StabilizerReport rep{s, false, false, false, false, false, false};

  std::optional<WedderburnCertificate> cert_s;
  try {
    cert_s = wedderburn(s.algebra(), derive_seed(seed, 0x51));
    rep.s_semisimple = true;
  } catch (const HypothesisFailure&) {
    rep.s_semisimple = false;
  }
  Subalgebra b_in_s = b.transport(s);
  if (cert_s) rep.b_normal_in_s = is_normal_subring(s.algebra(), *cert_s, b_in_s);
  rep.v_s_stable = is_stable(s.algebra(), b_in_s, v).stable;

  RawInduced raw = induce_raw(a, b, v);
  Subspace soc = v_socle(v, restrict_module(raw.m, b));
  Subspace img = image_of_sub_tensor(raw, s, v);
  rep.socle_match = (soc == img);

  Subspace j_amb = ambient_ideal(a, b, ann.j);
  Subspace full = Subspace::full(a.modulus(), a.dim());
  rep.j_s_invariant =
      product_space(a, s.span(), j_amb) == product_space(a, j_amb, s.span());
  Subspace aj = product_space(a, full, j_amb);
  Subspace ja = product_space(a, j_amb, full);
  rep.decomposition = (s.span().sum(aj).sum(ja) == full);

  // The definition and the criterion are equivalent; the normality leg of the
  // definition needs S's certificate, so the agreement is only decidable when
  // S certifies.
  if (rep.s_semisimple && rep.definition_ok() != rep.criterion_ok())
    throw TheoremCheckFailure("stabilizer definition and criterion disagree");
  return rep;
}

std::pair<StabilizerReport, StabilizerReport> rieffel_stabilizers(
    const Algebra& a, const Subalgebra& b, const Module& v, std::uint64_t seed) {
  WedderburnCertificate cert_a = wedderburn(a, derive_seed(seed, 0xa1));
  WedderburnCertificate cert_b = wedderburn(b.algebra(), derive_seed(seed, 0xb1));
  if (hom_space(v, v).size() != 1)
    throw HypothesisFailure("V not absolutely simple");
  if (!is_normal_subring(a, cert_a, b))
    throw HypothesisFailure("hypotheses violated: B is not normal in A");

  AnnihilatorData ann = annihilator_and_p(cert_b, v);
  std::uint64_t p = a.modulus();
  Vec pa = b.to_ambient(ann.p_idem);
  Vec qa = a.one() - pa;

  std::vector<Vec> min_rows;
  for (std::size_t r = 0; r < b.dim(); ++r) min_rows.push_back(b.basis_rows().row(r));
  for (std::size_t i = 0; i < a.dim(); ++i)
    min_rows.push_back(a.mul(a.mul(qa, Vec::unit(p, a.dim(), i)), qa));

  std::vector<Vec> max_rows;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec e = Vec::unit(p, a.dim(), i);
    max_rows.push_back(a.mul(a.mul(pa, e), pa));
    max_rows.push_back(a.mul(a.mul(qa, e), qa));
  }

  Subalgebra s_min = [&] {
    try {
      return Subalgebra::from_span(a, Matrix::from_rows(p, min_rows));
    } catch (const InvalidInput& err) {
      throw HypothesisFailure(std::string("closure failure: ") + err.what());
    }
  }();
  Subalgebra s_max = [&] {
    try {
      return Subalgebra::from_span(a, Matrix::from_rows(p, max_rows));
    } catch (const InvalidInput& err) {
      throw HypothesisFailure(std::string("closure failure: ") + err.what());
    }
  }();

  if (!s_min.span().contains(b.span()))
    throw TheoremCheckFailure("S_min does not contain B");
  if (!s_max.span().contains(s_min.span()))
    throw TheoremCheckFailure("S_min is not contained in S_max");

  StabilizerReport rep_min = is_stabilizer(a, b, v, s_min, derive_seed(seed, 0x11));
  StabilizerReport rep_max = is_stabilizer(a, b, v, s_max, derive_seed(seed, 0x22));
  if (!rep_min.definition_ok())
    throw TheoremCheckFailure("B + (1-p)A(1-p) failed the stabilizer verification");
  if (!rep_max.definition_ok())
    throw TheoremCheckFailure("pAp + (1-p)A(1-p) failed the stabilizer verification");
  return {std::move(rep_min), std::move(rep_max)};
}

std::vector<InducedPair> induce_through_stabilizer(const Algebra& a, const Subalgebra& b,
                                                   const Module& v, const Subalgebra& s,
                                                   std::uint64_t seed) {
  StabilizerReport rep = is_stabilizer(a, b, v, s, derive_seed(seed, 0x31));
  if (!rep.definition_ok()) throw HypothesisFailure("S is not a stabilizer for V");

  WedderburnCertificate cert_s = wedderburn(s.algebra(), derive_seed(seed, 0x32));
  Subalgebra b_in_s = b.transport(s);
  std::vector<InducedPair> out;
  for (const auto& block : cert_s.blocks) {
    if (multiplicity(v, restrict_module(block.simple, b_in_s)) == 0) continue;
    RawInduced raw = induce_raw(a, s, block.simple);
    if (hom_space(raw.m, raw.m).size() != 1)
      throw TheoremCheckFailure("an induced module is not absolutely simple");
    if (multiplicity(v, restrict_module(raw.m, b)) == 0)
      throw TheoremCheckFailure("an induced module does not contain V on restriction");
    out.push_back({block.simple, std::move(raw.m)});
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (!hom_space(out[i].a_simple, out[j].a_simple).empty())
        throw TheoremCheckFailure("two induced modules are isomorphic");
  return out;
}

CorrespondenceReport correspond(const Algebra& a, const Subalgebra& b, const Module& v,
                                std::uint64_t seed) {
  if (!(b.ambient() == a)) throw InvalidInput("ambient mismatch");
  if (!(v.algebra() == b.algebra()))
    throw InvalidInput("ambient mismatch: V is not a module over the subalgebra");

  auto certify = [](const Algebra& alg, std::uint64_t s) {
    try {
      return wedderburn(alg, s);
    } catch (const HypothesisFailure& e) {
      throw HypothesisFailure(std::string("hypotheses violated: ") + e.what());
    }
  };
  WedderburnCertificate cert_a = certify(a, derive_seed(seed, 0xa0));
  WedderburnCertificate cert_b = certify(b.algebra(), derive_seed(seed, 0xb0));
  if (hom_space(v, v).size() != 1)
    throw HypothesisFailure("hypotheses violated: V is not absolutely simple");
  if (!is_normal_subring(a, cert_a, b))
    throw HypothesisFailure("hypotheses violated: B is not normal in A");

  InducedModule im = induce(a, b, v);
  Module down = restrict_module(im.m, b);
  Subspace soc = v_socle(v, down);
  bool stable = soc.dim() == im.m.dim();
  std::size_t n = multiplicity(v, down);

  AnnihilatorData ann = annihilator_and_p(cert_b, v);
  if (is_invariant(a, ambient_ideal(a, b, ann.j)) != stable)
    throw TheoremCheckFailure("stability disagrees with annihilator invariance");

  WedderburnCertificate cert_e = [&] {
    try {
      return wedderburn(im.e.algebra, derive_seed(seed, 0xe0));
    } catch (const HypothesisFailure& e) {
      throw TheoremCheckFailure(
          std::string("E failed certification under semisimple hypotheses: ") + e.what());
    }
  }();
  std::size_t dim_e = im.e.algebra.dim();
  if (stable && im.m.dim() != v.dim() * dim_e)
    throw TheoremCheckFailure("dim M = dim V * dim E fails on a stable instance");

  std::vector<CorrespondencePair> pairs;
  for (const auto& block : cert_e.blocks) {
    const Module& u = block.simple;
    Module image = tensor_over_E(im, u);
    if (hom_space(image, image).size() != 1)
      throw TheoremCheckFailure("a correspondence image is not absolutely simple");
    if (multiplicity(v, restrict_module(image, b)) == 0)
      throw TheoremCheckFailure("a correspondence image does not contain V on restriction");
    if (stable && image.dim() != v.dim() * u.dim())
      throw TheoremCheckFailure("dim (M tensor U) = dim V * dim U fails on a stable instance");
    Module back = hom_as_E_module(im, image);
    bool rt = back.dim() == u.dim() && simple_modules_isomorphic(back, u);
    if (!rt) throw TheoremCheckFailure("a round trip failed to recover the E-simple");
    pairs.push_back({u, std::move(image), rt});
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (!hom_space(pairs[i].a_simple, pairs[j].a_simple).empty())
        throw TheoremCheckFailure("two correspondence images are isomorphic");

  bool complete = true;
  std::size_t containing = 0;
  for (const auto& block : cert_a.blocks) {
    if (multiplicity(v, restrict_module(block.simple, b)) == 0) continue;
    ++containing;
    std::size_t matches = 0;
    for (const auto& pair : pairs)
      if (pair.a_simple.dim() == block.simple.dim() &&
          simple_modules_isomorphic(pair.a_simple, block.simple))
        ++matches;
    if (matches != 1) complete = false;
  }
  if (containing != pairs.size()) complete = false;
  if (!complete)
    throw TheoremCheckFailure("the correspondence misses a simple module containing V");

  std::vector<std::string> warnings;
  warnings.push_back(ann.p_primitive
                         ? "p_idem happens to be a primitive central idempotent of B"
                         : "p_idem is not primitive in B: it is the sum of the block "
                           "idempotents away from V");

  return {true,    true,
          true,    true,
          stable,  n,
          dim_e,   std::move(pairs),
          complete, std::move(warnings),
          std::move(im)};
}

EndalgChain endalg_chain_check(const Algebra& a, const Subalgebra& b, const Module& v,
                               const Subalgebra& s, std::uint64_t seed) {
  StabilizerReport rep = is_stabilizer(a, b, v, s, derive_seed(seed, 0x41));
  if (!rep.definition_ok()) throw HypothesisFailure("S is not a stabilizer for V");

  RawInduced up_a = induce_raw(a, b, v);
  std::size_t d1 = hom_space(up_a.m, up_a.m).size();
  std::size_t d2 = hom_space(v, restrict_module(up_a.m, b)).size();

  Subalgebra b_in_s = b.transport(s);
  RawInduced up_s = induce_raw(s.algebra(), b_in_s, v);
  std::size_t d3 = hom_space(v, restrict_module(up_s.m, b_in_s)).size();
  std::size_t d4 = hom_space(up_s.m, up_s.m).size();

  if (d1 != d2 || d2 != d3 || d3 != d4)
    throw TheoremCheckFailure("the four endomorphism-chain dimensions disagree");
  return {d1, d2, d3, d4};
}

FAlgebraReport f_algebra_check(const InducedModule& im, std::uint64_t seed) {
  WedderburnCertificate cert_f = wedderburn(im.f.algebra, derive_seed(seed, 0xf0));

  // Re-derive the embedding E <= F instead of trusting the stored copy:
  // containment of the flattened spans plus closure under F's product.
  std::uint64_t p = im.m.modulus();
  std::size_t dm = im.m.dim();
  Matrix fflat = flattened_rows(im.f.basis, p, dm * dm);
  Matrix eflat = flattened_rows(im.e.basis, p, dm * dm);
  bool embedded = Subspace::from_rows(fflat).contains(Subspace::from_rows(eflat));
  if (embedded) {
    const Matrix& rows = im.e_in_f.basis_rows();
    Subspace espan = im.e_in_f.span();
    for (std::size_t i = 0; i < rows.rows() && embedded; ++i)
      for (std::size_t j = 0; j < rows.rows() && embedded; ++j)
        if (!espan.contains(im.f.algebra.mul(rows.row(i), rows.row(j)))) embedded = false;
  }
  if (!embedded) throw TheoremCheckFailure("E does not embed in F as a subalgebra");

  WedderburnCertificate cert_b = wedderburn(im.sub.algebra(), derive_seed(seed, 0xb2));
  Module down = restrict_module(im.m, im.sub);
  std::vector<std::size_t> mults;
  for (const auto& block : cert_b.blocks) {
    std::size_t mult = multiplicity(block.simple, down);
    if (mult > 0) mults.push_back(mult);
  }
  std::sort(mults.begin(), mults.end());
  std::vector<std::size_t> f_dims = cert_f.dims();
  std::sort(f_dims.begin(), f_dims.end());
  if (mults != f_dims)
    throw TheoremCheckFailure("F's block dimensions do not match the restriction multiplicities");
  return {std::move(cert_f), embedded, std::move(f_dims), std::move(mults)};
}

Module restrict_to_F(const InducedModule& im, const Module& u) {
  if (!(u.algebra() == im.e.algebra))
    throw InvalidInput("algebra mismatch: U is not a module over E");
  return induce_raw(im.f.algebra, im.e_in_f, u).m;
}

Presentation build_presentation(const InducedModule& im, const Module& n,
                                std::uint64_t seed) {
  if (!(n.algebra() == im.m.algebra()))
    throw InvalidInput("algebra mismatch: N is not a module over the ambient algebra");
  WedderburnCertificate cert_a = wedderburn(im.m.algebra(), derive_seed(seed, 0x91));
  if (hom_space(n, n).size() != 1)
    throw HypothesisFailure("N is not absolutely simple");
  Module down_n = restrict_module(n, im.sub);
  auto embeddings = hom_space(im.v, down_n);
  if (embeddings.empty())
    throw HypothesisFailure("N does not contain V on restriction");
  const Matrix& emb = embeddings.front();

  const Algebra& a = im.m.algebra();
  std::uint64_t p = a.modulus();
  std::size_t da = a.dim(), dv = im.v.dim(), dm = im.m.dim();

  Matrix pi_t(p, n.dim(), da * dv);
  for (std::size_t i = 0; i < da; ++i) {
    Matrix block = n.act(Vec::unit(p, da, i)) * emb;
    for (std::size_t j = 0; j < dv; ++j)
      for (std::size_t s = 0; s < n.dim(); ++s) pi_t.set(s, i * dv + j, block.at(s, j));
  }
  Matrix pi = pi_t * im.sec;
  if (!(pi * im.proj == pi_t))
    throw TheoremCheckFailure("pi is not well defined on the induced module");
  for (std::size_t k = 0; k < da; ++k) {
    Vec e = Vec::unit(p, da, k);
    if (!(pi * im.m.act(e) == n.act(e) * pi))
      throw TheoremCheckFailure("pi is not an A-homomorphism");
  }
  if (pi.rank() != n.dim()) throw TheoremCheckFailure("pi not surjective");

  Subspace ker = nullspace(pi);
  if (ker.dim() == 0) return {std::move(pi), Matrix(p, dm, 0), 0};

  Module kermod = submodule(im.m, ker);
  Matrix ker_cols = ker.basis().transpose();

  std::vector<Subspace> summands;
  Subspace covered = Subspace::zero(p, kermod.dim());
  for (const auto& block : cert_a.blocks) {
    for (const Matrix& h : hom_space(block.simple, kermod)) {
      Subspace img = column_space(h);
      if (img.dim() == 0 || covered.intersect(img).dim() != 0) continue;
      summands.push_back(img);
      covered = covered.sum(img);
    }
  }
  if (covered.dim() != kermod.dim())
    throw TheoremCheckFailure("the kernel did not decompose into simple summands");

  Matrix head(p, dm, 0);
  for (const Subspace& ks : summands) {
    Module k = submodule(kermod, ks);
    auto surjections = hom_space(im.m, k);
    if (surjections.empty())
      throw TheoremCheckFailure("no surjection from the induced module onto a kernel summand");
    const Matrix& h = surjections.front();
    if (h.rank() != k.dim())
      throw TheoremCheckFailure("a map onto a simple kernel summand is not surjective");
    Matrix into_m = ker_cols * ks.basis().transpose() * h;
    head = head.hstack(into_m);
  }
  if (!(column_space(head) == ker))
    throw TheoremCheckFailure("the presentation head does not cover the kernel");
  return {std::move(pi), std::move(head), summands.size()};
}

}  // namespace cliffcorr
