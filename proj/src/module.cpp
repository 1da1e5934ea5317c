#include "cliffcorr/module.hpp"

#include <utility>

#include "cliffcorr/errors.hpp"
#include "cliffcorr/gf.hpp"

namespace cliffcorr {

Module::Module(Algebra a, std::vector<Matrix> action)
    : a_(std::move(a)), rho_(std::move(action)) {
  std::size_t n = a_.dim();
  if (rho_.size() != n) throw InvalidInput("need one action matrix per basis element");
  dim_ = rho_.empty() ? 0 : rho_[0].rows();
  for (const Matrix& r : rho_) {
    if (r.modulus() != modulus()) throw InvalidInput("mixed moduli");
    if (r.rows() != dim_ || r.cols() != dim_) throw InvalidInput("action matrices must be square of equal size");
  }
  if (act(a_.one()) != Matrix::identity(modulus(), dim_)) throw InvalidInput("unit does not act as the identity");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rho_[i] * rho_[j] != act(a_.structure(i, j))) {
        throw InvalidInput("action does not respect the structure constants");
      }
    }
  }
}

Matrix Module::act(const Vec& x) const {
  if (x.size() != a_.dim() || x.modulus() != modulus()) throw InvalidInput("element has the wrong shape");
  Matrix acc(modulus(), dim_, dim_);
  for (std::size_t i = 0; i < a_.dim(); ++i) {
    if (!x.at(i).is_zero()) acc = acc + rho_[i].scale(x.at(i));
  }
  return acc;
}

Vec Module::apply(const Vec& x, const Vec& m) const {
  return act(x) * m;
}

bool Module::operator==(const Module& o) const {
  return a_ == o.a_ && rho_ == o.rho_;
}

Module regular_module(const Algebra& a) {
  std::vector<Matrix> rho;
  rho.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) rho.push_back(a.basis_left_mult(i));
  return Module(a, std::move(rho));
}

Module restrict_module(const Module& m, const Subalgebra& b) {
  if (!(b.ambient() == m.algebra())) throw InvalidInput("subalgebra does not live in the module's algebra");
  std::vector<Matrix> rho;
  rho.reserve(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) {
    rho.push_back(m.act(b.to_ambient(Vec::unit(m.modulus(), b.dim(), i))));
  }
  return Module(b.algebra(), std::move(rho));
}

Module direct_sum(const Module& m, const Module& n) {
  if (!(m.algebra() == n.algebra())) throw InvalidInput("modules live over different algebras");
  std::uint64_t p = m.modulus();
  std::size_t dm = m.dim(), dn = n.dim();
  std::vector<Matrix> rho;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    Matrix block(p, dm + dn, dm + dn);
    for (std::size_t r = 0; r < dm; ++r) {
      for (std::size_t c = 0; c < dm; ++c) block.set(r, c, m.action(i).at(r, c));
    }
    for (std::size_t r = 0; r < dn; ++r) {
      for (std::size_t c = 0; c < dn; ++c) block.set(dm + r, dm + c, n.action(i).at(r, c));
    }
    rho.push_back(std::move(block));
  }
  return Module(m.algebra(), std::move(rho));
}

bool is_invariant_subspace(const Module& m, const Subspace& s) {
  if (s.ambient() != m.dim() || s.modulus() != m.modulus()) throw InvalidInput("subspace has the wrong ambient space");
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    for (std::size_t j = 0; j < s.dim(); ++j) {
      if (!s.contains(m.action(i) * s.basis().row(j))) return false;
    }
  }
  return true;
}

Module submodule(const Module& m, const Subspace& s) {
  if (!is_invariant_subspace(m, s)) throw InvalidInput("subspace is not invariant under the action");
  std::uint64_t p = m.modulus();
  std::vector<Matrix> rho;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    Matrix r(p, s.dim(), s.dim());
    for (std::size_t j = 0; j < s.dim(); ++j) {
      auto coords = s.coordinates_of(m.action(i) * s.basis().row(j));
      for (std::size_t k = 0; k < s.dim(); ++k) r.set(k, j, coords->at(k));
    }
    rho.push_back(std::move(r));
  }
  return Module(m.algebra(), std::move(rho));
}

QuotientModule quotient_module(const Module& m, const Subspace& s) {
  if (!is_invariant_subspace(m, s)) throw InvalidInput("subspace is not invariant under the action");
  std::uint64_t p = m.modulus();
  std::size_t n = m.dim(), k = s.dim(), q = n - k;

  std::vector<std::size_t> free_cols;
  {
    std::size_t next_pivot = 0;
    RrefResult r = rref(s.basis());
    for (std::size_t c = 0; c < n; ++c) {
      if (next_pivot < r.pivots.size() && r.pivots[next_pivot] == c) {
        ++next_pivot;
      } else {
        free_cols.push_back(c);
      }
    }
  }

  // projection = select free coordinates after eliminating pivot coordinates
  // with the RREF rows; it vanishes exactly on the subspace.
  Matrix proj(p, q, n);
  for (std::size_t a = 0; a < q; ++a) proj.set(a, free_cols[a], Fp::one(p));
  RrefResult r = rref(s.basis());
  for (std::size_t row = 0; row < k; ++row) {
    for (std::size_t a = 0; a < q; ++a) {
      proj.set(a, r.pivots[row], proj.at(a, r.pivots[row]) - r.mat.at(row, free_cols[a]));
    }
  }
  Matrix sec(p, n, q);
  for (std::size_t a = 0; a < q; ++a) sec.set(free_cols[a], a, Fp::one(p));

  if (proj * sec != Matrix::identity(p, q)) throw TheoremCheckFailure("quotient projection does not split");
  for (std::size_t j = 0; j < k; ++j) {
    if (!(proj * s.basis().row(j)).is_zero()) throw TheoremCheckFailure("quotient projection does not kill the subspace");
  }

  std::vector<Matrix> rho;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) rho.push_back(proj * m.action(i) * sec);
  return QuotientModule{Module(m.algebra(), std::move(rho)), std::move(proj), std::move(sec)};
}

std::vector<Matrix> hom_space(const Module& m, const Module& n) {
  if (!(m.algebra() == n.algebra())) throw InvalidInput("modules live over different algebras");
  std::uint64_t p = m.modulus();
  std::size_t dm = m.dim(), dn = n.dim();
  // vec(H) row-major: H rho_M(i) = rho_N(i) H becomes
  // (I (x) rho_M(i)^T - rho_N(i) (x) I) vec(H) = 0.
  Matrix stacked(p, 0, dn * dm);
  Matrix im = Matrix::identity(p, dm), in = Matrix::identity(p, dn);
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    stacked = stacked.vstack(in.kron(m.action(i).transpose()) - n.action(i).kron(im));
  }
  Subspace sols = nullspace(stacked);
  std::vector<Matrix> basis;
  basis.reserve(sols.dim());
  for (std::size_t i = 0; i < sols.dim(); ++i) {
    basis.push_back(Matrix::unflatten(sols.basis().row(i), dn, dm));
  }
  return basis;
}

Matrix EndoAlgebra::act(const Vec& e) const {
  if (e.size() != basis.size()) throw InvalidInput("element has the wrong shape");
  Matrix acc(algebra.modulus(), basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!e.at(i).is_zero()) acc = acc + basis[i].scale(e.at(i));
  }
  return acc;
}

EndoAlgebra endo_algebra_op(const Module& m) {
  std::uint64_t p = m.modulus();
  std::vector<Matrix> basis = hom_space(m, m);
  std::size_t k = basis.size();

  Matrix flats(p, k, m.dim() * m.dim());
  for (std::size_t i = 0; i < k; ++i) flats.set_row(i, basis[i].flatten());
  Matrix cols = flats.transpose();
  auto coords = [&](const Matrix& h) {
    auto x = solve_vec(cols, h.flatten());
    if (!x) throw TheoremCheckFailure("endomorphism composite escapes the endomorphism space");
    return *x;
  };

  std::vector<Vec> c;
  c.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) c.push_back(coords(basis[j] * basis[i]));
  }
  Vec one = coords(Matrix::identity(p, m.dim()));
  Algebra alg = Algebra::from_structure_constants(p, k, std::move(c), std::move(one));
  return EndoAlgebra{std::move(alg), std::move(basis)};
}

std::size_t multiplicity(const Module& simple, const Module& n) {
  if (hom_space(simple, simple).size() != 1) {
    throw HypothesisFailure("not split: the simple module has endomorphisms beyond scalars");
  }
  return hom_space(simple, n).size();
}

bool is_abs_simple(const Module& m) {
  return hom_space(m, m).size() == 1;
}

bool simple_modules_isomorphic(const Module& m, const Module& n) {
  std::vector<Matrix> homs = hom_space(m, n);
  if (homs.empty()) return false;
  if (m.dim() != n.dim() || homs[0].rank() != m.dim()) {
    throw TheoremCheckFailure("nonzero homomorphism between supposedly simple modules is not invertible");
  }
  return true;
}

Module extract_simple(const Module& m, std::uint64_t seed) {
  EndoAlgebra e = endo_algebra_op(m);
  Vec f = primitive_idempotent(e.algebra, seed);
  Subspace image = column_space(e.act(f));
  if (image.dim() == 0) throw TheoremCheckFailure("primitive idempotent endomorphism has zero image");
  return submodule(m, image);
}

}  // namespace cliffcorr
