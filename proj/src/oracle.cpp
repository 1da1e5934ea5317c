#include "cliffcorr/oracle.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cliffcorr/errors.hpp"
#include "cliffcorr/gf.hpp"
#include "cliffcorr/linalg.hpp"

namespace cliffcorr {

namespace {

// Incremental echelon span.  insert returns true when the vector was not
// already in the span; rows are kept pivot-normalized but not fully reduced,
// which is enough for membership.
struct Echelon {
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;

  bool insert(Vec v) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Fp c = v.at(pivots[k]);
      if (!c.is_zero()) v = v - rows[k].scale(c);
    }
    std::size_t piv = v.size();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v.at(j).is_zero()) {
        piv = j;
        break;
      }
    }
    if (piv == v.size()) return false;
    v = v.scale(v.at(piv).inv());
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    return true;
  }
};

// Cyclic-span closure: does v generate the whole module?
bool generates(const Module& m, const Vec& v) {
  Echelon span;
  span.insert(v);
  std::vector<Vec> frontier{v};
  while (!frontier.empty()) {
    Vec w = std::move(frontier.back());
    frontier.pop_back();
    for (const Matrix& rho : m.actions()) {
      Vec u = rho * w;
      if (span.insert(u)) {
        if (span.rows.size() == m.dim()) return true;
        frontier.push_back(std::move(u));
      }
    }
  }
  return span.rows.size() == m.dim();
}

std::size_t find_element(const CayleyTable& t, const std::vector<std::size_t>& perm) {
  for (std::size_t g = 0; g < t.order(); ++g) {
    if (t.permutations()[g] == perm) return g;
  }
  throw std::logic_error("generator permutation not found in table");
}

// e, g, g^2, ... up to the order of g.
std::vector<std::size_t> cyclic_chain(const CayleyTable& t, std::size_t g) {
  std::vector<std::size_t> chain{t.identity()};
  std::size_t x = g;
  while (x != t.identity()) {
    chain.push_back(x);
    x = t.mul(x, g);
  }
  return chain;
}

// Span of the ambient basis elements at the given indices, in that order.
Subalgebra unit_span(const Algebra& ga, const std::vector<std::size_t>& idx) {
  std::vector<Vec> rows;
  for (std::size_t g : idx) rows.push_back(Vec::unit(ga.modulus(), ga.dim(), g));
  return Subalgebra::from_basis(ga, Matrix::from_rows(ga.modulus(), rows));
}

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

// Smallest element of multiplicative order exactly m modulo p.
std::uint64_t root_of_unity(std::uint64_t p, std::uint64_t m) {
  for (std::uint64_t w = 1; w < p; ++w) {
    std::uint64_t x = w;
    std::uint64_t order = 1;
    while (x != 1) {
      x = x * w % p;
      ++order;
    }
    if (order == m) return w;
  }
  throw std::logic_error("no root of unity of the requested order");
}

// All characters of a cyclic subalgebra whose local basis is e, g, g^2, ...
// in that order; character k sends g to the k-th power of a fixed root.
std::vector<Module> cyclic_characters(const Subalgebra& b) {
  const Algebra& local = b.algebra();
  std::uint64_t p = local.modulus();
  std::uint64_t m = local.dim();
  std::uint64_t w = m == 1 ? 1 : root_of_unity(p, m);
  std::vector<Module> out;
  for (std::uint64_t k = 0; k < m; ++k) {
    std::vector<std::uint64_t> vals;
    std::uint64_t wk = Fp(w, p).pow(k).value();
    std::uint64_t cur = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
      vals.push_back(cur);
      cur = cur * wk % p;
    }
    out.push_back(character(local, vals));
  }
  return out;
}

Matrix anticommuting_cocycle(std::uint64_t p) {
  Matrix alpha(p, 4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      bool minus = (i % 2 == 1) && (j / 2 == 1);
      alpha.set(i, j, minus ? -Fp::one(p) : Fp::one(p));
    }
  }
  return alpha;
}

}  // namespace

bool oracle_is_simple(const Module& m) {
  std::uint64_t p = m.modulus();
  std::size_t dim = m.dim();
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (count > 1000000 / p) throw HypothesisFailure("too large");
    count *= p;
  }
  if (dim == 0) return false;

  std::vector<std::uint64_t> digits(dim, 0);
  for (std::uint64_t n = 1; n < count; ++n) {
    std::size_t i = 0;
    while (digits[i] == p - 1) digits[i++] = 0;
    ++digits[i];
    Vec v(p, dim);
    for (std::size_t j = 0; j < dim; ++j) v.set(j, Fp(digits[j], p));
    if (!generates(m, v)) return false;
  }
  return true;
}

std::size_t oracle_simple_count(const Algebra& a) {
  std::size_t n = a.dim();
  std::uint64_t p = a.modulus();
  // One equation row per (i, k): the a_k-coordinate of a_j x - x a_j must
  // vanish against every basis element a_i, unknowns x_j.
  Matrix eq(p, n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec ji = a.structure(j, i);
      Vec ij = a.structure(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        eq.set(i * n + k, j, ji.at(k) - ij.at(k));
      }
    }
  }
  return nullspace(eq).dim();
}

std::vector<ExampleInstance> example_library() {
  std::vector<ExampleInstance> lib;

  // S3 over GF(7), with the rotation subgroup and with a reflection subgroup.
  {
    CayleyTable s3 = CayleyTable::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
    Algebra a = Algebra::group_algebra(7, s3);
    std::size_t rot = find_element(s3, {1, 2, 0});
    std::size_t swp = find_element(s3, {1, 0, 2});

    Subalgebra a3 = unit_span(a, cyclic_chain(s3, rot));
    ExampleInstance alt{"s3_a3_gf7", a, a3, cyclic_characters(a3), {}};
    alt.expected.b_normal = true;
    alt.expected.a_block_dims = {1, 1, 2};
    alt.expected.b_block_dims = {1, 1, 1};
    alt.expected.stable = {true, false, false};
    lib.push_back(std::move(alt));

    Subalgebra refl = unit_span(a, cyclic_chain(s3, swp));
    ExampleInstance tr{"s3_transposition_gf7", a, refl, cyclic_characters(refl), {}};
    tr.expected.b_normal = false;
    tr.expected.a_block_dims = {1, 1, 2};
    tr.expected.b_block_dims = {1, 1};
    tr.expected.stable = {false, false};
    lib.push_back(std::move(tr));
  }

  // D4 over GF(7) with its center.
  {
    CayleyTable d4 = CayleyTable::from_permutations(4, {{1, 2, 3, 0}, {0, 3, 2, 1}});
    Algebra a = Algebra::group_algebra(7, d4);
    std::size_t r = find_element(d4, {1, 2, 3, 0});
    Subalgebra z = unit_span(a, cyclic_chain(d4, d4.mul(r, r)));
    ExampleInstance inst{"d4_center_gf7", a, z, cyclic_characters(z), {}};
    inst.expected.b_normal = true;
    inst.expected.a_block_dims = {1, 1, 1, 1, 2};
    inst.expected.b_block_dims = {1, 1};
    inst.expected.stable = {true, true};
    lib.push_back(std::move(inst));
  }

  // Q8 over GF(5) with the subgroup generated by i, via the regular
  // permutation action on 1, -1, i, -i, j, -j, k, -k.
  {
    CayleyTable q8 = CayleyTable::from_permutations(
        8, {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}});
    Algebra a = Algebra::group_algebra(5, q8);
    std::size_t i = find_element(q8, {2, 3, 1, 0, 6, 7, 5, 4});
    Subalgebra b = unit_span(a, cyclic_chain(q8, i));
    ExampleInstance inst{"q8_i_gf5", a, b, cyclic_characters(b), {}};
    inst.expected.b_normal = true;
    inst.expected.a_block_dims = {1, 1, 1, 1, 2};
    inst.expected.b_block_dims = {1, 1, 1, 1};
    inst.expected.stable = {true, false, true, false};
    lib.push_back(std::move(inst));
  }

  // C6 over GF(7) with its index-2 subgroup.
  {
    CayleyTable c6 = CayleyTable::cyclic(6);
    Algebra a = Algebra::group_algebra(7, c6);
    Subalgebra c3 = unit_span(a, cyclic_chain(c6, 2));
    ExampleInstance inst{"c6_c3_gf7", a, c3, cyclic_characters(c3), {}};
    inst.expected.b_normal = true;
    inst.expected.a_block_dims = {1, 1, 1, 1, 1, 1};
    inst.expected.b_block_dims = {1, 1, 1};
    inst.expected.stable = {true, true, true};
    lib.push_back(std::move(inst));
  }

  // Twisted Klein four-group over GF(7): anticommuting generators square to
  // one, a 2x2 matrix algebra in disguise.  The base ring is the scalars.
  {
    CayleyTable klein = CayleyTable::cyclic(2).direct_product(CayleyTable::cyclic(2));
    Algebra a = Algebra::twisted_group_algebra(7, klein, anticommuting_cocycle(7));
    Subalgebra b = unit_span(a, {klein.identity()});
    ExampleInstance inst{"twisted_c2c2_gf7", a, b, {character(b.algebra(), {1})}, {}};
    inst.expected.b_normal = true;
    inst.expected.a_block_dims = {2};
    inst.expected.b_block_dims = {1};
    inst.expected.stable = {true};
    lib.push_back(std::move(inst));
  }

  // Skew products GF(7)[C3] # C2: inversion action (another copy of kS3) and
  // trivial action (a copy of kC6, where every character must be stable).
  {
    Algebra base = Algebra::group_algebra(7, CayleyTable::cyclic(3));
    CayleyTable c2 = CayleyTable::cyclic(2);

    Matrix inv(7, 3, 3);
    inv.set(0, 0, Fp::one(7));
    inv.set(2, 1, Fp::one(7));
    inv.set(1, 2, Fp::one(7));
    Algebra skew = Algebra::skew_group_algebra(base, c2, {Matrix::identity(7, 3), inv});
    Subalgebra b = unit_span(skew, {0, 1, 2});
    ExampleInstance tw{"skew_c3_by_c2_inversion_gf7", skew, b, cyclic_characters(b), {}};
    tw.expected.b_normal = true;
    tw.expected.a_block_dims = {1, 1, 2};
    tw.expected.b_block_dims = {1, 1, 1};
    tw.expected.stable = {true, false, false};
    lib.push_back(std::move(tw));

    Algebra plain = Algebra::skew_group_algebra(
        base, c2, {Matrix::identity(7, 3), Matrix::identity(7, 3)});
    Subalgebra bp = unit_span(plain, {0, 1, 2});
    ExampleInstance pl{"skew_c3_by_c2_trivial_gf7", plain, bp, cyclic_characters(bp), {}};
    pl.expected.b_normal = true;
    pl.expected.a_block_dims = {1, 1, 1, 1, 1, 1};
    pl.expected.b_block_dims = {1, 1, 1};
    pl.expected.stable = {true, true, true};
    lib.push_back(std::move(pl));
  }

  // GF(3)[C3] is not semisimple: 3 divides the group order.
  {
    Algebra a = Algebra::group_algebra(3, CayleyTable::cyclic(3));
    Subalgebra b = Subalgebra::from_basis(a, Matrix::identity(3, 3));
    ExampleInstance inst{"gf3_c3_modular", a, b, {}, {}};
    inst.expected.a_semisimple = false;
    lib.push_back(std::move(inst));
  }

  return lib;
}

}  // namespace cliffcorr
