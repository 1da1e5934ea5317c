#include <string>
#include <utility>

#include "cliffcorr/errors.hpp"
#include "cliffcorr/gf.hpp"
#include "cliffcorr/module.hpp"

namespace cliffcorr {

std::vector<std::size_t> WedderburnCertificate::dims() const {
  std::vector<std::size_t> out;
  out.reserve(blocks.size());
  for (const WedderburnBlock& b : blocks) out.push_back(b.simple.dim());
  return out;
}

WedderburnCertificate wedderburn(const Algebra& a, std::uint64_t seed) {
  std::uint64_t p = a.modulus();
  std::vector<Vec> pci = primitive_central_idempotents(a, derive_seed(seed, 0xce));
  Module reg = regular_module(a);

  std::vector<WedderburnBlock> blocks;
  std::size_t total = 0;
  for (std::size_t i = 0; i < pci.size(); ++i) {
    // the component A e_i, as a left module in its own coordinates
    Subspace component = column_space(a.right_mult(pci[i]));
    Module comp = submodule(reg, component);
    Module simple = extract_simple(comp, derive_seed(seed, 0xb10c + i));
    std::size_t d = simple.dim();

    if (hom_space(simple, simple).size() != 1) {
      throw HypothesisFailure("not split: a simple module has endomorphisms beyond scalars");
    }
    if (component.dim() != d * d) {
      throw HypothesisFailure("not semisimple: a component of dimension " +
                              std::to_string(component.dim()) + " cannot be a matrix block of size " +
                              std::to_string(d));
    }
    // the representation must fill the whole d x d matrix algebra
    Matrix images(p, a.dim(), d * d);
    for (std::size_t j = 0; j < a.dim(); ++j) images.set_row(j, simple.action(j).flatten());
    if (images.rank() != d * d) {
      throw HypothesisFailure("not semisimple: the representation does not fill its matrix block");
    }
    if (hom_space(comp, comp).size() != d * d) {
      throw HypothesisFailure("not semisimple: a component has the wrong endomorphism dimension");
    }

    total += d * d;
    blocks.push_back(WedderburnBlock{pci[i], std::move(simple), d});
  }
  if (total != a.dim()) {
    throw HypothesisFailure("not semisimple: block dimensions sum to " + std::to_string(total) +
                            " instead of " + std::to_string(a.dim()));
  }
  return WedderburnCertificate{a, std::move(blocks)};
}

}  // namespace cliffcorr
