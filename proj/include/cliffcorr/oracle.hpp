#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cliffcorr/algebra.hpp"
#include "cliffcorr/module.hpp"

namespace cliffcorr {

/// Hand-derived reference values for one bundled example.  Empty vectors mean
/// the corresponding fact was not recorded and should not be checked.
struct ExampleExpectations {
  bool a_semisimple = true;
  bool b_normal = false;
  std::vector<std::size_t> a_block_dims;  // sorted ascending
  std::vector<std::size_t> b_block_dims;  // sorted ascending
  std::vector<bool> stable;               // aligned with simples_of_b
};

/// A worked example: an algebra, a distinguished subalgebra, the simple
/// B-modules to push through the machinery, and what should come out.
struct ExampleInstance {
  std::string name;
  Algebra a;
  Subalgebra b;
  std::vector<Module> simples_of_b;
  ExampleExpectations expected;
};

/// Brute-force simplicity test: true iff every nonzero vector generates the
/// whole module.  Requires p^dim <= 10^6 ("too large" otherwise).  Built
/// purely on cyclic-span closure; shares nothing with the randomized
/// decomposition machinery it cross-checks.
bool oracle_is_simple(const Module& m);

/// Dimension of the centralizer {x : xa = ax for all a}, set up directly
/// from the structure constants.  For a split semisimple algebra this equals
/// the number of simple modules.
std::size_t oracle_simple_count(const Algebra& a);

/// The bundled example corpus, built from permutation generators and the
/// standard algebra constructors.  Deterministic: every call produces the
/// same instances in the same order.
std::vector<ExampleInstance> example_library();

}  // namespace cliffcorr
