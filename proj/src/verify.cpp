#include "cliffcorr/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <string>
#include <vector>

#include "cliffcorr/algebra.hpp"
#include "cliffcorr/clifford.hpp"
#include "cliffcorr/errors.hpp"
#include "cliffcorr/gf.hpp"
#include "cliffcorr/linalg.hpp"
#include "cliffcorr/module.hpp"
#include "cliffcorr/oracle.hpp"

namespace cliffcorr {

namespace {

void run_check(std::vector<CheckResult>& out, std::string name,
               const std::function<void()>& body) {
  try {
    body();
    out.push_back({std::move(name), true, ""});
  } catch (const std::exception& e) {
    out.push_back({std::move(name), false, e.what()});
  }
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

std::vector<std::size_t> sorted_dims(const WedderburnCertificate& cert) {
  std::vector<std::size_t> dims = cert.dims();
  std::sort(dims.begin(), dims.end());
  return dims;
}

Subspace ambient_span(const Subalgebra& b, const Subspace& local) {
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < local.dim(); ++r)
    rows.push_back(b.to_ambient(local.basis().row(r)));
  if (rows.empty()) return Subspace::zero(b.ambient().modulus(), b.ambient().dim());
  return Subspace::from_rows(b.ambient().modulus(), rows);
}

Subalgebra full_sub(const Algebra& a) {
  return Subalgebra::from_basis(a, Matrix::identity(a.modulus(), a.dim()));
}

bool within_oracle_budget(const Module& m) {
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < m.dim(); ++k) {
    if (count > 1000000 / m.modulus()) return false;
    count *= m.modulus();
  }
  return true;
}

// Everything checked for one simple B-module of one instance.
void verify_simple(std::vector<CheckResult>& out, const ExampleInstance& inst,
                   std::size_t k, std::uint64_t seed) {
  const Module& v = inst.simples_of_b[k];
  std::string tag = inst.name + " V" + std::to_string(k);
  std::uint64_t sub = derive_seed(seed, k);

  bool expected_stable = inst.expected.stable[k];
  run_check(out, tag + ": stability flag", [&] {
    StabilityResult st = is_stable(inst.a, inst.b, v);
    require(st.stable == expected_stable, "stability flag differs from the recorded value");
  });

  if (!inst.expected.b_normal) return;

  run_check(out, tag + ": stability equals ideal invariance", [&] {
    WedderburnCertificate cert_b = wedderburn(inst.b.algebra(), derive_seed(sub, 1));
    AnnihilatorData ann = annihilator_and_p(cert_b, v);
    bool inv = is_invariant(inst.a, ambient_span(inst.b, ann.j));
    require(inv == is_stable(inst.a, inst.b, v).stable,
            "ideal invariance disagrees with stability");
  });

  std::optional<CorrespondenceReport> rep_opt;
  run_check(out, tag + ": correspondence report", [&] {
    rep_opt.emplace(correspond(inst.a, inst.b, v, sub));
    const CorrespondenceReport& rep = *rep_opt;
    require(rep.stable == expected_stable, "report stability differs from the recorded value");
    require(!rep.pairs.empty(), "no corresponding simples");
    require(rep.oracle_complete, "completeness sweep failed");
    for (const auto& pair : rep.pairs)
      require(pair.round_trip, "a round trip failed");
  });
  if (!rep_opt) return;
  const CorrespondenceReport& rep = *rep_opt;
  const InducedModule& im = rep.induced;

  if (rep.stable) {
    run_check(out, tag + ": dimension laws", [&] {
      require(im.m.dim() == v.dim() * rep.dim_e, "dim M != dim V * dim E");
      for (const auto& pair : rep.pairs)
        require(pair.a_simple.dim() == v.dim() * pair.e_simple.dim(),
                "dim(M tensor U) != dim V * dim U");
    });

    run_check(out, tag + ": static A-modules are the V-isotypic ones", [&] {
      WedderburnCertificate cert_a = wedderburn(inst.a, derive_seed(sub, 2));
      std::vector<Module> sweep;
      for (const auto& block : cert_a.blocks) sweep.push_back(block.simple);
      sweep.push_back(regular_module(inst.a));
      for (const Module& n : sweep) {
        Subspace socle = v_socle(v, restrict_module(n, inst.b));
        require(static_check_A(im, n) == (socle.dim() == n.dim()),
                "static check disagrees with the socle test");
      }
    });

    run_check(out, tag + ": all E-modules are static", [&] {
      WedderburnCertificate cert_e = wedderburn(im.e.algebra, derive_seed(sub, 3));
      for (const auto& block : cert_e.blocks)
        require(static_check_E(im, block.simple), "a simple E-module is not static");
      require(static_check_E(im, regular_module(im.e.algebra)),
              "the regular E-module is not static");
    });

    run_check(out, tag + ": round trips from the A side", [&] {
      WedderburnCertificate cert_a = wedderburn(inst.a, derive_seed(sub, 4));
      for (const auto& block : cert_a.blocks) {
        if (multiplicity(v, restrict_module(block.simple, inst.b)) == 0) continue;
        Subspace socle = v_socle(v, restrict_module(block.simple, inst.b));
        require(socle.dim() == block.simple.dim(),
                "a simple containing V is not V-isotypic on restriction");
        Module back = tensor_over_E(im, hom_as_E_module(im, block.simple));
        require(simple_modules_isomorphic(back, block.simple),
                "tensor of hom does not return the module");
      }
    });
  }

  std::optional<std::pair<StabilizerReport, StabilizerReport>> stabs;
  run_check(out, tag + ": canonical stabilizers verify", [&] {
    stabs.emplace(rieffel_stabilizers(inst.a, inst.b, v, derive_seed(sub, 5)));
  });
  if (!stabs) return;
  const StabilizerReport& s_min = stabs->first;
  const StabilizerReport& s_max = stabs->second;

  run_check(out, tag + ": definition and criterion agree on the sweep", [&] {
    const StabilizerReport at_b =
        is_stabilizer(inst.a, inst.b, v, inst.b, derive_seed(sub, 6));
    const StabilizerReport at_a =
        is_stabilizer(inst.a, inst.b, v, full_sub(inst.a), derive_seed(sub, 7));
    for (const StabilizerReport* r : {&at_b, &at_a, &s_min, &s_max})
      require(r->definition_ok() == r->criterion_ok(),
              "definition and criterion disagree");
    require(s_min.definition_ok() && s_max.definition_ok(),
            "a constructed stabilizer fails its own definition");
  });

  run_check(out, tag + ": both construction paths give the same simples", [&] {
    auto through = induce_through_stabilizer(inst.a, inst.b, v, s_min.s, derive_seed(sub, 8));
    require(through.size() == rep.pairs.size(),
            "the construction paths produce different counts");
    for (const auto& ip : through) {
      std::size_t hits = 0;
      for (const auto& pair : rep.pairs)
        if (simple_modules_isomorphic(ip.a_simple, pair.a_simple)) ++hits;
      require(hits == 1, "a through-stabilizer simple matches " + std::to_string(hits) +
                             " direct simples");
    }
  });

  run_check(out, tag + ": restricted endomorphism chain", [&] {
    for (const StabilizerReport* r : {&s_min, &s_max}) {
      if (!r->definition_ok()) continue;
      endalg_chain_check(inst.a, inst.b, v, r->s, derive_seed(sub, 9));
    }
    StabilizerReport at_b = is_stabilizer(inst.a, inst.b, v, inst.b, derive_seed(sub, 10));
    if (at_b.definition_ok())
      endalg_chain_check(inst.a, inst.b, v, inst.b, derive_seed(sub, 11));
    StabilizerReport at_a =
        is_stabilizer(inst.a, inst.b, v, full_sub(inst.a), derive_seed(sub, 12));
    if (at_a.definition_ok())
      endalg_chain_check(inst.a, inst.b, v, full_sub(inst.a), derive_seed(sub, 13));
  });

  run_check(out, tag + ": restriction algebra blocks", [&] {
    FAlgebraReport fr = f_algebra_check(im, derive_seed(sub, 14));
    require(fr.e_embedded, "E does not embed in F");
    std::vector<std::size_t> dims = fr.f_block_dims;
    std::vector<std::size_t> mults = fr.restriction_multiplicities;
    std::sort(dims.begin(), dims.end());
    std::sort(mults.begin(), mults.end());
    require(dims == mults, "F blocks do not match restriction multiplicities");
  });
}

}  // namespace

std::vector<CheckResult> run_verify_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::vector<ExampleInstance> lib = example_library();

  for (std::size_t idx = 0; idx < lib.size(); ++idx) {
    const ExampleInstance& inst = lib[idx];
    std::uint64_t inst_seed = derive_seed(seed, idx);

    if (!inst.expected.a_semisimple) {
      run_check(out, inst.name + ": certification is refused", [&] {
        try {
          wedderburn(inst.a, inst_seed);
        } catch (const HypothesisFailure&) {
          return;
        }
        require(false, "a non-semisimple algebra was certified");
      });
      continue;
    }

    run_check(out, inst.name + ": block dims of A", [&] {
      WedderburnCertificate cert = wedderburn(inst.a, inst_seed);
      std::size_t sq = 0;
      for (std::size_t d : cert.dims()) sq += d * d;
      require(sq == inst.a.dim(), "squared dims do not sum to dim A");
      if (!inst.expected.a_block_dims.empty())
        require(sorted_dims(cert) == inst.expected.a_block_dims,
                "block dims differ from the recorded values");
    });

    run_check(out, inst.name + ": block dims of B", [&] {
      WedderburnCertificate cert = wedderburn(inst.b.algebra(), derive_seed(inst_seed, 100));
      if (!inst.expected.b_block_dims.empty())
        require(sorted_dims(cert) == inst.expected.b_block_dims,
                "block dims differ from the recorded values");
    });

    run_check(out, inst.name + ": normality", [&] {
      WedderburnCertificate cert = wedderburn(inst.a, derive_seed(inst_seed, 101));
      require(is_normal_subring(inst.a, cert, inst.b) == inst.expected.b_normal,
              "normality differs from the recorded value");
    });

    for (std::size_t k = 0; k < inst.simples_of_b.size(); ++k)
      verify_simple(out, inst, k, inst_seed);
  }

  return out;
}

std::vector<CheckResult> run_oracle_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::vector<ExampleInstance> lib = example_library();

  for (std::size_t idx = 0; idx < lib.size(); ++idx) {
    const ExampleInstance& inst = lib[idx];
    if (!inst.expected.a_semisimple) continue;
    std::uint64_t inst_seed = derive_seed(seed, idx);

    run_check(out, inst.name + ": centralizer count of A", [&] {
      WedderburnCertificate cert = wedderburn(inst.a, inst_seed);
      require(oracle_simple_count(inst.a) == cert.blocks.size(),
              "centralizer dimension differs from the block count");
    });

    run_check(out, inst.name + ": centralizer count of B", [&] {
      WedderburnCertificate cert = wedderburn(inst.b.algebra(), derive_seed(inst_seed, 1));
      require(oracle_simple_count(inst.b.algebra()) == cert.blocks.size(),
              "centralizer dimension differs from the block count");
    });

    for (std::size_t k = 0; k < inst.simples_of_b.size(); ++k) {
      const Module& v = inst.simples_of_b[k];
      std::string tag = inst.name + " V" + std::to_string(k);
      std::uint64_t sub = derive_seed(inst_seed, 200 + k);

      run_check(out, tag + ": exhaustive simplicity of V", [&] {
        require(oracle_is_simple(v) == is_abs_simple(v),
                "the oracle disagrees on V");
      });

      if (!inst.expected.b_normal) continue;

      run_check(out, tag + ": exhaustive simplicity along the correspondence", [&] {
        CorrespondenceReport rep = correspond(inst.a, inst.b, v, sub);
        require(oracle_simple_count(rep.induced.e.algebra) == rep.pairs.size(),
                "centralizer count of E differs from the pair count");
        if (within_oracle_budget(rep.induced.m))
          require(oracle_is_simple(rep.induced.m) == is_abs_simple(rep.induced.m),
                  "the oracle disagrees on the induced module");
        for (const auto& pair : rep.pairs) {
          if (!within_oracle_budget(pair.a_simple)) continue;
          require(oracle_is_simple(pair.a_simple), "a corresponding simple is not simple");
          require(is_abs_simple(pair.a_simple), "a corresponding simple has extra endomorphisms");
        }
      });
    }
  }

  return out;
}

}  // namespace cliffcorr
