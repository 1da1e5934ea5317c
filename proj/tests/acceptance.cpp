// Acceptance suite: one check per shipped claim, each printed as a single
// PASS/FAIL line.  Everything is exact arithmetic, so every comparison is
// equality; a FAIL prints the first violated condition.  Exit status is the
// number of failed criteria.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "cliffcorr/algebra.hpp"
#include "cliffcorr/clifford.hpp"
#include "cliffcorr/errors.hpp"
#include "cliffcorr/gf.hpp"
#include "cliffcorr/linalg.hpp"
#include "cliffcorr/module.hpp"
#include "cliffcorr/oracle.hpp"

using namespace cliffcorr;
namespace fs = std::filesystem;

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

Matrix unit_rows(std::uint64_t p, std::size_t n, const std::vector<std::size_t>& idx) {
  std::vector<Vec> rows;
  for (std::size_t i : idx) rows.push_back(Vec::unit(p, n, i));
  return Matrix::from_rows(p, rows);
}

Subalgebra group_sub(const Algebra& ga, const std::vector<std::size_t>& elems) {
  return Subalgebra::from_basis(ga, unit_rows(ga.modulus(), ga.dim(), elems));
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

Subspace ambient_span(const Subalgebra& b, const Subspace& local) {
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < local.dim(); ++r)
    rows.push_back(b.to_ambient(local.basis().row(r)));
  if (rows.empty()) return Subspace::zero(b.ambient().modulus(), b.ambient().dim());
  return Subspace::from_rows(b.ambient().modulus(), rows);
}

std::size_t find_perm(const CayleyTable& t, const std::vector<std::size_t>& perm) {
  for (std::size_t g = 0; g < t.order(); ++g)
    if (t.permutations()[g] == perm) return g;
  throw std::logic_error("generator not found");
}

/// One (algebra, subalgebra, simple B-module) triple under test, shared
/// across criteria so the oracle sweep sees every module they touch.
struct Instance {
  std::string name;
  Algebra a;
  Subalgebra b;
  Module v;
};

struct Fixtures {
  std::vector<Instance> instances;   // criteria 1-3 inputs, in order
  std::vector<Module> touched;       // every module produced along the way
  std::vector<Algebra> corpus;       // every algebra certified along the way

  void touch(const Module& m) { touched.push_back(m); }
  void certified(const Algebra& a) { corpus.push_back(a); }
};

Fixtures build_fixtures() {
  Fixtures fx;

  CayleyTable s3 = CayleyTable::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  Algebra ks3 = Algebra::group_algebra(7, s3);
  Subalgebra a3 = group_sub(ks3, {0, 2, 5});
  fx.instances.push_back({"s3 omega", ks3, a3, character(a3.algebra(), {1, 2, 4})});
  fx.instances.push_back({"s3 trivial", ks3, a3, character(a3.algebra(), {1, 1, 1})});

  CayleyTable d4 = CayleyTable::from_permutations(4, {{1, 2, 3, 0}, {0, 3, 2, 1}});
  Algebra kd4 = Algebra::group_algebra(7, d4);
  std::size_t r = find_perm(d4, {1, 2, 3, 0});
  Subalgebra zd4 = group_sub(kd4, {0, d4.mul(r, r)});
  fx.instances.push_back({"d4 sign", kd4, zd4, character(zd4.algebra(), {1, 6})});

  CayleyTable q8 = CayleyTable::from_permutations(
      8, {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}});
  Algebra kq8 = Algebra::group_algebra(5, q8);
  std::size_t i = find_perm(q8, {2, 3, 1, 0, 6, 7, 5, 4});
  Subalgebra ich = group_sub(kq8, {0, i, q8.mul(i, i), q8.mul(q8.mul(i, i), i)});
  fx.instances.push_back({"q8 chi2", kq8, ich, character(ich.algebra(), {1, 2, 4, 3})});
  fx.instances.push_back({"q8 chi4", kq8, ich, character(ich.algebra(), {1, 4, 1, 4})});

  return fx;
}

std::vector<std::size_t> sorted_dims(const WedderburnCertificate& cert) {
  std::vector<std::size_t> dims = cert.dims();
  std::sort(dims.begin(), dims.end());
  return dims;
}

void touch_report(Fixtures& fx, const CorrespondenceReport& rep) {
  fx.touch(rep.induced.v);
  fx.touch(rep.induced.m);
  for (const auto& pr : rep.pairs) {
    fx.touch(pr.e_simple);
    fx.touch(pr.a_simple);
  }
  fx.certified(rep.induced.e.algebra);
}

// ---------------------------------------------------------------------------

void criterion_1(Fixtures& fx) {
  const Instance& om = fx.instances[0];
  const Instance& tr = fx.instances[1];

  WedderburnCertificate cert_a = wedderburn(om.a, 0);
  fx.certified(om.a);
  require(sorted_dims(cert_a) == std::vector<std::size_t>{1, 1, 2},
          "block dims of GF(7)[S3] are not {1,1,2}");
  std::size_t sq = 0;
  for (std::size_t d : cert_a.dims()) sq += d * d;
  require(sq == 6, "block dims do not satisfy sum d^2 = 6");

  // omega: not stable, annihilator not invariant, one pair of dimension 2.
  StabilityResult st = is_stable(om.a, om.b, om.v);
  require(!st.stable, "omega is reported stable");
  WedderburnCertificate cert_b = wedderburn(om.b.algebra(), 0);
  fx.certified(om.b.algebra());
  AnnihilatorData ann = annihilator_and_p(cert_b, om.v);
  require(!is_invariant(om.a, ambient_span(om.b, ann.j)),
          "ann(omega) is reported invariant");

  CorrespondenceReport rep = correspond(om.a, om.b, om.v, 0);
  touch_report(fx, rep);
  require(!rep.stable, "correspondence disagrees on stability of omega");
  require(rep.dim_e == 1, "dim E != 1 for omega");
  require(rep.pairs.size() == 1, "omega does not yield exactly one pair");
  require(rep.pairs[0].a_simple.dim() == 2, "the A-module over omega is not 2-dim");
  require(oracle_is_simple(rep.pairs[0].a_simple),
          "the 2-dim A-module fails the exhaustive simplicity test");
  require(rep.oracle_complete, "oracle completeness flag is false for omega");

  // trivial: stable with multiplicity 2, two pairs landing on trivial and sign.
  StabilityResult st_t = is_stable(tr.a, tr.b, tr.v);
  require(st_t.stable && st_t.n == 2, "trivial character is not stable with n = 2");
  CorrespondenceReport rep_t = correspond(tr.a, tr.b, tr.v, 0);
  touch_report(fx, rep_t);
  require(rep_t.dim_e == 2, "dim E != 2 for the trivial character");
  WedderburnCertificate cert_e = wedderburn(rep_t.induced.e.algebra, 0);
  require(cert_e.blocks.size() == 2, "E does not split into 2 blocks");
  require(rep_t.pairs.size() == 2, "trivial character does not yield exactly 2 pairs");

  std::vector<std::uint64_t> sign_vals;
  for (std::size_t g = 0; g < 6; ++g)
    sign_vals.push_back(g == 0 || g == 2 || g == 5 ? 1 : 6);
  Module triv_a = character(tr.a, std::vector<std::uint64_t>(6, 1));
  Module sign_a = character(tr.a, sign_vals);
  for (const Module* target : {&triv_a, &sign_a}) {
    std::size_t hits = 0;
    for (const auto& pr : rep_t.pairs)
      if (simple_modules_isomorphic(pr.a_simple, *target)) ++hits;
    require(hits == 1, "the pairs do not match {trivial, sign} exactly once each");
  }
  for (const auto& pr : rep_t.pairs)
    require(pr.round_trip, "a round trip failed for the trivial character");
  require(rep_t.oracle_complete, "oracle completeness flag is false for trivial");
}

void criterion_2(Fixtures& fx) {
  const Instance& inst = fx.instances[2];
  StabilityResult st = is_stable(inst.a, inst.b, inst.v);
  require(st.stable && st.n == 4, "sign of Z(D4) is not stable with n = 4");

  CorrespondenceReport rep = correspond(inst.a, inst.b, inst.v, 0);
  touch_report(fx, rep);
  fx.certified(inst.a);
  fx.certified(inst.b.algebra());
  require(rep.dim_e == 4, "dim E != 4");
  require(!rep.induced.e.algebra.is_commutative(), "E is commutative");
  WedderburnCertificate cert_e = wedderburn(rep.induced.e.algebra, 0);
  require(cert_e.blocks.size() == 1 && cert_e.blocks[0].simple.dim() == 2,
          "E is not a single block with d = 2");

  require(rep.pairs.size() == 1, "not exactly one corresponding simple A-module");
  const CorrespondencePair& pr = rep.pairs[0];
  require(pr.a_simple.dim() == 2, "the corresponding A-module is not 2-dim");
  require(pr.a_simple.dim() == inst.v.dim() * pr.e_simple.dim(),
          "dim N != dim V * dim U");
}

void criterion_3(Fixtures& fx) {
  const Instance& c2 = fx.instances[3];
  const Instance& c4 = fx.instances[4];

  require(!is_stable(c2.a, c2.b, c2.v).stable, "chi with chi(i) = 2 is stable");
  auto [s_min, s_max] = rieffel_stabilizers(c2.a, c2.b, c2.v, 0);
  for (const StabilizerReport* rep : {&s_min, &s_max}) {
    require(rep->definition_ok(), "a canonical stabilizer fails the definition");
    require(rep->criterion_ok(), "a canonical stabilizer fails the criterion");
    require(rep->definition_ok() == rep->criterion_ok(),
            "definition and criterion disagree");
  }

  std::vector<InducedPair> through =
      induce_through_stabilizer(c2.a, c2.b, c2.v, s_min.s, 0);
  CorrespondenceReport rep = correspond(c2.a, c2.b, c2.v, 0);
  touch_report(fx, rep);
  fx.certified(c2.a);
  fx.certified(c2.b.algebra());
  require(through.size() == 1 && rep.pairs.size() == 1,
          "the two construction paths do not both yield a single module");
  fx.touch(through[0].s_simple);
  fx.touch(through[0].a_simple);
  require(through[0].a_simple.dim() == 2 && rep.pairs[0].a_simple.dim() == 2,
          "the single answer is not the 2-dim simple");
  require(simple_modules_isomorphic(through[0].a_simple, rep.pairs[0].a_simple),
          "the two construction paths disagree");

  StabilityResult st = is_stable(c4.a, c4.b, c4.v);
  require(st.stable, "chi' with chi'(i) = -1 is not stable");
  CorrespondenceReport rep4 = correspond(c4.a, c4.b, c4.v, 0);
  touch_report(fx, rep4);
  require(rep4.dim_e == 2, "dim E != 2 for chi'");
  require(rep4.pairs.size() == 2, "chi' does not yield exactly 2 pairs");
  for (const auto& pr : rep4.pairs)
    require(pr.a_simple.dim() == 1, "a chi' correspondent is not linear");
}

void criterion_4(Fixtures& fx) {
  for (std::size_t k : {0u, 2u, 3u}) {  // S3/A3, D4/Z, Q8/<i>
    const Instance& inst = fx.instances[k];
    require(is_normal_subring(inst.a, wedderburn(inst.a, 0), inst.b),
            inst.name + ": B is not normal");
  }

  // B inside every constructed skew or twisted product, plus the bundled
  // negative case of a non-normal group subalgebra.
  bool saw_product = false;
  for (const ExampleInstance& ex : example_library()) {
    bool product = ex.name.find("skew") != std::string::npos ||
                   ex.name.find("twisted") != std::string::npos;
    if (!product) continue;
    saw_product = true;
    require(is_normal_subring(ex.a, wedderburn(ex.a, 0), ex.b),
            ex.name + ": base is not normal in the product");
    fx.certified(ex.a);
  }
  require(saw_product, "the example corpus bundles no skew or twisted products");

  CayleyTable s3 = CayleyTable::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  Algebra ks3 = Algebra::group_algebra(7, s3);
  require(!is_normal_subring(ks3, wedderburn(ks3, 0), group_sub(ks3, {0, 1})),
          "the transposition span is reported normal in GF(7)[S3]");
}

void criterion_5(Fixtures& fx) {
  for (std::size_t k : {1u, 2u, 4u}) {  // the stable instances of criteria 1-3
    const Instance& inst = fx.instances[k];
    InducedModule im = induce(inst.a, inst.b, inst.v);
    WedderburnCertificate cert_a = wedderburn(inst.a, 0);
    WedderburnCertificate cert_e = wedderburn(im.e.algebra, 0);

    // Static A-modules are exactly the modules whose restriction is
    // V-isotypic, with the isotypic test done independently via the socle.
    std::vector<Module> a_mods;
    for (const auto& blk : cert_a.blocks) a_mods.push_back(blk.simple);
    a_mods.push_back(regular_module(inst.a));
    bool saw_static = false, saw_non_static = false;
    for (const Module& n : a_mods) {
      Module down = restrict_module(n, inst.b);
      bool isotypic = v_socle(inst.v, down).dim() == n.dim();
      bool is_static = static_check_A(im, n);
      require(is_static == isotypic,
              inst.name + ": static A-check disagrees with the socle test");
      (is_static ? saw_static : saw_non_static) = true;
      fx.touch(n);
      if (is_static) {
        Module back = tensor_over_E(im, hom_as_E_module(im, n));
        require(back.dim() == n.dim() && static_check_A(im, back),
                inst.name + ": tensor(hom(N)) is not N-sized and static");
        require(v_socle(inst.v, restrict_module(back, inst.b)).dim() == back.dim(),
                inst.name + ": tensor(hom(N)) is not V-isotypic below");
      }
    }
    require(saw_static && saw_non_static,
            inst.name + ": the sweep did not exercise both outcomes");

    // Every simple E-module and the regular E-module are static, and the
    // round trip U -> hom(tensor(U)) is an isomorphism on the simples.
    std::vector<Module> e_mods;
    for (const auto& blk : cert_e.blocks) e_mods.push_back(blk.simple);
    std::size_t n_simples = e_mods.size();
    e_mods.push_back(regular_module(im.e.algebra));
    for (std::size_t ui = 0; ui < e_mods.size(); ++ui) {
      require(static_check_E(im, e_mods[ui]),
              inst.name + ": an E-module fails the static check");
      fx.touch(e_mods[ui]);
      if (ui < n_simples) {
        Module round = hom_as_E_module(im, tensor_over_E(im, e_mods[ui]));
        require(simple_modules_isomorphic(round, e_mods[ui]),
                inst.name + ": hom(tensor(U)) is not isomorphic to U");
      }
    }
  }
}

void criterion_6(Fixtures& fx) {
  for (const Instance& inst : fx.instances) {
    InducedModule im = induce(inst.a, inst.b, inst.v);
    StabilityResult st = is_stable(inst.a, inst.b, inst.v);
    if (st.stable)
      require(im.m.dim() == inst.v.dim() * im.e.algebra.dim(),
              inst.name + ": dim M != dim V * dim E");

    const auto [s_min, s_max] = rieffel_stabilizers(inst.a, inst.b, inst.v, 0);
    const Subalgebra full = Subalgebra::from_basis(
        inst.a, Matrix::identity(inst.a.modulus(), inst.a.dim()));
    std::size_t applicable = 0;
    for (const Subalgebra* s : {&inst.b, &s_min.s, &s_max.s, &full}) {
      try {
        EndalgChain c = endalg_chain_check(inst.a, inst.b, inst.v, *s, 0);
        require(c.dim_end_a == c.dim_end_s && c.dim_hom_down_a == c.dim_end_a &&
                    c.dim_hom_down_s == c.dim_end_a,
                inst.name + ": the four chain dimensions disagree");
        ++applicable;
      } catch (const HypothesisFailure&) {
        // not a stabilizer for this V; the canonical two below still count
      }
    }
    require(applicable >= 2, inst.name + ": fewer than two applicable stabilizers");

    FAlgebraReport fa = f_algebra_check(im, 0);
    require(fa.e_embedded, inst.name + ": E does not embed in F");
    std::vector<std::size_t> blocks = fa.f_block_dims;
    std::vector<std::size_t> mults = fa.restriction_multiplicities;
    std::sort(blocks.begin(), blocks.end());
    std::sort(mults.begin(), mults.end());
    require(blocks == mults,
            inst.name + ": F block dims do not match the restriction multiplicities");
    fx.certified(fa.cert_f.algebra);
  }
}

void criterion_7(Fixtures&) {
  const std::string cli = CLIFFCORR_CLI_PATH;
  const std::string data = CLIFFCORR_DATA_DIR;
  fs::path dir = fs::temp_directory_path() / "cliffcorr_acceptance";
  fs::create_directories(dir);
  auto run = [&](const std::string& args) {
    std::string cmd = cli + " " + args + " > /dev/null 2> /dev/null";
    int status = std::system(cmd.c_str());
    require(WIFEXITED(status), "tool did not exit normally");
    return WEXITSTATUS(status);
  };

  require(run("simples --algebra " + data + "/gf3c3.json") == 3,
          "GF(3)[C3] does not exit with code 3");

  std::ifstream good(data + "/s3.json", std::ios::binary);
  std::ostringstream buf;
  buf << good.rdbuf();
  std::string bad = buf.str();
  auto pos = bad.find("[0, 0, 0, 1]");
  require(pos != std::string::npos, "fixture file has unexpected shape");
  bad.replace(pos, 12, "[0, 0, 0, 2]");
  fs::path corrupted = dir / "corrupted.json";
  std::ofstream(corrupted, std::ios::binary) << bad;
  require(run("validate --algebra " + corrupted.string()) == 2,
          "corrupted structure constants do not exit with code 2");

  std::string base = "correspond --algebra " + data + "/s3.json --subalgebra " + data +
                     "/a3.json --module " + data + "/trivial.json --format json "
                     "--seed 9 --out ";
  std::vector<std::string> outputs;
  for (int i = 0; i < 3; ++i) {
    fs::path out = dir / ("rep" + std::to_string(i) + ".json");
    require(run(base + out.string()) == 0, "seeded correspond run failed");
    std::ifstream f(out, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    outputs.push_back(s.str());
  }
  require(!outputs[0].empty() && outputs[0] == outputs[1] && outputs[1] == outputs[2],
          "seeded runs are not byte-identical");
}

void criterion_8(Fixtures& fx) {
  std::size_t compared = 0;
  for (const Module& m : fx.touched) {
    double budget = 1.0;
    bool small = true;
    for (std::size_t i = 0; i < m.dim() && small; ++i) {
      budget *= double(m.modulus());
      if (budget > 1e6) small = false;
    }
    if (!small || m.dim() == 0) continue;
    require(oracle_is_simple(m) == is_abs_simple(m),
            "exhaustive and endomorphism simplicity tests disagree");
    ++compared;
  }
  require(compared >= 20, "the oracle sweep touched too few modules");

  for (const ExampleInstance& ex : example_library())
    if (ex.expected.a_semisimple) fx.certified(ex.a);
  std::size_t algebras = 0;
  for (const Algebra& a : fx.corpus) {
    require(oracle_simple_count(a) == wedderburn(a, 0).blocks.size(),
            "centralizer count disagrees with the certified block count");
    ++algebras;
  }
  require(algebras >= 10, "the corpus sweep certified too few algebras");
}

}  // namespace

int main() {
  Fixtures fx = build_fixtures();
  struct Criterion {
    int id;
    const char* label;
    std::function<void(Fixtures&)> body;
  };
  const std::vector<Criterion> criteria{
      {1, "S3 > A3 over GF(7): blocks, stability, and both correspondences",
       criterion_1},
      {2, "D4 > Z(D4) over GF(7): noncommutative E with one 2-dim correspondent",
       criterion_2},
      {3, "Q8 > <i> over GF(5): stabilizer paths agree; chi' gives 2 linear modules",
       criterion_3},
      {4, "normality holds for the bundled subrings and products, fails for <(1 2)>",
       criterion_4},
      {5, "static modules are exactly the V-isotypic ones; round trips are iso",
       criterion_5},
      {6, "dimension laws, endomorphism chains, and F block structure",
       criterion_6},
      {7, "exit codes 3 and 2 on bad inputs; byte-identical seeded reruns",
       criterion_7},
      {8, "exhaustive oracle agrees with the certified decompositions",
       criterion_8},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    try {
      c.body(fx);
      std::cout << "PASS  " << c.id << "  " << c.label << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL  " << c.id << "  " << c.label << "\n      " << e.what()
                << "\n";
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : "some criteria FAILED")
            << "\n";
  return failures == 0 ? 0 : 1;
}
