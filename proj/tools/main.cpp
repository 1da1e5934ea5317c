#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cliffcorr/algebra.hpp"
#include "cliffcorr/clifford.hpp"
#include "cliffcorr/errors.hpp"
#include "cliffcorr/io.hpp"
#include "cliffcorr/module.hpp"
#include "cliffcorr/oracle.hpp"
#include "cliffcorr/verify.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace cliffcorr;

namespace {

struct Options {
  std::string algebra;
  std::string subalgebra;
  std::string module;
  std::string stabilizer;
  std::string group;
  std::string cocycle;
  std::string action;
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
};

const char* yn(bool b) { return b ? "yes" : "no"; }

std::string join_dims(const std::vector<std::size_t>& dims) {
  std::ostringstream s;
  for (std::size_t i = 0; i < dims.size(); ++i) s << (i ? " " : "") << dims[i];
  return s.str();
}

/// The algebra under study, assembled from whichever input files were given:
/// --algebra alone reads structure constants; --group needs --p and builds the
/// group algebra, with --cocycle the twisted one; --algebra plus --group plus
/// --action builds the skew product over the base algebra.
Algebra assemble_algebra(const Options& opt) {
  if (!opt.group.empty()) {
    CayleyTable g = io::read_group(opt.group);
    if (!opt.action.empty()) {
      if (opt.algebra.empty())
        throw InvalidInput("--action needs --algebra for the base algebra");
      Algebra base = io::read_algebra(opt.algebra);
      return Algebra::skew_group_algebra(base, g,
                                         io::read_action(opt.action, base.modulus()));
    }
    if (opt.p == 0) throw InvalidInput("group input needs --p <odd prime>");
    require_odd_prime(opt.p);
    if (!opt.cocycle.empty()) {
      auto alpha = io::read_cocycle(opt.cocycle);
      if (alpha.size() != g.order())
        throw InvalidInput("cocycle table size does not match the group order");
      Matrix c(opt.p, g.order(), g.order());
      for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = 0; j < g.order(); ++j) {
          Fp v(alpha[i][j] % opt.p, opt.p);
          if (v.is_zero()) throw InvalidInput("cocycle values must be nonzero mod p");
          c.set(i, j, v);
        }
      return Algebra::twisted_group_algebra(opt.p, g, c);
    }
    return Algebra::group_algebra(opt.p, g);
  }
  if (!opt.algebra.empty()) return io::read_algebra(opt.algebra);
  throw InvalidInput("no algebra input: pass --algebra or --group");
}

Subalgebra require_subalgebra(const Options& opt, const Algebra& a) {
  if (opt.subalgebra.empty()) throw InvalidInput("this command needs --subalgebra");
  return io::read_subalgebra(opt.subalgebra, a);
}

Module require_module(const Options& opt, const Algebra& over) {
  if (opt.module.empty()) throw InvalidInput("this command needs --module");
  return io::read_module(opt.module, over);
}

void emit(const Options& opt, const json& report, const std::string& text) {
  std::string payload = opt.format == "json" ? report.dump(2) + "\n" : text;
  if (opt.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + opt.out);
  f << payload;
}

WedderburnCertificate certify(const Algebra& a, std::uint64_t seed) {
  try {
    return wedderburn(a, seed);
  } catch (const HypothesisFailure& e) {
    throw HypothesisFailure(std::string("not certified semisimple: ") + e.what());
  }
}

json certificate_json(const WedderburnCertificate& cert) {
  json blocks = json::array();
  for (const auto& b : cert.blocks)
    blocks.push_back(json{{"dim", b.simple.dim()}, {"multiplicity", b.multiplicity}});
  return json{{"count", cert.blocks.size()}, {"blocks", std::move(blocks)}};
}

json stabilizer_json(const StabilizerReport& rep) {
  return json{{"dim", rep.s.dim()},
              {"s_semisimple", rep.s_semisimple},
              {"b_normal_in_s", rep.b_normal_in_s},
              {"v_s_stable", rep.v_s_stable},
              {"socle_match", rep.socle_match},
              {"definition_ok", rep.definition_ok()},
              {"j_s_invariant", rep.j_s_invariant},
              {"decomposition", rep.decomposition},
              {"criterion_ok", rep.criterion_ok()}};
}

void render_stabilizer(std::ostream& t, const std::string& name,
                       const StabilizerReport& rep) {
  t << name << ": dim " << rep.s.dim() << ", definition "
    << (rep.definition_ok() ? "ok" : "failed") << " (semisimple " << yn(rep.s_semisimple)
    << ", B normal " << yn(rep.b_normal_in_s) << ", V stable " << yn(rep.v_s_stable)
    << ", socle match " << yn(rep.socle_match) << "), criterion "
    << (rep.criterion_ok() ? "ok" : "failed") << " (J invariant "
    << yn(rep.j_s_invariant) << ", S+AJ+JA=A " << yn(rep.decomposition) << ")\n";
}

int cmd_validate(const Options& opt) {
  if (opt.algebra.empty() && opt.group.empty())
    throw InvalidInput("nothing to validate: pass --algebra or --group");
  json j;
  std::ostringstream t;
  Algebra a = assemble_algebra(opt);
  j["algebra"] = json{{"p", a.modulus()}, {"dim", a.dim()}};
  t << "algebra: ok (dim " << a.dim() << " over GF(" << a.modulus() << "))\n";
  std::optional<Subalgebra> b;
  if (!opt.subalgebra.empty()) {
    b.emplace(io::read_subalgebra(opt.subalgebra, a));
    j["subalgebra"] = json{{"dim", b->dim()}};
    t << "subalgebra: ok (dim " << b->dim() << ")\n";
  }
  if (!opt.module.empty()) {
    const Algebra& over = b ? b->algebra() : a;
    Module v = io::read_module(opt.module, over);
    j["module"] = json{{"dim", v.dim()}};
    t << "module: ok (dim " << v.dim() << " over the "
      << (b ? "subalgebra" : "algebra") << ")\n";
  }
  j["valid"] = true;
  emit(opt, j, t.str());
  return 0;
}

int cmd_simples(const Options& opt) {
  Algebra a = assemble_algebra(opt);
  WedderburnCertificate cert = certify(a, opt.seed);
  json j = certificate_json(cert);
  j["dim"] = a.dim();
  j["p"] = a.modulus();
  std::ostringstream t;
  t << "split semisimple: " << cert.blocks.size() << " blocks\n";
  for (const auto& b : cert.blocks)
    t << "  simple of dim " << b.simple.dim() << ", multiplicity " << b.multiplicity
      << "\n";
  emit(opt, j, t.str());
  return 0;
}

int cmd_induce(const Options& opt) {
  Algebra a = assemble_algebra(opt);
  Subalgebra b = require_subalgebra(opt, a);
  Module v = require_module(opt, b.algebra());
  InducedModule im = induce(a, b, v);
  json j{{"dim_v", v.dim()},
         {"dim_m", im.m.dim()},
         {"dim_e", im.e.algebra.dim()},
         {"dim_f", im.f.algebra.dim()}};
  std::ostringstream t;
  t << "induced module: dim " << im.m.dim() << " (dim V = " << v.dim() << ")\n"
    << "endomorphism algebras: dim E = " << im.e.algebra.dim()
    << ", dim F = " << im.f.algebra.dim() << "\n";
  emit(opt, j, t.str());
  return 0;
}

int cmd_stable(const Options& opt) {
  Algebra a = assemble_algebra(opt);
  Subalgebra b = require_subalgebra(opt, a);
  Module v = require_module(opt, b.algebra());
  StabilityResult r = is_stable(a, b, v);
  json j{{"stable", r.stable}, {"multiplicity", r.n}};
  std::ostringstream t;
  t << "stable: " << yn(r.stable) << "\nmultiplicity of V in the restriction: " << r.n
    << "\n";
  emit(opt, j, t.str());
  return 0;
}

int cmd_endo(const Options& opt) {
  Algebra a = assemble_algebra(opt);
  Subalgebra b = require_subalgebra(opt, a);
  Module v = require_module(opt, b.algebra());
  InducedModule im = induce(a, b, v);
  WedderburnCertificate cert = certify(im.e.algebra, opt.seed);
  json j = certificate_json(cert);
  j["dim_e"] = im.e.algebra.dim();
  j["dim_f"] = im.f.algebra.dim();
  std::ostringstream t;
  t << "E = End_A(M)^op: dim " << im.e.algebra.dim() << ", " << cert.blocks.size()
    << " blocks (dims " << join_dims(cert.dims()) << ")\n"
    << "F = End_B(M|_B)^op: dim " << im.f.algebra.dim() << "\n";
  emit(opt, j, t.str());
  return 0;
}

int cmd_socle(const Options& opt) {
  Algebra a = assemble_algebra(opt);
  Subalgebra b = require_subalgebra(opt, a);
  Module v = require_module(opt, b.algebra());
  InducedModule im = induce(a, b, v);
  Subspace s = v_socle(v, restrict_module(im.m, b));
  json j{{"dim_m", im.m.dim()},
         {"socle_dim", s.dim()},
         {"full", s.dim() == im.m.dim()}};
  std::ostringstream t;
  t << "V-socle of the restricted induced module: dim " << s.dim() << " of "
    << im.m.dim() << (s.dim() == im.m.dim() ? " (full: V is stable)" : "") << "\n";
  emit(opt, j, t.str());
  return 0;
}

int cmd_normal(const Options& opt) {
  Algebra a = assemble_algebra(opt);
  Subalgebra b = require_subalgebra(opt, a);
  WedderburnCertificate cert = certify(a, opt.seed);
  bool normal = is_normal_subring(a, cert, b);
  json j{{"normal", normal}};
  std::ostringstream t;
  t << "normal subring: " << yn(normal) << "\n";
  emit(opt, j, t.str());
  return 0;
}

int cmd_stabilizer(const Options& opt) {
  Algebra a = assemble_algebra(opt);
  Subalgebra b = require_subalgebra(opt, a);
  Module v = require_module(opt, b.algebra());
  auto [s_min, s_max] = rieffel_stabilizers(a, b, v, opt.seed);
  json j{{"s_min", stabilizer_json(s_min)}, {"s_max", stabilizer_json(s_max)}};
  std::ostringstream t;
  render_stabilizer(t, "S_min", s_min);
  render_stabilizer(t, "S_max", s_max);
  if (!opt.stabilizer.empty()) {
    Subalgebra s = io::read_subalgebra(opt.stabilizer, a);
    StabilizerReport rep = is_stabilizer(a, b, v, s, opt.seed);
    j["candidate"] = stabilizer_json(rep);
    render_stabilizer(t, "candidate", rep);
  }
  emit(opt, j, t.str());
  return 0;
}

json correspondence_json(const Algebra& a, const Subalgebra& b, const Module& v,
                         const CorrespondenceReport& rep, std::uint64_t seed,
                         std::ostringstream& t) {
  json j;
  j["hypotheses"] = json{{"a_semisimple", rep.hyp_a_semisimple},
                         {"b_semisimple", rep.hyp_b_semisimple},
                         {"b_normal", rep.hyp_b_normal},
                         {"v_abs_simple", rep.hyp_v_abs_simple}};
  j["stable"] = rep.stable;
  j["stable_multiplicity"] = rep.stable_multiplicity;
  j["dimE"] = rep.dim_e;
  json pairs = json::array();
  for (const auto& pr : rep.pairs)
    pairs.push_back(json{{"e_simple_dim", pr.e_simple.dim()},
                         {"a_simple_dim", pr.a_simple.dim()},
                         {"round_trip", pr.round_trip}});
  j["pairs"] = std::move(pairs);
  j["oracle_complete"] = rep.oracle_complete;
  j["warnings"] = rep.warnings;

  t << "hypotheses: A semisimple " << yn(rep.hyp_a_semisimple) << ", B semisimple "
    << yn(rep.hyp_b_semisimple) << ", B normal " << yn(rep.hyp_b_normal)
    << ", V absolutely simple " << yn(rep.hyp_v_abs_simple) << "\n"
    << "stable: " << yn(rep.stable);
  if (rep.stable) t << " (multiplicity " << rep.stable_multiplicity << ")";
  t << "\ndim E: " << rep.dim_e << "\npairs (dim E-simple -> dim A-simple):\n";
  for (const auto& pr : rep.pairs)
    t << "  " << pr.e_simple.dim() << " -> " << pr.a_simple.dim() << "  (round trip "
      << (pr.round_trip ? "ok" : "FAILED") << ")\n";
  t << "oracle complete: " << yn(rep.oracle_complete) << "\n";
  for (const auto& w : rep.warnings) t << "warning: " << w << "\n";

  // The endomorphism chain across the candidate stabilizers.  B and A are
  // genuine stabilizers only for some instances; the report marks the rest
  // inapplicable instead of failing.
  auto [s_min, s_max] = rieffel_stabilizers(a, b, v, seed);
  Subalgebra full = Subalgebra::from_basis(
      a, Matrix::identity(a.modulus(), a.dim()));
  std::vector<std::pair<std::string, const Subalgebra*>> candidates{
      {"B", &b}, {"S_min", &s_min.s}, {"S_max", &s_max.s}, {"A", &full}};
  json chain;
  t << "endomorphism chain (dim End_A, Hom_B down A, Hom_B down S, dim End_S):\n";
  for (const auto& [name, s] : candidates) {
    try {
      EndalgChain c = endalg_chain_check(a, b, v, *s, seed);
      chain[name] = json{{"applicable", true},
                         {"s_dim", s->dim()},
                         {"dims", json::array({c.dim_end_a, c.dim_hom_down_a,
                                               c.dim_hom_down_s, c.dim_end_s})}};
      t << "  " << name << " (dim " << s->dim() << "): " << c.dim_end_a << " "
        << c.dim_hom_down_a << " " << c.dim_hom_down_s << " " << c.dim_end_s << "\n";
    } catch (const HypothesisFailure&) {
      chain[name] = json{{"applicable", false}, {"s_dim", s->dim()}};
      t << "  " << name << " (dim " << s->dim() << "): not a stabilizer for V\n";
    }
  }
  j["endalg_chain"] = std::move(chain);

  FAlgebraReport fa = f_algebra_check(rep.induced, seed);
  j["f_algebra"] = json{{"e_embedded", fa.e_embedded},
                        {"f_block_dims", fa.f_block_dims},
                        {"restriction_multiplicities", fa.restriction_multiplicities}};
  t << "F blocks: " << join_dims(fa.f_block_dims) << "; restriction multiplicities: "
    << join_dims(fa.restriction_multiplicities) << "; E embedded: " << yn(fa.e_embedded)
    << "\n";
  return j;
}

int cmd_correspond(const Options& opt) {
  Algebra a = assemble_algebra(opt);
  Subalgebra b = require_subalgebra(opt, a);
  Module v = require_module(opt, b.algebra());
  CorrespondenceReport rep = correspond(a, b, v, opt.seed);
  std::ostringstream t;
  json j = correspondence_json(a, b, v, rep, opt.seed, t);
  emit(opt, j, t.str());
  return 0;
}

int cmd_presentation(const Options& opt) {
  Algebra a = assemble_algebra(opt);
  Subalgebra b = require_subalgebra(opt, a);
  Module v = require_module(opt, b.algebra());
  CorrespondenceReport rep = correspond(a, b, v, opt.seed);
  json targets = json::array();
  std::ostringstream t;
  t << "presentations of the simple A-modules containing V:\n";
  for (const auto& pr : rep.pairs) {
    Presentation pres = build_presentation(rep.induced, pr.a_simple, opt.seed);
    targets.push_back(json{{"a_simple_dim", pr.a_simple.dim()},
                           {"copies", pres.copies},
                           {"kernel_dim", rep.induced.m.dim() - pr.a_simple.dim()}});
    t << "  target dim " << pr.a_simple.dim() << ": M -> N surjective, kernel dim "
      << rep.induced.m.dim() - pr.a_simple.dim() << " covered by " << pres.copies
      << " copies of M\n";
  }
  json j{{"dim_m", rep.induced.m.dim()}, {"targets", std::move(targets)}};
  emit(opt, j, t.str());
  return 0;
}

int run_suite(const Options& opt, const std::vector<CheckResult>& results,
              const char* label) {
  std::size_t failed = 0;
  json checks = json::array();
  std::ostringstream t;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    checks.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    t << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.pass && !r.detail.empty()) t << ": " << r.detail;
    t << "\n";
  }
  t << label << ": " << results.size() << " checks, " << failed << " failed\n";
  json j{{"checks", std::move(checks)},
         {"passed", results.size() - failed},
         {"failed", failed}};
  emit(opt, j, t.str());
  return failed == 0 ? 0 : 4;
}

int cmd_verify(const Options& opt) {
  return run_suite(opt, run_verify_suite(opt.seed), "verify");
}

int cmd_oracle(const Options& opt) {
  return run_suite(opt, run_oracle_suite(opt.seed), "oracle");
}

void add_output_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed, "seed for randomized decompositions")
      ->default_val(0);
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_val("text");
  cmd->add_option("--out", opt.out, "write the report to a file instead of stdout");
}

void add_algebra_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--algebra", opt.algebra,
                  "structure-constant file (the base algebra when --action is given)");
  cmd->add_option("--group", opt.group, "group file: Cayley table or generators");
  cmd->add_option("--cocycle", opt.cocycle, "cocycle file for a twisted group algebra");
  cmd->add_option("--action", opt.action, "action file for a skew group algebra");
  cmd->add_option("--p", opt.p, "field characteristic for group-built algebras");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact Clifford correspondence toolkit for split semisimple algebras "
      "over prime fields"};
  app.require_subcommand(1);
  Options opt;

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
    bool subalgebra;
    bool module;
    bool stabilizer;
    bool algebra;
  };
  const std::vector<Command> commands{
      {"validate", "parse and validate input files", cmd_validate, true, true, false,
       true},
      {"simples", "certify the algebra split semisimple and list its blocks",
       cmd_simples, false, false, false, true},
      {"induce", "build A (x)_B V and report its endomorphism algebras", cmd_induce,
       true, true, false, true},
      {"stable", "test whether V is A-stable", cmd_stable, true, true, false, true},
      {"endo", "certify E = End_A(A (x)_B V)^op and list its blocks", cmd_endo, true,
       true, false, true},
      {"socle", "V-socle of the induced module restricted back to B", cmd_socle, true,
       true, false, true},
      {"normal", "test whether B is a normal subring of A", cmd_normal, true, false,
       false, true},
      {"stabilizer", "build the two canonical stabilizers; verify a candidate",
       cmd_stabilizer, true, true, true, true},
      {"correspond", "full correspondence between simple E-modules and simple "
                     "A-modules containing V",
       cmd_correspond, true, true, false, true},
      {"presentation", "presentations of the simple A-modules containing V",
       cmd_presentation, true, true, false, true},
      {"verify", "run the bundled consistency suite", cmd_verify, false, false, false,
       false},
      {"oracle", "run the independent brute-force cross-checks", cmd_oracle, false,
       false, false, false},
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> dispatch;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    if (c.algebra) add_algebra_flags(sub, opt);
    if (c.subalgebra)
      sub->add_option("--subalgebra", opt.subalgebra, "subalgebra basis file");
    if (c.module)
      sub->add_option("--module", opt.module,
                      "module file over the subalgebra (over the algebra if no "
                      "--subalgebra is given)");
    if (c.stabilizer)
      sub->add_option("--stabilizer", opt.stabilizer,
                      "candidate stabilizer subalgebra file");
    add_output_flags(sub, opt);
    dispatch.emplace_back(sub, c.fn);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    for (const auto& [sub, fn] : dispatch)
      if (sub->parsed()) return fn(opt);
    std::cerr << "no command given\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisFailure& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return 3;
  } catch (const TheoremCheckFailure& e) {
    std::cerr << "theorem check failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
