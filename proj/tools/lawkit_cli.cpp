// Command-line front end: reads a system config, dispatches to the verifiers,
// and emits a deterministic report (text or JSON).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lawkit/config.hpp"
#include "lawkit/gen.hpp"
#include "lawkit/lawstruct.hpp"
#include "lawkit/projlat.hpp"
#include "lawkit/report.hpp"
#include "lawkit/spectral.hpp"

namespace {

using namespace lawkit;

struct Options {
  std::string config_path;
  std::uint64_t seed = 1;
  int horizon = 64;
  double mesh = 0.25;
  double eps = 0.1;
  double tol = 1e-8;
  std::string format = "text";
  int samples = 20;
};

SystemConfig load_config(const Options& opt) {
  if (opt.config_path.empty())
    throw config_error("this command needs --config PATH");
  std::ifstream in(opt.config_path);
  if (!in) throw config_error("cannot read '" + opt.config_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

const Thread& named(const SystemConfig& cfg, const std::string& name) {
  auto it = cfg.elements.find(name);
  if (it == cfg.elements.end())
    throw config_error("config defines no element '" + name + "'");
  return it->second;
}

int emit(const Report& report, const Options& opt) {
  std::cout << (opt.format == "json" ? report.to_json() : report.to_text());
  return report.exit_status();
}

void note(Report& report, const std::string& id, const std::string& statement,
          bool pass, const std::string& witness = "",
          std::vector<std::pair<std::string, double>> residuals = {}) {
  report.add(ReportRecord{id, statement, pass, witness, std::move(residuals)});
}

int cmd_validate(const SystemConfig& cfg, Options& opt, Report& report) {
  SystemReport sr = cfg.system->validate(opt.tol);
  note(report, "validate.system",
       "the configured data is a projective system of matrix algebras", sr.ok(),
       sr.ok() ? "" : sr.violations.front());
  for (std::size_t i = 0; i < sr.violations.size(); ++i)
    note(report, "validate.violation." + std::to_string(i), sr.violations[i], false);
  return emit(report, opt);
}

void theorem1_records(const SystemConfig& cfg, const Options& opt, Report& report,
                      bool baer_part, bool kaplansky_part) {
  EquivalenceReport eq =
      verify_theorem1(cfg.system, {std::max(1, opt.samples / 4), opt.seed}, opt.tol);
  const std::string w = eq.witnesses.empty() ? "" : eq.witnesses.front();
  if (baer_part) {
    note(report, "baer.limit",
         "annihilators of thread sets are generated by coherent projections",
         eq.baer_limit, eq.baer_limit ? "" : w);
    note(report, "baer.coordinatewise",
         "every coordinate algebra has projection-generated annihilators",
         eq.coordinatewise_baer, eq.coordinatewise_baer ? "" : w);
  }
  if (kaplansky_part) {
    note(report, "kaplansky.sups",
         "orthogonal projection families have coherent least upper bounds",
         eq.orthogonal_sups, eq.orthogonal_sups ? "" : w);
    note(report, "kaplansky.masa",
         "maximal commutative subalgebras are spanned by their projections",
         eq.masa_projections, eq.masa_projections ? "" : w);
  }
  if (baer_part && kaplansky_part)
    note(report, "theorem1.agreement", "all four characterizations agree",
         eq.agreement(), eq.agreement() ? "" : w);
}

int cmd_verify(const SystemConfig& cfg, Options& opt, Report& report,
               const std::string& what) {
  if (what == "baer") {
    theorem1_records(cfg, opt, report, true, false);
  } else if (what == "kaplansky") {
    theorem1_records(cfg, opt, report, false, true);
  } else if (what == "theorem1") {
    theorem1_records(cfg, opt, report, true, true);
  } else if (what == "lattice") {
    for (int a = 0; a < cfg.system->node_count(); ++a) {
      LatticeReport lr = verify_lattice(cfg.system->algebra(a), opt.samples,
                                        opt.seed + static_cast<std::uint64_t>(a));
      note(report, "lattice." + cfg.system->node_label(a),
           "sampled projection families satisfy the lattice axioms", lr.ok(),
           lr.ok() ? "" : lr.violations.front());
    }
  } else {
    throw config_error("unknown verification target '" + what + "'");
  }
  return emit(report, opt);
}

int cmd_annihilate(const SystemConfig& cfg, Options& opt, Report& report,
                   const std::vector<std::string>& names) {
  std::vector<Thread> set;
  for (const std::string& n : names) set.push_back(named(cfg, n));
  std::vector<AlgebraElement> coords;
  for (int a = 0; a < cfg.system->node_count(); ++a) {
    std::vector<AlgebraElement> at_node;
    for (const Thread& t : set) at_node.push_back(t.coordinate(a));
    AnnihilatorResult r = right_annihilator(at_node);
    note(report, "annihilator.dims." + cfg.system->node_label(a),
         "projection route and nullspace oracle give the same dimension",
         r.dims_agree(),
         "dim " + std::to_string(r.subspace_dim) + " vs " +
             std::to_string(r.oracle_dim));
    double worst = 0.0;
    for (const Thread& t : set)
      worst = std::max(worst, op_norm(t.coordinate(a) * r.generator.element()));
    note(report, "annihilator.kills." + cfg.system->node_label(a),
         "the generator annihilates the set on the right", worst <= opt.tol, "",
         {{"residual", worst}});
    coords.push_back(r.generator.element());
  }
  double incoherence = 0.0;
  for (int a = 0; a < cfg.system->node_count(); ++a)
    for (int b = 0; b < cfg.system->node_count(); ++b) {
      if (a == b || !cfg.system->poset().leq(a, b)) continue;
      incoherence = std::max(
          incoherence, op_norm(coords[a] - cfg.system->push(coords[b], b, a)));
    }
  note(report, "annihilator.coherent",
       "the generator projections form a thread", incoherence <= opt.tol, "",
       {{"residual", incoherence}});
  return emit(report, opt);
}

int cmd_center(const SystemConfig& cfg, Options& opt, Report& report) {
  Subsystem z = center(cfg.system);
  for (int a = 0; a < cfg.system->node_count(); ++a)
    note(report, "center." + cfg.system->node_label(a),
         "block scalars match the commutant oracle", z.per_node[a].ok(),
         z.per_node[a].ok() ? "dim " + std::to_string(z.per_node[a].dim())
                            : z.per_node[a].violations.front());
  note(report, "center.coherent", "restricted maps keep the center",
       z.violations.empty(), z.violations.empty() ? "" : z.violations.front());
  return emit(report, opt);
}

int cmd_corner(const SystemConfig& cfg, Options& opt, Report& report,
               const std::string& name) {
  Corner c = corner(cfg.system, named(cfg, name), opt.tol);
  if (c.degenerate) {
    note(report, "corner.degenerate",
         "the projection vanishes at some node; the corner is zero there", true,
         "degenerate corner");
    return emit(report, opt);
  }
  note(report, "corner.compressed",
       "the corner is a projective system with ranks as block sizes", c.ok(),
       c.ok() ? "" : c.violations.front());
  return emit(report, opt);
}

int cmd_masa(const SystemConfig& cfg, Options& opt, Report& report,
             const std::string& name) {
  Subsystem masa = masa_containing(named(cfg, name), kDefaultTol);
  for (int a = 0; a < cfg.system->node_count(); ++a)
    note(report, "masa." + cfg.system->node_label(a),
         "a maximal commutative subalgebra spanned by projections contains the "
         "coordinate",
         masa.per_node[a].ok(),
         masa.per_node[a].ok() ? "dim " + std::to_string(masa.per_node[a].dim())
                               : masa.per_node[a].violations.front());
  note(report, "masa.coherent", "restricted maps keep the subalgebra family",
       masa.violations.empty(),
       masa.violations.empty() ? "" : masa.violations.front());
  return emit(report, opt);
}

int cmd_commutant(const SystemConfig& cfg, Options& opt, Report& report,
                  const std::vector<std::string>& names) {
  for (int a = 0; a < cfg.system->node_count(); ++a) {
    std::vector<AlgebraElement> set;
    for (const std::string& n : names) {
      const AlgebraElement& x = named(cfg, n).coordinate(a);
      set.push_back(x);
      set.push_back(x.adjoint());  // self-adjoint closure
    }
    Subalgebra comm = commutant(set, std::max(1, opt.samples / 4), opt.seed);
    note(report, "commutant." + cfg.system->node_label(a),
         "the commutant is an annihilator-closed subalgebra", comm.ok(),
         comm.ok() ? "dim " + std::to_string(comm.dim())
                   : comm.violations.front());
  }
  return emit(report, opt);
}

int cmd_bounded(const SystemConfig& cfg, Options& opt, Report& report,
                const std::string& name) {
  BoundednessVerdict v = sup_norm(named(cfg, name), opt.horizon);
  std::string kind = v.kind == BoundednessVerdict::Kind::Bounded ? "bounded"
                     : v.kind == BoundednessVerdict::Kind::ExceedsBound
                         ? "exceeds declared bound at node " +
                               std::to_string(v.witness_node + 1)
                         : "inconclusive at horizon " + std::to_string(v.horizon);
  note(report, "bounded.verdict",
       "the thread's seminorm sup is certified finite",
       v.kind == BoundednessVerdict::Kind::Bounded, kind, {{"sup", v.sup}});
  return emit(report, opt);
}

int cmd_bounded_part(const SystemConfig& cfg, Options& opt, Report& report) {
  BoundedPartReport rep =
      bounded_part(cfg.system, opt.horizon, std::max(1, opt.samples / 4),
                   opt.seed, opt.tol);
  note(report, "bounded_part.certificate",
       "projection threads are contractive and sampled annihilators are "
       "generated inside the bounded part",
       rep.ok(),
       rep.ok() ? (rep.horizon_qualified
                       ? "horizon-qualified at " + std::to_string(rep.horizon)
                       : "")
                : rep.violations.front());
  return emit(report, opt);
}

int cmd_ideal_annihilator(const SystemConfig& cfg, Options& opt, Report& report,
                          const std::vector<std::string>& names) {
  std::vector<Thread> gens;
  for (const std::string& n : names) gens.push_back(named(cfg, n));
  CentralAnnihilator ca = ideal_annihilator_central(cfg.system, gens, opt.tol);
  note(report, "ideal.annihilator.central",
       "the annihilator of the generated ideal is a central coherent projection",
       ca.ok(), ca.ok() ? "" : ca.violations.front());
  return emit(report, opt);
}

int cmd_spectral(const SystemConfig& cfg, Options& opt, Report& report,
                 const std::string& name) {
  const Thread& x = named(cfg, name);
  SpectralReconstruction rec = reconstruct(x, opt.eps, opt.mesh, MuRule::midpoint,
                                           opt.horizon, false, opt.tol);
  for (int a = 0; a < cfg.system->node_count(); ++a) {
    const IntegralResult& r = rec.per_node[static_cast<std::size_t>(a)];
    note(report, "spectral.bound." + cfg.system->node_label(a),
         "the integral sum approximates the coordinate within the mesh",
         r.within_bound, "", {{"error", r.error}, {"delta", r.delta}});
  }
  note(report, "spectral.certificates",
       "cut projections are coherent, commute with x, and lie in a masa",
       rec.violations.empty(),
       rec.violations.empty() ? "" : rec.violations.front());
  const int top = cfg.system->top_node();
  SpectralFamily fam = build_family(
      x.coordinate(top),
      rescale_partition(rec.global, x.coordinate(top), opt.eps), opt.tol);
  note(report, "spectral.family",
       "the cut family is monotone, 0 at the left end, 1 at the right end, and "
       "left continuous",
       fam.ok(), fam.ok() ? "" : fam.violations.front());
  return emit(report, opt);
}

int cmd_lemma1(const SystemConfig& cfg, Options& opt, Report& report,
               const std::string& name, double eps) {
  const Thread& x = named(cfg, name);
  const int top = cfg.system->top_node();
  Subalgebra masa = masa_containing(x.coordinate(top), kDefaultTol);
  ProjectionMultiple pm = kaplansky_approx(masa, x.coordinate(top), eps);
  note(report, "lemma1.residual",
       "a projection multiple of x approximates it strictly within eps",
       pm.residual < eps, "", {{"residual", pm.residual}, {"eps", eps}});
  note(report, "lemma1.certificates",
       "the projection is x times the witness and stays in the subalgebra",
       pm.ok(), pm.ok() ? "" : pm.violations.front());
  return emit(report, opt);
}

int cmd_lemma2(const SystemConfig& cfg, Options& opt, Report& report,
               std::vector<std::string> names) {
  if (names.size() < 2)
    throw config_error("lemma2 needs at least one family member and the element");
  const Thread& x = named(cfg, names.back());
  names.pop_back();
  std::vector<Thread> family;
  for (const std::string& n : names) family.push_back(named(cfg, n));
  std::vector<AlgebraElement> sup_coords;
  for (int a = 0; a < cfg.system->node_count(); ++a) {
    std::vector<Projection> at_node;
    for (const Thread& e : family) at_node.emplace_back(e.coordinate(a));
    sup_coords.push_back(sup_family(at_node).element());
  }
  Thread sup = lift(cfg.system, std::move(sup_coords), opt.tol);
  SupInteractionReport rep = lemma2_check(family, sup, x, opt.tol);
  note(report, "lemma2.family", "the family is pairwise orthogonal and sums to "
       "its least upper bound",
       rep.family_orthogonal && rep.sup_is_plain_sum,
       rep.ok() ? "" : rep.violations.front());
  note(report, "lemma2.annihilation",
       "if x annihilates every member it annihilates the sup",
       rep.annihilation_conclusion,
       rep.annihilation_premise ? "premise holds" : "premise vacuous");
  note(report, "lemma2.commutation",
       "if x commutes with every member it commutes with the sup",
       rep.commutation_conclusion,
       rep.commutation_premise ? "premise holds" : "premise vacuous");
  return emit(report, opt);
}

int cmd_gen_random(const Options& opt) {
  SystemPtr sys = random_system(opt.seed);
  Rng rng(opt.seed * 9176052251047298537ull + 1);
  std::map<std::string, Thread> elements;
  elements.emplace("x", random_hermitian_thread(sys, rng));
  std::cout << dump_config(sys, elements, opt.seed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projective-limit matrix algebra toolkit"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "config file path");
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--horizon", opt.horizon, "probe horizon for chains");
  app.add_option("--mesh", opt.mesh, "partition mesh target");
  app.add_option("--eps", opt.eps, "approximation epsilon");
  app.add_option("--tol", opt.tol, "certification tolerance");
  app.add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--samples", opt.samples, "sampling count for property checks");

  std::string verify_what;
  std::vector<std::string> names;
  std::string single_name;
  double lemma1_eps = 0.1;

  CLI::App* validate = app.add_subcommand("validate", "certify the configured system");
  CLI::App* verify = app.add_subcommand("verify", "run a structure verifier");
  verify->add_option("what", verify_what, "baer | kaplansky | theorem1 | lattice | w-star")
      ->required();
  CLI::App* annihilate =
      app.add_subcommand("annihilate", "right annihilator of named threads");
  annihilate->add_option("set", names, "element names")->required();
  CLI::App* center_cmd = app.add_subcommand("center", "center of every coordinate");
  CLI::App* corner_cmd = app.add_subcommand("corner", "compress by a projection thread");
  corner_cmd->add_option("proj", single_name, "projection element name")->required();
  CLI::App* masa_cmd =
      app.add_subcommand("masa", "maximal commutative subalgebra of an element");
  masa_cmd->add_option("elt", single_name, "element name")->required();
  CLI::App* commutant_cmd =
      app.add_subcommand("commutant", "commutant of named threads per node");
  commutant_cmd->add_option("set", names, "element names")->required();
  CLI::App* bounded_cmd =
      app.add_subcommand("bounded", "boundedness verdict for a thread");
  bounded_cmd->add_option("elt", single_name, "element name")->required();
  CLI::App* bounded_part_cmd =
      app.add_subcommand("bounded-part", "certify the bounded part");
  CLI::App* ideal_cmd = app.add_subcommand(
      "ideal-annihilator", "central annihilator of a generated ideal");
  ideal_cmd->add_option("set", names, "generator element names")->required();
  CLI::App* spectral_cmd =
      app.add_subcommand("spectral", "spectral reconstruction of a thread");
  spectral_cmd->add_option("elt", single_name, "element name")->required();
  CLI::App* lemma1_cmd =
      app.add_subcommand("lemma1", "projection-multiple approximation");
  lemma1_cmd->add_option("elt", single_name, "element name")->required();
  lemma1_cmd->add_option("eps", lemma1_eps, "strict approximation bound");
  CLI::App* lemma2_cmd = app.add_subcommand(
      "lemma2", "annihilation/commutation passes to the sup; last name is x");
  lemma2_cmd->add_option("names", names, "family element names then x")->required();
  CLI::App* gen_cmd =
      app.add_subcommand("gen-random", "emit a random valid config from the seed");

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) return cmd_gen_random(opt);
    if (verify->parsed() && verify_what == "w-star") {
      std::cerr << "verify w-star: out of scope; this toolkit certifies the "
                   "projective-limit structure only\n";
      return 2;
    }
    SystemConfig cfg = load_config(opt);
    Report report;
    report.config_digest = config_digest(cfg.canonical);
    for (const CLI::App* sub : app.get_subcommands())
      report.command = sub->get_name();
    if (verify->parsed()) report.command += " " + verify_what;

    if (validate->parsed()) return cmd_validate(cfg, opt, report);
    if (verify->parsed()) return cmd_verify(cfg, opt, report, verify_what);
    if (annihilate->parsed()) return cmd_annihilate(cfg, opt, report, names);
    if (center_cmd->parsed()) return cmd_center(cfg, opt, report);
    if (corner_cmd->parsed()) return cmd_corner(cfg, opt, report, single_name);
    if (masa_cmd->parsed()) return cmd_masa(cfg, opt, report, single_name);
    if (commutant_cmd->parsed()) return cmd_commutant(cfg, opt, report, names);
    if (bounded_cmd->parsed()) return cmd_bounded(cfg, opt, report, single_name);
    if (bounded_part_cmd->parsed()) return cmd_bounded_part(cfg, opt, report);
    if (ideal_cmd->parsed()) return cmd_ideal_annihilator(cfg, opt, report, names);
    if (spectral_cmd->parsed()) return cmd_spectral(cfg, opt, report, single_name);
    if (lemma1_cmd->parsed())
      return cmd_lemma1(cfg, opt, report, single_name, lemma1_eps);
    if (lemma2_cmd->parsed()) return cmd_lemma2(cfg, opt, report, names);
    std::cerr << "unknown command\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const horizon_error& e) {
    std::cerr << "horizon error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 2;
  } catch (const structural_error& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return 2;
  }
}
