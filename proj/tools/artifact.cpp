// Command-line frontend. Every command builds a JSON value and a text
// rendering of the same data; --format picks one. Exit codes: 0 success,
// 1 a verification found a counterexample, 2 bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "artifact/cacti.hpp"
#include "artifact/criteria.hpp"
#include "artifact/hochschild.hpp"
#include "artifact/prelie_hopf.hpp"

using namespace artifact;
using nlohmann::json;

namespace {

struct Output {
  json data = json::object();
  std::string text;
  int code = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::uint64_t need_seed(const std::optional<std::uint64_t>& seed) {
  if (!seed) throw InputError("--seed is required for sampled verifications");
  return *seed;
}

TreeChain chain_arg(const std::string& text) {
  if (text.find('*') != std::string::npos || text == "0") return TreeChain::parse(text);
  return TreeChain(BWTree::parse(text));
}

AssocAlgebra algebra_arg(const std::string& path) {
  AssocAlgebra a = AssocAlgebra::parse(read_file(path));
  a.validate();
  return a;
}

json tally_json(long long checks, long long failures) { return {{"checks", checks}, {"failures", failures}}; }

std::string tally_line(const std::string& what, long long checks, long long failures) {
  return what + ": " + std::to_string(checks) + " checks, " + std::to_string(failures) + " failures\n";
}

json lines_json(const std::vector<std::string>& xs) { return json(xs); }

std::string hopf_lines(const HopfElement& x) { return hopf_str(x); }

json hopf_json(const HopfElement& x) {
  json out = json::array();
  for (const auto& [f, c] : x) out.push_back({{"forest", f}, {"coef", to_string(c)}});
  return out;
}

json hopf_json(const HopfTensor& x) {
  json out = json::array();
  for (const auto& [lr, c] : x) out.push_back({{"left", lr.first}, {"right", lr.second}, {"coef", to_string(c)}});
  return out;
}

Output deligne_output(const DeligneReport& r) {
  Output o;
  o.data = {{"composition", tally_json(r.composition_checks, r.composition_failures)},
            {"differential", tally_json(r.differential_checks, r.differential_failures)},
            {"equivariance", tally_json(r.equivariance_checks, r.equivariance_failures)},
            {"counterexamples", r.counterexamples},
            {"ok", r.ok()}};
  o.text = tally_line("composition", r.composition_checks, r.composition_failures) +
           tally_line("differential", r.differential_checks, r.differential_failures) +
           tally_line("equivariance", r.equivariance_checks, r.equivariance_failures);
  for (const auto& c : r.counterexamples) o.text += "counterexample " + c + "\n";
  o.code = r.ok() ? 0 : 1;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cacti, bipartite tree operads, Hochschild cochains and rooted-tree Hopf algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::function<Output()> action;

  // ---- enumerate
  int en_n = 0;
  std::optional<int> en_dim;
  auto* en = app.add_subcommand("enumerate", "List the bipartite trees with n lobes");
  en->add_option("--n", en_n, "Number of lobes")->required()->check(CLI::Range(1, 7));
  en->add_option("--dim", en_dim, "Only cells of this dimension");
  en->callback([&] {
    action = [&] {
      Output o;
      json trees = json::array();
      for (const auto& t : enumerate_trees(en_n, en_dim)) {
        trees.push_back({{"tree", t.str()}, {"dim", t.dim()}});
        o.text += std::to_string(t.dim()) + " " + t.str() + "\n";
      }
      o.text += "total " + std::to_string(trees.size()) + "\n";
      o.data = {{"n", en_n}, {"trees", trees}, {"total", trees.size()}};
      return o;
    };
  });

  // ---- compose
  std::string co_left, co_right;
  int co_i = 1;
  bool co_unsigned = false;
  auto* co = app.add_subcommand("compose", "Operadic composition of trees or chains");
  co->add_option("--left", co_left, "Tree or chain literal")->required();
  co->add_option("--i", co_i, "Input of the left operand")->required();
  co->add_option("--right", co_right, "Tree or chain literal")->required();
  co->add_flag("--unsigned", co_unsigned, "Unsigned composition");
  co->callback([&] {
    action = [&] {
      const TreeChain l = chain_arg(co_left), r = chain_arg(co_right);
      if (co_i < 1 || co_i > l.lobes()) throw InputError("--i must lie in 1.." + std::to_string(l.lobes()));
      const TreeChain c = compose(l, co_i, r, !co_unsigned);
      Output o;
      o.text = c.str() + "\n";
      o.data = {{"chain", c.str()}};
      return o;
    };
  });

  // ---- boundary
  std::string bd_chain;
  auto* bd = app.add_subcommand("boundary", "Cellular boundary of a chain");
  bd->add_option("--chain", bd_chain, "Tree or chain literal")->required();
  bd->callback([&] {
    action = [&] {
      const TreeChain c = differential(chain_arg(bd_chain));
      Output o;
      o.text = c.str() + "\n";
      o.data = {{"chain", c.str()}};
      return o;
    };
  });

  // ---- homology
  int ho_n = 0, threads = 1;
  auto* ho = app.add_subcommand("homology", "Homology of the cactus cell complex K(n)");
  ho->add_option("--n", ho_n, "Number of lobes")->required()->check(CLI::Range(1, 5));
  ho->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
  ho->callback([&] {
    action = [&] {
      const auto rows = homology(build_cell_complex(ho_n, threads), threads);
      Output o;
      o.text = homology_table(rows, ho_n);
      json table = json::array();
      for (const auto& r : rows) {
        json torsion = json::array();
        for (const auto& t : r.torsion) torsion.push_back(t.str());
        table.push_back({{"k", r.k}, {"cells", r.cells}, {"rank", r.rank}, {"betti", r.betti}, {"torsion", torsion}});
      }
      o.data = {{"n", ho_n}, {"rows", table}};
      return o;
    };
  });

  // ---- dual
  std::string du_tree, du_ribbon;
  auto* du = app.add_subcommand("dual", "Ribbon graph of a tree, or the tree of a ribbon graph");
  auto* du_t = du->add_option("--tree", du_tree, "Tree literal");
  auto* du_r = du->add_option("--ribbon", du_ribbon, "Ribbon graph file");
  du_t->excludes(du_r);
  du->callback([&] {
    action = [&] {
      Output o;
      if (!du_tree.empty()) {
        const RibbonGraph g = ribbon_from_tree(BWTree::parse(du_tree));
        o.text = write_ribbon(g);
        o.data = {{"ribbon", o.text}, {"genus", g.genus()}, {"cycles", g.cycle_count()}};
      } else if (!du_ribbon.empty()) {
        const BWTree t = dual_tree(read_ribbon(read_file(du_ribbon)));
        o.text = t.str() + "\n";
        o.data = {{"tree", t.str()}};
      } else {
        throw InputError("give --tree or --ribbon");
      }
      return o;
    };
  });

  // ---- glue
  std::string gl_a, gl_b, gl_mode = "normalized";
  int gl_i = 1;
  auto* gl = app.add_subcommand("glue", "Glue one cactus into a lobe of another");
  gl->add_option("--cactus", gl_a, "Cactus file")->required();
  gl->add_option("--i", gl_i, "Lobe of the first cactus")->required();
  gl->add_option("--cactus2", gl_b, "Cactus file")->required();
  gl->add_option("--mode", gl_mode, "normalized, right, left or symmetric");
  gl->callback([&] {
    action = [&] {
      const auto r = glue_cacti(read_cactus(read_file(gl_a)), gl_i, read_cactus(read_file(gl_b)),
                                parse_glue_mode(gl_mode));
      Output o;
      o.text = r.cactus.str();
      o.data = {{"cactus", r.cactus.str()}, {"merged", r.merged}};
      return o;
    };
  });

  // ---- hoch
  auto* hoch = app.add_subcommand("hoch", "Hochschild cochains of a finite-dimensional algebra");
  hoch->require_subcommand(1);
  std::string algebra_path, ha_tree, ha_order = "wbar";
  std::vector<std::string> ha_cochains;
  auto* ha = hoch->add_subcommand("act", "Flow-chart action of a tree or chain on cochains");
  ha->add_option("--algebra", algebra_path, "Algebra file")->required();
  ha->add_option("--tree", ha_tree, "Tree or chain literal")->required();
  ha->add_option("--cochain", ha_cochains, "Cochain file, one per lobe in label order");
  ha->add_option("--order", ha_order, "Slot order")->check(CLI::IsMember({"w", "wbar"}));
  ha->callback([&] {
    action = [&] {
      const AssocAlgebra a = algebra_arg(algebra_path);
      std::vector<Cochain> fs;
      for (const auto& p : ha_cochains) fs.push_back(Cochain::parse(read_file(p), a.dim));
      const auto r = act(a, chain_arg(ha_tree), fs, ha_order == "w" ? SlotOrder::w : SlotOrder::w_bar);
      Output o;
      o.text = r ? r->str() : "none\n";
      o.data = {{"cochain", r ? json(r->str()) : json(nullptr)}};
      return o;
    };
  });

  DeligneOptions dopt;
  std::optional<std::uint64_t> seed;
  auto* hv = hoch->add_subcommand("verify-deligne", "Randomized checks of the action");
  hv->add_option("--algebra", algebra_path, "Algebra file")->required();
  hv->add_option("--nmax", dopt.nmax, "Largest composite tree")->check(CLI::Range(1, 4));
  hv->add_option("--samples", dopt.samples, "Cochain tuples per case")->check(CLI::Range(1, 10000));
  hv->add_option("--max-degree", dopt.max_total_degree, "Cap on the total cochain degree")->check(CLI::Range(0, 8));
  hv->add_option("--seed", seed, "Master seed");
  hv->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
  hv->callback([&] {
    action = [&] {
      dopt.seed = need_seed(seed);
      dopt.threads = threads;
      return deligne_output(verify_deligne(algebra_arg(algebra_path), dopt));
    };
  });

  int qmax = 2;
  auto* hc = hoch->add_subcommand("cohomology", "Dimensions of HH^q");
  hc->add_option("--algebra", algebra_path, "Algebra file")->required();
  hc->add_option("--qmax", qmax, "Highest degree")->check(CLI::Range(0, 5));
  hc->callback([&] {
    action = [&] {
      const auto dims = cohomology(algebra_arg(algebra_path), qmax);
      Output o;
      for (std::size_t q = 0; q < dims.size(); ++q)
        o.text += "HH^" + std::to_string(q) + " " + std::to_string(dims[q]) + "\n";
      o.data = {{"dims", dims}};
      return o;
    };
  });

  // ---- prelie
  auto* pl = app.add_subcommand("prelie", "Pre-Lie structure of the symmetric top cells");
  pl->require_subcommand(1);
  bool pl_shifted = false;
  int max_lobes = 3, max_total = 6;
  auto* pc = pl->add_subcommand("check", "Relation r, closure and composition signs");
  pc->add_flag("--shifted", pl_shifted, "Shifted cells, unsigned composition");
  pc->add_option("--max-lobes", max_lobes, "Lobes per operand")->check(CLI::Range(1, 4));
  pc->add_option("--max-total", max_total, "Lobes per triple")->check(CLI::Range(1, 9));
  pc->callback([&] {
    action = [&] {
      const auto r = prelie_relation_check(!pl_shifted, max_lobes, max_total);
      Output o;
      o.text = tally_line("relation r on the binary cell", r.operad_checks, r.operad_failures) +
               tally_line("relation r on triples", r.triple_checks, r.triple_failures) +
               tally_line("closure of cppin images", r.closure_checks, r.closure_failures) +
               tally_line("composition signs", r.sign_checks, r.sign_failures) +
               tally_line("root-position sign rule", r.root_rule_checks, r.root_rule_failures);
      for (const auto& c : r.counterexamples) o.text += "counterexample " + c + "\n";
      o.data = {{"graded", !pl_shifted},
                {"binary", tally_json(r.operad_checks, r.operad_failures)},
                {"triples", tally_json(r.triple_checks, r.triple_failures)},
                {"closure", tally_json(r.closure_checks, r.closure_failures)},
                {"signs", tally_json(r.sign_checks, r.sign_failures)},
                {"root_rule", tally_json(r.root_rule_checks, r.root_rule_failures)},
                {"counterexamples", r.counterexamples},
                {"ok", r.ok()}};
      o.code = r.ok() ? 0 : 1;
      return o;
    };
  });

  std::string pl_left, pl_right;
  bool pl_bracket = false;
  auto* pci = pl->add_subcommand("circle", "Product in the free pre-Lie algebra on rooted trees");
  pci->add_option("--left", pl_left, "Unlabelled rooted tree")->required();
  pci->add_option("--right", pl_right, "Unlabelled rooted tree")->required();
  pci->add_flag("--bracket", pl_bracket, "Commutator instead of the product");
  pci->callback([&] {
    action = [&] {
      const auto a = prelie_element(pl_left), b = prelie_element(pl_right);
      const auto r = pl_bracket ? prelie_bracket(a, b) : prelie_product(a, b);
      Output o;
      o.text = prelie_str(r) + "\n";
      json terms = json::array();
      for (const auto& [t, c] : r) terms.push_back({{"tree", t}, {"coef", to_string(c)}});
      o.data = {{"terms", terms}};
      return o;
    };
  });

  int pl_nmax = 4;
  auto* pco = pl->add_subcommand("counts", "Coinvariant dimensions and symmetric cell counts");
  pco->add_option("--nmax", pl_nmax, "Largest arity")->check(CLI::Range(1, 5));
  pco->callback([&] {
    action = [&] {
      Output o;
      json rows = json::array();
      for (int n = 1; n <= pl_nmax; ++n) {
        const auto c = coinvariant_dimension(n), s = labelled_symmetric_cells(n);
        o.text += std::to_string(n) + " coinvariants " + std::to_string(c) + " cells " + std::to_string(s) + "\n";
        rows.push_back({{"n", n}, {"coinvariants", c}, {"cells", s}});
      }
      o.data = {{"rows", rows}};
      return o;
    };
  });

  // ---- ck
  auto* ck = app.add_subcommand("ck", "Connes-Kreimer Hopf algebra of rooted forests");
  ck->require_subcommand(1);
  std::string ck_forest, ck_left, ck_right;
  bool planar = false;
  int max_degree = 4;
  auto* ckc = ck->add_subcommand("coproduct", "Admissible-cut coproduct");
  ckc->add_option("--forest", ck_forest, "Forest literal")->required();
  ckc->add_flag("--planar", planar, "Planar forests");
  ckc->callback([&] {
    action = [&] {
      const auto r = ck_coproduct(ck_element(ck_forest, planar), planar);
      Output o;
      o.text = hopf_str(r);
      o.data = {{"terms", hopf_json(r)}};
      return o;
    };
  });
  auto* cka = ck->add_subcommand("antipode", "Antipode");
  cka->add_option("--forest", ck_forest, "Forest literal")->required();
  cka->add_flag("--planar", planar, "Planar forests");
  cka->callback([&] {
    action = [&] {
      const auto r = ck_antipode(ck_element(ck_forest, planar), planar);
      Output o;
      o.text = hopf_lines(r);
      o.data = {{"terms", hopf_json(r)}};
      return o;
    };
  });
  auto* ckp = ck->add_subcommand("product", "Product of forests");
  ckp->add_option("--left", ck_left, "Forest literal")->required();
  ckp->add_option("--right", ck_right, "Forest literal")->required();
  ckp->add_flag("--planar", planar, "Planar forests");
  ckp->callback([&] {
    action = [&] {
      const auto r = ck_product(ck_element(ck_left, planar), ck_element(ck_right, planar), planar);
      Output o;
      o.text = hopf_lines(r);
      o.data = {{"terms", hopf_json(r)}};
      return o;
    };
  });
  auto* ckd = ck->add_subcommand("verify-duality", "Pairing with the enveloping algebra");
  ckd->add_option("--max-degree", max_degree, "Highest degree")->check(CLI::Range(0, 5));
  ckd->callback([&] {
    action = [&] {
      const auto r = verify_ck_duality(max_degree);
      Output o;
      for (int d = 0; d <= r.max_degree; ++d)
        o.text += "degree " + std::to_string(d) + ": " + std::to_string(r.forests[d]) + " forests, " +
                  std::to_string(r.pbw[d]) + " PBW monomials\n";
      o.text += tally_line("structure constants", r.checks, r.failures);
      if (!r.ok()) o.text += "first mismatch " + r.first_mismatch + "\n";
      o.data = {{"forests", r.forests}, {"pbw", r.pbw}, {"checks", r.checks}, {"failures", r.failures},
                {"first_mismatch", r.first_mismatch}, {"ok", r.ok()}};
      o.code = r.ok() ? 0 : 1;
      return o;
    };
  });
  auto* ckh = ck->add_subcommand("verify-hopf", "Hopf algebra axioms");
  ckh->add_option("--max-degree", max_degree, "Highest degree")->check(CLI::Range(0, 6));
  ckh->add_flag("--planar", planar, "Planar forests");
  ckh->callback([&] {
    action = [&] {
      const auto r = verify_hopf_axioms(max_degree, planar);
      Output o;
      o.text = tally_line("Hopf axioms", r.checks, r.failures);
      for (const auto& c : r.counterexamples) o.text += "counterexample " + c + "\n";
      o.data = {{"checks", r.checks}, {"failures", r.failures}, {"counterexamples", r.counterexamples},
                {"ok", r.ok()}};
      o.code = r.ok() ? 0 : 1;
      return o;
    };
  });

  // ---- verify
  auto* ve = app.add_subcommand("verify", "Operad axioms and the acceptance checks");
  ve->require_subcommand(1);
  OperadVerifyOptions vopt;
  auto* vo = ve->add_subcommand("operad", "Operad axioms of the tree operad");
  vo->add_option("--nmax", vopt.nmax, "Exhaustive up to this many lobes")->required()->check(CLI::Range(1, 4));
  vo->add_option("--samples", vopt.samples, "Random triples")->check(CLI::Range(0, 100000));
  vo->add_option("--sample-lobes", vopt.sample_lobes, "Lobes per sampled tree")->check(CLI::Range(1, 5));
  vo->add_option("--seed", seed, "Master seed");
  vo->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
  vo->callback([&] {
    action = [&] {
      if (vopt.samples > 0) vopt.seed = need_seed(seed);
      vopt.threads = threads;
      const auto r = verify_operad(vopt);
      Output o;
      const std::pair<const char*, const AxiomTally*> parts[] = {
          {"sequential", &r.sequential}, {"parallel", &r.parallel}, {"unit", &r.unit},
          {"equivariance", &r.equivariance}};
      for (const auto& [name, t] : parts) {
        o.text += tally_line(name, t->checks, t->failures);
        for (const auto& c : t->counterexamples) o.text += "counterexample " + c + "\n";
        o.data[name] = {{"checks", t->checks}, {"failures", t->failures}, {"counterexamples", t->counterexamples}};
      }
      o.data["ok"] = r.ok();
      o.code = r.ok() ? 0 : 1;
      return o;
    };
  });

  int crit = 0;
  std::string data_dir;
  auto* vc = ve->add_subcommand("criterion", "One acceptance criterion");
  vc->add_option("--id", crit, "Criterion 1..11")->required()->check(CLI::Range(1, criterion_count));
  vc->add_option("--seed", seed, "Master seed");
  vc->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
  vc->add_option("--data-dir", data_dir, "Directory holding homotopy_signs.txt");
  vc->callback([&] {
    action = [&] {
      static const bool sampled[] = {true, true, false, false, false, true, true, true, false, false, true};
      CriterionOptions copt;
      if (sampled[crit - 1]) copt.seed = need_seed(seed);
      copt.threads = threads;
      copt.data_dir = data_dir;
      const auto r = run_criterion(crit, copt);
      Output o;
      o.text = "criterion " + std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + " " + r.name + "\n";
      for (const auto& d : r.details) o.text += "  " + d + "\n";
      o.data = {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", lines_json(r.details)}};
      o.code = r.pass ? 0 : 1;
      return o;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Output o = action();
    if (format == "json") std::cout << o.data.dump(2) << "\n";
    else std::cout << o.text;
    return o.code;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
