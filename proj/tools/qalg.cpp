// qalg: command-line front end for finite non-associative relation algebras.
//
// Exit codes: 0 positive verdict, 1 negative verdict, 2 inconclusive within
// budget, 3 input or usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qalg/qalg.hpp"

namespace {

using nlohmann::json;
using namespace qalg;

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 3;

struct Output {
  bool as_json = false;
  bool deterministic = false;
  json envelope = {{"verdict", nullptr}, {"stats", json::object()},
                   {"diagnostics", json::array()}};

  void verdict(const std::string& v) { envelope["verdict"] = v; }
  void certificate(json c) { envelope["certificate"] = std::move(c); }
  void diagnostic(const std::string& d) { envelope["diagnostics"].push_back(d); }
  void stat(const std::string& k, json v) { envelope["stats"][k] = std::move(v); }

  void search_stats(const SearchStats& st) {
    stat("nodes", st.nodes);
    stat("bases_exhausted", st.bases_exhausted);
    if (!deterministic) stat("seconds", st.seconds);
  }

  void flush_json() { std::cout << envelope.dump(2) << "\n"; }
};

AtomStructurePtr load_algebra(const std::string& ref, bool close = false) {
  if (ref.rfind("catalog:", 0) == 0) return catalog_get(ref.substr(8)).structure;
  return read_algebra_file(ref, close);
}

json rep_to_json(const Representation& r) {
  json matrix = json::array();
  for (int x = 0; x < r.base_size(); ++x) {
    json row = json::array();
    for (int y = 0; y < r.base_size(); ++y)
      row.push_back(r.structure().atom_name(r.atom_at(x, y)));
    matrix.push_back(row);
  }
  return {{"base", r.base()}, {"matrix", matrix}};
}

json violations_to_json(const ValidationReport& report) {
  json out = json::array();
  for (const auto& v : report.violations)
    out.push_back({{"rule", v.rule}, {"detail", v.detail}});
  return out;
}

void print_report(const ValidationReport& report, Output& out) {
  for (const auto& v : report.violations) {
    out.diagnostic(v.rule + ": " + v.detail);
    if (!out.as_json) std::cout << "violation " << v.rule << ": " << v.detail << "\n";
  }
}

int report_verdict(Output& out, const std::string& verdict, int code) {
  out.verdict(verdict);
  if (out.as_json)
    out.flush_json();
  else
    std::cout << verdict << "\n";
  return code;
}

int run_alg_check(const std::string& file, bool close, Output& out) {
  auto s = load_algebra(file, close);
  auto report = validate_atom_structure(*s);
  print_report(report, out);
  return report_verdict(out, report.ok() ? "VALID" : "INVALID",
                        report.ok() ? kExitPositive : kExitNegative);
}

int run_catalog_list(Output& out) {
  if (out.as_json) {
    json entries = json::array();
    for (const auto& key : catalog_keys()) {
      const auto& e = catalog_get(key);
      json reps = json::array();
      for (const auto& kr : e.known_representations)
        reps.push_back({{"kind", rep_kind_name(kr.kind)},
                        {"base_size", kr.rep.base_size()}});
      entries.push_back({{"key", key},
                         {"atoms", e.structure->atom_count()},
                         {"representations", reps},
                         {"notes", e.notes}});
    }
    out.certificate(entries);
    return report_verdict(out, "OK", kExitPositive);
  }
  for (const auto& key : catalog_keys()) {
    const auto& e = catalog_get(key);
    std::cout << key << " (" << e.structure->atom_count() << " atoms";
    for (const auto& kr : e.known_representations)
      std::cout << "; " << rep_kind_name(kr.kind) << " on " << kr.rep.base_size();
    std::cout << ")\n    " << e.notes << "\n";
  }
  return kExitPositive;
}

int run_catalog_export(const std::string& key, const std::string& dir, Output& out) {
  const auto& e = catalog_get(key);
  std::filesystem::path d(dir);
  std::filesystem::create_directories(d);
  auto alg_path = d / (key + ".alg");
  {
    std::ofstream f(alg_path);
    write_algebra(f, *e.structure);
  }
  std::vector<std::string> written = {alg_path.string()};
  int counter = 0;
  for (const auto& kr : e.known_representations) {
    auto rep_path =
        d / (key + "." + rep_kind_name(kr.kind) + std::to_string(counter++) + ".rep");
    std::ofstream f(rep_path);
    write_representation(f, kr.rep, key + ".alg");
    written.push_back(rep_path.string());
  }
  for (const auto& w : written) {
    out.diagnostic("wrote " + w);
    if (!out.as_json) std::cout << "wrote " << w << "\n";
  }
  if (out.as_json) {
    out.certificate(written);
    return report_verdict(out, "OK", kExitPositive);
  }
  return kExitPositive;
}

int run_net_check(const std::string& file, Output& out) {
  Network n = read_network_file(file);
  auto report = check_consistent(n);
  print_report(report, out);
  return report_verdict(out, report.ok() ? "CONSISTENT" : "INCONSISTENT",
                        report.ok() ? kExitPositive : kExitNegative);
}

int run_net_pc(const std::string& file, Output& out) {
  Network n = read_network_file(file);
  auto w = path_consistency_failure(n);
  if (w) {
    std::string msg = "triple (" + n.node_name(w->x) + "," + n.node_name(w->y) + "," +
                      n.node_name(w->z) + ") violates l(x,y);l(y,z) >= l(x,z)";
    out.diagnostic(msg);
    if (!out.as_json) std::cout << msg << "\n";
  }
  return report_verdict(out, w ? "NOT_PATH_CONSISTENT" : "PATH_CONSISTENT",
                        w ? kExitNegative : kExitPositive);
}

int run_net_refine(const std::string& file, Output& out) {
  std::string ref;
  Network n = read_network_file(file, &ref);
  // Keep catalog references; anything else is embedded so the output stands
  // on its own.
  if (ref.rfind("catalog:", 0) != 0) ref = "inline";
  auto r = refine_path_consistent(n);
  if (!r.consistent) {
    if (r.witness) {
      std::string msg = "label emptied at triple (" + n.node_name(r.witness->x) + "," +
                        n.node_name(r.witness->y) + "," + n.node_name(r.witness->z) + ")";
      out.diagnostic(msg);
      if (!out.as_json) std::cout << msg << "\n";
    }
    return report_verdict(out, "INCONSISTENT", kExitNegative);
  }
  if (out.as_json) {
    json edges = json::array();
    for (int x = 0; x < r.network.node_count(); ++x)
      for (int y = 0; y < r.network.node_count(); ++y) {
        json atoms = json::array();
        r.network.label(x, y).for_each(
            [&](int a) { atoms.push_back(n.structure().atom_name(a)); });
        edges.push_back({{"from", r.network.node_name(x)},
                         {"to", r.network.node_name(y)},
                         {"atoms", atoms}});
      }
    out.certificate({{"edges", edges}});
    return report_verdict(out, "REFINED", kExitPositive);
  }
  write_network(std::cout, r.network, ref);
  return kExitPositive;
}

int run_rep_verify(const std::string& kind, const std::string& file, Output& out) {
  auto parsed = read_representation_file(file);
  for (const auto& w : parsed.warnings) {
    out.diagnostic(w);
    if (!out.as_json) std::cout << "warning: " << w << "\n";
  }
  if (kind == "star") {
    auto res = check_star(parsed.rep);
    if (res.witness) {
      const auto& s = parsed.rep.structure();
      std::string msg = "quadrangle condition fails at (" + s.atom_name(res.witness->a) +
                        "," + s.atom_name(res.witness->b) + "," +
                        s.atom_name(res.witness->c) + "," + s.atom_name(res.witness->d) +
                        ")";
      out.diagnostic(msg);
      if (!out.as_json) std::cout << msg << "\n";
    }
    return report_verdict(out, res.holds ? "STAR_HOLDS" : "STAR_FAILS",
                          res.holds ? kExitPositive : kExitNegative);
  }
  ValidationReport report;
  if (kind == "qualitative")
    report = verify_qualitative(parsed.rep);
  else if (kind == "feeble")
    report = verify_feeble(parsed.rep);
  else if (kind == "strong")
    report = verify_strong(parsed.rep);
  else
    throw std::invalid_argument("unknown kind: " + kind);
  print_report(report, out);
  return report_verdict(out, report.ok() ? "VERIFIED" : "NOT_A_" + kind + "_REPRESENTATION",
                        report.ok() ? kExitPositive : kExitNegative);
}

int run_rep_embed(const std::string& rep_file, const std::string& net_file, Output& out) {
  auto parsed = read_representation_file(rep_file);
  Network n = read_network_file(net_file);
  auto assign = embed_network(parsed.rep, n);
  if (!assign) return report_verdict(out, "NONE", kExitNegative);
  json cert = json::object();
  for (int x = 0; x < n.node_count(); ++x) {
    cert[n.node_name(x)] = parsed.rep.point_name((*assign)[x]);
    if (!out.as_json)
      std::cout << n.node_name(x) << " -> " << parsed.rep.point_name((*assign)[x]) << "\n";
  }
  out.certificate(cert);
  return report_verdict(out, "EMBEDDED", kExitPositive);
}

int run_solve_rep(const std::string& algebra, bool feeble, SearchBudget budget,
                  Output& out) {
  auto s = load_algebra(algebra);
  SearchOutcome o = feeble ? find_feeble_rep(s, budget) : find_qualitative_rep(s, budget);
  out.search_stats(o.stats);
  switch (o.status) {
    case SearchStatus::Found:
      out.certificate(rep_to_json(*o.witness));
      if (!out.as_json) write_representation(std::cout, *o.witness, algebra);
      return report_verdict(out, "FOUND", kExitPositive);
    case SearchStatus::Obstructed: {
      std::string what =
          o.obstructed_triple
              ? "no consistent realisation of triple " +
                    s->triple_to_string(*o.obstructed_triple)
              : "no consistent realisation of atom " + s->atom_name(*o.obstructed_atom);
      out.diagnostic(what);
      if (!out.as_json) std::cout << what << "\n";
      return report_verdict(out, "OBSTRUCTED", kExitNegative);
    }
    case SearchStatus::NoneExhaustive:
      return report_verdict(out, "NONE_EXHAUSTIVE", kExitNegative);
    case SearchStatus::NoneWithinBudget:
      return report_verdict(out, "NONE_WITHIN_BUDGET", kExitUnknown);
  }
  return kExitInputError;
}

int run_solve_net(const std::string& algebra, const std::string& net_file,
                  SearchBudget budget, Output& out) {
  auto s = load_algebra(algebra);
  Network n = read_network_file(net_file);
  if (!(n.structure() == *s))
    throw std::invalid_argument("network file uses a different algebra");
  SatOutcome o = decide_qual_sat(n, budget);
  out.search_stats(o.stats);
  switch (o.status) {
    case SatStatus::Sat: {
      json cert = {{"representation", rep_to_json(*o.representation)}};
      json embed = json::object();
      for (int x = 0; x < n.node_count(); ++x)
        embed[n.node_name(x)] = o.representation->point_name((*o.embedding)[x]);
      cert["embedding"] = embed;
      out.certificate(cert);
      if (!out.as_json) {
        for (int x = 0; x < n.node_count(); ++x)
          std::cout << n.node_name(x) << " -> "
                    << o.representation->point_name((*o.embedding)[x]) << "\n";
        write_representation(std::cout, *o.representation, algebra);
      }
      return report_verdict(out, "SAT", kExitPositive);
    }
    case SatStatus::Unsat:
      return report_verdict(out, "UNSAT", kExitNegative);
    case SatStatus::Unknown:
      return report_verdict(out, "UNKNOWN_WITHIN_BUDGET", kExitUnknown);
  }
  return kExitInputError;
}

int run_eq_check(const std::string& text, int max_base, std::uint64_t seed, Output& out) {
  Equation eq = Equation::parse(text);
  auto res = check_validity(eq, max_base, seed);
  out.stat("herds_enumerated", res.herds_enumerated);
  out.stat("evaluations", res.evaluations);
  out.stat("certified_base", res.certified_base);
  if (res.counterexample) {
    const auto& ce = *res.counterexample;
    json blocks = json::array();
    for (const auto& b : ce.herd.blocks()) {
      json pairs = json::array();
      for (auto [x, y] : b.to_pairs()) pairs.push_back({x, y});
      blocks.push_back(pairs);
    }
    json assignment = json::object();
    for (std::size_t v = 0; v < eq.variables.size(); ++v) {
      json pairs = json::array();
      for (auto [x, y] : ce.herd.assignment()[v].to_pairs()) pairs.push_back({x, y});
      assignment[eq.variables[v]] = pairs;
    }
    out.certificate({{"base", ce.herd.base()},
                     {"blocks", blocks},
                     {"assignment", assignment},
                     {"lhs", ce.lhs_value.to_string()},
                     {"rhs", ce.rhs_value.to_string()}});
    if (!out.as_json) {
      std::cout << "counterexample herd:\n" << ce.herd.describe(eq.variables) << "\n";
      std::cout << "lhs = " << ce.lhs_value.to_string() << "\n";
      std::cout << "rhs = " << ce.rhs_value.to_string() << "\n";
    }
    return report_verdict(out, "COUNTEREXAMPLE", kExitNegative);
  }
  std::string verdict = "VALID_UP_TO(" + std::to_string(res.certified_base) + ")";
  if (res.certifies_validity) verdict = "VALID";
  if (!res.sampled_bases.empty()) {
    std::string note = "sampled (not exhaustive) at bases:";
    for (int b : res.sampled_bases) note += " " + std::to_string(b);
    out.diagnostic(note);
    if (!out.as_json) std::cout << note << "\n";
  }
  return report_verdict(out, verdict, kExitPositive);
}

int run_gen_3col(const std::string& graph_file, const std::string& out_file, Output& out) {
  SimpleGraph g = read_graph_file(graph_file);
  auto red = reduce_three_colouring(g);
  if (red.trivially_colourable)
    return report_verdict(out, "TRIVIALLY_COLOURABLE", kExitPositive);
  if (out_file.empty()) {
    if (out.as_json) {
      out.stat("atoms", red.structure->atom_count());
      return report_verdict(out, "GENERATED", kExitPositive);
    }
    write_algebra(std::cout, *red.structure);
    return kExitPositive;
  }
  std::ofstream f(out_file);
  write_algebra(f, *red.structure);
  out.diagnostic("wrote " + out_file);
  return report_verdict(out, "GENERATED", kExitPositive);
}

int run_gen_mt(const std::string& graph_file, const std::string& out_file, Output& out) {
  SimpleGraph g = read_graph_file(graph_file);
  auto red = reduce_monochromatic_triangle(g);
  if (red.known_no) return report_verdict(out, "KNOWN_NO", kExitNegative);
  if (out_file.empty()) {
    if (out.as_json) {
      out.stat("atoms", red.structure->atom_count());
      return report_verdict(out, "GENERATED", kExitPositive);
    }
    write_algebra(std::cout, *red.structure);
    return kExitPositive;
  }
  std::ofstream f(out_file);
  write_algebra(f, *red.structure);
  out.diagnostic("wrote " + out_file);
  return report_verdict(out, "GENERATED", kExitPositive);
}

int run_gen_monk(int n, std::optional<int> k, const std::string& out_file, Output& out) {
  auto s = monk_algebra(n, k);
  if (out_file.empty()) {
    if (out.as_json) {
      out.stat("atoms", s->atom_count());
      return report_verdict(out, "GENERATED", kExitPositive);
    }
    write_algebra(std::cout, *s);
    return kExitPositive;
  }
  std::ofstream f(out_file);
  write_algebra(f, *s);
  out.diagnostic("wrote " + out_file);
  return report_verdict(out, "GENERATED", kExitPositive);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite non-associative relation algebras: validation, networks, "
               "representations, equations, hardness instances"};
  app.require_subcommand(1);

  Output out;
  app.add_flag("--json", out.as_json, "machine-readable verdict envelope");
  app.add_flag("--deterministic", out.deterministic,
               "byte-identical reports across runs (omits timing)");

  // catalog
  auto* cat = app.add_subcommand("catalog", "built-in algebras");
  cat->require_subcommand(1);
  cat->add_subcommand("list", "list catalog entries");
  auto* cat_export = cat->add_subcommand("export", "write catalog files");
  std::string cat_key, cat_dir = ".";
  cat_export->add_option("key", cat_key)->required();
  cat_export->add_option("--dir", cat_dir, "output directory");

  // alg
  auto* alg = app.add_subcommand("alg", "atom structures");
  alg->require_subcommand(1);
  auto* alg_check = alg->add_subcommand("check", "validate an algebra file");
  std::string alg_file;
  bool alg_close = false;
  alg_check->add_option("file", alg_file)->required();
  alg_check->add_flag("--close", alg_close, "close the triple set under Peircean transforms");

  // net
  auto* net = app.add_subcommand("net", "constraint networks");
  net->require_subcommand(1);
  std::string net_file;
  auto* net_check = net->add_subcommand("check", "consistency conditions");
  auto* net_pc = net->add_subcommand("pc", "path-consistency test");
  auto* net_refine = net->add_subcommand("refine", "path-consistent refinement");
  for (auto* sc : {net_check, net_pc, net_refine})
    sc->add_option("file", net_file)->required();

  // rep
  auto* rep = app.add_subcommand("rep", "representations");
  rep->require_subcommand(1);
  auto* rep_verify = rep->add_subcommand("verify", "run a verifier");
  std::string rep_kind = "qualitative", rep_file, rep_net_file;
  rep_verify->add_option("--kind", rep_kind, "qualitative|feeble|strong|star");
  rep_verify->add_option("file", rep_file)->required();
  auto* rep_embed = rep->add_subcommand("embed", "embed a network into a representation");
  rep_embed->add_option("rep", rep_file)->required();
  rep_embed->add_option("net", rep_net_file)->required();

  // solve
  auto* solve = app.add_subcommand("solve", "representation and satisfiability search");
  solve->require_subcommand(1);
  std::string solve_algebra, solve_net_file;
  SearchBudget budget;
  auto* solve_qrep = solve->add_subcommand("qrep", "find a qualitative representation");
  auto* solve_frep = solve->add_subcommand("frep", "find a feeble representation");
  auto* solve_net = solve->add_subcommand("net", "qualitative network satisfiability");
  for (auto* sc : {solve_qrep, solve_frep, solve_net}) {
    sc->add_option("algebra", solve_algebra, "algebra file or catalog:<key>")->required();
    sc->add_option("--max-base", budget.max_base, "largest base size to search");
    sc->add_option("--node-limit", budget.node_limit, "search node budget");
  }
  solve_net->add_option("network", solve_net_file)->required();

  // eq
  auto* eqcmd = app.add_subcommand("eq", "equations over qualitative representations");
  eqcmd->require_subcommand(1);
  auto* eq_check = eqcmd->add_subcommand("check", "validity / counterexample search");
  std::string eq_text;
  int eq_max_base = 3;
  std::uint64_t eq_seed = 12345;
  eq_check->add_option("equation", eq_text, "\"lhs = rhs\"")->required();
  eq_check->add_option("--max-base", eq_max_base, "largest herd base to try");
  eq_check->add_option("--seed", eq_seed, "sampling seed");

  // gen
  auto* gen = app.add_subcommand("gen", "hardness-reduction instances");
  gen->require_subcommand(1);
  std::string gen_graph, gen_out;
  auto* gen_3col = gen->add_subcommand("3col", "3-colourability reduction");
  auto* gen_mt = gen->add_subcommand("mt", "monochromatic-triangle reduction");
  for (auto* sc : {gen_3col, gen_mt}) {
    sc->add_option("graph", gen_graph)->required();
    sc->add_option("-o,--output", gen_out, "write the algebra here");
  }
  auto* gen_monk = gen->add_subcommand("monk", "Monk algebra family");
  int monk_n = 2;
  int monk_k = -1;
  gen_monk->add_option("n", monk_n)->required();
  gen_monk->add_option("--k", monk_k, "override the Ramsey parameter");
  gen_monk->add_option("-o,--output", gen_out, "write the algebra here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cat->parsed()) {
      if (cat->get_subcommand("list")->parsed()) return run_catalog_list(out);
      return run_catalog_export(cat_key, cat_dir, out);
    }
    if (alg->parsed()) return run_alg_check(alg_file, alg_close, out);
    if (net->parsed()) {
      if (net_check->parsed()) return run_net_check(net_file, out);
      if (net_pc->parsed()) return run_net_pc(net_file, out);
      return run_net_refine(net_file, out);
    }
    if (rep->parsed()) {
      if (rep_verify->parsed()) return run_rep_verify(rep_kind, rep_file, out);
      return run_rep_embed(rep_file, rep_net_file, out);
    }
    if (solve->parsed()) {
      if (solve_net->parsed()) return run_solve_net(solve_algebra, solve_net_file, budget, out);
      return run_solve_rep(solve_algebra, solve_frep->parsed(), budget, out);
    }
    if (eqcmd->parsed()) return run_eq_check(eq_text, eq_max_base, eq_seed, out);
    if (gen->parsed()) {
      if (gen_3col->parsed()) return run_gen_3col(gen_graph, gen_out, out);
      if (gen_mt->parsed()) return run_gen_mt(gen_graph, gen_out, out);
      return run_gen_monk(monk_n, monk_k < 0 ? std::nullopt : std::optional<int>(monk_k),
                          gen_out, out);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (out.as_json) {
      out.verdict("INPUT_ERROR");
      out.diagnostic(e.what());
      out.flush_json();
    }
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (out.as_json) {
      out.verdict("INPUT_ERROR");
      out.diagnostic(e.what());
      out.flush_json();
    }
    return kExitInputError;
  }
  return kExitInputError;
}
