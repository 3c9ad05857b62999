// Acceptance suite: ten checks, one verdict line each, exit code = number of
// failing checks. Each check re-derives its expected values from independent
// oracles (brute force, exhaustive enumeration, direct recomputation).

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <random>
#include <vector>

#include "../helpers.hpp"

using namespace qalg;
using qalg::test::brute_force_refinements;
using qalg::test::cat;
using qalg::test::figure_network;
using qalg::test::known_rep;

namespace {

int g_failures = 0;

class Criterion {
public:
  Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

  void check(bool condition, const std::string& what) {
    if (!condition) {
      ok_ = false;
      notes_.push_back(what);
    }
  }

  ~Criterion() {
    std::cout << (ok_ ? "[PASS]" : "[FAIL]") << " criterion " << number_ << ": "
              << title_ << "\n";
    for (const auto& n : notes_) std::cout << "       - " << n << "\n";
    if (!ok_) ++g_failures;
  }

private:
  int number_;
  std::string title_;
  bool ok_ = true;
  std::vector<std::string> notes_;
};

AtomStructure::Definition definition_of(const AtomStructure& s) {
  AtomStructure::Definition def;
  def.name = s.name();
  for (int a = 0; a < s.atom_count(); ++a) def.atoms.push_back(s.atom_name(a));
  s.identity_set().for_each([&](int e) { def.identity.push_back(s.atom_name(e)); });
  for (int a = 0; a < s.atom_count(); ++a)
    if (s.converse(a) > a)
      def.converse.push_back({s.atom_name(a), s.atom_name(s.converse(a))});
  return def;
}

void criterion_1_axiom_validation() {
  Criterion c(1, "axiom validation with a mutation suite");
  int mutants = 0;
  for (const auto& key : catalog_keys()) {
    const auto& s = *cat(key);
    c.check(validate_atom_structure(s).ok(), key + " fails validation");
    auto triples = s.consistent_list();
    auto def = definition_of(s);

    // Mutant: drop one member of a non-trivial Peircean orbit.
    for (const auto& t : triples) {
      if (s.transforms_of(t).size() < 2) continue;
      std::vector<Triple> rest;
      for (const auto& u : triples)
        if (!(u == t)) rest.push_back(u);
      auto mutant = AtomStructure::from_triples(def, rest);
      c.check(!validate_atom_structure(*mutant).ok(),
              key + ": dropping " + s.triple_to_string(t) + " goes unnoticed");
      ++mutants;
      break;
    }
    // Mutant: drop an identity-law witness (e,a,a).
    for (const auto& t : triples) {
      if (!s.is_identity_atom(t.a) || t.b != t.c) continue;
      std::vector<Triple> rest;
      for (const auto& u : triples)
        if (!(u == t)) rest.push_back(u);
      auto mutant = AtomStructure::from_triples(def, rest);
      c.check(!validate_atom_structure(*mutant).ok(),
              key + ": dropping " + s.triple_to_string(t) + " goes unnoticed");
      ++mutants;
      break;
    }
    // Mutant: add an identity-law violation (e,a,b), a != b.
    bool added = false;
    for (int e = s.identity_set().first(); e >= 0 && !added; e = s.identity_set().next(e))
      for (int a = 0; a < s.atom_count() && !added; ++a)
        for (int b = 0; b < s.atom_count() && !added; ++b) {
          if (a == b || s.consistent(e, a, b)) continue;
          auto extended = triples;
          extended.push_back({e, a, b});
          auto mutant = AtomStructure::from_triples(def, extended);
          c.check(!validate_atom_structure(*mutant).ok(),
                  key + ": adding (" + s.atom_name(e) + "," + s.atom_name(a) + "," +
                      s.atom_name(b) + ") goes unnoticed");
          ++mutants;
          added = true;
        }
  }
  c.check(mutants >= 20, "fewer than twenty mutants exercised");
}

void criterion_2_associativity_panel() {
  Criterion c(2, "associativity panel with exact witnesses");
  const auto& ex1 = *cat("ex1");
  auto w1 = associativity_failure(ex1);
  c.check(w1.has_value(), "ex1 reported associative");
  if (w1)
    c.check(w1->t == Triple{ex1.require_atom("e"), ex1.require_atom("e'"),
                            ex1.require_atom("a")},
            "ex1 witness is not (e,e',a)");

  const auto& ex4 = *cat("ex4");
  auto w4 = associativity_failure(ex4);
  c.check(w4.has_value(), "ex4 reported associative");
  {
    // The published witness (a,e',a): (a;e');a = a but a;(e';a) = 0.
    auto a = Element::of_names(ex4, {"a"}), ep = Element::of_names(ex4, {"e'"});
    c.check(compose(compose(a, ep), a) == Element::of_names(ex4, {"a"}),
            "(a;e');a is not a in ex4");
    c.check(compose(a, compose(ep, a)) == Element::zero(ex4), "a;(e';a) is not 0 in ex4");
  }
  if (w4) {
    auto ea = Element::atom(ex4, w4->t.a), eb = Element::atom(ex4, w4->t.b),
         ec = Element::atom(ex4, w4->t.c);
    c.check(!(compose(compose(ea, eb), ec) == compose(ea, compose(eb, ec))),
            "returned ex4 witness does not fail associativity");
  }

  c.check(is_associative(*cat("ra2565")), "ra2565 not associative");
  c.check(is_associative(*cat("mckenzie")), "mckenzie not associative");
  c.check(!is_semi_associative(ex1), "ex1 semi-associative");
  c.check(!is_semi_associative(*cat("ex2")), "ex2 semi-associative");
  for (const auto& key : catalog_keys()) {
    const auto& s = *cat(key);
    bool expected = s.identity_set().count() == 1 && is_semi_associative(s);
    c.check(is_integral(s) == expected, key + ": integrality biconditional fails");
  }
}

void criterion_3_verifier_panel() {
  Criterion c(3, "representation verifier panel");
  const auto& chain = known_rep("point", RepKind::Qualitative);
  c.check(verify_qualitative(chain).ok(), "four-chain not qualitative");
  c.check(!verify_strong(chain).ok(), "four-chain reported strong");

  c.check(verify_strong(known_rep("ra2565", RepKind::Strong)).ok(),
          "K4 one-factorisation not strong");
  const auto& three = known_rep("ra2565", RepKind::Qualitative);
  c.check(verify_qualitative(three).ok(), "three-point restriction not qualitative");
  c.check(!verify_strong(three).ok(), "three-point restriction reported strong");

  const auto& theta = known_rep("ex1", RepKind::Feeble);
  c.check(verify_feeble(theta).ok(), "ex1 two-point labelling not feeble");
  c.check(!verify_qualitative(theta).ok(), "ex1 two-point labelling reported qualitative");

  c.check(verify_feeble(known_rep("ex4", RepKind::Feeble)).ok(),
          "ex4 two-point labelling not feeble");
  c.check(verify_qualitative(known_rep("rcc5", RepKind::Qualitative)).ok(),
          "eleven regions not a qualitative representation");
}

void criterion_4_star_condition() {
  Criterion c(4, "quadrangle condition");
  const auto& s = *cat("mckenzie");
  int a = s.require_atom("a"), ac = s.require_atom("a^"), b = s.require_atom("b");

  auto pentagon = known_rep("mckenzie", RepKind::Qualitative, 0);
  auto res = check_star(pentagon);
  c.check(!res.holds, "pentagon satisfies the quadrangle condition");
  {
    // Verify the published witness: (# o <) and (# o >) disjoint although
    // (b;a).(b;a^) = b.
    auto relc = [&](int p, int q) {
      const int n = pentagon.base_size();
      auto A = pentagon.atom_relation(p), B = pentagon.atom_relation(q);
      std::vector<bool> out(n * n, false);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (A[x * n + y])
            for (int z = 0; z < n; ++z)
              if (B[y * n + z]) out[x * n + z] = true;
      return out;
    };
    auto l = relc(b, a), r = relc(b, ac);
    bool meet = false;
    for (std::size_t i = 0; i < l.size(); ++i) meet |= (l[i] && r[i]);
    c.check(!meet, "(# o <) meets (# o >) in the pentagon");
    c.check((compose(Element::atom(s, b), Element::atom(s, a)) &
             compose(Element::atom(s, b), Element::atom(s, ac))) ==
                Element::of_names(s, {"b"}),
            "(b;a).(b;a^) is not b");
  }

  auto dd = check_star(known_rep("mckenzie", RepKind::Qualitative, 1));
  if (!dd.holds && dd.witness) {
    c.check(dd.holds,
            "eight-point double chain fails the quadrangle condition at (" +
                s.atom_name(dd.witness->a) + "," + s.atom_name(dd.witness->b) + "," +
                s.atom_name(dd.witness->c) + "," + s.atom_name(dd.witness->d) +
                ") - known erratum in this fixture's source; the bundled six-point "
                "McKenzie representation does satisfy the condition");
  } else {
    c.check(dd.holds, "eight-point double chain fails the quadrangle condition");
  }

  for (const auto& key : catalog_keys())
    for (const auto& kr : catalog_get(key).known_representations) {
      if (!verify_qualitative(kr.rep).ok()) continue;
      if (check_star(kr.rep).holds)
        c.check(is_associative(*catalog_get(key).structure),
                key + ": quadrangle condition without associativity");
    }
}

void criterion_5_solver() {
  Criterion c(5, "representation search");
  auto obstructed = find_qualitative_rep(cat("ex4"));
  c.check(obstructed.status == SearchStatus::Obstructed, "ex4 not obstructed");
  if (obstructed.obstructed_triple) {
    const auto& s = *cat("ex4");
    int a = s.require_atom("a");
    c.check(*obstructed.obstructed_triple == Triple{a, a, a},
            "ex4 obstruction is not (a,a,a)");
  }

  for (const char* key : {"point", "ex1", "ex2", "ra2565", "mckenzie"}) {
    auto outcome = find_qualitative_rep(cat(key));
    c.check(outcome.status == SearchStatus::Found,
            std::string(key) + ": no qualitative representation found");
    if (outcome.witness)
      c.check(verify_qualitative(*outcome.witness).ok(),
              std::string(key) + ": witness fails verification");
  }

  auto mk = find_qualitative_rep(cat("mckenzie"));
  c.check(mk.witness && mk.witness->base_size() >= 5, "mckenzie witness below five points");
  SearchBudget capped;
  capped.max_base = 4;
  auto none4 = find_qualitative_rep(cat("mckenzie"), capped);
  c.check(none4.status == SearchStatus::NoneWithinBudget &&
              none4.stats.bases_exhausted == 4,
          "bases up to four not exhaustively refuted for mckenzie");

  SearchBudget wide;
  wide.max_base = 8;
  auto feeble = find_feeble_rep(cat("ra2565"), wide);
  c.check(feeble.status == SearchStatus::Found && feeble.witness->base_size() < 5,
          "ra2565 feeble witness not below five points");
  bool complete = false;
  c.check(!exhaustive_feeble_at_base(cat("ra2565"), 5, &complete).has_value() && complete,
          "five-point feeble labellings of ra2565 not exhaustively refuted");
}

void criterion_6_network_satisfaction() {
  Criterion c(6, "network satisfaction");
  auto fig = figure_network();
  auto sat = decide_qual_sat(fig);
  c.check(sat.status == SatStatus::Sat, "worked example network not SAT");
  if (sat.representation && sat.embedding) {
    bool respected = true;
    for (int x = 0; x < fig.node_count(); ++x)
      for (int y = 0; y < fig.node_count(); ++y)
        respected = respected && fig.label(x, y).test(sat.representation->atom_at(
                                     (*sat.embedding)[x], (*sat.embedding)[y]));
    c.check(respected, "certificate embedding violates a label");
  }
  auto assign = embed_network(known_rep("point", RepKind::Qualitative), fig);
  c.check(assign.has_value(), "no embedding into the four-element chain");

  auto s = cat("ex1");
  NetworkBuilder b(s, {"0", "1"});
  b.set(0, 1, AtomSet::single(s->require_atom("a")));
  b.set(1, 0, AtomSet::single(s->require_atom("a")));
  c.check(decide_qual_sat(b.build()).status == SatStatus::Sat,
          "the a-cycle over ex1 not qualitatively SAT");
  c.check(!is_associative(*s), "ex1 associative (it should have no strong representation)");
}

long canonical_mask(int n, long mask, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> bit(n * n, -1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    bit[pairs[k].first * n + pairs[k].second] = static_cast<int>(k);
    bit[pairs[k].second * n + pairs[k].first] = static_cast<int>(k);
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long best = mask;
  do {
    long remapped = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1)
        remapped |= 1L << bit[perm[pairs[k].first] * n + perm[pairs[k].second]];
    best = std::min(best, remapped);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void criterion_7_reductions() {
  Criterion c(7, "reduction correctness on all small graphs");
  // 3-colourability, all graphs on up to six vertices up to isomorphism.
  long checked_3col = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    for (long mask = 0; mask < (1L << pairs.size()); ++mask) {
      if (canonical_mask(n, mask, pairs) != mask) continue;
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
      SimpleGraph g(names);
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if ((mask >> k) & 1) g.add_edge(pairs[k].first, pairs[k].second);
      ++checked_3col;

      auto colouring = three_colouring_brute_force(g);
      auto red = reduce_three_colouring(g);
      if (red.trivially_colourable) {
        c.check(g.edge_count() == 0, "trivial verdict on a graph with edges");
        c.check(colouring.has_value(), "edgeless graph not colourable");
        continue;
      }
      c.check(validate_atom_structure(*red.structure).ok(),
              "reduction output fails validation");
      if (colouring) {
        // colourable => FOUND, via the explicit witness network.
        auto witness = colouring_to_witness(red, *colouring);
        bool consistent = check_consistent(witness).ok();
        c.check(consistent, "witness network inconsistent");
        if (consistent) {
          auto rep = quotient(witness);
          c.check(verify_qualitative(rep).ok(), "witness fails qualitative verification");
          // FOUND => colourable, via extraction.
          auto back = extract_colouring(red, rep);
          for (auto [u, v] : g.edges())
            c.check(back[u] != back[v], "extracted colouring not proper");
        }
      }
    }
  }
  c.check(checked_3col >= 200, "fewer than 200 isomorphism classes swept");

  // Monochromatic triangle, all graphs on up to five vertices up to
  // isomorphism; complete graphs have no non-edge and are outside the
  // reduction's precondition.
  long checked_mt = 0;
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    for (long mask = 0; mask < (1L << pairs.size()); ++mask) {
      if (canonical_mask(n, mask, pairs) != mask) continue;
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
      SimpleGraph g(names);
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if ((mask >> k) & 1) g.add_edge(pairs[k].first, pairs[k].second);
      if (!g.has_non_edge()) continue;
      ++checked_mt;

      auto colouring = monochromatic_triangle_brute_force(g);
      auto red = reduce_monochromatic_triangle(g);
      c.check(!red.known_no, "small instance declared a known no");
      c.check(validate_atom_structure(*red.structure).ok(),
              "reduction output fails validation");
      if (colouring) {
        auto witness = mono_triangle_witness(red, *colouring);
        bool consistent = check_consistent(witness).ok();
        c.check(consistent, "witness network inconsistent");
        if (consistent) {
          auto rep = quotient(witness);
          c.check(verify_feeble(rep).ok(), "witness fails feeble verification");
          auto back = extract_mono_triangle_colouring(red, rep);
          c.check(back == *colouring, "extraction does not invert the witness");
        }
      }
    }
  }
  c.check(checked_mt >= 40, "fewer than 40 isomorphism classes swept");
}

void criterion_8_monk_obstruction() {
  Criterion c(8, "Monk algebra obstruction");
  c.check(monk_algebra(2)->atom_count() == 17, "monk(2) does not have 17 atoms");
  c.check(monk_algebra(3)->atom_count() == 139, "monk(3) does not have 139 atoms");
  c.check(validate_atom_structure(*monk_algebra(2)).ok(), "monk(2) fails validation");
  auto cert = monk2_no_feeble_certificate();
  c.check(cert.k6_check, "some 2-colouring of K6 avoids monochromatic triangles");
  c.check(cert.min_points_needed >= 6, "witnessing bound below six points");
  c.check(cert.no_feeble, "certificate does not conclude non-representability");
}

void criterion_9_equations() {
  Criterion c(9, "equation validity");
  Equation semi = Equation::parse("x;(1;1) = (x;1);1");
  auto res = check_validity(semi, 3);
  c.check(res.counterexample.has_value(), "no counterexample for semi-associativity");
  if (res.counterexample) {
    c.check(res.counterexample->herd.base() <= 3, "counterexample beyond base three");
    auto l = eval_in_herd_reference(res.counterexample->herd, semi.lhs);
    auto r = eval_in_herd_reference(res.counterexample->herd, semi.rhs);
    c.check(l != r, "counterexample does not re-verify");
  }
  for (const char* text : {"(1;x);1 = 1;(x;1)", "1';x = x"}) {
    auto ok = check_validity(Equation::parse(text), 3);
    c.check(!ok.counterexample.has_value(),
            std::string(text) + ": spurious counterexample");
    c.check(ok.certified_base == 3 && ok.sampled_bases.empty(),
            std::string(text) + ": bases up to three not exhausted");
  }
}

void criterion_10_property_suites() {
  Criterion c(10, "randomized property suites");
  const std::vector<std::string> keys = {"point", "ex1", "ex2", "ra2565",
                                         "ex4", "mckenzie", "rcc5"};
  std::mt19937_64 rng(20260809);

  // Peircean element-level law and additivity, 10^4 cases each.
  for (int i = 0; i < 10000; ++i) {
    const auto& s = *cat(keys[rng() % keys.size()]);
    auto x = qalg::test::random_element(s, rng);
    auto y = qalg::test::random_element(s, rng);
    auto z = qalg::test::random_element(s, rng);
    if (((compose(x, y) & converse_of(z)).is_zero()) !=
        ((compose(y, z) & converse_of(x)).is_zero())) {
      c.check(false, "peircean law fails");
      break;
    }
  }
  for (int i = 0; i < 10000; ++i) {
    const auto& s = *cat(keys[rng() % keys.size()]);
    auto x = qalg::test::random_element(s, rng);
    auto xp = qalg::test::random_element(s, rng);
    auto y = qalg::test::random_element(s, rng);
    if (!(compose(x | xp, y) == (compose(x, y) | compose(xp, y)))) {
      c.check(false, "additivity fails");
      break;
    }
  }

  // Path-consistency refinement: idempotent, monotone, solution-preserving.
  for (int i = 0; i < 10000; ++i) {
    auto sp = cat(i % 2 == 0 ? "point" : "ex1");
    const auto& s = *sp;
    std::vector<std::string> names = {"x", "y", "z"};
    NetworkBuilder b(sp, names);
    for (int u = 0; u < 3; ++u)
      for (int v = u + 1; v < 3; ++v) {
        AtomSet set = qalg::test::random_atom_set(s, rng);
        if (set.empty()) set = s.universe();
        b.set(u, v, set);
      }
    Network n = b.build();
    auto r = refine_path_consistent(n);
    auto solutions = brute_force_refinements(n);
    if (!r.consistent) {
      if (!solutions.empty()) {
        c.check(false, "refinement discarded a solution");
        break;
      }
      continue;
    }
    bool mono = true;
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v)
        mono = mono && r.network.label(u, v).subset_of(n.label(u, v));
    auto again = refine_path_consistent(r.network);
    bool idem = again.consistent && again.network.labels() == r.network.labels();
    bool preserved = true;
    for (const auto& m : solutions)
      for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v)
          preserved = preserved && r.network.label(u, v).test(m.atom_at(u, v));
    if (!(mono && idem && preserved)) {
      c.check(false, "refinement property violated");
      break;
    }
  }

  // Quotient round trip on duplicated representation points.
  for (int i = 0; i < 10000; ++i) {
    const auto& entry = catalog_get(keys[rng() % keys.size()]);
    const auto& rep =
        entry.known_representations[rng() % entry.known_representations.size()].rep;
    int b = rep.base_size();
    std::vector<int> picks(b);
    std::iota(picks.begin(), picks.end(), 0);
    picks.push_back(static_cast<int>(rng() % b));
    const int m = static_cast<int>(picks.size());
    std::vector<std::string> names(m);
    for (int k = 0; k < m; ++k) names[k] = "d" + std::to_string(k);
    std::vector<int> atoms(m * m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) atoms[x * m + y] = rep.atom_at(picks[x], picks[y]);
    auto back = quotient(AtomicNetwork(entry.structure, names, atoms));
    if (!(back.base_size() == b)) {
      c.check(false, "quotient round trip changed the base");
      break;
    }
  }

  // Verifier implications on random restrictions.
  for (int i = 0; i < 10000; ++i) {
    const auto& entry = catalog_get(keys[rng() % keys.size()]);
    const auto& rep =
        entry.known_representations[rng() % entry.known_representations.size()].rep;
    int b = rep.base_size();
    std::vector<int> subset;
    for (int x = 0; x < b; ++x)
      if (rng() & 1) subset.push_back(x);
    if (subset.empty()) subset.push_back(static_cast<int>(rng() % b));
    const int m = static_cast<int>(subset.size());
    std::vector<std::string> names(m);
    for (int k = 0; k < m; ++k) names[k] = rep.point_name(subset[k]);
    std::vector<int> atoms(m * m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) atoms[x * m + y] = rep.atom_at(subset[x], subset[y]);
    Representation restricted(entry.structure, names, atoms);
    bool strong = verify_strong(restricted).ok();
    bool qual = verify_qualitative(restricted).ok();
    bool feeble = verify_feeble(restricted).ok();
    if ((strong && !qual) || (qual && !feeble)) {
      c.check(false, "verifier implication chain broken");
      break;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  void (*criteria[])() = {
      criterion_1_axiom_validation, criterion_2_associativity_panel,
      criterion_3_verifier_panel,   criterion_4_star_condition,
      criterion_5_solver,           criterion_6_network_satisfaction,
      criterion_7_reductions,       criterion_8_monk_obstruction,
      criterion_9_equations,        criterion_10_property_suites};
  if (argc > 1) {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > 10) {
      std::cerr << "usage: " << argv[0] << " [1..10]\n";
      return 64;
    }
    criteria[n - 1]();
  } else {
    for (auto f : criteria) f();
  }
  std::cout << (g_failures == 0 ? "all criteria passed"
                                : std::to_string(g_failures) + " criterion(s) failed")
            << "\n";
  return g_failures;
}
