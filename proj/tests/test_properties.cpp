// Randomized property suites: seeded, at least ten thousand cases each.

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace qalg;
using qalg::test::cat;
using qalg::test::known_rep;
using qalg::test::random_element;

namespace {

const std::vector<std::string>& small_keys() {
  static const std::vector<std::string> keys = {"point", "ex1", "ex2", "ra2565",
                                                "ex4", "mckenzie", "rcc5"};
  return keys;
}

Network random_network(const AtomStructurePtr& sp, int nodes, std::mt19937_64& rng) {
  const AtomStructure& s = *sp;
  std::vector<std::string> names;
  for (int i = 0; i < nodes; ++i) names.push_back("n" + std::to_string(i));
  NetworkBuilder b(sp, names);
  for (int x = 0; x < nodes; ++x)
    for (int y = x + 1; y < nodes; ++y) {
      AtomSet set = qalg::test::random_atom_set(s, rng);
      if (set.empty()) set = s.universe();
      b.set(x, y, set);
    }
  return b.build();
}

}  // namespace

TEST_CASE("peircean law at element level") {
  std::mt19937_64 rng(1001);
  for (int i = 0; i < 12000; ++i) {
    const auto& s = *cat(small_keys()[rng() % small_keys().size()]);
    auto x = random_element(s, rng), y = random_element(s, rng), z = random_element(s, rng);
    bool left = (compose(x, y) & converse_of(z)).is_zero();
    bool right = (compose(y, z) & converse_of(x)).is_zero();
    REQUIRE(left == right);
  }
}

TEST_CASE("composition is completely additive") {
  std::mt19937_64 rng(1002);
  for (int i = 0; i < 12000; ++i) {
    const auto& s = *cat(small_keys()[rng() % small_keys().size()]);
    auto x = random_element(s, rng), xp = random_element(s, rng), y = random_element(s, rng);
    REQUIRE(compose(x | xp, y) == (compose(x, y) | compose(xp, y)));
    REQUIRE(compose(y, x | xp) == (compose(y, x) | compose(y, xp)));
  }
}

TEST_CASE("the identity element is a two-sided unit") {
  std::mt19937_64 rng(1003);
  for (int i = 0; i < 12000; ++i) {
    const auto& s = *cat(small_keys()[rng() % small_keys().size()]);
    auto x = random_element(s, rng);
    auto e = identity_element(s);
    REQUIRE(compose(e, x) == x);
    REQUIRE(compose(x, e) == x);
  }
}

TEST_CASE("consistent triples carry their full six-triple orbit") {
  for (const auto& key : small_keys()) {
    const auto& s = *cat(key);
    for (const auto& t : s.consistent_list()) {
      REQUIRE(s.consistent(s.converse(t.b), s.converse(t.a), s.converse(t.c)));
      REQUIRE(s.consistent(s.converse(t.c), t.a, s.converse(t.b)));
      for (const auto& u : s.transforms_of(t)) REQUIRE(s.consistent(u.a, u.b, u.c));
    }
  }
}

TEST_CASE("conditions c and d never fire alone") {
  // On random networks, if conditions (a) and (b) hold then (c) and (d) do.
  std::mt19937_64 rng(1004);
  for (int i = 0; i < 10000; ++i) {
    auto sp = cat(small_keys()[rng() % small_keys().size()]);
    auto n = random_network(sp, 2 + static_cast<int>(rng() % 2), rng);
    auto report = check_consistent(n);
    bool ab = true, cd = true;
    for (const auto& v : report.violations) {
      if (v.rule == "network-a" || v.rule == "network-b") ab = false;
      if (v.rule == "network-c" || v.rule == "network-d") cd = false;
    }
    if (ab) REQUIRE(cd);
  }
}

TEST_CASE("refinement is idempotent, monotone and solution-preserving") {
  std::mt19937_64 rng(1005);
  const std::vector<std::string> keys = {"point", "ex1"};
  for (int i = 0; i < 10000; ++i) {
    auto sp = cat(keys[rng() % keys.size()]);
    auto n = random_network(sp, 3, rng);
    auto r = refine_path_consistent(n);
    if (r.consistent) {
      // Monotone.
      for (int x = 0; x < n.node_count(); ++x)
        for (int y = 0; y < n.node_count(); ++y)
          REQUIRE(r.network.label(x, y).subset_of(n.label(x, y)));
      // Idempotent.
      auto again = refine_path_consistent(r.network);
      REQUIRE(again.consistent);
      REQUIRE(again.network.labels() == r.network.labels());
    }
    // Solution-preserving: every consistent atomic refinement of the input
    // refines the output (and none exists if refinement wiped out).
    auto solutions = qalg::test::brute_force_refinements(n);
    if (!r.consistent) {
      REQUIRE(solutions.empty());
    } else {
      for (const auto& m : solutions)
        for (int x = 0; x < n.node_count(); ++x)
          for (int y = 0; y < n.node_count(); ++y)
            REQUIRE(r.network.label(x, y).test(m.atom_at(x, y)));
    }
  }
}

TEST_CASE("quotient round trip") {
  std::mt19937_64 rng(1006);
  for (int i = 0; i < 10000; ++i) {
    const auto& key = small_keys()[rng() % small_keys().size()];
    const auto& entry = catalog_get(key);
    const auto& rep =
        entry.known_representations[rng() % entry.known_representations.size()].rep;
    // Blow a representation up by duplicating random points, then quotient.
    int extra = 1 + static_cast<int>(rng() % 3);
    int b = rep.base_size();
    std::vector<int> picks(b + extra);
    for (int k = 0; k < b; ++k) picks[k] = k;  // keep every original point
    for (int k = 0; k < extra; ++k) picks[b + k] = static_cast<int>(rng() % b);
    const int m = static_cast<int>(picks.size());
    std::vector<std::string> names(m);
    for (int k = 0; k < m; ++k) names[k] = "d" + std::to_string(k);
    std::vector<int> atoms(m * m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) atoms[x * m + y] = rep.atom_at(picks[x], picks[y]);
    AtomicNetwork blown(entry.structure, names, atoms);
    auto back = quotient(blown);
    REQUIRE(back.base_size() == rep.base_size());
    // Same labelling up to the induced renaming.
    for (int x = 0; x < b; ++x)
      for (int y = 0; y < b; ++y) REQUIRE(back.atom_at(x, y) == rep.atom_at(x, y));
    // Idempotence.
    REQUIRE(quotient(back.as_network()) == back);
  }
}

TEST_CASE("verifier implication chain strong => qualitative => feeble") {
  // Catalog fixtures and random restrictions of them.
  std::mt19937_64 rng(1007);
  int cases = 0;
  while (cases < 10000) {
    const auto& key = small_keys()[rng() % small_keys().size()];
    const auto& entry = catalog_get(key);
    const auto& rep =
        entry.known_representations[rng() % entry.known_representations.size()].rep;
    // Random nonempty subset of the base.
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
    bool qualitative = verify_qualitative(restricted).ok();
    bool feeble = verify_feeble(restricted).ok();
    if (strong) REQUIRE(qualitative);
    if (qualitative) REQUIRE(feeble);
    ++cases;
  }
}
