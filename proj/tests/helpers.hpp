#pragma once

// Shared fixtures and generators for the test suite.

#include <functional>
#include <random>
#include <sstream>

#include "qalg/qalg.hpp"

namespace qalg::test {

inline AtomStructurePtr cat(const std::string& key) {
  return catalog_get(key).structure;
}

inline const Representation& known_rep(const std::string& key, RepKind kind, int which = 0) {
  int seen = 0;
  for (const auto& kr : catalog_get(key).known_representations)
    if (kr.kind == kind && seen++ == which) return kr.rep;
  throw std::runtime_error("no such representation: " + key);
}

inline AtomSet random_atom_set(const AtomStructure& s, std::mt19937_64& rng) {
  AtomSet set;
  for (int a = 0; a < s.atom_count(); ++a)
    if (rng() & 1) set.set(a);
  return set;
}

inline Element random_element(const AtomStructure& s, std::mt19937_64& rng) {
  return Element(s, random_atom_set(s, rng));
}

/// The constraint network of the worked point-algebra example: nodes a,b,c,d
/// with c<a, a{<,>}b, c{<,=}b, c<d, d<b, a{<,>}d.
inline Network figure_network() {
  auto s = cat("point");
  NetworkBuilder b(s, {"a", "b", "c", "d"});
  auto set = [&](const char* from, const char* to,
                 std::initializer_list<std::string_view> atoms) {
    AtomSet mask;
    for (auto n : atoms) mask.set(s->require_atom(n));
    b.set(*b.node_index(from), *b.node_index(to), mask);
  };
  set("c", "a", {"<"});
  set("a", "b", {"<", ">"});
  set("c", "b", {"<", "="});
  set("c", "d", {"<"});
  set("d", "b", {"<"});
  set("a", "d", {"<", ">"});
  return b.build();
}

/// All consistent atomic refinements of a network by brute force over every
/// atom assignment to the upper-triangle pairs (reverse edges forced by
/// converse, loops enumerated over identity atoms). Independent of the
/// production enumerator; prunes on the choices already made but confirms
/// each leaf with the full consistency check.
inline std::vector<AtomicNetwork> brute_force_refinements(const Network& n) {
  const AtomStructure& s = n.structure();
  const int m = n.node_count();
  std::vector<std::pair<int, int>> slots;  // loops first, then pairs by (j,i)
  for (int i = 0; i < m; ++i) slots.push_back({i, i});
  for (int j = 1; j < m; ++j)
    for (int i = 0; i < j; ++i) slots.push_back({i, j});

  std::vector<AtomicNetwork> out;
  std::vector<int> atoms(m * m, -1);
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back(n.node_name(i));

  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == slots.size()) {
      AtomicNetwork cand(n.structure_ptr(), names, atoms);
      if (check_consistent(cand).ok()) out.push_back(cand);
      return;
    }
    auto [i, j] = slots[k];
    for (int a = 0; a < s.atom_count(); ++a) {
      if (i == j && !s.is_identity_atom(a)) continue;
      if (!n.label(i, j).test(a)) continue;
      atoms[i * m + j] = a;
      atoms[j * m + i] = s.converse(a);
      bool ok = true;
      if (i != j) {
        ok = s.consistent(atoms[i * m + i], a, a) && s.consistent(a, atoms[j * m + j], a);
        for (int w = 0; w < i && ok; ++w)
          ok = s.consistent(atoms[w * m + i], a, atoms[w * m + j]);
      }
      if (ok) rec(k + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace qalg::test
