#pragma once

// Search procedures: qualitative / feeble representation search within the
// theoretical size bounds, fast non-existence obstructions, and qualitative
// network satisfiability.
//
// Layered strategy, each layer sound on its own:
//   1. obstruction scan   - a consistent triple (or atom) with no consistent
//                           one/two/three-point realisation refutes
//                           representability outright.
//   2. per-base search    - complete enumeration of canonical labellings for
//                           small bases; finds the small witnesses and
//                           certifies "none up to base b".
//   3. seed completion    - one fresh triangle per consistent triple (or one
//                           fresh edge per atom), then backtracking completion
//                           of the remaining edges. A representation exists
//                           iff the seed completes, so exhausting this search
//                           certifies non-existence at the theoretical bound.

#include <chrono>
#include <cmath>
#include <deque>
#include <optional>
#include <vector>

#include "qalg/representation.hpp"

namespace qalg {

struct SearchBudget {
  int max_base = 64;
  long node_limit = 5'000'000;
  std::optional<double> time_limit_seconds;
};

enum class SearchStatus { Found, NoneExhaustive, NoneWithinBudget, Obstructed };

inline const char* search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "FOUND";
    case SearchStatus::NoneExhaustive: return "NONE_EXHAUSTIVE";
    case SearchStatus::NoneWithinBudget: return "NONE_WITHIN_BUDGET";
    case SearchStatus::Obstructed: return "OBSTRUCTED";
  }
  return "?";
}

struct SearchStats {
  long nodes = 0;          // assignments explored
  int bases_exhausted = 0; // every base size up to this was fully searched
  bool seed_searched = false;
  double seconds = 0;
};

struct SearchOutcome {
  SearchStatus status;
  std::optional<Representation> witness;
  std::optional<Triple> obstructed_triple;
  std::optional<int> obstructed_atom;
  SearchStats stats;
};

namespace detail {

using Clock = std::chrono::steady_clock;

struct Budget {
  long node_limit;
  std::optional<Clock::time_point> deadline;
  long nodes = 0;
  bool exceeded = false;

  bool tick() {
    if (exceeded) return false;
    if (++nodes > node_limit ||
        (deadline && (nodes & 1023) == 0 && Clock::now() > *deadline)) {
      exceeded = true;
      return false;
    }
    return true;
  }
};

inline Budget make_budget(const SearchBudget& b) {
  Budget out{b.node_limit, std::nullopt};
  if (b.time_limit_seconds)
    out.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(*b.time_limit_seconds));
  return out;
}

/// Consistency of a tiny atomic network given explicitly; used by the
/// obstruction scan.
inline bool tiny_consistent(const AtomStructurePtr& s, const std::vector<int>& atoms) {
  int m = 1;
  while (m * m < static_cast<int>(atoms.size())) ++m;
  std::vector<std::string> names(m);
  for (int i = 0; i < m; ++i) names[i] = "t" + std::to_string(i);
  return check_consistent(AtomicNetwork(s, names, atoms)).ok();
}

/// Can the triple (a,b,c) be realised by any consistent atomic network on at
/// most three points? Point coincidences are allowed exactly when the
/// corresponding label is a (self-converse) identity atom.
inline bool triple_realizable(const AtomStructurePtr& sp, const Triple& t) {
  const AtomStructure& s = *sp;
  const AtomSet& ids = s.identity_set();
  const int a = t.a, b = t.b, c = t.c;

  // x = y = z
  if (a == b && b == c && ids.test(a))
    if (tiny_consistent(sp, {a})) return true;
  // x = y (a on the loop), edge carries b = c
  if (ids.test(a) && b == c)
    for (int f = ids.first(); f >= 0; f = ids.next(f))
      if (tiny_consistent(sp, {a, b, s.converse(b), f})) return true;
  // y = z (b on the loop), edge carries a = c
  if (ids.test(b) && a == c)
    for (int f = ids.first(); f >= 0; f = ids.next(f))
      if (tiny_consistent(sp, {f, a, s.converse(a), b})) return true;
  // x = z (c on the loop), edge carries a with b = a^
  if (ids.test(c) && b == s.converse(a))
    for (int f = ids.first(); f >= 0; f = ids.next(f))
      if (tiny_consistent(sp, {c, a, s.converse(a), f})) return true;
  // three distinct points
  for (int f = ids.first(); f >= 0; f = ids.next(f))
    for (int g = ids.first(); g >= 0; g = ids.next(g))
      for (int h = ids.first(); h >= 0; h = ids.next(h)) {
        std::vector<int> atoms = {f, a,           c,
                                  s.converse(a),  g, b,
                                  s.converse(c),  s.converse(b), h};
        if (tiny_consistent(sp, atoms)) return true;
      }
  return false;
}

inline bool atom_realizable(const AtomStructurePtr& sp, int a) {
  const AtomStructure& s = *sp;
  const AtomSet& ids = s.identity_set();
  if (ids.test(a) && tiny_consistent(sp, {a})) return true;
  for (int f = ids.first(); f >= 0; f = ids.next(f))
    for (int g = ids.first(); g >= 0; g = ids.next(g))
      if (tiny_consistent(sp, {f, a, s.converse(a), g})) return true;
  return false;
}

/// Complete enumeration of canonical labellings (identity atoms on loops,
/// non-identity atoms off the diagonal) of a fixed base, in lexicographic
/// order. Returns the first labelling that is consistent and witnesses all
/// consistent triples (qualitative) or all atoms (feeble).
struct PerBaseSearch {
  const AtomStructurePtr& sp;
  const AtomStructure& s;
  int b;
  bool feeble;
  Budget& budget;

  std::vector<int> loops;          // size b
  std::vector<int> edges;          // edge atom per pair slot
  std::vector<std::pair<int, int>> pairs;  // (i,j), i<j, column-major order
  std::vector<int> nonid;          // non-identity atoms, ascending
  std::vector<int> atom_use;       // placements per atom
  int missing_id = 0, missing_nonid = 0;

  bool complete = true;
  std::optional<Representation> found;

  PerBaseSearch(const AtomStructurePtr& sp_, int b_, bool feeble_, Budget& bud)
      : sp(sp_), s(*sp_), b(b_), feeble(feeble_), budget(bud) {
    loops.assign(b, -1);
    for (int j = 1; j < b; ++j)
      for (int i = 0; i < j; ++i) pairs.push_back({i, j});
    edges.assign(pairs.size(), -1);
    for (int a = 0; a < s.atom_count(); ++a)
      if (!s.is_identity_atom(a)) nonid.push_back(a);
    atom_use.assign(s.atom_count(), 0);
    missing_id = s.identity_set().count();
    missing_nonid = static_cast<int>(nonid.size());
  }

  int edge_at(int x, int y) const {  // only valid for assigned pairs
    if (x == y) return loops[x];
    bool flip = x > y;
    if (flip) std::swap(x, y);
    int slot = y * (y - 1) / 2 + x;
    int a = edges[slot];
    return flip ? s.converse(a) : a;
  }

  void place(int a) {
    if (atom_use[a]++ == 0) (s.is_identity_atom(a) ? missing_id : missing_nonid)--;
    int ca = s.converse(a);
    if (ca != a && atom_use[ca]++ == 0)
      (s.is_identity_atom(ca) ? missing_id : missing_nonid)--;
  }
  void unplace(int a) {
    int ca = s.converse(a);
    if (ca != a && --atom_use[ca] == 0)
      (s.is_identity_atom(ca) ? missing_id : missing_nonid)++;
    if (--atom_use[a] == 0) (s.is_identity_atom(a) ? missing_id : missing_nonid)++;
  }

  // Variable order: loop 0, then for j = 1..b-1: loop j followed by pairs
  // (0,j)..(j-1,j). Depth d maps to that sequence.
  int total_vars() const { return b + static_cast<int>(pairs.size()); }

  struct Var {
    bool is_loop;
    int node;      // for loops
    int pair_slot; // for edges
  };

  Var var_at(int depth) const {
    // Sequence: loop0 | loop1, (0,1) | loop2, (0,2), (1,2) | ...
    int j = 0, seen = 0;
    while (true) {
      int block = (j == 0) ? 1 : 1 + j;
      if (depth < seen + block) {
        int off = depth - seen;
        if (off == 0) return {true, j, -1};
        return {false, -1, j * (j - 1) / 2 + (off - 1)};
      }
      seen += block;
      ++j;
    }
  }

  bool loop_ok(int node, int e) const {
    // (e,e,e) holds in every validated structure; kept as a cheap guard.
    return s.consistent(e, e, e);
  }

  bool edge_ok(int slot, int a) const {
    auto [i, j] = pairs[slot];
    if (!s.consistent(loops[i], a, a)) return false;
    if (!s.consistent(a, loops[j], a)) return false;
    for (int k = 0; k < i; ++k)
      if (!s.consistent(edge_at(k, i), a, edge_at(k, j))) return false;
    return true;
  }

  int remaining_loops(int depth) const {
    int c = 0;
    for (int d = depth; d < total_vars(); ++d)
      if (var_at(d).is_loop) ++c;
    return c;
  }

  bool witnesses_everything() const {
    AtomSet seen_atoms;
    for (int x = 0; x < b; ++x) seen_atoms.set(loops[x]);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      seen_atoms.set(edges[k]);
      seen_atoms.set(s.converse(edges[k]));
    }
    if (seen_atoms != s.universe()) return false;
    if (feeble) return true;
    TripleSet realised(s.atom_count());
    for (int x = 0; x < b; ++x)
      for (int y = 0; y < b; ++y)
        for (int z = 0; z < b; ++z)
          realised.set(edge_at(x, y), edge_at(y, z), edge_at(x, z));
    return s.consistent_triples().subset_of(realised);
  }

  Representation to_representation() const {
    std::vector<std::string> names(b);
    for (int i = 0; i < b; ++i) names[i] = "p" + std::to_string(i);
    std::vector<int> atoms(b * b);
    for (int x = 0; x < b; ++x)
      for (int y = 0; y < b; ++y) atoms[x * b + y] = edge_at(x, y);
    return Representation(sp, names, std::move(atoms));
  }

  bool dfs(int depth) {  // true = stop (found or budget)
    if (depth == total_vars()) {
      if (witnesses_everything()) {
        found = to_representation();
        return true;
      }
      return false;
    }
    // Coverage pruning: every missing atom still needs a slot. One pair can
    // witness an atom together with its converse.
    int rem_pairs = 0, rem_loops = 0;
    for (int d = depth; d < total_vars(); ++d)
      (var_at(d).is_loop ? rem_loops : rem_pairs)++;
    if (missing_nonid > 2 * rem_pairs || missing_id > rem_loops) return false;

    Var v = var_at(depth);
    if (v.is_loop) {
      for (int e = s.identity_set().first(); e >= 0; e = s.identity_set().next(e)) {
        if (!budget.tick()) {
          complete = false;
          return true;
        }
        if (!loop_ok(v.node, e)) continue;
        loops[v.node] = e;
        place(e);
        if (dfs(depth + 1)) return true;
        unplace(e);
        loops[v.node] = -1;
      }
    } else {
      for (int a : nonid) {
        if (!budget.tick()) {
          complete = false;
          return true;
        }
        if (!edge_ok(v.pair_slot, a)) continue;
        edges[v.pair_slot] = a;
        place(a);
        if (dfs(depth + 1)) return true;
        unplace(a);
        edges[v.pair_slot] = -1;
      }
    }
    return false;
  }

  void run() { dfs(0); }
};

/// Backtracking completion of a partially constrained atomic labelling with
/// path-consistency propagation after every choice. Domains are coupled with
/// their converses throughout.
class DomainCompletion {
public:
  DomainCompletion(AtomStructurePtr s, int m)
      : s_(std::move(s)), m_(m), dom_(static_cast<std::size_t>(m) * m) {
    for (int x = 0; x < m_; ++x)
      for (int y = 0; y < m_; ++y)
        dom_[x * m_ + y] = (x == y) ? s_->identity_set() : s_->universe();
  }

  void restrict(int x, int y, const AtomSet& atoms) {
    dom_[x * m_ + y] &= atoms;
    dom_[y * m_ + x] &= s_->converse_set(atoms);
  }

  /// First consistent atomic completion in the deterministic search order.
  /// `exhausted` reports whether the whole tree was covered when no
  /// completion exists.
  std::optional<AtomicNetwork> run(Budget& budget, bool* exhausted) {
    *exhausted = true;
    if (auto w = refine_matrix(*s_, m_, dom_); w.has_value()) return std::nullopt;
    if (!dfs(budget)) {
      if (budget.exceeded) *exhausted = false;
      return std::nullopt;
    }
    std::vector<std::string> names(m_);
    for (int i = 0; i < m_; ++i) names[i] = "n" + std::to_string(i);
    std::vector<int> atoms(m_ * m_);
    for (int i = 0; i < m_ * m_; ++i) atoms[i] = dom_[i].first();
    return AtomicNetwork(s_, names, std::move(atoms));
  }

private:
  // Most-constrained unordered pair with more than one candidate, ties by
  // (x, y); -1 when everything is singleton.
  int pick_var() const {
    int best = -1, best_count = 1 << 30;
    for (int x = 0; x < m_; ++x)
      for (int y = x; y < m_; ++y) {
        int c = dom_[x * m_ + y].count();
        if (c > 1 && c < best_count) {
          best_count = c;
          best = x * m_ + y;
        }
      }
    return best;
  }

  bool dfs(Budget& budget) {
    int cell = pick_var();
    if (cell < 0) return true;
    int x = cell / m_, y = cell % m_;
    AtomSet options = dom_[cell];
    for (int a = options.first(); a >= 0; a = options.next(a)) {
      if (!budget.tick()) return false;
      std::size_t mark = trail_.size();
      write(x, y, AtomSet::single(a));
      if (x != y) write(y, x, AtomSet::single(s_->converse(a)));
      if (propagate(x, y, &budget) && dfs(budget)) return true;
      undo_to(mark);
      if (budget.exceeded) return false;
    }
    return false;
  }

  void write(int x, int y, const AtomSet& v) {
    trail_.push_back({static_cast<std::size_t>(x) * m_ + y, dom_[x * m_ + y]});
    dom_[x * m_ + y] = v;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      dom_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  // Propagation work counts against the budget too, so refuting dense seeds
  // terminates within it rather than only bounding the assignment count.
  bool propagate(int sx, int sy, Budget* budget) {
    std::deque<std::pair<int, int>> queue{{sx, sy}, {sy, sx}};
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      for (int z = 0; z < m_; ++z) {
        if (budget && (z & 7) == 0 && !budget->tick()) return false;
        AtomSet xz = dom_[x * m_ + z] & s_->compose_sets(dom_[x * m_ + y], dom_[y * m_ + z]);
        if (xz != dom_[x * m_ + z]) {
          if (xz.empty()) return false;
          write(x, z, xz);
          write(z, x, s_->converse_set(xz));
          queue.emplace_back(x, z);
          queue.emplace_back(z, x);
        }
        AtomSet zy = dom_[z * m_ + y] & s_->compose_sets(dom_[z * m_ + x], dom_[x * m_ + y]);
        if (zy != dom_[z * m_ + y]) {
          if (zy.empty()) return false;
          write(z, y, zy);
          write(y, z, s_->converse_set(zy));
          queue.emplace_back(z, y);
          queue.emplace_back(y, z);
        }
      }
    }
    return true;
  }

  AtomStructurePtr s_;
  int m_;
  std::vector<AtomSet> dom_;
  std::vector<std::pair<std::size_t, AtomSet>> trail_;
};

/// Largest base whose canonical labelling space is small enough to enumerate
/// outright.
inline int per_base_cap(const AtomStructure& s, int hard_cap = 12) {
  const double log_id = std::log2(std::max(1, s.identity_set().count()));
  const int nonid = s.atom_count() - s.identity_set().count();
  const double log_nonid = std::log2(std::max(1, nonid));
  int b = 0;
  while (b < hard_cap) {
    int nb = b + 1;
    double bits = nb * log_id + (nb * (nb - 1) / 2.0) * log_nonid;
    if (bits > 24.0) break;
    b = nb;
  }
  return b;
}

inline void require_validated(const AtomStructure& s) {
  if (!validate_atom_structure(s).ok())
    throw std::invalid_argument("structure fails atom-structure validation");
}

}  // namespace detail

/// Complete search for a representation on exactly `base` points (canonical
/// labellings). Returns the first witness; `complete` reports whether the
/// space was fully enumerated when none was found.
inline std::optional<Representation> exhaustive_rep_at_base(const AtomStructurePtr& s,
                                                            int base, bool feeble,
                                                            bool* complete,
                                                            long node_limit = 50'000'000) {
  detail::require_validated(*s);
  detail::Budget budget{node_limit, std::nullopt};
  detail::PerBaseSearch search(s, base, feeble, budget);
  search.run();
  if (complete) *complete = search.complete;
  return search.found;
}

inline std::optional<Representation> exhaustive_qualitative_at_base(
    const AtomStructurePtr& s, int base, bool* complete = nullptr) {
  return exhaustive_rep_at_base(s, base, false, complete);
}

inline std::optional<Representation> exhaustive_feeble_at_base(
    const AtomStructurePtr& s, int base, bool* complete = nullptr) {
  return exhaustive_rep_at_base(s, base, true, complete);
}

inline std::optional<Triple> find_obstructed_triple(const AtomStructurePtr& s) {
  for (const auto& t : s->consistent_list())
    if (!detail::triple_realizable(s, t)) return t;
  return std::nullopt;
}

inline std::optional<int> find_obstructed_atom(const AtomStructurePtr& s) {
  for (int a = 0; a < s->atom_count(); ++a)
    if (!detail::atom_realizable(s, a)) return a;
  return std::nullopt;
}

namespace detail {

inline SearchOutcome find_rep(const AtomStructurePtr& s, SearchBudget budget, bool feeble) {
  require_validated(*s);
  auto start = Clock::now();
  SearchOutcome out{SearchStatus::NoneWithinBudget, std::nullopt, std::nullopt,
                    std::nullopt, {}};
  auto finish = [&](SearchStatus st) {
    out.status = st;
    out.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
  };

  // Fast refutation: some required witness has no tiny consistent realisation.
  if (feeble) {
    if (auto a = find_obstructed_atom(s)) {
      out.obstructed_atom = a;
      return finish(SearchStatus::Obstructed);
    }
  } else {
    if (auto t = find_obstructed_triple(s)) {
      out.obstructed_triple = t;
      return finish(SearchStatus::Obstructed);
    }
  }

  Budget bud = make_budget(budget);
  const long seed_size =
      feeble ? 2L * (s->atom_count() - s->identity_set().count()) +
                   s->identity_set().count()
             : 3L * static_cast<long>(s->consistent_triples().count());

  // Small bases first: finds the small witnesses the catalog algebras have
  // and certifies none-up-to-b for capped runs.
  const int cap = std::min(budget.max_base, per_base_cap(*s));
  for (int b = 1; b <= cap; ++b) {
    PerBaseSearch search(s, b, feeble, bud);
    search.run();
    out.stats.nodes = bud.nodes;
    if (search.found) {
      const auto& rep = *search.found;
      if (!(feeble ? verify_feeble(rep) : verify_qualitative(rep)).ok())
        throw std::logic_error("search produced a witness that fails verification");
      out.witness = rep;
      return finish(SearchStatus::Found);
    }
    if (!search.complete) return finish(SearchStatus::NoneWithinBudget);
    out.stats.bases_exhausted = b;
    if (out.stats.bases_exhausted >= seed_size) return finish(SearchStatus::NoneExhaustive);
  }

  // Theoretical-bound decision: complete the seeded witness network.
  if (seed_size > budget.max_base) return finish(SearchStatus::NoneWithinBudget);
  out.stats.seed_searched = true;
  DomainCompletion completion(s, static_cast<int>(seed_size));
  if (feeble) {
    int node = 0;
    for (int a = 0; a < s->atom_count(); ++a) {
      if (s->is_identity_atom(a)) {
        completion.restrict(node, node, AtomSet::single(a));
        node += 1;
      } else {
        completion.restrict(node, node + 1, AtomSet::single(a));
        node += 2;
      }
    }
  } else {
    int node = 0;
    for (const auto& t : s->consistent_list()) {
      completion.restrict(node, node + 1, AtomSet::single(t.a));
      completion.restrict(node + 1, node + 2, AtomSet::single(t.b));
      completion.restrict(node, node + 2, AtomSet::single(t.c));
      node += 3;
    }
  }
  bool exhausted = false;
  auto network = completion.run(bud, &exhausted);
  out.stats.nodes = bud.nodes;
  if (network) {
    Representation rep = quotient(*network);
    if (!(feeble ? verify_feeble(rep) : verify_qualitative(rep)).ok())
      throw std::logic_error("seed completion produced a witness that fails verification");
    out.witness = std::move(rep);
    return finish(SearchStatus::Found);
  }
  return finish(exhausted ? SearchStatus::NoneExhaustive : SearchStatus::NoneWithinBudget);
}

}  // namespace detail

/// Search for a qualitative representation. FOUND witnesses are re-verified;
/// NONE_EXHAUSTIVE is certified either by exhausting every base up to the
/// theoretical bound or by exhausting the triangle-seeded completion space.
inline SearchOutcome find_qualitative_rep(const AtomStructurePtr& s,
                                          SearchBudget budget = {}) {
  return detail::find_rep(s, budget, false);
}

/// Search for a feeble representation (bound: one edge per atom, 2n points).
inline SearchOutcome find_feeble_rep(const AtomStructurePtr& s,
                                     SearchBudget budget = {}) {
  return detail::find_rep(s, budget, true);
}

enum class SatStatus { Sat, Unsat, Unknown };

inline const char* sat_status_name(SatStatus s) {
  switch (s) {
    case SatStatus::Sat: return "SAT";
    case SatStatus::Unsat: return "UNSAT";
    case SatStatus::Unknown: return "UNKNOWN_WITHIN_BUDGET";
  }
  return "?";
}

struct SatOutcome {
  SatStatus status;
  std::optional<Representation> representation;
  std::optional<std::vector<int>> embedding;  // node -> base point of the witness
  SearchStats stats;
};

/// Decides whether the network embeds into some qualitative representation of
/// its algebra: the network is completed jointly with one fresh pre-labelled
/// triangle per consistent triple; any consistent atomic completion quotients
/// to a representation carrying the network.
inline SatOutcome decide_qual_sat(const Network& n, SearchBudget budget = {}) {
  detail::require_validated(n.structure());
  auto start = detail::Clock::now();
  SatOutcome out{SatStatus::Unknown, std::nullopt, std::nullopt, {}};
  auto finish = [&](SatStatus st) {
    out.status = st;
    out.stats.seconds =
        std::chrono::duration<double>(detail::Clock::now() - start).count();
    return out;
  };

  const int m = n.node_count();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (n.label(x, y).empty()) return finish(SatStatus::Unsat);

  auto refined = refine_path_consistent(n);
  if (!refined.consistent) return finish(SatStatus::Unsat);

  const auto& s = n.structure_ptr();
  const auto triples = s->consistent_list();
  const int total = m + 3 * static_cast<int>(triples.size());
  detail::DomainCompletion completion(s, total);
  for (int x = 0; x < m; ++x)
    for (int y = x; y < m; ++y) completion.restrict(x, y, refined.network.label(x, y));
  int node = m;
  for (const auto& t : triples) {
    completion.restrict(node, node + 1, AtomSet::single(t.a));
    completion.restrict(node + 1, node + 2, AtomSet::single(t.b));
    completion.restrict(node, node + 2, AtomSet::single(t.c));
    node += 3;
  }

  detail::Budget bud = detail::make_budget(budget);
  bool exhausted = false;
  auto network = completion.run(bud, &exhausted);
  out.stats.nodes = bud.nodes;
  if (!network) return finish(exhausted ? SatStatus::Unsat : SatStatus::Unknown);

  Representation rep = quotient(*network);
  std::vector<int> classes = quotient_classes(*network);
  std::vector<int> embedding(m);
  for (int x = 0; x < m; ++x) embedding[x] = classes[x];
  // Certificate check before reporting.
  if (!verify_qualitative(rep).ok())
    throw std::logic_error("qualitative-sat witness fails verification");
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (!n.label(x, y).test(rep.atom_at(embedding[x], embedding[y])))
        throw std::logic_error("qualitative-sat embedding violates a label");
  out.representation = std::move(rep);
  out.embedding = std::move(embedding);
  return finish(SatStatus::Sat);
}

}  // namespace qalg
