#pragma once

// Concrete representations as complete atomic labellings of a finite base,
// verifiers for the qualitative / feeble / strong notions and the quadrangle
// condition, fixed-representation network embedding, and the quotient that
// turns a consistent atomic network into its canonical representation.

#include <optional>
#include <string>
#include <vector>

#include "qalg/network.hpp"

namespace qalg {

/// Canonical (pre-quotiented) atomic labelling: loops carry identity atoms,
/// off-diagonal pairs never do, and atom_at(y,x) is the converse of
/// atom_at(x,y). The constructor enforces all three.
class Representation {
public:
  Representation(AtomStructurePtr s, std::vector<std::string> base,
                 std::vector<int> atoms)
      : s_(std::move(s)), base_(std::move(base)), atoms_(std::move(atoms)) {
    const int b = static_cast<int>(base_.size());
    if (atoms_.size() != static_cast<std::size_t>(b) * b)
      throw std::invalid_argument("atom matrix size mismatch");
    for (int x = 0; x < b; ++x)
      for (int y = 0; y < b; ++y) {
        int a = atoms_[x * b + y];
        if (a < 0 || a >= s_->atom_count())
          throw std::invalid_argument("atom index out of range");
        if (x == y && !s_->is_identity_atom(a))
          throw std::invalid_argument("loop at " + base_[x] + " labelled by non-identity atom");
        if (x != y && s_->is_identity_atom(a))
          throw std::invalid_argument("distinct points " + base_[x] + "," + base_[y] +
                                      " labelled by identity atom (quotient first)");
        if (atoms_[y * b + x] != s_->converse(a))
          throw std::invalid_argument("labelling not converse-coherent at (" +
                                      base_[x] + "," + base_[y] + ")");
      }
  }

  const AtomStructurePtr& structure_ptr() const { return s_; }
  const AtomStructure& structure() const { return *s_; }
  int base_size() const { return static_cast<int>(base_.size()); }
  const std::string& point_name(int i) const { return base_[i]; }
  const std::vector<std::string>& base() const { return base_; }
  int atom_at(int x, int y) const { return atoms_[x * base_.size() + y]; }

  std::optional<int> point_index(std::string_view name) const {
    for (int i = 0; i < base_size(); ++i)
      if (base_[i] == name) return i;
    return std::nullopt;
  }

  AtomicNetwork as_network() const { return AtomicNetwork(s_, base_, atoms_); }

  /// a^phi as a row-major boolean matrix over the base.
  std::vector<bool> atom_relation(int a) const {
    std::vector<bool> rel(base_.size() * base_.size(), false);
    for (std::size_t i = 0; i < atoms_.size(); ++i) rel[i] = (atoms_[i] == a);
    return rel;
  }

  friend bool operator==(const Representation& l, const Representation& r) {
    return *l.s_ == *r.s_ && l.base_ == r.base_ && l.atoms_ == r.atoms_;
  }

private:
  AtomStructurePtr s_;
  std::vector<std::string> base_;
  std::vector<int> atoms_;
};

namespace detail {

/// Marks every triple of atoms realised by an ordered point triple (x,y,z),
/// including degenerate ones (loops participate).
inline TripleSet realised_triples(const Representation& r) {
  TripleSet seen(r.structure().atom_count());
  const int b = r.base_size();
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y)
      for (int z = 0; z < b; ++z)
        seen.set(r.atom_at(x, y), r.atom_at(y, z), r.atom_at(x, z));
  return seen;
}

inline void check_consistent_labelling(const Representation& r, ValidationReport& report) {
  const AtomStructure& s = r.structure();
  const int b = r.base_size();
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y)
      for (int z = 0; z < b; ++z) {
        int a1 = r.atom_at(x, y), a2 = r.atom_at(y, z), a3 = r.atom_at(x, z);
        if (!s.consistent(a1, a2, a3))
          report.add("rep-forbidden-triangle",
                     "points (" + r.point_name(x) + "," + r.point_name(y) + "," +
                         r.point_name(z) + ") realise forbidden triple " +
                         s.triple_to_string({a1, a2, a3}));
      }
}

inline void check_atom_coverage(const Representation& r, ValidationReport& report) {
  const AtomStructure& s = r.structure();
  AtomSet seen;
  for (int x = 0; x < r.base_size(); ++x)
    for (int y = 0; y < r.base_size(); ++y) seen.set(r.atom_at(x, y));
  for (int a = 0; a < s.atom_count(); ++a)
    if (!seen.test(a))
      report.add("rep-atom-unwitnessed", "atom " + s.atom_name(a) + " labels no pair");
}

}  // namespace detail

/// Qualitative representation check: the labelling is a consistent atomic
/// network and every consistent triple of atoms is realised by some point
/// triple. Atom coverage is re-checked directly for clearer diagnostics even
/// though triple witnessing implies it.
inline ValidationReport verify_qualitative(const Representation& r) {
  ValidationReport report;
  detail::check_consistent_labelling(r, report);
  const AtomStructure& s = r.structure();
  TripleSet seen = detail::realised_triples(r);
  for (int a = 0; a < s.atom_count(); ++a)
    for (int b = 0; b < s.atom_count(); ++b)
      for (int c = 0; c < s.atom_count(); ++c)
        if (s.consistent(a, b, c) && !seen.test(a, b, c))
          report.add("rep-unwitnessed-triple",
                     "consistent triple " + s.triple_to_string({a, b, c}) +
                         " has no witnessing points");
  detail::check_atom_coverage(r, report);
  return report;
}

/// Feeble representation check: consistent labelling witnessing every atom.
inline ValidationReport verify_feeble(const Representation& r) {
  ValidationReport report;
  detail::check_consistent_labelling(r, report);
  detail::check_atom_coverage(r, report);
  return report;
}

/// Strong representation check: qualitative, and whenever atom_at(x,z) lies
/// below a;b some middle point y realises (a,b) between x and z.
inline ValidationReport verify_strong(const Representation& r) {
  ValidationReport report = verify_qualitative(r);
  const AtomStructure& s = r.structure();
  const int b = r.base_size();
  const int n = s.atom_count();
  // rows[x*n+a] = set of points y with atom_at(x,y) = a, as a bitmask vector.
  std::vector<std::vector<bool>> rows(static_cast<std::size_t>(b) * n,
                                      std::vector<bool>(b, false));
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y) rows[x * n + r.atom_at(x, y)][y] = true;

  for (int x = 0; x < b; ++x)
    for (int z = 0; z < b; ++z) {
      int cz = r.atom_at(x, z);
      for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb) {
          if (!s.consistent(a, bb, cz)) continue;
          bool witnessed = false;
          const auto& row = rows[x * n + a];
          const auto& col = rows[z * n + s.converse(bb)];
          for (int y = 0; y < b && !witnessed; ++y) witnessed = row[y] && col[y];
          if (!witnessed)
            report.add("rep-composition-defect",
                       "(" + r.point_name(x) + "," + r.point_name(z) + ") lies in (" +
                           s.atom_name(a) + ";" + s.atom_name(bb) +
                           ")^phi with no middle point");
        }
    }
  return report;
}

struct StarWitness {
  int a, b, c, d;
  friend bool operator==(const StarWitness&, const StarWitness&) = default;
};

struct StarResult {
  bool holds;
  std::optional<StarWitness> witness;  // lexicographically least failing tuple
};

/// The quadrangle condition: for all atoms, a^phi o b^phi meets c^phi o d^phi
/// exactly when (a;b).(c;d) is non-zero. Requires a qualitative
/// representation; throws otherwise.
inline StarResult check_star(const Representation& r) {
  if (!verify_qualitative(r).ok())
    throw std::invalid_argument("check_star requires a qualitative representation");
  const AtomStructure& s = r.structure();
  const int n = s.atom_count();
  const int b = r.base_size();

  // comp_rel[a*n+b] = a^phi o b^phi over the base.
  std::vector<std::vector<bool>> rel(n);
  for (int a = 0; a < n; ++a) rel[a] = r.atom_relation(a);
  auto compose_rel = [&](const std::vector<bool>& A, const std::vector<bool>& B) {
    std::vector<bool> out(static_cast<std::size_t>(b) * b, false);
    for (int x = 0; x < b; ++x)
      for (int y = 0; y < b; ++y)
        if (A[x * b + y])
          for (int z = 0; z < b; ++z)
            if (B[y * b + z]) out[x * b + z] = true;
    return out;
  };
  std::vector<std::vector<bool>> comp_rel(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) comp_rel[a * n + c] = compose_rel(rel[a], rel[c]);

  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          bool meets = false;
          const auto& l = comp_rel[a * n + bb];
          const auto& rr = comp_rel[c * n + d];
          for (std::size_t i = 0; i < l.size() && !meets; ++i) meets = l[i] && rr[i];
          bool nonzero = s.comp(a, bb).intersects(s.comp(c, d));
          if (meets != nonzero) return {false, StarWitness{a, bb, c, d}};
        }
  return {true, std::nullopt};
}

/// Embeds a network into a fixed representation: a map from nodes to base
/// points with (x',y') in l(x,y)^phi for every pair, found by exhaustive
/// backtracking. Nodes are tried most-constrained first (fewest atoms across
/// their edges); base candidates are filtered by loop compatibility.
inline std::optional<std::vector<int>> embed_network(const Representation& r,
                                                     const Network& n) {
  if (&r.structure() != &n.structure() && !(r.structure() == n.structure()))
    throw std::invalid_argument("network and representation over different structures");
  const int m = n.node_count();
  const int b = r.base_size();

  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::vector<long> weight(m, 0);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (x != y) weight[x] += n.label(x, y).count();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int c) { return weight[a] < weight[c]; });

  std::vector<int> assign(m, -1);
  auto ok_with = [&](int node, int point) {
    if (!n.label(node, node).test(r.atom_at(point, point))) return false;
    for (int other = 0; other < m; ++other) {
      if (assign[other] < 0 || other == node) continue;
      if (!n.label(node, other).test(r.atom_at(point, assign[other]))) return false;
      if (!n.label(other, node).test(r.atom_at(assign[other], point))) return false;
    }
    return true;
  };

  // Iterative depth-first search over order[].
  std::vector<int> choice(m, -1);
  int depth = 0;
  while (depth >= 0) {
    if (depth == m) return assign;
    int node = order[depth];
    int start = choice[depth] + 1;
    int found = -1;
    for (int p = start; p < b; ++p)
      if (ok_with(node, p)) {
        found = p;
        break;
      }
    if (found >= 0) {
      choice[depth] = found;
      assign[node] = found;
      ++depth;
      if (depth < m) choice[depth] = -1;
    } else {
      choice[depth] = -1;
      --depth;
      if (depth >= 0) assign[order[depth]] = -1;
    }
  }
  return std::nullopt;
}

/// Quotient of a consistent atomic network by x ~ y iff l(x,y) is below the
/// identity. Throws on inconsistent input; the congruence property is a
/// consequence of consistency and is asserted.
inline Representation quotient(const AtomicNetwork& n) {
  ValidationReport cc = check_consistent(n);
  if (!cc.ok())
    throw std::invalid_argument("quotient requires a consistent atomic network: " +
                                cc.violations.front().rule + " " +
                                cc.violations.front().detail);
  const AtomStructure& s = n.structure();
  const int m = n.node_count();
  std::vector<int> cls(m, -1);
  std::vector<int> reps;
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < x && cls[x] < 0; ++y)
      if (s.is_identity_atom(n.atom_at(y, x))) cls[x] = cls[y];
    if (cls[x] < 0) {
      cls[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  }
  const int b = static_cast<int>(reps.size());
  std::vector<std::string> base(b);
  for (int i = 0; i < b; ++i) base[i] = n.node_name(reps[i]);
  std::vector<int> atoms(static_cast<std::size_t>(b) * b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) atoms[i * b + j] = n.atom_at(reps[i], reps[j]);
  // Well-definedness: all members of a class must agree with the
  // representative; consistency guarantees it.
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (atoms[cls[x] * b + cls[y]] != n.atom_at(x, y))
        throw std::logic_error("quotient congruence violated on a consistent network");
  return Representation(n.structure_ptr(), std::move(base), std::move(atoms));
}

/// Node -> class map used alongside quotient().
inline std::vector<int> quotient_classes(const AtomicNetwork& n) {
  const AtomStructure& s = n.structure();
  const int m = n.node_count();
  std::vector<int> cls(m, -1);
  int next = 0;
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < x && cls[x] < 0; ++y)
      if (s.is_identity_atom(n.atom_at(y, x))) cls[x] = cls[y];
    if (cls[x] < 0) cls[x] = next++;
  }
  return cls;
}

}  // namespace qalg
