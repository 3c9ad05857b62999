#pragma once

// Constraint networks over an atom structure: consistency checking,
// path-consistency refinement, and enumeration of consistent atomic
// refinements. Networks are immutable values; refinement returns new ones.

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "qalg/algebra.hpp"

namespace qalg {

/// Total labelling of ordered node pairs by elements of one algebra.
class Network {
public:
  Network(AtomStructurePtr s, std::vector<std::string> nodes,
          std::vector<AtomSet> labels)
      : s_(std::move(s)), nodes_(std::move(nodes)), labels_(std::move(labels)) {
    if (labels_.size() != nodes_.size() * nodes_.size())
      throw std::invalid_argument("label matrix size mismatch");
  }

  const AtomStructurePtr& structure_ptr() const { return s_; }
  const AtomStructure& structure() const { return *s_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::string& node_name(int i) const { return nodes_[i]; }
  const std::vector<std::string>& nodes() const { return nodes_; }

  std::optional<int> node_index(std::string_view name) const {
    for (int i = 0; i < node_count(); ++i)
      if (nodes_[i] == name) return i;
    return std::nullopt;
  }

  const AtomSet& label(int x, int y) const { return labels_[x * nodes_.size() + y]; }
  Element label_element(int x, int y) const { return {*s_, label(x, y)}; }
  const std::vector<AtomSet>& labels() const { return labels_; }

  std::string edge_to_string(int x, int y) const {
    return nodes_[x] + "->" + nodes_[y] + " " + s_->set_to_string(label(x, y));
  }

private:
  AtomStructurePtr s_;
  std::vector<std::string> nodes_;
  std::vector<AtomSet> labels_;
};

/// Convenience builder applying the file-format defaults: unset loops are the
/// identity element, an unset reverse edge is the converse of its mate, and
/// any other unset edge is the top element.
class NetworkBuilder {
public:
  NetworkBuilder(AtomStructurePtr s, std::vector<std::string> nodes)
      : s_(std::move(s)),
        nodes_(std::move(nodes)),
        labels_(nodes_.size() * nodes_.size()),
        present_(nodes_.size() * nodes_.size(), false) {}

  int node_count() const { return static_cast<int>(nodes_.size()); }

  std::optional<int> node_index(std::string_view name) const {
    for (int i = 0; i < node_count(); ++i)
      if (nodes_[i] == name) return i;
    return std::nullopt;
  }

  void set(int x, int y, AtomSet atoms) {
    labels_[x * nodes_.size() + y] = atoms;
    present_[x * nodes_.size() + y] = true;
  }

  Network build() const {
    const int n = node_count();
    std::vector<AtomSet> out(labels_);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (present_[x * n + y]) continue;
        if (x == y)
          out[x * n + y] = s_->identity_set();
        else if (present_[y * n + x])
          out[x * n + y] = s_->converse_set(labels_[y * n + x]);
        else
          out[x * n + y] = s_->universe();
      }
    return Network(s_, nodes_, std::move(out));
  }

private:
  AtomStructurePtr s_;
  std::vector<std::string> nodes_;
  std::vector<AtomSet> labels_;
  std::vector<bool> present_;
};

/// Network whose labels are single atoms.
class AtomicNetwork {
public:
  AtomicNetwork(AtomStructurePtr s, std::vector<std::string> nodes,
                std::vector<int> atoms)
      : s_(std::move(s)), nodes_(std::move(nodes)), atoms_(std::move(atoms)) {
    if (atoms_.size() != nodes_.size() * nodes_.size())
      throw std::invalid_argument("atom matrix size mismatch");
  }

  const AtomStructurePtr& structure_ptr() const { return s_; }
  const AtomStructure& structure() const { return *s_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::string& node_name(int i) const { return nodes_[i]; }
  int atom_at(int x, int y) const { return atoms_[x * nodes_.size() + y]; }

  Network to_network() const {
    std::vector<AtomSet> labels(nodes_.size() * nodes_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      labels[i] = AtomSet::single(atoms_[i]);
    return Network(s_, nodes_, std::move(labels));
  }

  friend bool operator==(const AtomicNetwork& l, const AtomicNetwork& r) {
    return l.s_ == r.s_ && l.nodes_ == r.nodes_ && l.atoms_ == r.atoms_;
  }

private:
  AtomStructurePtr s_;
  std::vector<std::string> nodes_;
  std::vector<int> atoms_;
};

/// Consistency per the four network conditions. Rule ids:
///   network-a  loop label not below the identity
///   network-b  zero triangle: l(x,y);l(y,z) . l(x,z) = 0
///   network-c  l(x,y) disjoint from the converse of l(y,x)
///   network-d  zero label
/// Conditions (c) and (d) follow from (a) and (b); they are still reported
/// separately for diagnostics.
inline ValidationReport check_consistent(const Network& n) {
  ValidationReport report;
  const AtomStructure& s = n.structure();
  const int m = n.node_count();
  for (int x = 0; x < m; ++x) {
    if (!n.label(x, x).subset_of(s.identity_set()))
      report.add("network-a", "loop at " + n.node_name(x) + " not below 1': " +
                                  s.set_to_string(n.label(x, x)));
  }
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        AtomSet comp = s.compose_sets(n.label(x, y), n.label(y, z));
        if (!comp.intersects(n.label(x, z)))
          report.add("network-b", "triangle (" + n.node_name(x) + "," +
                                      n.node_name(y) + "," + n.node_name(z) +
                                      ") composes to zero");
      }
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (!n.label(x, y).intersects(s.converse_set(n.label(y, x))))
        report.add("network-c", "labels of (" + n.node_name(x) + "," +
                                    n.node_name(y) + ") and converse of reverse are disjoint");
      if (n.label(x, y).empty())
        report.add("network-d",
                   "zero label on (" + n.node_name(x) + "," + n.node_name(y) + ")");
    }
  return report;
}

inline ValidationReport check_consistent(const AtomicNetwork& n) {
  return check_consistent(n.to_network());
}

struct PathWitness {
  int x, y, z;
};

/// First (lexicographic) triple violating l(x,y);l(y,z) >= l(x,z), if any.
inline std::optional<PathWitness> path_consistency_failure(const Network& n) {
  const AtomStructure& s = n.structure();
  const int m = n.node_count();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        if (!n.label(x, z).subset_of(s.compose_sets(n.label(x, y), n.label(y, z))))
          return PathWitness{x, y, z};
  return std::nullopt;
}

inline bool is_path_consistent(const Network& n) {
  return !path_consistency_failure(n).has_value();
}

struct RefineOutcome {
  bool consistent;
  Network network;                      // refined labels (partial if inconsistent)
  std::optional<PathWitness> witness;   // triple that zeroed an edge
};

namespace detail {

/// Queue-driven refinement of a label matrix to its greatest path-consistent
/// fixpoint. Returns the witness triple if some label reaches zero. The
/// matrix keeps the converse coupling l(y,x) = l(x,y)^ throughout.
inline std::optional<PathWitness> refine_matrix(const AtomStructure& s, int m,
                                                std::vector<AtomSet>& lab) {
  auto at = [&](int x, int y) -> AtomSet& { return lab[x * m + y]; };

  // Normalise loops and converse coupling first.
  for (int x = 0; x < m; ++x) at(x, x) &= s.identity_set();
  for (int x = 0; x < m; ++x)
    for (int y = x; y < m; ++y) {
      AtomSet meet = at(x, y) & s.converse_set(at(y, x));
      at(x, y) = meet;
      at(y, x) = s.converse_set(meet);
    }

  std::deque<std::pair<int, int>> queue;
  std::vector<bool> queued(m * m, false);
  auto push = [&](int x, int y) {
    if (!queued[x * m + y]) {
      queued[x * m + y] = true;
      queue.emplace_back(x, y);
    }
  };
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) push(x, y);

  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    queued[x * m + y] = false;
    if (at(x, y).empty()) return PathWitness{x, y, y};
    for (int z = 0; z < m; ++z) {
      // Refine (x,z) through y and (z,y) through x.
      AtomSet xz = at(x, z) & s.compose_sets(at(x, y), at(y, z));
      if (xz != at(x, z)) {
        at(x, z) = xz;
        at(z, x) = s.converse_set(xz);
        if (xz.empty()) return PathWitness{x, y, z};
        push(x, z);
        push(z, x);
      }
      AtomSet zy = at(z, y) & s.compose_sets(at(z, x), at(x, y));
      if (zy != at(z, y)) {
        at(z, y) = zy;
        at(y, z) = s.converse_set(zy);
        if (zy.empty()) return PathWitness{z, x, y};
        push(z, y);
        push(y, z);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Greatest fixpoint of l(x,z) <- l(x,z) . (l(x,y);l(y,z)) together with loop
/// and converse normalisation. Solution-preserving and idempotent.
inline RefineOutcome refine_path_consistent(const Network& n) {
  std::vector<AtomSet> lab = n.labels();
  auto witness = detail::refine_matrix(n.structure(), n.node_count(), lab);
  Network refined(n.structure_ptr(), n.nodes(), std::move(lab));
  if (witness) return {false, std::move(refined), witness};
  return {true, std::move(refined), std::nullopt};
}

/// Lazy enumeration of the consistent atomic networks refining `n`, in a
/// deterministic order: edges are branched on in order of increasing initial
/// label size (ties by node pair), atoms in index order, with path-consistency
/// propagation after every choice.
class AtomicRefinementStream {
public:
  explicit AtomicRefinementStream(const Network& n)
      : s_(n.structure_ptr()), nodes_(n.nodes()), m_(n.node_count()), lab_(n.labels()) {
    auto witness = detail::refine_matrix(*s_, m_, lab_);
    if (witness) {
      done_ = true;
      return;
    }
    for (int x = 0; x < m_; ++x)
      for (int y = x; y < m_; ++y) vars_.push_back({x, y});
    std::stable_sort(vars_.begin(), vars_.end(), [&](auto a, auto b) {
      return lab_[a.first * m_ + a.second].count() < lab_[b.first * m_ + b.second].count();
    });
  }

  /// Next consistent atomic refinement, or nullopt when exhausted.
  std::optional<AtomicNetwork> next() {
    if (done_) return std::nullopt;
    bool backtracking = started_;  // a previous leaf is on the stack
    started_ = true;
    std::size_t v = 0;
    while (true) {
      if (backtracking) {
        bool moved = false;
        while (!stack_.empty()) {
          Frame& f = stack_.back();
          undo_to(f.mark);
          int nxt = lab_[cell(f.var)].next(f.atom);
          if (nxt < 0) {
            stack_.pop_back();
            continue;
          }
          f.atom = nxt;
          if (try_assign()) {
            v = f.var + 1;
            moved = true;
            break;
          }
        }
        if (!moved) {
          done_ = true;
          return std::nullopt;
        }
        backtracking = false;
      }
      // Descend, branching on the first pair with more than one atom left.
      bool failed = false;
      for (; v < vars_.size(); ++v) {
        if (lab_[cell(v)].count() > 1) {
          stack_.push_back({static_cast<int>(v), lab_[cell(v)].first(), trail_.size()});
          if (!try_assign()) {
            failed = true;
            break;
          }
        }
      }
      if (!failed) return emit();
      backtracking = true;
    }
  }

private:
  struct Frame {
    int var;           // index into vars_
    int atom;          // atom currently tried
    std::size_t mark;  // trail size before this assignment
  };

  AtomicNetwork emit() const {
    std::vector<int> atoms(m_ * m_);
    for (int i = 0; i < m_ * m_; ++i) atoms[i] = lab_[i].first();
    return AtomicNetwork(s_, nodes_, std::move(atoms));
  }

  std::size_t cell(std::size_t var_index) const {
    auto [x, y] = vars_[var_index];
    return static_cast<std::size_t>(x) * m_ + y;
  }

  // Assign stack_.back()'s atom to its pair and propagate; false on wipeout.
  bool try_assign() {
    const Frame& f = stack_.back();
    auto [x, y] = vars_[f.var];
    assign(x, y, f.atom);
    return propagate(x, y);
  }

  void write(int x, int y, const AtomSet& v) {
    trail_.push_back({x * m_ + y, lab_[x * m_ + y]});
    lab_[x * m_ + y] = v;
  }

  void assign(int x, int y, int atom) {
    write(x, y, AtomSet::single(atom));
    if (x != y) write(y, x, AtomSet::single(s_->converse(atom)));
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      lab_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  bool propagate(int sx, int sy) {
    std::deque<std::pair<int, int>> queue{{sx, sy}, {sy, sx}};
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      for (int z = 0; z < m_; ++z) {
        AtomSet xz = lab_[x * m_ + z] & s_->compose_sets(lab_[x * m_ + y], lab_[y * m_ + z]);
        if (xz != lab_[x * m_ + z]) {
          if (xz.empty()) return false;
          write(x, z, xz);
          write(z, x, s_->converse_set(xz));
          queue.emplace_back(x, z);
          queue.emplace_back(z, x);
        }
        AtomSet zy = lab_[z * m_ + y] & s_->compose_sets(lab_[z * m_ + x], lab_[x * m_ + y]);
        if (zy != lab_[z * m_ + y]) {
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
  std::vector<std::string> nodes_;
  int m_;
  std::vector<AtomSet> lab_;
  std::vector<std::pair<int, int>> vars_;
  std::vector<Frame> stack_;
  std::vector<std::pair<std::size_t, AtomSet>> trail_;
  bool started_ = false;
  bool done_ = false;
};

}  // namespace qalg
