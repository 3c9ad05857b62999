#pragma once

// Atom structures (X, E, converse, C) of finite non-associative algebras,
// their complex-algebra elements, validation against the atom-structure laws,
// and the algebraic property predicates (associativity and its weakenings,
// integrality).

#include <algorithm>
#include <initializer_list>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qalg/bitset.hpp"

namespace qalg {

struct Triple {
  int a = 0, b = 0, c = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct Violation {
  std::string rule;    // stable machine-checkable id, e.g. "identity-law"
  std::string detail;  // human message naming the offending atoms/triple
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }

  void add(std::string rule, std::string detail) {
    violations.push_back({std::move(rule), std::move(detail)});
  }
};

class AtomStructure;
using AtomStructurePtr = std::shared_ptr<const AtomStructure>;

/// Finite presentation of an atomic non-associative algebra: atom names,
/// identity atoms E, a converse map, and the ternary consistency relation C.
/// Immutable after construction; safe to share across threads.
class AtomStructure {
public:
  struct Definition {
    std::string name;  // optional label used by the file format
    std::vector<std::string> atoms;
    std::vector<std::string> identity;
    // Converse given as pairs (a, b) meaning a^ = b and b^ = a. Atoms not
    // mentioned are self-converse.
    std::vector<std::pair<std::string, std::string>> converse;
  };

  /// Build from an explicit list of consistent triples.
  static AtomStructurePtr from_triples(const Definition& def,
                                       const std::vector<Triple>& triples,
                                       bool peircean_close = false) {
    auto s = std::shared_ptr<AtomStructure>(new AtomStructure(def));
    for (const auto& t : triples) {
      s->check_atom(t.a);
      s->check_atom(t.b);
      s->check_atom(t.c);
      s->consistent_.set(t.a, t.b, t.c);
    }
    if (peircean_close) s->close_under_transforms();
    s->finish();
    return s;
  }

  /// Build from a list of forbidden triples: C is the complement of the
  /// Peircean closure of the forbidden set, hence always closed.
  static AtomStructurePtr from_forbidden(const Definition& def,
                                         const std::vector<Triple>& forbidden) {
    auto s = std::shared_ptr<AtomStructure>(new AtomStructure(def));
    TripleSet bad(s->n_);
    for (const auto& t : forbidden) {
      for (const auto& u : s->transforms_of(t)) bad.set(u.a, u.b, u.c);
    }
    for (int a = 0; a < s->n_; ++a)
      for (int b = 0; b < s->n_; ++b)
        for (int c = 0; c < s->n_; ++c)
          if (!bad.test(a, b, c)) s->consistent_.set(a, b, c);
    s->finish();
    return s;
  }

  /// Build from a composition table: cell (a, b) lists the atoms below a;b.
  static AtomStructurePtr from_table(
      const Definition& def,
      const std::vector<std::pair<std::pair<std::string, std::string>,
                                  std::vector<std::string>>>& cells,
      bool peircean_close = false) {
    auto s = std::shared_ptr<AtomStructure>(new AtomStructure(def));
    for (const auto& [rowcol, atoms] : cells) {
      int a = s->require_atom(rowcol.first);
      int b = s->require_atom(rowcol.second);
      for (const auto& name : atoms) s->consistent_.set(a, b, s->require_atom(name));
    }
    if (peircean_close) s->close_under_transforms();
    s->finish();
    return s;
  }

  const std::string& name() const { return name_; }
  int atom_count() const { return n_; }
  const std::string& atom_name(int a) const { return names_[a]; }

  std::optional<int> atom_index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int require_atom(std::string_view name) const {
    auto i = atom_index(name);
    if (!i) throw std::invalid_argument("unknown atom name: " + std::string(name));
    return *i;
  }

  int converse(int a) const { return conv_[a]; }
  bool is_identity_atom(int a) const { return identity_.test(a); }
  const AtomSet& identity_set() const { return identity_; }
  const AtomSet& universe() const { return universe_; }

  bool consistent(int a, int b, int c) const { return consistent_.test(a, b, c); }
  const TripleSet& consistent_triples() const { return consistent_; }

  /// {c : (a,b,c) in C}, the atom-level composition row.
  const AtomSet& comp(int a, int b) const { return comp_[a * n_ + b]; }

  AtomSet converse_set(const AtomSet& x) const {
    AtomSet r;
    x.for_each([&](int a) { r.set(conv_[a]); });
    return r;
  }

  AtomSet compose_sets(const AtomSet& x, const AtomSet& y) const {
    AtomSet r;
    x.for_each([&](int a) { y.for_each([&](int b) { r |= comp(a, b); }); });
    return r;
  }

  /// Consistent triples in lexicographic (a,b,c) order.
  std::vector<Triple> consistent_list() const {
    std::vector<Triple> out;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (consistent_.test(a, b, c)) out.push_back({a, b, c});
    return out;
  }

  /// The orbit of t under the two generating Peircean transforms, as a sorted
  /// set of at most six triples.
  std::vector<Triple> transforms_of(const Triple& t) const {
    const int a = t.a, b = t.b, c = t.c;
    const auto cv = [&](int x) { return conv_[x]; };
    std::vector<Triple> orbit = {
        {a, b, c},           {b, cv(c), cv(a)}, {c, cv(b), a},
        {cv(a), c, b},       {cv(b), cv(a), cv(c)}, {cv(c), a, cv(b)}};
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
  }

  std::string triple_to_string(const Triple& t) const {
    return "(" + names_[t.a] + "," + names_[t.b] + "," + names_[t.c] + ")";
  }

  std::string set_to_string(const AtomSet& x) const {
    std::string out = "{";
    bool first = true;
    x.for_each([&](int a) {
      if (!first) out += ",";
      out += names_[a];
      first = false;
    });
    return out + "}";
  }

  friend bool operator==(const AtomStructure& l, const AtomStructure& r) {
    return l.names_ == r.names_ && l.conv_ == r.conv_ &&
           l.identity_ == r.identity_ && l.consistent_ == r.consistent_;
  }

private:
  explicit AtomStructure(const Definition& def) : name_(def.name) {
    if (def.atoms.empty()) throw std::invalid_argument("atom list is empty");
    if (def.atoms.size() > AtomSet::kCapacity)
      throw std::invalid_argument("too many atoms (capacity 256)");
    names_ = def.atoms;
    n_ = static_cast<int>(names_.size());
    for (int i = 0; i < n_; ++i) {
      if (names_[i].empty()) throw std::invalid_argument("empty atom name");
      if (!index_.emplace(names_[i], i).second)
        throw std::invalid_argument("duplicate atom name: " + names_[i]);
    }
    conv_.assign(n_, -1);
    for (const auto& [x, y] : def.converse) {
      int a = require_atom(x), b = require_atom(y);
      if ((conv_[a] != -1 && conv_[a] != b) || (conv_[b] != -1 && conv_[b] != a))
        throw std::invalid_argument("conflicting converse for atom " + x);
      conv_[a] = b;
      conv_[b] = a;
    }
    for (int i = 0; i < n_; ++i)
      if (conv_[i] == -1) conv_[i] = i;
    for (const auto& e : def.identity) identity_.set(require_atom(e));
    universe_ = AtomSet::first_n(n_);
    consistent_ = TripleSet(n_);
  }

  void check_atom(int a) const {
    if (a < 0 || a >= n_) throw std::invalid_argument("atom index out of range");
  }

  void close_under_transforms() {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (consistent_.test(a, b, c))
            for (const auto& t : transforms_of({a, b, c}))
              consistent_.set(t.a, t.b, t.c);
  }

  void finish() {
    comp_.assign(static_cast<std::size_t>(n_) * n_, AtomSet{});
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        AtomSet row;
        for (int c = 0; c < n_; ++c)
          if (consistent_.test(a, b, c)) row.set(c);
        comp_[a * n_ + b] = row;
      }
  }

  std::string name_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> conv_;
  AtomSet identity_;
  AtomSet universe_;
  TripleSet consistent_;
  std::vector<AtomSet> comp_;
  int n_ = 0;
};

/// One element of the complex algebra over an atom structure: a set of atoms.
/// Operations on elements of different structures throw.
class Element {
public:
  Element(const AtomStructure& s, AtomSet atoms) : s_(&s), atoms_(atoms) {}

  static Element zero(const AtomStructure& s) { return {s, AtomSet{}}; }
  static Element top(const AtomStructure& s) { return {s, s.universe()}; }
  static Element identity(const AtomStructure& s) { return {s, s.identity_set()}; }
  static Element atom(const AtomStructure& s, int a) {
    return {s, AtomSet::single(a)};
  }

  static Element of_names(const AtomStructure& s,
                          std::initializer_list<std::string_view> names) {
    AtomSet set;
    for (auto n : names) set.set(s.require_atom(n));
    return {s, set};
  }

  const AtomStructure& structure() const { return *s_; }
  const AtomSet& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }
  bool contains(int a) const { return atoms_.test(a); }
  int count() const { return atoms_.count(); }

  std::string to_string() const { return s_->set_to_string(atoms_); }

  friend bool operator==(const Element& l, const Element& r) {
    l.check(r);
    return l.atoms_ == r.atoms_;
  }
  friend Element operator|(const Element& l, const Element& r) {
    l.check(r);
    return {*l.s_, l.atoms_ | r.atoms_};
  }
  friend Element operator&(const Element& l, const Element& r) {
    l.check(r);
    return {*l.s_, l.atoms_ & r.atoms_};
  }

  friend Element compose(const Element& l, const Element& r) {
    l.check(r);
    return {*l.s_, l.s_->compose_sets(l.atoms_, r.atoms_)};
  }
  friend Element converse_of(const Element& x) {
    return {*x.s_, x.s_->converse_set(x.atoms_)};
  }
  friend Element complement_of(const Element& x) {
    return {*x.s_, x.s_->universe() - x.atoms_};
  }
  friend bool leq(const Element& l, const Element& r) {
    l.check(r);
    return l.atoms_.subset_of(r.atoms_);
  }

private:
  void check(const Element& o) const {
    if (s_ != o.s_) throw std::invalid_argument("elements over different structures");
  }

  const AtomStructure* s_;
  AtomSet atoms_;
};

inline Element identity_element(const AtomStructure& s) { return Element::identity(s); }
inline Element top(const AtomStructure& s) { return Element::top(s); }
inline Element bottom(const AtomStructure& s) { return Element::zero(s); }

/// Checks the three atom-structure laws: converse is an involution, C is
/// closed under the Peircean transforms, and the identity law (a = b iff some
/// e in E has (e,a,b) in C). Violations carry stable rule ids.
inline ValidationReport validate_atom_structure(const AtomStructure& s) {
  ValidationReport report;
  const int n = s.atom_count();

  for (int a = 0; a < n; ++a) {
    int cc = s.converse(s.converse(a));
    if (cc != a)
      report.add("converse-involution",
                 "converse(converse(" + s.atom_name(a) + ")) = " + s.atom_name(cc));
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (!s.consistent(a, b, c)) continue;
        for (const auto& t : s.transforms_of({a, b, c})) {
          if (!s.consistent(t.a, t.b, t.c)) {
            report.add("peircean-closure",
                       s.triple_to_string({a, b, c}) + " in C but transform " +
                           s.triple_to_string(t) + " is missing");
          }
        }
      }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool witnessed = false;
      for (int e = s.identity_set().first(); e >= 0; e = s.identity_set().next(e)) {
        if (s.consistent(e, a, b)) {
          witnessed = true;
          if (a != b)
            report.add("identity-law",
                       s.triple_to_string({e, a, b}) + " in C with " +
                           s.atom_name(a) + " != " + s.atom_name(b));
        }
      }
      if (a == b && !witnessed)
        report.add("identity-law", "no identity atom e with (e," + s.atom_name(a) +
                                       "," + s.atom_name(a) + ") in C");
    }

  return report;
}

inline std::vector<Triple> peircean_transforms(const AtomStructure& s, const Triple& t) {
  return s.transforms_of(t);
}

// ---------------------------------------------------------------------------
// Property predicates. All witnesses are the lexicographically least failing
// tuple under the structure's atom order, which keeps reports deterministic.
// Checking atoms only suffices: the operators are completely additive.
// ---------------------------------------------------------------------------

struct AssociativityWitness {
  Triple t;  // (a,b,c) with (a;b);c != a;(b;c)
  int d;     // least atom in the symmetric difference of the two sides
};

inline std::optional<AssociativityWitness> associativity_failure(const AtomStructure& s) {
  const int n = s.atom_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const AtomSet ab = s.comp(a, b);
      for (int c = 0; c < n; ++c) {
        AtomSet left;
        ab.for_each([&](int x) { left |= s.comp(x, c); });
        AtomSet right;
        s.comp(b, c).for_each([&](int y) { right |= s.comp(a, y); });
        if (left != right) {
          AtomSet diff = (left - right) | (right - left);
          return AssociativityWitness{{a, b, c}, diff.first()};
        }
      }
    }
  return std::nullopt;
}

inline bool is_associative(const AtomStructure& s) {
  return !associativity_failure(s).has_value();
}

/// Least atom x with x;(1;1) != (x;1);1, if any.
inline std::optional<int> semi_associativity_failure(const AtomStructure& s) {
  const AtomSet one = s.universe();
  const AtomSet oneone = s.compose_sets(one, one);
  for (int x = 0; x < s.atom_count(); ++x) {
    AtomSet lhs = s.compose_sets(AtomSet::single(x), oneone);
    AtomSet rhs = s.compose_sets(s.compose_sets(AtomSet::single(x), one), one);
    if (lhs != rhs) return x;
  }
  return std::nullopt;
}

inline bool is_semi_associative(const AtomStructure& s) {
  return !semi_associativity_failure(s).has_value();
}

/// Least subidentity atom x with x;(1;1) != (x;1);1, if any.
inline std::optional<int> weak_associativity_failure(const AtomStructure& s) {
  const AtomSet one = s.universe();
  const AtomSet oneone = s.compose_sets(one, one);
  for (int x = s.identity_set().first(); x >= 0; x = s.identity_set().next(x)) {
    AtomSet lhs = s.compose_sets(AtomSet::single(x), oneone);
    AtomSet rhs = s.compose_sets(s.compose_sets(AtomSet::single(x), one), one);
    if (lhs != rhs) return x;
  }
  return std::nullopt;
}

inline bool is_weakly_associative(const AtomStructure& s) {
  return !weak_associativity_failure(s).has_value();
}

/// Least atom pair (a,b) with a;b = 0, if any.
inline std::optional<std::pair<int, int>> integrality_failure(const AtomStructure& s) {
  for (int a = 0; a < s.atom_count(); ++a)
    for (int b = 0; b < s.atom_count(); ++b)
      if (s.comp(a, b).empty()) return std::make_pair(a, b);
  return std::nullopt;
}

inline bool is_integral(const AtomStructure& s) {
  return !integrality_failure(s).has_value();
}

}  // namespace qalg
