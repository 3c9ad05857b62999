#pragma once

// Terms and equations over the relation-algebra signature, their evaluation
// in complex algebras and in finite herds (boolean set algebras of binary
// relations with weak composition), and bounded counterexample search for
// equation validity over qualitative representations.

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qalg/representation.hpp"

namespace qalg {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

enum class TermOp { Zero, One, Ident, Var, Compl, Conv, Join, Meet, Comp };

struct TermNode {
  TermOp op;
  int var = -1;           // for Var
  int lhs = -1, rhs = -1; // children
};

/// Abstract syntax tree. Operator precedence, tightest first:
/// postfix ^ (converse), ; (composition), prefix - (complement),
/// . (meet), + (join). Parentheses as usual.
class Term {
public:
  const std::vector<TermNode>& nodes() const { return nodes_; }
  int root() const { return root_; }
  /// Number of symbol occurrences (operators, constants, variables).
  int symbol_count() const { return static_cast<int>(nodes_.size()); }

  /// Parses `text`, resolving variables against `vars` and appending new ones.
  static Term parse(std::string_view text, std::vector<std::string>& vars);

  std::string to_string(const std::vector<std::string>& vars) const {
    return print(root_, vars);
  }

private:
  friend class TermParser;
  std::string print(int i, const std::vector<std::string>& vars) const {
    const TermNode& n = nodes_[i];
    switch (n.op) {
      case TermOp::Zero: return "0";
      case TermOp::One: return "1";
      case TermOp::Ident: return "1'";
      case TermOp::Var: return vars[n.var];
      case TermOp::Compl: return "-" + print(n.lhs, vars);
      case TermOp::Conv: return print(n.lhs, vars) + "^";
      case TermOp::Join: return "(" + print(n.lhs, vars) + "+" + print(n.rhs, vars) + ")";
      case TermOp::Meet: return "(" + print(n.lhs, vars) + "." + print(n.rhs, vars) + ")";
      case TermOp::Comp: return "(" + print(n.lhs, vars) + ";" + print(n.rhs, vars) + ")";
    }
    return "?";
  }

  std::vector<TermNode> nodes_;
  int root_ = -1;
};

class TermParser {
public:
  TermParser(std::string_view text, std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  Term run() {
    Term t;
    t.root_ = parse_join(t);
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("term syntax error at position " +
                                std::to_string(pos_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  int add(Term& t, TermNode n) {
    t.nodes_.push_back(n);
    return static_cast<int>(t.nodes_.size()) - 1;
  }

  int parse_join(Term& t) {
    int l = parse_meet(t);
    while (eat('+')) l = add(t, {TermOp::Join, -1, l, parse_meet(t)});
    return l;
  }

  int parse_meet(Term& t) {
    int l = parse_compl(t);
    while (eat('.')) l = add(t, {TermOp::Meet, -1, l, parse_compl(t)});
    return l;
  }

  int parse_compl(Term& t) {
    if (eat('-')) return add(t, {TermOp::Compl, -1, parse_compl(t), -1});
    return parse_comp(t);
  }

  int parse_comp(Term& t) {
    int l = parse_postfix(t);
    while (eat(';')) l = add(t, {TermOp::Comp, -1, l, parse_postfix(t)});
    return l;
  }

  int parse_postfix(Term& t) {
    int l = parse_primary(t);
    while (eat('^')) l = add(t, {TermOp::Conv, -1, l, -1});
    return l;
  }

  int parse_primary(Term& t) {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a term");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int inner = parse_join(t);
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == '0') {
      ++pos_;
      return add(t, {TermOp::Zero, -1, -1, -1});
    }
    if (c == '1') {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        ++pos_;
        return add(t, {TermOp::Ident, -1, -1, -1});
      }
      return add(t, {TermOp::One, -1, -1, -1});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      int var = -1;
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) var = static_cast<int>(i);
      if (var < 0) {
        vars_.push_back(name);
        var = static_cast<int>(vars_.size()) - 1;
      }
      return add(t, {TermOp::Var, var, -1, -1});
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

inline Term Term::parse(std::string_view text, std::vector<std::string>& vars) {
  return TermParser(text, vars).run();
}

struct Equation {
  Term lhs, rhs;
  std::vector<std::string> variables;

  /// Parses "lhs = rhs".
  static Equation parse(std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("equation must contain '='");
    if (text.find('=', eq + 1) != std::string_view::npos)
      throw std::invalid_argument("equation must contain a single '='");
    Equation out;
    out.lhs = Term::parse(text.substr(0, eq), out.variables);
    out.rhs = Term::parse(text.substr(eq + 1), out.variables);
    return out;
  }

  /// Symbol occurrences on both sides.
  int length() const { return lhs.symbol_count() + rhs.symbol_count(); }

  std::string to_string() const {
    return lhs.to_string(variables) + " = " + rhs.to_string(variables);
  }
};

/// Standard recursive evaluation in the complex algebra of `s`.
inline Element eval_in_complex(const AtomStructure& s,
                               const std::vector<Element>& assignment,
                               const Term& t, int node = -1) {
  const TermNode& n = t.nodes()[node < 0 ? t.root() : node];
  switch (n.op) {
    case TermOp::Zero: return Element::zero(s);
    case TermOp::One: return Element::top(s);
    case TermOp::Ident: return Element::identity(s);
    case TermOp::Var:
      if (n.var >= static_cast<int>(assignment.size()))
        throw std::invalid_argument("unassigned variable in term");
      return assignment[n.var];
    case TermOp::Compl: return complement_of(eval_in_complex(s, assignment, t, n.lhs));
    case TermOp::Conv: return converse_of(eval_in_complex(s, assignment, t, n.lhs));
    case TermOp::Join:
      return eval_in_complex(s, assignment, t, n.lhs) |
             eval_in_complex(s, assignment, t, n.rhs);
    case TermOp::Meet:
      return eval_in_complex(s, assignment, t, n.lhs) &
             eval_in_complex(s, assignment, t, n.rhs);
    case TermOp::Comp:
      return compose(eval_in_complex(s, assignment, t, n.lhs),
                     eval_in_complex(s, assignment, t, n.rhs));
  }
  throw std::logic_error("bad term node");
}

// ---------------------------------------------------------------------------
// Herds
// ---------------------------------------------------------------------------

/// Set of ordered point pairs over a fixed base, as a bit mask.
class PairSet {
public:
  PairSet() = default;
  explicit PairSet(int base) : base_(base), w_((std::size_t(base) * base + 63) / 64, 0) {}

  int base() const { return base_; }
  void set(int x, int y) { w_[idx(x, y) >> 6] |= std::uint64_t{1} << (idx(x, y) & 63); }
  bool test(int x, int y) const {
    return (w_[idx(x, y) >> 6] >> (idx(x, y) & 63)) & 1;
  }
  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  int count() const {
    int n = 0;
    for (auto w : w_) n += std::popcount(w);
    return n;
  }
  bool intersects(const PairSet& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }
  bool subset_of(const PairSet& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  PairSet& operator|=(const PairSet& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  PairSet& operator&=(const PairSet& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  PairSet& operator-=(const PairSet& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }
  friend PairSet operator|(PairSet a, const PairSet& b) { return a |= b; }
  friend PairSet operator&(PairSet a, const PairSet& b) { return a &= b; }
  friend PairSet operator-(PairSet a, const PairSet& b) { return a -= b; }
  friend bool operator==(const PairSet&, const PairSet&) = default;

  std::set<std::pair<int, int>> to_pairs() const {
    std::set<std::pair<int, int>> out;
    for (int x = 0; x < base_; ++x)
      for (int y = 0; y < base_; ++y)
        if (test(x, y)) out.insert({x, y});
    return out;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (auto [x, y] : to_pairs()) {
      if (!first) out += ",";
      out += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
      first = false;
    }
    return out + "}";
  }

private:
  std::size_t idx(int x, int y) const { return std::size_t(x) * base_ + y; }
  int base_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Finite herd: a partition of D x D into blocks whose unions form a boolean
/// set algebra containing the identity and closed under converse, together
/// with an assignment of block unions to term variables. Weak composition is
/// the least block union containing the true relational composition.
class Herd {
public:
  Herd(int base, std::vector<PairSet> blocks, std::vector<PairSet> assignment)
      : base_(base), blocks_(std::move(blocks)), assignment_(std::move(assignment)) {
    validate();
  }

  /// The herd generated by the given relations: blocks are the classes of
  /// "same membership profile across Id, every relation, and every converse".
  static Herd generated(int base, const std::vector<PairSet>& relations) {
    std::vector<PairSet> gens;
    gens.push_back(id_mask(base));
    for (const auto& r : relations) {
      gens.push_back(r);
      gens.push_back(converse_mask(r));
    }
    std::map<std::vector<bool>, PairSet> classes;
    for (int x = 0; x < base; ++x)
      for (int y = 0; y < base; ++y) {
        std::vector<bool> profile;
        profile.reserve(gens.size());
        for (const auto& g : gens) profile.push_back(g.test(x, y));
        auto [it, fresh] = classes.try_emplace(profile, PairSet(base));
        it->second.set(x, y);
      }
    std::vector<PairSet> blocks;
    for (auto& [_, b] : classes) blocks.push_back(b);
    return Herd(base, std::move(blocks), relations);
  }

  int base() const { return base_; }
  const std::vector<PairSet>& blocks() const { return blocks_; }
  const std::vector<PairSet>& assignment() const { return assignment_; }

  static PairSet id_mask(int base) {
    PairSet p(base);
    for (int x = 0; x < base; ++x) p.set(x, x);
    return p;
  }

  static PairSet full_mask(int base) {
    PairSet p(base);
    for (int x = 0; x < base; ++x)
      for (int y = 0; y < base; ++y) p.set(x, y);
    return p;
  }

  static PairSet converse_mask(const PairSet& r) {
    PairSet out(r.base());
    for (int x = 0; x < r.base(); ++x)
      for (int y = 0; y < r.base(); ++y)
        if (r.test(x, y)) out.set(y, x);
    return out;
  }

  static PairSet true_compose(const PairSet& a, const PairSet& b) {
    const int n = a.base();
    PairSet out(n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (a.test(x, y))
          for (int z = 0; z < n; ++z)
            if (b.test(y, z)) out.set(x, z);
    return out;
  }

  /// Least block union containing a o b.
  PairSet weak_compose(const PairSet& a, const PairSet& b) const {
    PairSet comp = true_compose(a, b);
    PairSet out(base_);
    for (const auto& blk : blocks_)
      if (blk.intersects(comp)) out |= blk;
    return out;
  }

  PairSet eval(const Term& t, int node = -1) const {
    const TermNode& n = t.nodes()[node < 0 ? t.root() : node];
    switch (n.op) {
      case TermOp::Zero: return PairSet(base_);
      case TermOp::One: return full_mask(base_);
      case TermOp::Ident: return id_mask(base_);
      case TermOp::Var:
        if (n.var >= static_cast<int>(assignment_.size()))
          throw std::invalid_argument("unassigned variable in term");
        return assignment_[n.var];
      case TermOp::Compl: return full_mask(base_) - eval(t, n.lhs);
      case TermOp::Conv: return converse_mask(eval(t, n.lhs));
      case TermOp::Join: return eval(t, n.lhs) | eval(t, n.rhs);
      case TermOp::Meet: return eval(t, n.lhs) & eval(t, n.rhs);
      case TermOp::Comp: return weak_compose(eval(t, n.lhs), eval(t, n.rhs));
    }
    throw std::logic_error("bad term node");
  }

  std::string describe(const std::vector<std::string>& vars) const {
    std::string out = "base " + std::to_string(base_) + "\nblocks:";
    for (const auto& b : blocks_) out += " " + b.to_string();
    for (std::size_t i = 0; i < assignment_.size() && i < vars.size(); ++i)
      out += "\n" + vars[i] + " -> " + assignment_[i].to_string();
    return out;
  }

private:
  void validate() const {
    PairSet covered(base_);
    for (const auto& b : blocks_) {
      if (b.empty()) throw std::invalid_argument("herd block is empty");
      if (covered.intersects(b)) throw std::invalid_argument("herd blocks overlap");
      covered |= b;
    }
    if (!(covered == full_mask(base_)))
      throw std::invalid_argument("herd blocks do not cover the base square");
    auto is_union = [&](const PairSet& r) {
      for (const auto& b : blocks_)
        if (b.intersects(r) && !b.subset_of(r)) return false;
      return true;
    };
    if (!is_union(id_mask(base_)))
      throw std::invalid_argument("identity is not a union of herd blocks");
    for (const auto& b : blocks_)
      if (!is_union(converse_mask(b)))
        throw std::invalid_argument("herd blocks not closed under converse");
    for (const auto& r : assignment_)
      if (!is_union(r))
        throw std::invalid_argument("assigned relation is not a union of blocks");
  }

  int base_;
  std::vector<PairSet> blocks_;
  std::vector<PairSet> assignment_;
};

/// Spec'd entry point: the herd generated by an assignment of relations.
inline Herd build_herd(int base, const std::vector<PairSet>& relations) {
  return Herd::generated(base, relations);
}

inline PairSet eval_in_herd(const Herd& h, const Term& t) { return h.eval(t); }

/// Independent reference evaluator on plain pair sets; used to re-verify
/// every counterexample before it is reported.
inline std::set<std::pair<int, int>> eval_in_herd_reference(const Herd& h, const Term& t,
                                                            int node = -1) {
  using Pairs = std::set<std::pair<int, int>>;
  const TermNode& n = t.nodes()[node < 0 ? t.root() : node];
  auto from_mask = [&](const PairSet& p) { return p.to_pairs(); };
  switch (n.op) {
    case TermOp::Zero: return {};
    case TermOp::One: return from_mask(Herd::full_mask(h.base()));
    case TermOp::Ident: return from_mask(Herd::id_mask(h.base()));
    case TermOp::Var: return from_mask(h.assignment().at(n.var));
    case TermOp::Compl: {
      Pairs sub = eval_in_herd_reference(h, t, n.lhs), out;
      for (int x = 0; x < h.base(); ++x)
        for (int y = 0; y < h.base(); ++y)
          if (!sub.count({x, y})) out.insert({x, y});
      return out;
    }
    case TermOp::Conv: {
      Pairs sub = eval_in_herd_reference(h, t, n.lhs), out;
      for (auto [x, y] : sub) out.insert({y, x});
      return out;
    }
    case TermOp::Join: {
      Pairs out = eval_in_herd_reference(h, t, n.lhs);
      for (auto p : eval_in_herd_reference(h, t, n.rhs)) out.insert(p);
      return out;
    }
    case TermOp::Meet: {
      Pairs l = eval_in_herd_reference(h, t, n.lhs), out;
      for (auto p : eval_in_herd_reference(h, t, n.rhs))
        if (l.count(p)) out.insert(p);
      return out;
    }
    case TermOp::Comp: {
      Pairs l = eval_in_herd_reference(h, t, n.lhs);
      Pairs r = eval_in_herd_reference(h, t, n.rhs);
      Pairs comp;
      for (auto [x, y] : l)
        for (auto [y2, z] : r)
          if (y == y2) comp.insert({x, z});
      // least block union containing comp
      Pairs out;
      for (const auto& blk : h.blocks()) {
        bool meets = false;
        for (auto [x, y] : blk.to_pairs())
          if (comp.count({x, y})) meets = true;
        if (meets)
          for (auto p : blk.to_pairs()) out.insert(p);
      }
      return out;
    }
  }
  throw std::logic_error("bad term node");
}

/// The herd induced by a representation (blocks are the non-empty atom
/// relations) with term variables assigned the images of given elements.
inline Herd herd_from_representation(const Representation& r,
                                     const std::vector<Element>& assignment) {
  const int b = r.base_size();
  const AtomStructure& s = r.structure();
  std::vector<PairSet> blocks;
  for (int a = 0; a < s.atom_count(); ++a) {
    PairSet rel(b);
    bool nonempty = false;
    for (int x = 0; x < b; ++x)
      for (int y = 0; y < b; ++y)
        if (r.atom_at(x, y) == a) {
          rel.set(x, y);
          nonempty = true;
        }
    if (nonempty) blocks.push_back(rel);
  }
  std::vector<PairSet> assigned;
  for (const auto& e : assignment) {
    PairSet rel(b);
    for (int x = 0; x < b; ++x)
      for (int y = 0; y < b; ++y)
        if (e.contains(r.atom_at(x, y))) rel.set(x, y);
    assigned.push_back(rel);
  }
  return Herd(b, std::move(blocks), std::move(assigned));
}

// ---------------------------------------------------------------------------
// Validity checking
// ---------------------------------------------------------------------------

namespace detail {

/// All set partitions of {0..n-1} as class-index vectors, lexicographic by
/// restricted growth string.
inline std::vector<std::vector<int>> set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(n, 0);
  if (n == 0) {
    out.push_back(rgs);
    return out;
  }
  while (true) {
    out.push_back(rgs);
    int i = n - 1;
    for (; i > 0; --i) {
      int maxv = 0;
      for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
      if (rgs[i] <= maxv) break;
    }
    if (i <= 0) break;
    ++rgs[i];
    for (int j = i + 1; j < n; ++j) rgs[j] = 0;
  }
  return out;
}

/// Enumerates the herd partitions of D x D for a base: a set partition of the
/// diagonal, and for the off-diagonal converse orbits a grouping where each
/// group is either one symmetric block or a pair of mutually converse blocks
/// (with a relative orientation per extra orbit). Only materialised for tiny
/// bases (155 partitions at base 3); larger bases are sampled instead.
inline std::vector<std::vector<PairSet>> herd_partitions(int base) {
  std::vector<std::vector<PairSet>> out;
  std::vector<std::pair<int, int>> orbit;  // representative (i,j), i<j
  for (int i = 0; i < base; ++i)
    for (int j = i + 1; j < base; ++j) orbit.push_back({i, j});
  const int m = static_cast<int>(orbit.size());

  auto diag_parts = set_partitions(base);
  auto orbit_parts = set_partitions(std::max(m, 0));

  for (const auto& dp : diag_parts) {
    std::vector<PairSet> diag_blocks;
    {
      int classes = 0;
      for (int v : dp) classes = std::max(classes, v + 1);
      diag_blocks.assign(classes, PairSet(base));
      for (int i = 0; i < base; ++i) diag_blocks[dp[i]].set(i, i);
    }
    if (m == 0) {
      out.push_back(diag_blocks);
      continue;
    }
    for (const auto& op : orbit_parts) {
      int classes = 0;
      for (int v : op) classes = std::max(classes, v + 1);
      std::vector<std::vector<int>> groups(classes);
      for (int i = 0; i < m; ++i) groups[op[i]].push_back(i);
      // Per-group options: 0 = symmetric; k in [1, 2^(size-1)] = split with
      // orientations given by the bits of k-1 (first orbit fixed forward).
      std::vector<long> option_count(classes);
      for (int g = 0; g < classes; ++g)
        option_count[g] = 1 + (1L << (groups[g].size() - 1));
      std::vector<long> choice(classes, 0);
      while (true) {
        std::vector<PairSet> blocks = diag_blocks;
        for (int g = 0; g < classes; ++g) {
          if (choice[g] == 0) {
            PairSet blk(base);
            for (int oi : groups[g]) {
              blk.set(orbit[oi].first, orbit[oi].second);
              blk.set(orbit[oi].second, orbit[oi].first);
            }
            blocks.push_back(blk);
          } else {
            long bits = choice[g] - 1;
            PairSet fwd(base), bwd(base);
            for (std::size_t k = 0; k < groups[g].size(); ++k) {
              auto [i, j] = orbit[groups[g][k]];
              bool flip = k > 0 && ((bits >> (k - 1)) & 1);
              if (flip) {
                fwd.set(j, i);
                bwd.set(i, j);
              } else {
                fwd.set(i, j);
                bwd.set(j, i);
              }
            }
            blocks.push_back(fwd);
            blocks.push_back(bwd);
          }
        }
        out.push_back(std::move(blocks));
        int g = classes - 1;
        while (g >= 0 && choice[g] + 1 >= option_count[g]) choice[g--] = 0;
        if (g < 0) break;
        ++choice[g];
      }
    }
  }
  return out;
}

/// Uniformly-seeded (not uniformly distributed) random herd partition, for
/// sampling bases whose partition space is too large to enumerate.
inline std::vector<PairSet> random_partition(int base, std::mt19937_64& rng) {
  std::vector<PairSet> blocks;
  // Diagonal: random restricted-growth assignment.
  std::vector<int> dp(base);
  int dclasses = 0;
  for (int i = 0; i < base; ++i) {
    dp[i] = static_cast<int>(rng() % (dclasses + 1));
    if (dp[i] == dclasses) ++dclasses;
  }
  blocks.assign(dclasses, PairSet(base));
  for (int i = 0; i < base; ++i) blocks[dp[i]].set(i, i);

  std::vector<std::pair<int, int>> orbit;
  for (int i = 0; i < base; ++i)
    for (int j = i + 1; j < base; ++j) orbit.push_back({i, j});
  const int m = static_cast<int>(orbit.size());
  std::vector<int> op(m);
  int oclasses = 0;
  for (int i = 0; i < m; ++i) {
    op[i] = static_cast<int>(rng() % (oclasses + 1));
    if (op[i] == oclasses) ++oclasses;
  }
  for (int g = 0; g < oclasses; ++g) {
    std::vector<int> members;
    for (int i = 0; i < m; ++i)
      if (op[i] == g) members.push_back(i);
    if (rng() & 1) {
      PairSet blk(base);
      for (int oi : members) {
        blk.set(orbit[oi].first, orbit[oi].second);
        blk.set(orbit[oi].second, orbit[oi].first);
      }
      blocks.push_back(blk);
    } else {
      PairSet fwd(base), bwd(base);
      for (int oi : members) {
        auto [i, j] = orbit[oi];
        if (rng() & 1) std::swap(i, j);
        fwd.set(i, j);
        bwd.set(j, i);
      }
      blocks.push_back(fwd);
      blocks.push_back(bwd);
    }
  }
  return blocks;
}

}  // namespace detail

struct HerdCounterexample {
  Herd herd;
  PairSet lhs_value, rhs_value;
};

struct ValidityResult {
  std::optional<HerdCounterexample> counterexample;
  int certified_base = 0;        // every herd/assignment on bases <= this checked
  bool certifies_validity = false;  // certified_base reached 3 * |equation|
  std::vector<int> sampled_bases;
  long herds_enumerated = 0;
  long evaluations = 0;
};

/// Searches for a herd in which the two sides differ. Bases are tried in
/// increasing size; per base the search is exhaustive over all herd
/// partitions and block-union assignments while that space stays below
/// `exhaustive_limit`, and seeded random sampling afterwards. A failure on a
/// base of size 3 * |equation| would be guaranteed to exist if the equation
/// is not valid over qualitative representations, so `certified_base`
/// reaching that bound certifies validity; this is reported honestly and is
/// rarely feasible.
inline ValidityResult check_validity(const Equation& eq, int max_base = 3,
                                     std::uint64_t seed = 12345,
                                     long samples_per_base = 20000,
                                     long exhaustive_limit = 2'000'000) {
  ValidityResult result;
  const int nvars = static_cast<int>(eq.variables.size());

  auto try_herd = [&](const Herd& h) -> bool {
    ++result.evaluations;
    PairSet l = h.eval(eq.lhs);
    PairSet r = h.eval(eq.rhs);
    if (l == r) return false;
    // Independent re-evaluation before reporting.
    auto lref = eval_in_herd_reference(h, eq.lhs);
    auto rref = eval_in_herd_reference(h, eq.rhs);
    if (lref != l.to_pairs() || rref != r.to_pairs())
      throw std::logic_error("herd evaluators disagree");
    if (lref == rref) throw std::logic_error("counterexample failed re-verification");
    result.counterexample = HerdCounterexample{h, l, r};
    return true;
  };

  for (int base = 1; base <= max_base; ++base) {
    std::vector<std::vector<PairSet>> partitions;
    bool exhaustive = base <= 3;
    long double total = 0;
    if (exhaustive) {
      partitions = detail::herd_partitions(base);
      for (const auto& blocks : partitions) {
        total += std::pow(2.0L, static_cast<long double>(blocks.size()) * nvars);
        if (total > static_cast<long double>(exhaustive_limit)) {
          exhaustive = false;
          break;
        }
      }
    }
    if (exhaustive) {
      for (const auto& blocks : partitions) {
        ++result.herds_enumerated;
        const int nb = static_cast<int>(blocks.size());
        std::vector<long> masks(nvars, 0);
        while (true) {
          std::vector<PairSet> assignment(nvars, PairSet(base));
          for (int v = 0; v < nvars; ++v)
            for (int k = 0; k < nb; ++k)
              if ((masks[v] >> k) & 1) assignment[v] |= blocks[k];
          Herd h(base, blocks, std::move(assignment));
          if (try_herd(h)) return result;
          int v = nvars - 1;
          while (v >= 0 && masks[v] + 1 >= (1L << nb)) masks[v--] = 0;
          if (v < 0) break;
          ++masks[v];
        }
      }
      result.certified_base = base;
    } else {
      result.sampled_bases.push_back(base);
      std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(base)));
      for (long i = 0; i < samples_per_base; ++i) {
        std::vector<PairSet> blocks;
        if (!partitions.empty())
          blocks = partitions[rng() % partitions.size()];
        else
          blocks = detail::random_partition(base, rng);
        ++result.herds_enumerated;
        const int nb = static_cast<int>(blocks.size());
        std::vector<PairSet> assignment(nvars, PairSet(base));
        for (int v = 0; v < nvars; ++v)
          for (int k = 0; k < nb; ++k)
            if (rng() & 1) assignment[v] |= blocks[k];
        Herd h(base, blocks, std::move(assignment));
        if (try_herd(h)) return result;
      }
    }
  }
  result.certifies_validity = result.certified_base >= 3 * eq.length();
  return result;
}

}  // namespace qalg
