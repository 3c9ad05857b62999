#pragma once

// Built-in atom structures and their known representations, plus the RCC5
// region helper and the syllogistic forms.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qalg/representation.hpp"

namespace qalg {

enum class RepKind { Qualitative, Feeble, Strong };

inline const char* rep_kind_name(RepKind k) {
  switch (k) {
    case RepKind::Qualitative: return "qualitative";
    case RepKind::Feeble: return "feeble";
    case RepKind::Strong: return "strong";
  }
  return "?";
}

struct KnownRepresentation {
  RepKind kind;
  Representation rep;
};

struct CatalogEntry {
  std::string key;
  AtomStructurePtr structure;
  std::vector<KnownRepresentation> known_representations;
  std::string notes;
};

namespace detail {

using Cells = std::vector<
    std::pair<std::pair<std::string, std::string>, std::vector<std::string>>>;

inline Representation labelling(AtomStructurePtr s, std::vector<std::string> base,
                                const std::vector<std::vector<std::string>>& rows) {
  const int b = static_cast<int>(base.size());
  std::vector<int> atoms(b * b);
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y) atoms[x * b + y] = s->require_atom(rows[x][y]);
  return Representation(std::move(s), std::move(base), std::move(atoms));
}

/// Order-derived labelling: the identity atom on loops, u < v -> lt,
/// u > v -> gt, incomparable -> inc.
template <typename Less>
Representation order_labelling(AtomStructurePtr s, std::vector<std::string> base,
                               Less less, const std::string& lt, const std::string& gt,
                               const std::string& inc) {
  const int b = static_cast<int>(base.size());
  const int ident = s->identity_set().first();
  std::vector<int> atoms(b * b);
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y) {
      if (x == y) {
        atoms[x * b + y] = ident;
        continue;
      }
      const std::string& name = less(x, y) ? lt : less(y, x) ? gt : inc;
      atoms[x * b + y] = s->require_atom(name);
    }
  return Representation(std::move(s), std::move(base), std::move(atoms));
}

inline CatalogEntry make_point() {
  AtomStructure::Definition def;
  def.name = "point";
  def.atoms = {"=", "<", ">"};
  def.identity = {"="};
  def.converse = {{"<", ">"}};
  Cells cells = {
      {{"=", "="}, {"="}}, {{"=", "<"}, {"<"}}, {{"=", ">"}, {">"}},
      {{"<", "="}, {"<"}}, {{"<", "<"}, {"<"}}, {{"<", ">"}, {"=", "<", ">"}},
      {{">", "="}, {">"}}, {{">", "<"}, {"=", "<", ">"}}, {{">", ">"}, {">"}},
  };
  auto s = AtomStructure::from_table(def, cells);
  auto chain = order_labelling(s, {"0", "1", "2", "3"},
                               [](int x, int y) { return x < y; }, "<", ">", "=");
  return {"point",
          s,
          {{RepKind::Qualitative, chain}},
          "linear order algebra on {=,<,>}; the four-element chain is a "
          "qualitative representation, every strong one is infinite"};
}

inline CatalogEntry make_ex1() {
  AtomStructure::Definition def;
  def.name = "ex1";
  def.atoms = {"e", "e'", "a"};
  def.identity = {"e", "e'"};
  Cells cells = {
      {{"e", "e"}, {"e"}},   {{"e", "e'"}, {}},    {{"e", "a"}, {"a"}},
      {{"e'", "e"}, {}},     {{"e'", "e'"}, {"e'"}}, {{"e'", "a"}, {"a"}},
      {{"a", "e"}, {"a"}},   {{"a", "e'"}, {"a"}}, {{"a", "a"}, {"e", "e'", "a"}},
  };
  auto s = AtomStructure::from_table(def, cells);
  auto three = labelling(s, {"0", "1", "2"},
                         {{"e", "a", "a"}, {"a", "e'", "a"}, {"a", "a", "e'"}});
  auto two = labelling(s, {"0", "1"}, {{"e", "a"}, {"a", "e'"}});
  return {"ex1",
          s,
          {{RepKind::Qualitative, three}, {RepKind::Feeble, two}},
          "three atoms with split identity e+e'; not associative; qualitative "
          "on three points, and its two-point restriction is feeble but not "
          "qualitative"};
}

inline CatalogEntry make_ex2() {
  AtomStructure::Definition def;
  def.name = "ex2";
  def.atoms = {"1'", "a", "a'", "x"};
  def.identity = {"1'"};
  Cells cells = {
      {{"1'", "1'"}, {"1'"}}, {{"1'", "a"}, {"a"}},   {{"1'", "a'"}, {"a'"}},
      {{"1'", "x"}, {"x"}},   {{"a", "1'"}, {"a"}},   {{"a", "a"}, {"1'", "a"}},
      {{"a", "a'"}, {}},      {{"a", "x"}, {"x"}},    {{"a'", "1'"}, {"a'"}},
      {{"a'", "a"}, {}},      {{"a'", "a'"}, {"1'", "a'"}}, {{"a'", "x"}, {"x"}},
      {{"x", "1'"}, {"x"}},   {{"x", "a"}, {"x"}},    {{"x", "a'"}, {"x"}},
      {{"x", "x"}, {"1'", "a", "a'"}},
  };
  auto s = AtomStructure::from_table(def, cells);
  auto six = labelling(s, {"p0", "p1", "p2", "q0", "q1", "q2"},
                       {{"1'", "a", "a", "x", "x", "x"},
                        {"a", "1'", "a", "x", "x", "x"},
                        {"a", "a", "1'", "x", "x", "x"},
                        {"x", "x", "x", "1'", "a'", "a'"},
                        {"x", "x", "x", "a'", "1'", "a'"},
                        {"x", "x", "x", "a'", "a'", "1'"}});
  return {"ex2",
          s,
          {{RepKind::Qualitative, six}},
          "atomic identity but not integral (a;a' = 0), hence not "
          "semi-associative; qualitative on two triangles joined by x"};
}

inline CatalogEntry make_ra2565() {
  AtomStructure::Definition def;
  def.name = "ra2565";
  def.atoms = {"1'", "a", "b", "c"};
  def.identity = {"1'"};
  Cells cells = {
      {{"1'", "1'"}, {"1'"}}, {{"1'", "a"}, {"a"}}, {{"1'", "b"}, {"b"}},
      {{"1'", "c"}, {"c"}},   {{"a", "1'"}, {"a"}}, {{"a", "a"}, {"1'"}},
      {{"a", "b"}, {"c"}},    {{"a", "c"}, {"b"}},  {{"b", "1'"}, {"b"}},
      {{"b", "a"}, {"c"}},    {{"b", "b"}, {"1'"}}, {{"b", "c"}, {"a"}},
      {{"c", "1'"}, {"c"}},   {{"c", "a"}, {"b"}},  {{"c", "b"}, {"a"}},
      {{"c", "c"}, {"1'"}},
  };
  auto s = AtomStructure::from_table(def, cells);
  // One-factorisation of K4: a pairs {1,2} with {3,0}, b pairs {1,0} with
  // {2,3}, c pairs {1,3} with {2,0}.
  auto four = labelling(s, {"0", "1", "2", "3"},
                        {{"1'", "b", "c", "a"},
                         {"b", "1'", "a", "c"},
                         {"c", "a", "1'", "b"},
                         {"a", "c", "b", "1'"}});
  auto three = labelling(s, {"1", "2", "3"},
                         {{"1'", "a", "c"}, {"a", "1'", "b"}, {"c", "b", "1'"}});
  return {"ra2565",
          s,
          {{RepKind::Strong, four}, {RepKind::Qualitative, three}},
          "group algebra of Z2xZ2 (Maddux's 25_65); strong on a "
          "one-factorised K4, qualitative-not-strong on its three-point "
          "restriction, nothing on five or more points"};
}

inline CatalogEntry make_ex4() {
  AtomStructure::Definition def;
  def.name = "ex4";
  def.atoms = {"e", "e'", "a", "a^"};
  def.identity = {"e", "e'"};
  def.converse = {{"a", "a^"}};
  Cells cells = {
      {{"e", "e"}, {"e"}},    {{"e", "e'"}, {}},     {{"e", "a"}, {"a"}},
      {{"e", "a^"}, {}},      {{"e'", "e"}, {}},     {{"e'", "e'"}, {"e'"}},
      {{"e'", "a"}, {}},      {{"e'", "a^"}, {"a^"}}, {{"a", "e"}, {}},
      {{"a", "e'"}, {"a"}},   {{"a", "a"}, {"a"}},   {{"a", "a^"}, {"a", "a^", "e"}},
      {{"a^", "e"}, {"a^"}},  {{"a^", "e'"}, {}},    {{"a^", "a"}, {"a", "a^", "e'"}},
      {{"a^", "a^"}, {"a^"}},
  };
  auto s = AtomStructure::from_table(def, cells);
  auto two = labelling(s, {"0", "1"}, {{"e", "a"}, {"a^", "e'"}});
  return {"ex4",
          s,
          {{RepKind::Feeble, two}},
          "split identity with a directed atom a; feeble on two points but "
          "not qualitatively representable (no loop label survives an a,a,a "
          "triangle)"};
}

inline CatalogEntry make_mckenzie() {
  AtomStructure::Definition def;
  def.name = "mckenzie";
  def.atoms = {"1'", "a", "a^", "b"};
  def.identity = {"1'"};
  def.converse = {{"a", "a^"}};
  Cells cells = {
      {{"1'", "1'"}, {"1'"}}, {{"1'", "a"}, {"a"}},  {{"1'", "a^"}, {"a^"}},
      {{"1'", "b"}, {"b"}},   {{"a", "1'"}, {"a"}},  {{"a", "a"}, {"a"}},
      {{"a", "a^"}, {"1'", "a", "a^", "b"}},          {{"a", "b"}, {"a", "b"}},
      {{"a^", "1'"}, {"a^"}}, {{"a^", "a"}, {"1'", "a", "a^", "b"}},
      {{"a^", "a^"}, {"a^"}}, {{"a^", "b"}, {"a^", "b"}},
      {{"b", "1'"}, {"b"}},   {{"b", "a"}, {"a", "b"}},
      {{"b", "a^"}, {"a^", "b"}},                     {{"b", "b"}, {"1'", "a", "a^"}},
  };
  auto s = AtomStructure::from_table(def, cells);

  // Pentagon order N5: bot < x < top and bot < y < z < top.
  const std::vector<std::string> n5 = {"bot", "x", "y", "z", "top"};
  auto n5_less = [](int u, int v) {
    auto below = [](int a, int b) {
      if (a == 0) return b != 0;          // bot below everything else
      if (b == 4) return a != 4;          // everything else below top
      return a == 2 && b == 3;            // y < z
    };
    return below(u, v);
  };
  auto pentagon = order_labelling(s, n5, n5_less, "a", "a^", "b");

  // Two parallel chains of length three between bot and top.
  const std::vector<std::string> dd = {"bot", "a1", "b1", "c1", "a2", "b2", "c2", "top"};
  auto dd_less = [](int u, int v) {
    if (u == v) return false;
    if (u == 0) return true;
    if (v == 7) return u != 7;
    if (v == 0 || u == 7) return false;
    auto chain = [](int w) { return (w - 1) / 3; };
    return chain(u) == chain(v) && u < v;
  };
  auto double_chain = order_labelling(s, dd, dd_less, "a", "a^", "b");

  // Six-point order that satisfies the quadrangle condition (exhaustive
  // search shows no five-point labelling does): bottom 0, chains 0<1<2<4,
  // 0<3<4 and 0<3<5.
  const std::vector<std::string> qp = {"0", "1", "2", "3", "4", "5"};
  auto qp_less = [](int u, int v) {
    if (u == v) return false;
    if (u == 0) return true;
    if (v == 0) return false;
    if (v == 4) return u != 4 && u != 5;
    return (u == 1 && v == 2) || (u == 3 && v == 5);
  };
  auto quadrangle = order_labelling(s, qp, qp_less, "a", "a^", "b");

  return {"mckenzie",
          s,
          {{RepKind::Qualitative, pentagon},
           {RepKind::Qualitative, double_chain},
           {RepKind::Qualitative, quadrangle}},
          "McKenzie's associative but not strongly representable algebra; "
          "qualitative on the pentagon order, on the eight-point double "
          "chain, and on a six-point order that satisfies the quadrangle "
          "condition (the smallest base that does)"};
}

inline const std::map<std::string, std::set<int>>& rcc5_regions() {
  static const std::map<std::string, std::set<int>> regions = {
      {"A", {1, 6}},          {"B", {1, 2, 3, 5, 6}}, {"C", {1, 2, 6}},
      {"D", {1, 2, 3, 5, 6, 7}}, {"E", {1}},          {"F", {1, 2, 3, 5}},
      {"G", {2, 3}},          {"H", {1, 4, 6}},       {"I", {1, 3}},
      {"J", {1, 2, 3, 4, 5}}, {"K", {4, 5, 6}},
  };
  return regions;
}

/// Atom name relating two concrete regions: 1' on equality, d on empty
/// intersection, e / e^ on strict containment either way, p otherwise.
/// The five cases are mutually exclusive for non-empty sets.
inline std::string rcc5_region_atom_name(const std::set<int>& x,
                                         const std::set<int>& y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("empty region");
  if (x == y) return "1'";
  std::set<int> meet;
  for (int v : x)
    if (y.count(v)) meet.insert(v);
  if (meet.empty()) return "d";
  if (meet == x) return "e";   // x strictly inside y
  if (meet == y) return "e^";  // y strictly inside x
  return "p";
}

inline CatalogEntry make_rcc5() {
  AtomStructure::Definition def;
  def.name = "rcc5";
  def.atoms = {"1'", "e", "e^", "p", "d"};
  def.identity = {"1'"};
  def.converse = {{"e", "e^"}};
  Cells cells = {
      {{"1'", "1'"}, {"1'"}},
      {{"1'", "e"}, {"e"}},
      {{"1'", "e^"}, {"e^"}},
      {{"1'", "p"}, {"p"}},
      {{"1'", "d"}, {"d"}},
      {{"e", "1'"}, {"e"}},
      {{"e", "e"}, {"e"}},
      {{"e", "e^"}, {"1'", "e", "e^", "p", "d"}},
      {{"e", "p"}, {"e", "p", "d"}},
      {{"e", "d"}, {"d"}},
      {{"e^", "1'"}, {"e^"}},
      {{"e^", "e"}, {"1'", "e", "e^", "p"}},
      {{"e^", "e^"}, {"e^"}},
      {{"e^", "p"}, {"e^", "p"}},
      {{"e^", "d"}, {"e^", "p", "d"}},
      {{"p", "1'"}, {"p"}},
      {{"p", "e"}, {"e", "p"}},
      {{"p", "e^"}, {"e^", "p", "d"}},
      {{"p", "p"}, {"1'", "e", "e^", "p", "d"}},
      {{"p", "d"}, {"e^", "p", "d"}},
      {{"d", "1'"}, {"d"}},
      {{"d", "e"}, {"e", "p", "d"}},
      {{"d", "e^"}, {"d"}},
      {{"d", "p"}, {"e", "p", "d"}},
      {{"d", "d"}, {"1'", "e", "e^", "p", "d"}},
  };
  auto s = AtomStructure::from_table(def, cells);

  std::vector<std::string> base;
  for (const auto& [name, _] : rcc5_regions()) base.push_back(name);
  const int b = static_cast<int>(base.size());
  std::vector<int> atoms(b * b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j)
      atoms[i * b + j] = s->require_atom(rcc5_region_atom_name(
          rcc5_regions().at(base[i]), rcc5_regions().at(base[j])));
  Representation eleven(s, base, std::move(atoms));

  return {"rcc5",
          s,
          {{RepKind::Qualitative, eleven}},
          "region algebra on {1',e,e^,p,d} (containment, overlap, "
          "disjointness); qualitative over eleven concrete regions"};
}

}  // namespace detail

inline const std::vector<std::string>& catalog_keys() {
  static const std::vector<std::string> keys = {"point",  "ex1", "ex2",     "ra2565",
                                                "ex4",    "mckenzie", "rcc5"};
  return keys;
}

inline const CatalogEntry& catalog_get(std::string_view key) {
  static const std::map<std::string, CatalogEntry, std::less<>> entries = [] {
    std::map<std::string, CatalogEntry, std::less<>> m;
    for (auto&& e : {detail::make_point(), detail::make_ex1(), detail::make_ex2(),
                     detail::make_ra2565(), detail::make_ex4(),
                     detail::make_mckenzie(), detail::make_rcc5()})
      m.emplace(e.key, e);
    return m;
  }();
  auto it = entries.find(key);
  if (it == entries.end())
    throw std::invalid_argument("unknown catalog key: " + std::string(key));
  return it->second;
}

/// Atom index in the rcc5 structure relating two concrete regions.
inline int rcc5_region_atom(const std::set<int>& x, const std::set<int>& y) {
  return catalog_get("rcc5").structure->require_atom(
      detail::rcc5_region_atom_name(x, y));
}

/// Element of rcc5 encoding a categorical proposition between subject and
/// predicate: A "every S is P", I "some S is P", E "no S is P",
/// O "some S is not P".
inline Element syllogism_element(char form) {
  const AtomStructure& s = *catalog_get("rcc5").structure;
  switch (form) {
    case 'A': return Element::of_names(s, {"1'", "e"});
    case 'I': return Element::of_names(s, {"1'", "e", "e^", "p"});
    case 'E': return Element::of_names(s, {"d"});
    case 'O': return Element::of_names(s, {"e^", "p", "d"});
    default: throw std::invalid_argument("syllogistic form must be one of A,I,E,O");
  }
}

}  // namespace qalg
