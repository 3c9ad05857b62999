#pragma once

// Instance generators for the two NP-hardness reductions (graph
// 3-colourability -> qualitative representability, monochromatic triangle ->
// feeble representability), the Monk algebra family, the witness-network
// constructors from the correctness arguments, and the brute-force
// colouring oracles used to cross-check them.

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qalg/representation.hpp"

namespace qalg {

/// Undirected simple graph. Edges are stored as normalised vertex-index
/// pairs (u < v); adjacency is symmetric and irreflexive.
class SimpleGraph {
public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::vector<std::string> vertices) : names_(std::move(vertices)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i].empty()) throw std::invalid_argument("empty vertex name");
  }

  int vertex_count() const { return static_cast<int>(names_.size()); }
  const std::string& vertex_name(int v) const { return names_[v]; }
  const std::vector<std::string>& vertices() const { return names_; }

  std::optional<int> vertex_index(std::string_view name) const {
    for (int i = 0; i < vertex_count(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  int add_vertex(std::string name) {
    names_.push_back(std::move(name));
    return vertex_count() - 1;
  }

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("loops not allowed");
    if (u > v) std::swap(u, v);
    edges_.insert({u, v});
  }

  bool adjacent(int u, int v) const {
    if (u > v) std::swap(u, v);
    return edges_.count({u, v}) > 0;
  }

  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool has_non_edge() const {
    long n = vertex_count();
    return static_cast<long>(edges_.size()) < n * (n - 1) / 2;
  }

private:
  std::vector<std::string> names_;
  std::set<std::pair<int, int>> edges_;
};

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

/// Any proper 3-colouring, or nullopt. Exponential; intended for small
/// instances.
inline std::optional<std::vector<int>> three_colouring_brute_force(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> colour(n, 0);
  while (true) {
    bool proper = true;
    for (auto [u, v] : g.edges())
      if (colour[u] == colour[v]) {
        proper = false;
        break;
      }
    if (proper) return colour;
    int i = n - 1;
    while (i >= 0 && colour[i] == 2) colour[i--] = 0;
    if (i < 0) return std::nullopt;
    ++colour[i];
  }
}

/// Any 2-colouring of the edges avoiding monochromatic triangles, as a map
/// from normalised edge to colour {0,1}; nullopt when none exists.
inline std::optional<std::map<std::pair<int, int>, int>>
monochromatic_triangle_brute_force(const SimpleGraph& g) {
  std::vector<std::pair<int, int>> edges(g.edges().begin(), g.edges().end());
  const int m = static_cast<int>(edges.size());
  if (m > 30) throw std::invalid_argument("instance too large for brute force");
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < m; ++i) index[edges[i]] = i;
  std::vector<std::array<int, 3>> triangles;
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      for (int w = v + 1; w < g.vertex_count(); ++w)
        if (g.adjacent(u, v) && g.adjacent(u, w) && g.adjacent(v, w))
          triangles.push_back({index[{u, v}], index[{u, w}], index[{v, w}]});
  for (long mask = 0; mask < (1L << m); ++mask) {
    bool mono = false;
    for (const auto& t : triangles) {
      int a = (mask >> t[0]) & 1, b = (mask >> t[1]) & 1, c = (mask >> t[2]) & 1;
      if (a == b && b == c) {
        mono = true;
        break;
      }
    }
    if (!mono) {
      std::map<std::pair<int, int>, int> out;
      for (int i = 0; i < m; ++i) out[edges[i]] = static_cast<int>((mask >> i) & 1);
      return out;
    }
  }
  return std::nullopt;
}

/// The Ramsey obstruction behind the Monk algebra for n = 2: every 2-labelling
/// of the fifteen K6 edges contains a monochromatic triangle. Checked by
/// exhausting all 2^15 labellings.
inline bool every_two_colouring_of_k6_has_mono_triangle() {
  SimpleGraph k6({"0", "1", "2", "3", "4", "5"});
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) k6.add_edge(u, v);
  return !monochromatic_triangle_brute_force(k6).has_value();
}

/// Exact maximum independent set size by subset enumeration (<= 20 vertices),
/// greedy lower bound beyond that.
inline int max_independent_set_size(const SimpleGraph& g) {
  const int n = g.vertex_count();
  if (n <= 20) {
    int best = 0;
    for (long mask = 0; mask < (1L << n); ++mask) {
      int size = std::popcount(static_cast<unsigned long>(mask));
      if (size <= best) continue;
      bool ok = true;
      for (int u = 0; u < n && ok; ++u)
        if ((mask >> u) & 1)
          for (int v = u + 1; v < n && ok; ++v)
            if (((mask >> v) & 1) && g.adjacent(u, v)) ok = false;
      if (ok) best = size;
    }
    return best;
  }
  std::vector<int> taken;
  for (int v = 0; v < n; ++v) {
    bool ok = true;
    for (int u : taken)
      if (g.adjacent(u, v)) ok = false;
    if (ok) taken.push_back(v);
  }
  return static_cast<int>(taken.size());
}

// ---------------------------------------------------------------------------
// 3-colourability -> qualitative representability
// ---------------------------------------------------------------------------

/// The reduction instance: the generated atom structure plus the bookkeeping
/// needed to build witness networks and read colourings back off
/// representations. `padded` is the input graph extended by isolated
/// vertices until it has an independent 5-set and a triangle with exactly one
/// edge; `infinity` indexes the extra vertex adjacent to everything.
struct ThreeColReduction {
  bool trivially_colourable = false;  // empty edge set; no structure emitted
  AtomStructurePtr structure;
  SimpleGraph original;
  SimpleGraph padded;  // includes the infinity vertex as its last vertex
  int infinity = -1;

  // Atom indices.
  int ident = -1, gap = -1, yes = -1, no = -1, yes_c = -1, no_c = -1;
  std::vector<int> colour_atoms;              // a, b, c
  std::map<std::pair<int, int>, int> edge_atom;  // directed padded edge -> s_uv
};

namespace detail {

inline SimpleGraph pad_for_three_colouring(const SimpleGraph& g) {
  SimpleGraph padded = g;
  int pad = 0;
  int need = 5 - max_independent_set_size(padded);
  for (int i = 0; i < need; ++i) padded.add_vertex("_pad" + std::to_string(pad++));
  // A triangle with one edge and two non-edges: an isolated vertex plus any
  // edge does it; padding above already provides one unless no padding
  // happened.
  auto has_one_edge_triangle = [&]() {
    for (auto [u, v] : padded.edges())
      for (int w = 0; w < padded.vertex_count(); ++w)
        if (w != u && w != v && !padded.adjacent(u, w) && !padded.adjacent(v, w))
          return true;
    return false;
  };
  if (!has_one_edge_triangle()) padded.add_vertex("_pad" + std::to_string(pad++));
  return padded;
}

}  // namespace detail

/// Builds the atom structure whose qualitative representability is equivalent
/// to 3-colourability of `g`. Graphs with no edges are reported as trivially
/// colourable instead.
inline ThreeColReduction reduce_three_colouring(const SimpleGraph& g) {
  ThreeColReduction red;
  red.original = g;
  if (g.edge_count() == 0) {
    red.trivially_colourable = true;
    return red;
  }

  SimpleGraph padded = detail::pad_for_three_colouring(g);
  int inf = padded.add_vertex("_inf");
  for (int v = 0; v + 1 < padded.vertex_count(); ++v) padded.add_edge(v, inf);
  red.padded = padded;
  red.infinity = inf;

  // Atom inventory. Kinds: identity; GG (edge atoms s_uv and the gap g);
  // CC (three colours); GC (y, n); CG (their converses).
  enum Kind { KId, KEdge, KGap, KColour, KYes, KNo, KYesC, KNoC };
  struct AtomInfo {
    Kind kind;
    int u = -1, v = -1;
  };
  std::vector<AtomInfo> info;
  AtomStructure::Definition def;
  def.name = "threecol";
  auto add_atom = [&](const std::string& name, AtomInfo i) {
    def.atoms.push_back(name);
    info.push_back(i);
    return static_cast<int>(def.atoms.size()) - 1;
  };

  red.ident = add_atom("1'", {KId});
  def.identity = {"1'"};
  std::vector<std::pair<int, int>> directed;
  for (auto [u, v] : padded.edges()) {
    directed.push_back({u, v});
    directed.push_back({v, u});
  }
  std::sort(directed.begin(), directed.end());
  for (auto [u, v] : directed) {
    int a = add_atom("s_" + padded.vertex_name(u) + "_" + padded.vertex_name(v),
                     {KEdge, u, v});
    red.edge_atom[{u, v}] = a;
  }
  for (auto [u, v] : padded.edges())
    def.converse.push_back({"s_" + padded.vertex_name(u) + "_" + padded.vertex_name(v),
                            "s_" + padded.vertex_name(v) + "_" + padded.vertex_name(u)});
  red.gap = add_atom("g", {KGap});
  for (const char* c : {"a", "b", "c"})
    red.colour_atoms.push_back(add_atom(c, {KColour}));
  red.yes = add_atom("y", {KYes});
  red.no = add_atom("n", {KNo});
  red.yes_c = add_atom("y^", {KYesC});
  red.no_c = add_atom("n^", {KNoC});
  def.converse.push_back({"y", "y^"});
  def.converse.push_back({"n", "n^"});

  // Type of each non-identity atom as a (source, target) pair over {G, C}.
  enum Side { G, C };
  auto type_of = [&](int a) -> std::pair<Side, Side> {
    switch (info[a].kind) {
      case KEdge:
      case KGap: return {G, G};
      case KColour: return {C, C};
      case KYes:
      case KNo: return {G, C};
      case KYesC:
      case KNoC: return {C, G};
      default: throw std::logic_error("identity has no side type");
    }
  };

  const int n = static_cast<int>(def.atoms.size());
  std::vector<Triple> forbidden;
  // I: identity composes only equal atoms.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) forbidden.push_back({red.ident, x, y});
  auto adjacent_padded = [&](int u, int v) { return padded.adjacent(u, v); };
  for (int x = 0; x < n; ++x) {
    if (x == red.ident) continue;
    auto [xi, xj] = type_of(x);
    for (int y = 0; y < n; ++y) {
      if (y == red.ident) continue;
      auto [yi, yj] = type_of(y);
      for (int z = 0; z < n; ++z) {
        if (z == red.ident) continue;
        auto [zi, zj] = type_of(z);
        // II: side types must compose.
        if (!(xi == zi && xj == yi && yj == zj)) {
          forbidden.push_back({x, y, z});
          continue;
        }
        // III: two equal colour atoms never compose to a colour atom.
        if (info[x].kind == KColour && x == y && info[z].kind == KColour)
          forbidden.push_back({x, y, z});
        // IV: graph-edge atoms compose only when the middle vertex matches.
        if (info[x].kind == KEdge && info[y].kind == KEdge && info[x].v != info[y].u)
          forbidden.push_back({x, y, z});
        // V: the gap only sits on non-edges.
        if (info[x].kind == KEdge && info[y].kind == KEdge && info[x].v == info[y].u &&
            info[z].kind == KGap &&
            (info[x].u == info[y].v || adjacent_padded(info[x].u, info[y].v)))
          forbidden.push_back({x, y, z});
        // VI: the infinity vertex is adjacent to everything.
        if (info[x].kind == KEdge && info[x].u == inf && (yi == G && yj == G) &&
            info[z].kind == KGap)
          forbidden.push_back({x, y, z});
        // VII: one colour per node.
        if (info[x].kind == KYes && info[y].kind == KColour && info[z].kind == KYes)
          forbidden.push_back({x, y, z});
        // VIII: adjacent nodes get different colours.
        if (info[x].kind == KEdge && info[y].kind == KYes && info[z].kind == KYes)
          forbidden.push_back({x, y, z});
      }
    }
  }

  red.structure = AtomStructure::from_forbidden(def, forbidden);
  return red;
}

/// The witness network of the reduction's positive direction: the padded
/// graph with its edge atoms, a four-point colour tetrahedron, and y / n
/// edges encoding a proper 4-colouring of the padded graph plus infinity.
/// `colouring` assigns {0,1,2} to the original vertices.
inline AtomicNetwork colouring_to_witness(const ThreeColReduction& red,
                                          const std::vector<int>& colouring) {
  if (red.trivially_colourable)
    throw std::invalid_argument("trivial instance has no witness network");
  const SimpleGraph& p = red.padded;
  const AtomStructurePtr& s = red.structure;
  const int nv = p.vertex_count();
  if (colouring.size() != static_cast<std::size_t>(red.original.vertex_count()))
    throw std::invalid_argument("colouring size mismatch");
  for (auto [u, v] : red.original.edges())
    if (colouring[u] == colouring[v] || colouring[u] < 0 || colouring[u] > 2 ||
        colouring[v] < 0 || colouring[v] > 2)
      throw std::invalid_argument("not a proper 3-colouring");

  // Extend to the padded graph: isolated pad vertices take colour 0, the
  // infinity vertex takes the fourth colour.
  std::vector<int> full(nv, 0);
  for (int v = 0; v < red.original.vertex_count(); ++v) full[v] = colouring[v];
  full[red.infinity] = 3;

  std::vector<std::string> nodes;
  for (int v = 0; v < nv; ++v) nodes.push_back(p.vertex_name(v));
  for (int c = 0; c < 4; ++c) nodes.push_back("_col" + std::to_string(c));
  const int total = nv + 4;
  std::vector<int> atoms(total * total, red.ident);

  auto set_pair = [&](int x, int y, int atom) {
    atoms[x * total + y] = atom;
    atoms[y * total + x] = s->converse(atom);
  };
  for (int u = 0; u < nv; ++u)
    for (int v = u + 1; v < nv; ++v) {
      if (p.adjacent(u, v))
        set_pair(u, v, red.edge_atom.at({u, v}));
      else
        set_pair(u, v, red.gap);
    }
  // Colour tetrahedron: the one-factorisation pairing {0,1}/{2,3} -> a,
  // {0,2}/{1,3} -> b, {0,3}/{1,2} -> c.
  auto cnode = [&](int c) { return nv + c; };
  set_pair(cnode(0), cnode(1), red.colour_atoms[0]);
  set_pair(cnode(2), cnode(3), red.colour_atoms[0]);
  set_pair(cnode(0), cnode(2), red.colour_atoms[1]);
  set_pair(cnode(1), cnode(3), red.colour_atoms[1]);
  set_pair(cnode(0), cnode(3), red.colour_atoms[2]);
  set_pair(cnode(1), cnode(2), red.colour_atoms[2]);
  for (int u = 0; u < nv; ++u)
    for (int c = 0; c < 4; ++c) set_pair(u, cnode(c), full[u] == c ? red.yes : red.no);

  return AtomicNetwork(s, nodes, std::move(atoms));
}

/// Reads a proper 3-colouring of the original graph back off any verified
/// qualitative representation of the reduction structure: each graph point
/// has exactly one outgoing y edge, and the infinity point tells the graph
/// points apart.
inline std::vector<int> extract_colouring(const ThreeColReduction& red,
                                          const Representation& rep) {
  const AtomStructurePtr& s = red.structure;
  if (!(rep.structure() == *s))
    throw std::invalid_argument("representation is not over the reduction structure");
  const int b = rep.base_size();

  // Locate a source of an s_inf_u edge: that point plays infinity.
  int inf_point = -1;
  for (int x = 0; x < b && inf_point < 0; ++x)
    for (int y = 0; y < b && inf_point < 0; ++y) {
      auto it = std::find_if(red.edge_atom.begin(), red.edge_atom.end(),
                             [&](const auto& kv) {
                               return kv.second == rep.atom_at(x, y) &&
                                      kv.first.first == red.infinity;
                             });
      if (it != red.edge_atom.end()) inf_point = x;
    }
  if (inf_point < 0) throw std::invalid_argument("no infinity point in representation");

  // Map each padded vertex u to the point across the s_inf_u edge.
  const int nv = red.padded.vertex_count();
  std::vector<int> point_of(nv, -1);
  point_of[red.infinity] = inf_point;
  for (int y = 0; y < b; ++y) {
    int a = rep.atom_at(inf_point, y);
    for (const auto& [uv, atom] : red.edge_atom)
      if (atom == a && uv.first == red.infinity) point_of[uv.second] = y;
  }
  for (int v = 0; v < nv; ++v)
    if (point_of[v] < 0)
      throw std::invalid_argument("vertex not located in representation");

  // Colour of u = the unique point reached by a y edge.
  std::vector<int> colour_point(nv, -1);
  for (int v = 0; v < nv; ++v) {
    for (int y = 0; y < b; ++y)
      if (rep.atom_at(point_of[v], y) == red.yes) {
        if (colour_point[v] >= 0)
          throw std::invalid_argument("two y edges leave one graph point");
        colour_point[v] = y;
      }
    if (colour_point[v] < 0) throw std::invalid_argument("graph point has no y edge");
  }

  // Re-index colours; infinity's colour is excluded from the graph vertices,
  // so at most three remain for the original graph.
  std::map<int, int> palette;
  std::vector<int> out(red.original.vertex_count());
  for (int v = 0; v < red.original.vertex_count(); ++v) {
    if (colour_point[v] == colour_point[red.infinity])
      throw std::invalid_argument("graph point shares infinity's colour");
    auto [it, fresh] = palette.emplace(colour_point[v], static_cast<int>(palette.size()));
    out[v] = it->second;
    if (out[v] > 2) throw std::invalid_argument("more than three colours in use");
  }
  for (auto [u, v] : red.original.edges())
    if (out[u] == out[v]) throw std::invalid_argument("extracted colouring not proper");
  return out;
}

// ---------------------------------------------------------------------------
// Monochromatic triangle -> feeble representability
// ---------------------------------------------------------------------------

struct MonoTriangleReduction {
  bool known_no = false;  // complete graph on >= 6 vertices
  AtomStructurePtr structure;
  SimpleGraph graph;

  int ident = -1, cross = -1, gap = -1;
  std::map<std::pair<int, int>, int> red_atom, blue_atom;  // directed edge -> c_uv
  std::vector<int> p_atom, q_atom;                         // per vertex
};

/// Builds the atom structure whose feeble representability is equivalent to
/// the monochromatic-triangle instance. Complete graphs on six or more
/// vertices are no-instances outright; complete graphs below that violate the
/// non-edge precondition and are rejected.
inline MonoTriangleReduction reduce_monochromatic_triangle(const SimpleGraph& g) {
  MonoTriangleReduction red;
  red.graph = g;
  if (!g.has_non_edge()) {
    if (g.vertex_count() >= 6) {
      red.known_no = true;
      return red;
    }
    throw std::invalid_argument("instance must contain at least one non-edge");
  }

  enum Kind { KId, KCross, KEdge, KGap, KP, KQ, KPc, KQc };
  struct AtomInfo {
    Kind kind;
    int colour = -1;  // for KEdge: 0 red, 1 blue
    int u = -1, v = -1;
  };
  std::vector<AtomInfo> info;
  AtomStructure::Definition def;
  def.name = "monotriangle";
  auto add_atom = [&](const std::string& name, AtomInfo i) {
    def.atoms.push_back(name);
    info.push_back(i);
    return static_cast<int>(def.atoms.size()) - 1;
  };

  red.ident = add_atom("1'", {KId});
  def.identity = {"1'"};
  red.cross = add_atom("x", {KCross});
  std::vector<std::pair<int, int>> directed;
  for (auto [u, v] : g.edges()) {
    directed.push_back({u, v});
    directed.push_back({v, u});
  }
  std::sort(directed.begin(), directed.end());
  for (auto [u, v] : directed) {
    std::string suffix = "_" + g.vertex_name(u) + "_" + g.vertex_name(v);
    red.red_atom[{u, v}] = add_atom("r" + suffix, {KEdge, 0, u, v});
    red.blue_atom[{u, v}] = add_atom("b" + suffix, {KEdge, 1, u, v});
  }
  for (auto [u, v] : g.edges()) {
    std::string fwd = "_" + g.vertex_name(u) + "_" + g.vertex_name(v);
    std::string bwd = "_" + g.vertex_name(v) + "_" + g.vertex_name(u);
    def.converse.push_back({"r" + fwd, "r" + bwd});
    def.converse.push_back({"b" + fwd, "b" + bwd});
  }
  red.gap = add_atom("g", {KGap});
  red.p_atom.resize(g.vertex_count());
  red.q_atom.resize(g.vertex_count());
  std::vector<int> pc(g.vertex_count()), qc(g.vertex_count());
  for (int u = 0; u < g.vertex_count(); ++u) {
    red.p_atom[u] = add_atom("p_" + g.vertex_name(u), {KP, -1, u});
    red.q_atom[u] = add_atom("q_" + g.vertex_name(u), {KQ, -1, u});
    pc[u] = add_atom("p_" + g.vertex_name(u) + "^", {KPc, -1, u});
    qc[u] = add_atom("q_" + g.vertex_name(u) + "^", {KQc, -1, u});
    def.converse.push_back({"p_" + g.vertex_name(u), "p_" + g.vertex_name(u) + "^"});
    def.converse.push_back({"q_" + g.vertex_name(u), "q_" + g.vertex_name(u) + "^"});
  }

  // Side types over {Inf, G}; the cross atom and 1' are untyped.
  enum Side { SInf, SG };
  auto typed = [&](int a) { return info[a].kind != KId && info[a].kind != KCross; };
  auto type_of = [&](int a) -> std::pair<Side, Side> {
    switch (info[a].kind) {
      case KEdge:
      case KGap: return {SG, SG};
      case KP:
      case KQ: return {SInf, SG};
      case KPc:
      case KQc: return {SG, SInf};
      default: throw std::logic_error("untyped atom");
    }
  };

  const int n = static_cast<int>(def.atoms.size());
  std::vector<Triple> forbidden;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) forbidden.push_back({red.ident, x, y});  // I
  for (int x = 0; x < n; ++x) {
    if (x == red.ident) continue;
    for (int y = 0; y < n; ++y) {
      if (y == red.ident) continue;
      for (int z = 0; z < n; ++z) {
        if (z == red.ident) continue;
        // II: the cross atom gives a bipartite split.
        if (x == red.cross && y == red.cross && z == red.cross)
          forbidden.push_back({x, y, z});
        else if (x == red.cross && y != red.cross && z != red.cross)
          forbidden.push_back({x, y, z});
        // III: typed atoms compose only through a matching middle side.
        else if (typed(x) && typed(y) && type_of(x).second != type_of(y).first)
          forbidden.push_back({x, y, z});
        // IV: p/q follow the graph edges index-consistently.
        else if (info[x].kind == KP && info[y].kind == KEdge && info[z].kind == KP &&
                 !(info[x].u == info[y].u && info[z].u == info[y].v))
          forbidden.push_back({x, y, z});
        else if (info[x].kind == KQ && info[y].kind == KEdge && info[z].kind == KQ &&
                 !(info[x].u == info[y].u && info[z].u == info[y].v))
          forbidden.push_back({x, y, z});
        // V: the gap only spans non-adjacent distinct vertices.
        else if (info[x].kind == KP && info[y].kind == KGap && info[z].kind == KP &&
                 (info[x].u == info[z].u || g.adjacent(info[x].u, info[z].u)))
          forbidden.push_back({x, y, z});
        else if (info[x].kind == KQ && info[y].kind == KGap && info[z].kind == KQ &&
                 (info[x].u == info[z].u || g.adjacent(info[x].u, info[z].u)))
          forbidden.push_back({x, y, z});
        // VI: p and q never meet.
        else if (info[x].kind == KP && info[z].kind == KQ)
          forbidden.push_back({x, y, z});
        // VII: no monochromatic triangle.
        else if (info[x].kind == KEdge && info[y].kind == KEdge &&
                 info[z].kind == KEdge && info[x].colour == info[y].colour &&
                 info[y].colour == info[z].colour && info[x].v == info[y].u &&
                 info[x].u == info[z].u && info[y].v == info[z].v)
          forbidden.push_back({x, y, z});
      }
    }
  }

  red.structure = AtomStructure::from_forbidden(def, forbidden);
  return red;
}

/// Witness network for a monochromatic-triangle-free 2-colouring: two copies
/// of the graph plus one auxiliary point each, the second copy carrying the
/// dual colouring, all cross edges labelled x.
inline AtomicNetwork mono_triangle_witness(const MonoTriangleReduction& red,
                                           const std::map<std::pair<int, int>, int>& colouring) {
  if (red.known_no) throw std::invalid_argument("no-instance has no witness");
  const SimpleGraph& g = red.graph;
  const AtomStructurePtr& s = red.structure;
  const int nv = g.vertex_count();
  for (auto [u, v] : g.edges())
    if (!colouring.count({u, v})) throw std::invalid_argument("edge without a colour");

  const int total = 2 * (nv + 1);
  // Layout: 0..nv-1 first copy, nv = infinity; nv+1 .. 2nv second copy,
  // 2nv+1 = infinity'.
  auto first = [&](int v) { return v; };
  auto second = [&](int v) { return nv + 1 + v; };
  const int inf1 = nv, inf2 = 2 * nv + 1;

  std::vector<std::string> nodes(total);
  for (int v = 0; v < nv; ++v) {
    nodes[first(v)] = g.vertex_name(v);
    nodes[second(v)] = g.vertex_name(v) + "'";
  }
  nodes[inf1] = "_inf";
  nodes[inf2] = "_inf'";

  std::vector<int> atoms(total * total, red.ident);
  auto set_pair = [&](int x, int y, int atom) {
    atoms[x * total + y] = atom;
    atoms[y * total + x] = s->converse(atom);
  };
  for (int x = 0; x <= nv; ++x)
    for (int y = nv + 1; y < total; ++y) set_pair(x, y, red.cross);
  for (int v = 0; v < nv; ++v) {
    set_pair(inf1, first(v), red.p_atom[v]);
    set_pair(inf2, second(v), red.q_atom[v]);
  }
  for (int u = 0; u < nv; ++u)
    for (int v = u + 1; v < nv; ++v) {
      if (g.adjacent(u, v)) {
        int c = colouring.at({u, v});
        set_pair(first(u), first(v),
                 c == 0 ? red.red_atom.at({u, v}) : red.blue_atom.at({u, v}));
        set_pair(second(u), second(v),
                 c == 0 ? red.blue_atom.at({u, v}) : red.red_atom.at({u, v}));
      } else {
        set_pair(first(u), first(v), red.gap);
        set_pair(second(u), second(v), red.gap);
      }
    }
  return AtomicNetwork(s, nodes, std::move(atoms));
}

/// Recovers a monochromatic-triangle-free 2-colouring from any verified
/// feeble representation of the reduction structure.
inline std::map<std::pair<int, int>, int> extract_mono_triangle_colouring(
    const MonoTriangleReduction& red, const Representation& rep) {
  const AtomStructurePtr& s = red.structure;
  if (!(rep.structure() == *s))
    throw std::invalid_argument("representation is not over the reduction structure");
  const SimpleGraph& g = red.graph;
  const int b = rep.base_size();

  // Find the source point of some p_u edge.
  int inf_point = -1;
  for (int x = 0; x < b && inf_point < 0; ++x)
    for (int y = 0; y < b && inf_point < 0; ++y) {
      int a = rep.atom_at(x, y);
      for (int u = 0; u < g.vertex_count(); ++u)
        if (a == red.p_atom[u]) inf_point = x;
    }
  if (inf_point < 0) throw std::invalid_argument("no p edges in representation");

  std::vector<int> point_of(g.vertex_count(), -1);
  for (int y = 0; y < b; ++y) {
    int a = rep.atom_at(inf_point, y);
    for (int u = 0; u < g.vertex_count(); ++u)
      if (a == red.p_atom[u]) point_of[u] = y;
  }
  for (int u = 0; u < g.vertex_count(); ++u)
    if (point_of[u] < 0) throw std::invalid_argument("vertex not located");

  std::map<std::pair<int, int>, int> out;
  for (auto [u, v] : g.edges()) {
    int a = rep.atom_at(point_of[u], point_of[v]);
    if (a == red.red_atom.at({u, v}))
      out[{u, v}] = 0;
    else if (a == red.blue_atom.at({u, v}))
      out[{u, v}] = 1;
    else
      throw std::invalid_argument("edge pair not labelled by its colour atom");
  }
  // No monochromatic triangle; the forbidden triples force it, re-checked.
  for (auto [u, v] : g.edges())
    for (int w = 0; w < g.vertex_count(); ++w) {
      if (w == u || w == v || !g.adjacent(u, w) || !g.adjacent(v, w)) continue;
      int c = out.at({u, v});
      auto norm = [&](int a, int bzz) {
        return a < bzz ? std::make_pair(a, bzz) : std::make_pair(bzz, a);
      };
      if (c == out.at(norm(u, w)) && c == out.at(norm(v, w)))
        throw std::invalid_argument("extracted colouring has a monochromatic triangle");
    }
  return out;
}

// ---------------------------------------------------------------------------
// Monk algebras
// ---------------------------------------------------------------------------

/// Monk algebra generator: atoms 1', a0_0..a0_{K(K-1)/2-1}, a_1..a_{n-1} with
/// K = k(n), all self-converse; forbidden are identity-mismatch triples,
/// every triple of subscript-0 atoms, and the diagonal triples (a_i,a_i,a_i).
/// k(2) = 6 and k(3) = 17 are built in; other n need an explicit override.
inline AtomStructurePtr monk_algebra(int n, std::optional<int> k_override = std::nullopt) {
  int k;
  if (k_override)
    k = *k_override;
  else if (n == 2)
    k = 6;
  else if (n == 3)
    k = 17;
  else
    throw std::invalid_argument("monk_algebra supports n in {2,3} unless k is given");
  if (n < 2 || k < 2) throw std::invalid_argument("monk_algebra needs n >= 2, k >= 2");

  AtomStructure::Definition def;
  def.name = "monk" + std::to_string(n);
  def.atoms.push_back("1'");
  def.identity = {"1'"};
  const int zeros = k * (k - 1) / 2;
  for (int i = 0; i < zeros; ++i) def.atoms.push_back("a0_" + std::to_string(i));
  for (int i = 1; i < n; ++i) def.atoms.push_back("a" + std::to_string(i));

  const int total = 1 + zeros + (n - 1);
  std::vector<Triple> forbidden;
  for (int x = 0; x < total; ++x)
    for (int y = 0; y < total; ++y)
      if (x != y) forbidden.push_back({0, x, y});
  auto subscript = [&](int a) {
    if (a == 0) return -1;           // identity
    if (a <= zeros) return 0;        // a0_k
    return a - zeros;                // a_i
  };
  for (int x = 1; x < total; ++x)
    for (int y = 1; y < total; ++y)
      for (int z = 1; z < total; ++z) {
        int sx = subscript(x);
        if (sx != subscript(y) || sx != subscript(z)) continue;
        if (sx == 0)
          forbidden.push_back({x, y, z});
        else if (x == y && y == z)
          forbidden.push_back({x, y, z});
      }
  return AtomStructure::from_forbidden(def, forbidden);
}

/// Certificate that monk_algebra(2) has no feeble representation: witnessing
/// all fifteen a0 atoms needs fifteen distinct unordered pairs, hence at
/// least six points, and the exhaustive K6 check rules every 2-labelling out.
struct MonkObstruction {
  int zero_atoms;         // 15
  int min_points_needed;  // smallest m with C(m,2) >= zero_atoms
  bool k6_check;          // every 2-colouring of K6 has a mono triangle
  bool no_feeble;         // conjunction of the two facts
};

inline MonkObstruction monk2_no_feeble_certificate() {
  MonkObstruction out{};
  out.zero_atoms = 15;
  int m = 1;
  while (m * (m - 1) / 2 < out.zero_atoms) ++m;
  out.min_points_needed = m;
  out.k6_check = every_two_colouring_of_k6_has_mono_triangle();
  out.no_feeble = out.k6_check && out.min_points_needed >= 6;
  return out;
}

}  // namespace qalg
