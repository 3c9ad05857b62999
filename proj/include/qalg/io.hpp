#pragma once

// Line-oriented text formats, all starting with the versioned header
// "qalg-format 1" followed by a kind line (algebra, network, representation,
// graph). Tokens are whitespace-separated; '#' starts a comment. Algebra
// references in network and representation files are either catalog:<key>,
// file:<path> (relative to the referencing file), or an inline block.

#include <array>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qalg/catalog.hpp"
#include "qalg/reductions.hpp"

namespace qalg {

struct ParseError : std::runtime_error {
  ParseError(const std::string& origin, int line, const std::string& msg)
      : std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg),
        line_number(line) {}
  int line_number;
};

namespace io_detail {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (!tokens.empty()) out.push_back({number, std::move(tokens)});
  }
  return out;
}

class Reader {
public:
  Reader(std::istream& in, std::string origin)
      : lines_(tokenize(in)), origin_(std::move(origin)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ParseError(origin_, line, msg);
  }

  const std::string& origin() const { return origin_; }
  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) throw ParseError(origin_, last_line(), "unexpected end of file");
    return lines_[pos_];
  }
  Line take() {
    Line l = peek();
    ++pos_;
    return l;
  }
  int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

  void expect_header(const std::string& kind) {
    Line h = take();
    if (h.tokens.size() != 2 || h.tokens[0] != "qalg-format" || h.tokens[1] != "1")
      fail(h.number, "expected header 'qalg-format 1'");
    Line k = take();
    if (k.tokens.size() != 1 || k.tokens[0] != kind)
      fail(k.number, "expected kind line '" + kind + "', got '" + k.tokens[0] + "'");
  }

private:
  std::vector<Line> lines_;
  std::string origin_;
  std::size_t pos_ = 0;
};

}  // namespace io_detail

/// Parses the body of an algebra section (after header and kind lines) up to
/// end-of-input or an `end` line. Exactly one of table / triple / forbid
/// lines must be present; a table must be total.
inline AtomStructurePtr parse_algebra_body(io_detail::Reader& r, bool stop_at_end,
                                           bool peircean_close) {
  AtomStructure::Definition def;
  std::vector<std::array<std::string, 3>> triples, forbidden;
  std::vector<std::pair<std::pair<std::string, std::string>, std::vector<std::string>>> cells;
  bool saw_atoms = false;
  int body_line = 0;

  while (!r.done()) {
    io_detail::Line l = r.take();
    body_line = l.number;
    const std::string& key = l.tokens[0];
    auto rest = std::vector<std::string>(l.tokens.begin() + 1, l.tokens.end());
    if (key == "end" && stop_at_end) break;
    if (key == "name") {
      if (rest.size() != 1) r.fail(l.number, "name takes one token");
      def.name = rest[0];
    } else if (key == "atoms") {
      if (rest.empty()) r.fail(l.number, "atoms line needs at least one atom");
      def.atoms = rest;
      saw_atoms = true;
    } else if (key == "identity") {
      def.identity = rest;
    } else if (key == "converse") {
      if (rest.size() != 2) r.fail(l.number, "converse takes two atom names");
      def.converse.push_back({rest[0], rest[1]});
    } else if (key == "table") {
      if (rest.size() < 2) r.fail(l.number, "table line needs row and column atoms");
      cells.push_back({{rest[0], rest[1]}, {rest.begin() + 2, rest.end()}});
    } else if (key == "triple") {
      if (rest.size() != 3) r.fail(l.number, "triple takes three atom names");
      triples.push_back({rest[0], rest[1], rest[2]});
    } else if (key == "forbid") {
      if (rest.size() != 3) r.fail(l.number, "forbid takes three atom names");
      forbidden.push_back({rest[0], rest[1], rest[2]});
    } else {
      r.fail(l.number, "unknown algebra directive '" + key + "'");
    }
  }
  if (!saw_atoms) r.fail(body_line, "algebra has no atoms line");
  int forms = (!cells.empty()) + (!triples.empty()) + (!forbidden.empty());
  if (forms != 1)
    r.fail(body_line,
           "algebra needs exactly one of: table lines, triple lines, forbid lines");

  // Resolve names with positional diagnostics.
  auto check_names = [&](const std::vector<std::string>& names) {
    for (const auto& n : names)
      if (std::find(def.atoms.begin(), def.atoms.end(), n) == def.atoms.end())
        r.fail(body_line, "unknown atom name '" + n + "'");
  };
  check_names(def.identity);
  for (auto& [a, b] : def.converse) check_names({a, b});

  try {
    if (!cells.empty()) {
      for (auto& [rc, atoms] : cells) {
        check_names({rc.first, rc.second});
        check_names(atoms);
      }
      // A table must cover every cell exactly once.
      std::set<std::pair<std::string, std::string>> seen;
      for (auto& [rc, _] : cells)
        if (!seen.insert(rc).second)
          r.fail(body_line, "duplicate table cell " + rc.first + "," + rc.second);
      if (seen.size() != def.atoms.size() * def.atoms.size())
        r.fail(body_line, "table is not total (" + std::to_string(seen.size()) + " of " +
                              std::to_string(def.atoms.size() * def.atoms.size()) +
                              " cells)");
      return AtomStructure::from_table(def, cells, peircean_close);
    }
    auto to_triples = [&](const std::vector<std::array<std::string, 3>>& in) {
      std::vector<Triple> out;
      AtomStructure::Definition probe = def;
      // Indices are resolved by the structure constructor; check names here.
      for (const auto& t : in) check_names({t[0], t[1], t[2]});
      auto index = [&](const std::string& n) {
        return static_cast<int>(std::find(def.atoms.begin(), def.atoms.end(), n) -
                                def.atoms.begin());
      };
      for (const auto& t : in) out.push_back({index(t[0]), index(t[1]), index(t[2])});
      return out;
    };
    if (!triples.empty())
      return AtomStructure::from_triples(def, to_triples(triples), peircean_close);
    return AtomStructure::from_forbidden(def, to_triples(forbidden));
  } catch (const std::invalid_argument& e) {
    r.fail(body_line, e.what());
  }
}

inline AtomStructurePtr parse_algebra(std::istream& in, const std::string& origin,
                                      bool peircean_close = false) {
  io_detail::Reader r(in, origin);
  r.expect_header("algebra");
  return parse_algebra_body(r, false, peircean_close);
}

inline AtomStructurePtr read_algebra_file(const std::filesystem::path& path,
                                          bool peircean_close = false) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_algebra(in, path.string(), peircean_close);
}

/// Resolves an algebra reference inside a network or representation file.
inline AtomStructurePtr resolve_algebra_ref(io_detail::Reader& r,
                                            const io_detail::Line& line) {
  if (line.tokens.size() < 2) r.fail(line.number, "algebra reference missing");
  const std::string& ref = line.tokens[1];
  if (ref == "inline") return parse_algebra_body(r, true, false);
  if (ref.rfind("catalog:", 0) == 0) {
    try {
      return catalog_get(ref.substr(8)).structure;
    } catch (const std::invalid_argument& e) {
      r.fail(line.number, e.what());
    }
  }
  std::string path = ref.rfind("file:", 0) == 0 ? ref.substr(5) : ref;
  std::filesystem::path p(path);
  if (p.is_relative()) {
    std::filesystem::path origin(r.origin());
    if (origin.has_parent_path()) p = origin.parent_path() / p;
  }
  try {
    return read_algebra_file(p);
  } catch (const std::exception& e) {
    r.fail(line.number, e.what());
  }
}

inline Network parse_network(std::istream& in, const std::string& origin,
                             std::string* algebra_ref = nullptr) {
  io_detail::Reader r(in, origin);
  r.expect_header("network");
  AtomStructurePtr s;
  std::vector<std::string> nodes;
  struct Edge {
    int line;
    std::string from, to;
    std::vector<std::string> atoms;
  };
  std::vector<Edge> edges;
  while (!r.done()) {
    io_detail::Line l = r.take();
    const std::string& key = l.tokens[0];
    if (key == "algebra") {
      if (algebra_ref && l.tokens.size() >= 2) *algebra_ref = l.tokens[1];
      s = resolve_algebra_ref(r, l);
    } else if (key == "nodes") {
      if (l.tokens.size() < 2) r.fail(l.number, "nodes line needs at least one node");
      nodes.assign(l.tokens.begin() + 1, l.tokens.end());
    } else if (key == "edge") {
      if (l.tokens.size() < 3) r.fail(l.number, "edge line needs from and to nodes");
      edges.push_back({l.number,
                       l.tokens[1],
                       l.tokens[2],
                       {l.tokens.begin() + 3, l.tokens.end()}});
    } else {
      r.fail(l.number, "unknown network directive '" + key + "'");
    }
  }
  if (!s) r.fail(r.last_line(), "network has no algebra reference");
  if (nodes.empty()) r.fail(r.last_line(), "network has no nodes line");
  NetworkBuilder builder(s, nodes);
  for (const auto& e : edges) {
    auto from = builder.node_index(e.from);
    auto to = builder.node_index(e.to);
    if (!from) r.fail(e.line, "unknown node '" + e.from + "'");
    if (!to) r.fail(e.line, "unknown node '" + e.to + "'");
    AtomSet set;
    for (const auto& name : e.atoms) {
      auto a = s->atom_index(name);
      if (!a) r.fail(e.line, "unknown atom name '" + name + "'");
      set.set(*a);
    }
    builder.set(*from, *to, set);
  }
  return builder.build();
}

inline Network read_network_file(const std::filesystem::path& path,
                                 std::string* algebra_ref = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_network(in, path.string(), algebra_ref);
}

struct ParsedRepresentation {
  Representation rep;
  std::vector<std::string> warnings;
};

/// Reads a representation file. A matrix that is a consistent atomic network
/// but carries identity atoms off the diagonal is quotiented, with a warning.
inline ParsedRepresentation parse_representation(std::istream& in,
                                                 const std::string& origin) {
  io_detail::Reader r(in, origin);
  r.expect_header("representation");
  AtomStructurePtr s;
  std::vector<std::string> base;
  std::vector<std::pair<int, io_detail::Line>> rows;
  while (!r.done()) {
    io_detail::Line l = r.take();
    const std::string& key = l.tokens[0];
    if (key == "algebra") {
      s = resolve_algebra_ref(r, l);
    } else if (key == "base") {
      if (l.tokens.size() < 2) r.fail(l.number, "base line needs at least one point");
      base.assign(l.tokens.begin() + 1, l.tokens.end());
    } else if (key == "row") {
      rows.push_back({l.number, l});
    } else {
      r.fail(l.number, "unknown representation directive '" + key + "'");
    }
  }
  if (!s) r.fail(r.last_line(), "representation has no algebra reference");
  if (base.empty()) r.fail(r.last_line(), "representation has no base line");
  const int b = static_cast<int>(base.size());
  std::vector<int> atoms(static_cast<std::size_t>(b) * b, -1);
  for (auto& [line, l] : rows) {
    if (static_cast<int>(l.tokens.size()) != 2 + b)
      r.fail(line, "row line needs the point name and " + std::to_string(b) + " atoms");
    auto x = std::find(base.begin(), base.end(), l.tokens[1]);
    if (x == base.end()) r.fail(line, "unknown base point '" + l.tokens[1] + "'");
    int xi = static_cast<int>(x - base.begin());
    for (int y = 0; y < b; ++y) {
      auto a = s->atom_index(l.tokens[2 + y]);
      if (!a) r.fail(line, "unknown atom name '" + l.tokens[2 + y] + "'");
      atoms[xi * b + y] = *a;
    }
  }
  for (int i = 0; i < b * b; ++i)
    if (atoms[i] < 0) r.fail(r.last_line(), "representation matrix is not total");

  // Canonical matrices construct directly; otherwise quotient a consistent
  // atomic network and warn.
  bool canonical = true;
  for (int x = 0; x < b && canonical; ++x)
    for (int y = 0; y < b && canonical; ++y)
      if ((x == y) != s->is_identity_atom(atoms[x * b + y])) canonical = false;
  try {
    if (canonical) return {Representation(s, base, std::move(atoms)), {}};
    AtomicNetwork raw(s, base, std::move(atoms));
    Representation rep = quotient(raw);
    return {std::move(rep),
            {"matrix had identity atoms off the diagonal; quotiented " +
             std::to_string(b) + " points down to " + std::to_string(rep.base_size())}};
  } catch (const std::invalid_argument& e) {
    r.fail(r.last_line(), e.what());
  } catch (const std::logic_error& e) {
    r.fail(r.last_line(), e.what());
  }
}

inline ParsedRepresentation read_representation_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_representation(in, path.string());
}

inline SimpleGraph parse_graph(std::istream& in, const std::string& origin) {
  io_detail::Reader r(in, origin);
  r.expect_header("graph");
  SimpleGraph g;
  bool saw_vertices = false;
  while (!r.done()) {
    io_detail::Line l = r.take();
    const std::string& key = l.tokens[0];
    if (key == "vertices") {
      if (saw_vertices) r.fail(l.number, "duplicate vertices line");
      g = SimpleGraph({l.tokens.begin() + 1, l.tokens.end()});
      saw_vertices = true;
    } else if (key == "edge") {
      if (!saw_vertices) r.fail(l.number, "edge before vertices line");
      if (l.tokens.size() != 3) r.fail(l.number, "edge takes two vertex names");
      auto u = g.vertex_index(l.tokens[1]);
      auto v = g.vertex_index(l.tokens[2]);
      if (!u) r.fail(l.number, "unknown vertex '" + l.tokens[1] + "'");
      if (!v) r.fail(l.number, "unknown vertex '" + l.tokens[2] + "'");
      if (*u == *v) r.fail(l.number, "loops are not allowed");
      g.add_edge(*u, *v);
    } else {
      r.fail(l.number, "unknown graph directive '" + key + "'");
    }
  }
  if (!saw_vertices) r.fail(r.last_line(), "graph has no vertices line");
  return g;
}

inline SimpleGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_graph(in, path.string());
}

// ---------------------------------------------------------------------------
// Writers. Exported files re-parse to equal values.
// ---------------------------------------------------------------------------

inline void write_algebra_body(std::ostream& out, const AtomStructure& s) {
  if (!s.name().empty()) out << "name " << s.name() << "\n";
  out << "atoms";
  for (int a = 0; a < s.atom_count(); ++a) out << " " << s.atom_name(a);
  out << "\nidentity";
  s.identity_set().for_each([&](int a) { out << " " << s.atom_name(a); });
  out << "\n";
  for (int a = 0; a < s.atom_count(); ++a)
    if (s.converse(a) > a)
      out << "converse " << s.atom_name(a) << " " << s.atom_name(s.converse(a)) << "\n";
  for (int a = 0; a < s.atom_count(); ++a)
    for (int b = 0; b < s.atom_count(); ++b) {
      out << "table " << s.atom_name(a) << " " << s.atom_name(b);
      s.comp(a, b).for_each([&](int c) { out << " " << s.atom_name(c); });
      out << "\n";
    }
}

inline void write_algebra(std::ostream& out, const AtomStructure& s) {
  out << "qalg-format 1\nalgebra\n";
  write_algebra_body(out, s);
}

/// Writes a network file; an algebra_ref of "inline" embeds the algebra.
inline void write_network(std::ostream& out, const Network& n,
                          const std::string& algebra_ref) {
  out << "qalg-format 1\nnetwork\n";
  if (algebra_ref == "inline") {
    out << "algebra inline\n";
    write_algebra_body(out, n.structure());
    out << "end\n";
  } else {
    out << "algebra " << algebra_ref << "\n";
  }
  out << "nodes";
  for (const auto& name : n.nodes()) out << " " << name;
  out << "\n";
  for (int x = 0; x < n.node_count(); ++x)
    for (int y = 0; y < n.node_count(); ++y) {
      out << "edge " << n.node_name(x) << " " << n.node_name(y);
      n.label(x, y).for_each([&](int a) { out << " " << n.structure().atom_name(a); });
      out << "\n";
    }
}

inline void write_representation(std::ostream& out, const Representation& r,
                                 const std::string& algebra_ref) {
  out << "qalg-format 1\nrepresentation\n";
  out << "algebra " << algebra_ref << "\n";
  out << "base";
  for (const auto& p : r.base()) out << " " << p;
  out << "\n";
  for (int x = 0; x < r.base_size(); ++x) {
    out << "row " << r.point_name(x);
    for (int y = 0; y < r.base_size(); ++y)
      out << " " << r.structure().atom_name(r.atom_at(x, y));
    out << "\n";
  }
}

inline void write_graph(std::ostream& out, const SimpleGraph& g) {
  out << "qalg-format 1\ngraph\nvertices";
  for (const auto& v : g.vertices()) out << " " << v;
  out << "\n";
  for (auto [u, v] : g.edges())
    out << "edge " << g.vertex_name(u) << " " << g.vertex_name(v) << "\n";
}

}  // namespace qalg
