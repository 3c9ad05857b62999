#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"

using namespace qalg;
using qalg::test::cat;
using qalg::test::figure_network;
using qalg::test::known_rep;

namespace {

AtomStructurePtr reparse(const AtomStructure& s) {
  std::ostringstream out;
  write_algebra(out, s);
  std::istringstream in(out.str());
  return parse_algebra(in, "<memory>");
}

}  // namespace

TEST_CASE("algebra files round trip for every catalog entry") {
  for (const auto& key : catalog_keys()) {
    INFO(key);
    CHECK(*reparse(*cat(key)) == *cat(key));
  }
  // Generated structures round trip too.
  CHECK(*reparse(*monk_algebra(2, 4)) == *monk_algebra(2, 4));
}

TEST_CASE("algebra parser diagnostics carry positions") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_algebra(in, "<memory>");
  };
  CHECK_THROWS_AS(parse("nonsense"), ParseError);
  CHECK_THROWS_WITH(parse("qalg-format 1\nalgebra\natoms a\nidentity a\ntable a b a\n"),
                    Catch::Matchers::ContainsSubstring("unknown atom name 'b'"));
  try {
    parse("qalg-format 1\nalgebra\natoms a\nidentity a\nconverse a c\ntable a a a\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line_number > 0);
    CHECK(std::string(e.what()).find("<memory>") != std::string::npos);
  }
  // Exactly one triple source.
  CHECK_THROWS_AS(parse("qalg-format 1\nalgebra\natoms a\nidentity a\n"
                        "table a a a\ntriple a a a\n"),
                  ParseError);
  // A table must be total.
  CHECK_THROWS_AS(parse("qalg-format 1\nalgebra\natoms a b\nidentity a\n"
                        "table a a a\n"),
                  ParseError);
  // Duplicate cells rejected.
  CHECK_THROWS_AS(parse("qalg-format 1\nalgebra\natoms a\nidentity a\n"
                        "table a a a\ntable a a a\n"),
                  ParseError);
}

TEST_CASE("triple and forbidden forms parse") {
  std::istringstream triples(
      "qalg-format 1\nalgebra\natoms e a\nidentity e\n"
      "triple e e e\ntriple e a a\ntriple a e a\ntriple a a e\n");
  auto s1 = parse_algebra(triples, "<memory>");
  CHECK(validate_atom_structure(*s1).ok());

  std::istringstream forb(
      "qalg-format 1\nalgebra\natoms e a\nidentity e\n"
      "forbid e e a\nforbid e a e\nforbid a a a\n");
  auto s2 = parse_algebra(forb, "<memory>");
  CHECK(validate_atom_structure(*s2).ok());
  CHECK(*s1 == *s2);
}

TEST_CASE("network files: defaults and inline algebras") {
  std::string text =
      "qalg-format 1\nnetwork\n"
      "algebra catalog:point\n"
      "nodes a b c d\n"
      "edge c a <\n"
      "edge a b < >\n"
      "edge c b < =\n"
      "edge c d <\n"
      "edge d b <\n"
      "edge a d < >\n";
  std::istringstream in(text);
  Network n = parse_network(in, "<memory>");
  Network expected = figure_network();
  CHECK(n.labels() == expected.labels());  // loops default 1', reverses converse

  std::string inline_text =
      "qalg-format 1\nnetwork\n"
      "algebra inline\n"
      "name tiny\natoms e a\nidentity e\n"
      "triple e e e\ntriple e a a\ntriple a e a\ntriple a a e\n"
      "end\n"
      "nodes x y\n"
      "edge x y a\n";
  std::istringstream in2(inline_text);
  Network n2 = parse_network(in2, "<memory>");
  CHECK(n2.structure().atom_count() == 2);
  CHECK(n2.label(0, 1) == AtomSet::single(1));
  CHECK(n2.label(1, 1) == AtomSet::single(0));  // defaulted loop

  std::istringstream bad("qalg-format 1\nnetwork\nalgebra catalog:point\n"
                         "nodes x\nedge x q <\n");
  CHECK_THROWS_AS(parse_network(bad, "<memory>"), ParseError);
}

TEST_CASE("network files round trip") {
  auto fig = figure_network();
  std::ostringstream out;
  write_network(out, fig, "catalog:point");
  std::istringstream in(out.str());
  Network back = parse_network(in, "<memory>");
  CHECK(back.labels() == fig.labels());
  CHECK(back.nodes() == fig.nodes());
}

TEST_CASE("representation files round trip and quotient on demand") {
  const auto& rep = known_rep("rcc5", RepKind::Qualitative);
  std::ostringstream out;
  write_representation(out, rep, "catalog:rcc5");
  std::istringstream in(out.str());
  auto parsed = parse_representation(in, "<memory>");
  CHECK(parsed.warnings.empty());
  CHECK(parsed.rep == rep);

  // A raw atomic matrix with identity atoms off the diagonal gets quotiented
  // with a warning.
  std::string raw =
      "qalg-format 1\nrepresentation\n"
      "algebra catalog:ex1\n"
      "base u v w\n"
      "row u e e a\n"
      "row v e e a\n"
      "row w a a e'\n";
  std::istringstream in2(raw);
  auto quotiented = parse_representation(in2, "<memory>");
  REQUIRE(quotiented.warnings.size() == 1);
  CHECK(quotiented.rep.base_size() == 2);

  // Converse-incoherent matrices are rejected.
  std::string bad =
      "qalg-format 1\nrepresentation\n"
      "algebra catalog:point\n"
      "base u v\n"
      "row u = <\n"
      "row v < =\n";
  std::istringstream in3(bad);
  CHECK_THROWS_AS(parse_representation(in3, "<memory>"), ParseError);
}

TEST_CASE("mutated inputs are rejected cleanly") {
  // Parsers must either succeed or throw a parse/argument error; nothing
  // else. Mutate an exported algebra and a network file at random.
  std::ostringstream alg;
  write_algebra(alg, *cat("rcc5"));
  std::ostringstream net;
  write_network(net, figure_network(), "catalog:point");
  std::mt19937_64 rng(4242);
  const std::string printable =
      " \tabcdefghijklmnopqrstuvwxyz0123456789='<>^#\n";
  const std::vector<std::pair<std::string, bool>> seeds = {{alg.str(), true},
                                                           {net.str(), false}};
  for (const auto& [base, is_algebra] : seeds) {
    for (int trial = 0; trial < 400; ++trial) {
      std::string text = base;
      int edits = 1 + static_cast<int>(rng() % 4);
      for (int e = 0; e < edits; ++e) {
        std::size_t pos = rng() % text.size();
        switch (rng() % 3) {
          case 0: text[pos] = printable[rng() % printable.size()]; break;
          case 1: text.erase(pos, 1 + rng() % 3); break;
          default: text.insert(pos, 1, printable[rng() % printable.size()]); break;
        }
        if (text.empty()) text = "x";
      }
      std::istringstream in(text);
      try {
        if (is_algebra)
          parse_algebra(in, "<fuzz>");
        else
          parse_network(in, "<fuzz>");
      } catch (const ParseError&) {
      } catch (const std::invalid_argument&) {
      }
    }
  }
  SUCCEED("no crash on 800 mutated inputs");
}

TEST_CASE("graph files round trip") {
  SimpleGraph g({"u", "v", "w"});
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream in(out.str());
  SimpleGraph back = parse_graph(in, "<memory>");
  CHECK(back.vertices() == g.vertices());
  CHECK(back.edges() == g.edges());

  std::istringstream bad("qalg-format 1\ngraph\nvertices u\nedge u u\n");
  CHECK_THROWS_AS(parse_graph(bad, "<memory>"), ParseError);
}
