// End-to-end checks of the command-line tool: exit codes, verdict lines,
// machine-readable envelopes, format stability.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(QALG_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

fs::path sandbox() {
  auto dir = fs::temp_directory_path() / "qalg-cli-tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  auto path = sandbox() / name;
  std::ofstream f(path);
  f << text;
  return path;
}

const char* kFigureNetwork =
    "qalg-format 1\nnetwork\nalgebra catalog:point\nnodes a b c d\n"
    "edge c a <\nedge a b < >\nedge c b < =\nedge c d <\nedge d b <\nedge a d < >\n";

}  // namespace

TEST_CASE("cli: catalog export and re-checking round trip") {
  auto dir = sandbox() / "export";
  auto r = run("catalog export rcc5 --dir " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(run("alg check " + (dir / "rcc5.alg").string()).exit_code == 0);
  auto verify = run("rep verify --kind qualitative " + (dir / "rcc5.qualitative0.rep").string());
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("VERIFIED") != std::string::npos);

  // Exported representations of every entry re-verify under their kind.
  for (const auto& key : qalg::catalog_keys()) {
    auto d2 = sandbox() / ("export_" + key);
    REQUIRE(run("catalog export " + key + " --dir " + d2.string()).exit_code == 0);
    int i = 0;
    for (const auto& kr : qalg::catalog_get(key).known_representations) {
      auto rep_file =
          d2 / (key + "." + qalg::rep_kind_name(kr.kind) + std::to_string(i++) + ".rep");
      auto rr = run("rep verify --kind " + std::string(qalg::rep_kind_name(kr.kind)) +
                    " " + rep_file.string());
      INFO(rep_file.string());
      CHECK(rr.exit_code == 0);
    }
  }
  CHECK(run("catalog list").exit_code == 0);
}

TEST_CASE("cli: solver verdicts and exit codes") {
  auto obstructed = run("solve qrep catalog:ex4");
  CHECK(obstructed.exit_code == 1);
  CHECK(obstructed.output.find("OBSTRUCTED") != std::string::npos);
  CHECK(obstructed.output.find("(a,a,a)") != std::string::npos);

  auto found = run("solve qrep catalog:point");
  CHECK(found.exit_code == 0);
  CHECK(found.output.find("FOUND") != std::string::npos);

  auto capped = run("solve qrep catalog:mckenzie --max-base 4");
  CHECK(capped.exit_code == 2);
  CHECK(capped.output.find("NONE_WITHIN_BUDGET") != std::string::npos);
}

TEST_CASE("cli: network subcommands") {
  auto net = write_file("figure.net", kFigureNetwork);
  CHECK(run("net check " + net.string()).exit_code == 0);
  auto pc = run("net pc " + net.string());
  CHECK(pc.exit_code == 1);
  auto refined = run("net refine " + net.string());
  CHECK(refined.exit_code == 0);
  CHECK(refined.output.find("qalg-format 1") != std::string::npos);
  // The refined file is itself a valid, path-consistent network file.
  auto refined_file = write_file("figure.refined.net", refined.output);
  CHECK(run("net pc " + refined_file.string()).exit_code == 0);

  auto cycle = write_file("cycle.net",
                          "qalg-format 1\nnetwork\nalgebra catalog:point\nnodes x y z\n"
                          "edge x y <\nedge y z <\nedge x z >\n");
  CHECK(run("net refine " + cycle.string()).exit_code == 1);
  CHECK(run("solve net catalog:point " + cycle.string()).exit_code == 1);
  CHECK(run("solve net catalog:point " + net.string()).exit_code == 0);
}

TEST_CASE("cli: embedding into a fixed representation") {
  auto dir = sandbox() / "embed";
  REQUIRE(run("catalog export point --dir " + dir.string()).exit_code == 0);
  auto net = write_file("figure2.net", kFigureNetwork);
  auto r = run("rep embed " + (dir / "point.qualitative0.rep").string() + " " + net.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("EMBEDDED") != std::string::npos);
}

TEST_CASE("cli: equations") {
  auto valid = run("eq check \"1';x = x\"");
  CHECK(valid.exit_code == 0);
  CHECK(valid.output.find("VALID_UP_TO(3)") != std::string::npos);

  auto ce = run("eq check \"x;(1;1) = (x;1);1\"");
  CHECK(ce.exit_code == 1);
  CHECK(ce.output.find("COUNTEREXAMPLE") != std::string::npos);

  CHECK(run("eq check \"x;; = y\"").exit_code == 3);
}

TEST_CASE("cli: generators") {
  auto graph = write_file("tri.graph",
                          "qalg-format 1\ngraph\nvertices u v w\n"
                          "edge u v\nedge v w\nedge u w\n");
  auto gen = run("gen 3col " + graph.string() + " -o " + (sandbox() / "tri.alg").string());
  CHECK(gen.exit_code == 0);
  CHECK(run("alg check " + (sandbox() / "tri.alg").string()).exit_code == 0);

  auto empty = write_file("empty.graph", "qalg-format 1\ngraph\nvertices u v\n");
  CHECK(run("gen 3col " + empty.string()).output.find("TRIVIALLY_COLOURABLE") !=
        std::string::npos);

  std::string k6 = "qalg-format 1\ngraph\nvertices a b c d e f\n";
  for (char u = 'a'; u <= 'f'; ++u)
    for (char v = static_cast<char>(u + 1); v <= 'f'; ++v)
      k6 += std::string("edge ") + u + " " + v + "\n";
  auto k6_file = write_file("k6.graph", k6);
  auto mt = run("gen mt " + k6_file.string());
  CHECK(mt.exit_code == 1);
  CHECK(mt.output.find("KNOWN_NO") != std::string::npos);

  auto monk = run("gen monk 2 -o " + (sandbox() / "monk2.alg").string());
  CHECK(monk.exit_code == 0);
  auto parsed = qalg::read_algebra_file(sandbox() / "monk2.alg");
  CHECK(parsed->atom_count() == 17);
}

TEST_CASE("cli: json envelopes and determinism") {
  auto r = run("--json solve qrep catalog:ex4");
  auto env = json::parse(r.output);
  CHECK(env["verdict"] == "OBSTRUCTED");
  CHECK(env.contains("stats"));
  CHECK(env["diagnostics"].is_array());

  auto a = run("--json --deterministic solve qrep catalog:point");
  auto b = run("--json --deterministic solve qrep catalog:point");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);  // byte-identical reports
  auto env2 = json::parse(a.output);
  CHECK(env2["verdict"] == "FOUND");
  CHECK(env2["certificate"].contains("matrix"));
  CHECK_FALSE(env2["stats"].contains("seconds"));

  auto eq = run("--json eq check \"x;(1;1) = (x;1);1\"");
  auto env3 = json::parse(eq.output);
  CHECK(env3["verdict"] == "COUNTEREXAMPLE");
  CHECK(env3["certificate"].contains("blocks"));
}

TEST_CASE("cli: input errors exit with code three") {
  CHECK(run("alg check /nonexistent/file.alg").exit_code == 3);
  auto bad = write_file("bad.alg", "not a qalg file\n");
  CHECK(run("alg check " + bad.string()).exit_code == 3);
  CHECK(run("catalog export nosuchkey").exit_code == 3);
  // solve net insists the network really is over the given algebra.
  auto net = write_file("mismatch.net", kFigureNetwork);
  CHECK(run("solve net catalog:rcc5 " + net.string()).exit_code == 3);
}

TEST_CASE("cli: the close flag completes a terse triple list") {
  // Only one representative per orbit is listed; --close completes it.
  auto terse = write_file("terse.alg",
                          "qalg-format 1\nalgebra\natoms e a b\nidentity e\n"
                          "converse a b\n"
                          "triple e e e\ntriple e a a\ntriple e b b\n");
  CHECK(run("alg check " + terse.string()).exit_code == 1);
  CHECK(run("alg check --close " + terse.string()).exit_code == 0);
}
