#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "operadix/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = operadix::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

// Keeps OPERADIX_FIXTURES scoped to one test.
struct FixtureEnv {
  explicit FixtureEnv(const std::string& dir) { setenv("OPERADIX_FIXTURES", dir.c_str(), 1); }
  ~FixtureEnv() { unsetenv("OPERADIX_FIXTURES"); }
};

}  // namespace

TEST_CASE("d") {
  auto r = run({"d", "nu(2,{1})"});
  CHECK(r.code == 0);
  CHECK(r.out == "mu o_1 nu(1,{1}) - id\n");
  r = run({"d", "mu"});
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
  r = run({"d", "nu(4,{2,3})", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(fs::path(OPERADIX_TEST_FIXTURES) / "dg" / "nu4_2-3.json"));
  CHECK(run({"--format", "json", "d", "nu(4,{2,3})"}).out == r.out);
  r = run({"d", "u", "--ambient", "uinf-a"});
  CHECK(r.code == 2);
  r = run({"d", "nu(3,{2})", "--format", "dot"});
  CHECK(r.code == 0);
  CHECK(count(r.out, "subgraph cluster_") == 2);
}

TEST_CASE("compose and normalize") {
  auto r = run({"compose", "mu", "2", "mu"});
  CHECK(r.code == 0);
  CHECK(r.out == "mu^2\n");
  r = run({"compose", "nu(2,{1})", "1", "u"});
  CHECK(r.out == "nu(2,{1}) o_1 u\n");
  CHECK(run({"compose", "mu", "3", "mu"}).code == 2);
  r = run({"normalize", "mu(id,u) + nu(2,{1}) o_1 mu o_1 u"});
  CHECK(r.code == 0);
  CHECK(r.out == "nu(2,{1}) + id\n");
  CHECK(run({"normalize", "mu o_1 (nu(2,{1})"}).code == 2);
}

TEST_CASE("verify") {
  CHECK(run({"verify", "d2", "--max", "8"}).code == 0);
  CHECK(run({"verify", "gordo", "--m", "1", "--max-n", "4"}).code == 0);
  auto r = run({"verify", "census", "--size", "3", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& c : j["census"]) CHECK(c["max_units_per_op"] == 1);
  CHECK(run({"verify", "generation", "--max-arity", "3", "--max-corks", "2"}).code == 0);
  CHECK(run({"verify", "pushout"}).code == 0);
  CHECK(run({"verify", "derivation", "--samples", "20"}).code == 0);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"verify", "gordo", "--m", "0"}).code == 2);
  // Byte-identical reports on repeated runs.
  CHECK(run({"verify", "gordo", "--m", "2", "--max-n", "4", "--format", "json"}).out ==
        run({"verify", "gordo", "--m", "2", "--max-n", "4", "--format", "json"}).out);
}

TEST_CASE("golden directory override") {
  const fs::path tmp = fs::temp_directory_path() / "operadix_cli_fixtures";
  fs::remove_all(tmp);
  fs::copy(OPERADIX_TEST_FIXTURES, tmp, fs::copy_options::recursive);
  {
    FixtureEnv env(tmp.string());
    CHECK(operadix::fixtures_dir() == tmp.string());
    CHECK(run({"verify", "d2", "--max", "6", "--samples", "10"}).code == 0);
    std::ofstream(tmp / "dg" / "nu3_2.json") << "[]\n";
    const auto r = run({"verify", "d2", "--max", "6", "--samples", "10"});
    CHECK(r.code == 1);
    CHECK(r.out.find("nu3_2.json") != std::string::npos);
  }
  CHECK(operadix::fixtures_dir() == OPERADIX_TEST_FIXTURES);
  fs::remove_all(tmp);
}

TEST_CASE("render") {
  auto r = run({"render", "|"});
  CHECK(r.code == 0);
  CHECK(r.out == "|\n");
  r = run({"render", "mu^2(id,u,u)", "--format", "dot"});
  CHECK(r.code == 0);
  CHECK(count(r.out, "fillcolor=white") == 2);
  CHECK(count(r.out, "fillcolor=black") == 0);
  CHECK(r.out.rfind("digraph", 0) == 0);
  r = run({"render", "mu^4(id,u',u',id,id)", "--format", "dot"});
  CHECK(count(r.out, "fillcolor=black") == 2);
  r = run({"render", "nu(2,{1}) - 2*mu o_1 nu(1,{1}) + 3*id", "--format", "dot"});
  CHECK(r.code == 0);
  CHECK(count(r.out, "subgraph cluster_") == 3);
  CHECK(r.out.find("label=\"+1\"") != std::string::npos);
  CHECK(r.out.find("label=\"-2\"") != std::string::npos);
  CHECK(r.out.find("label=\"+3\"") != std::string::npos);
  CHECK(run({"render", "mu", "--format", "json"}).code == 0);
  CHECK(run({"render", "mu("}).code == 2);
}

TEST_CASE("enumerate and census") {
  auto r = run({"enumerate", "--kind", "generators", "--max", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "nu(1,{1})\nnu(2,{1})\nnu(2,{2})\n");
  r = run({"enumerate", "--kind", "objects", "--max-arity", "1", "--max-corks", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Ob(U) u'") != std::string::npos);
  r = run({"enumerate", "--kind", "trees", "--max-arity", "1", "--max", "1"});
  CHECK(r.out == "v[]\n|\nv[*]\n");
  CHECK(run({"enumerate", "--kind", "shrubs"}).code == 2);
  r = run({"census", "--size", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "|X|=1 operations=1 associative=1 unital=1 max_units_per_op=1\n"
                 "|X|=2 operations=16 associative=8 unital=4 max_units_per_op=1\n");
  CHECK(run({"census", "--size", "9"}).code == 2);
}

TEST_CASE("usage errors and output files") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"d"}).code == 2);
  CHECK(run({"d", "mu", "--format", "yaml"}).code == 2);
  CHECK(run({"d", "mu", "--max", "x"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const fs::path out = fs::temp_directory_path() / "operadix_cli_out.txt";
  fs::remove(out);
  auto r = run({"d", "nu(2,{2})", "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out) == "mu o_2 nu(1,{1}) - id\n");
  fs::remove(out);
  CHECK(run({"d", "mu", "--out", "/nonexistent/dir/file"}).code == 2);
}

TEST_CASE("the installed binary") {
  const std::string cmd = std::string("\"") + OPERADIX_BINARY + "\" d 'nu(2,{1})' > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string bad = std::string("\"") + OPERADIX_BINARY + "\" d 'nu(' 2> /dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
