#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qhopf/cli.hpp"

#include <cstdio>
#include <filesystem>

using namespace qhopf;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qhopf");
  std::vector<const char *> argv;
  for (auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> tsv_rows(const std::string &s) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> r;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, '\t')) r.push_back(c);
    rows.push_back(r);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string &name) { return std::filesystem::temp_directory_path() / name; }

} // namespace

TEST_CASE("Klein table for the trivial datum") {
  auto r = run({"classify", "abelian", "--group", "abelian:2,2", "--datum", "c=0,0;c12=0"});
  CHECK(r.code == 0);
  auto rows = tsv_rows(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"group", "datum", "f", "lambda", "N", "v_exp(1)", "v_exp(g2)", "v_exp(g1)",
                                            "v_exp(g1*g2)"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][0] == "abelian:2,2");
    CHECK(rows[i].size() == rows[0].size());
  }
}

TEST_CASE("C2 x C3 with trivial reassociator") {
  auto r = run({"classify", "abelian", "--group", "abelian:2,3", "--datum", "c=0,0;c12=0"});
  CHECK(r.code == 0);
  CHECK(tsv_rows(r.out).size() == 1 + 5);
  auto s = run({"classify", "abelian", "--group", "abelian:2,3", "--datum", "c=0,0;c12=0", "--method", "snf"});
  CHECK(s.out == r.out);
}

TEST_CASE("counts") {
  auto d4 = run({"orbits", "--dim4"});
  CHECK(d4.code == 0);
  CHECK(d4.out == "12\n");
  CHECK(run({"orbits", "--cyclic", "4"}).out == "4\n");
  CHECK(json::parse(run({"orbits", "--dim4", "--format", "json"}).out)["count"] == 12);

  auto dd = run({"classify", "ddn", "--n", "2"});
  CHECK(dd.code == 0);
  auto rows = tsv_rows(dd.out);
  CHECK(rows.size() == 1 + 8);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK((rows[i][1] == "1" || rows[i][1] == "3"));

  auto cy = run({"classify", "cyclic", "--m", "8", "--c", "2", "--format", "json"});
  CHECK(cy.code == 0);
  auto j = json::parse(cy.out);
  CHECK(j["exists"].get<bool>() == !j["pairs"].empty());
}

TEST_CASE("JSON and TSV carry the same rows") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"classify", "abelian", "--group", "abelian:2,2"},
           {"classify", "abelian", "--group", "abelian:2,6", "--datum", "c=1,3;c12=1"},
           {"classify", "ddn", "--n", "3"},
           {"conic", "--m1", "2", "--m2", "6"}}) {
    auto t = run(args);
    args.push_back("--format");
    args.push_back("json");
    auto js = run(args);
    REQUIRE(t.code == 0);
    REQUIRE(js.code == 0);
    auto rows = tsv_rows(t.out);
    auto arr = json::parse(js.out);
    REQUIRE(arr.size() + 1 == rows.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
      for (std::size_t c = 0; c < rows[0].size(); ++c) CHECK(cli::detail::Table::cell(arr[i][rows[0][c]]) == rows[i + 1][c]);
  }
}

TEST_CASE("output is deterministic") {
  std::vector<std::string> args{"classify", "abelian", "--group", "abelian:2,2,2", "--datum", "c=1,0,1;c12=1;c123=1"};
  auto a = run(args), b = run(args);
  CHECK(a.out == b.out);
  args.insert(args.end(), {"--format", "json"});
  CHECK(run(args).out == run(args).out);
  auto p = temp_path("qhopf_cli_out.tsv");
  auto w = run({"orbits", "--cyclic", "12", "--out", p.string()});
  CHECK(w.code == 0);
  CHECK(w.out.empty());
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  CHECK(line == run({"orbits", "--cyclic", "12"}).out.substr(0, line.size()));
  std::filesystem::remove(p);
}

TEST_CASE("snf subcommand") {
  auto p = temp_path("qhopf_cli_snf.txt");
  {
    std::ofstream f(p);
    f << "2 0\n0 3\n";
  }
  auto r = run({"snf", p.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("diag\n1 6\n") != std::string::npos);
  auto j = json::parse(run({"snf", p.string(), "--format", "json"}).out);
  CHECK(j["diag"] == json::array({1, 6}));
  std::filesystem::remove(p);
  CHECK(run({"snf", p.string()}).code == 1);
}

TEST_CASE("verify and biproduct") {
  auto v = run({"verify", "--preset", "h4"});
  CHECK(v.code == 0);
  CHECK(v.out.find("FAIL") == std::string::npos);
  CHECK(v.out.find("pentagon PASS") != std::string::npos);
  auto big = run({"verify", "--preset", "nichols:3", "--cap", "8"});
  CHECK(big.code == 1);

  auto b = run({"biproduct", "--group", "abelian:2,2", "--datum", "c=0,0;c12=1", "--pair", "f=0,1;lambda=0,1", "--check"});
  CHECK(b.code == 0);
  CHECK(b.out.rfind("dim 8\npair PASS\n", 0) == 0);
  CHECK(b.out.find("FAIL") == std::string::npos);
  auto bad = run({"biproduct", "--group", "abelian:2,2", "--datum", "c=0,0;c12=1", "--pair", "f=0,1;lambda=0,0"});
  CHECK(bad.code == 1);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"classify", "abelian", "--group", "abelian:2,2", "--bogus"}).code == 2);
  CHECK(run({"classify", "abelian"}).code == 2);
  CHECK(run({"classify", "abelian", "--group", "abelian:2,2", "--format", "xml"}).code == 2);
  CHECK(run({"orbits"}).code == 2);
  CHECK(run({"orbits", "--dim4", "--cyclic", "4"}).code == 2);
  auto bad = run({"classify", "abelian", "--group", "abelian:2,2", "--datum", "c=2,0;c12=0"});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("error: ", 0) == 0);
  CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);
  CHECK(run({"classify", "abelian", "--group", "abelian:10,10", "--datum", "c=0,0;c12=0"}).code == 1);
  CHECK(run({"classify", "abelian", "--group", "ddn:2"}).code == 1);
}
