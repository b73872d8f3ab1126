#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "cli_cases.hpp"
#include "grpeq/dsl.hpp"

using namespace grpeq;
using nlohmann::json;

namespace {

cli::Outcome run_script(const std::string& command, const std::string& script,
                        std::vector<std::string> args = {}, cli::Options o = {}) {
  return cli::run(command, args, o, script);
}

json error_of(const cli::Outcome& o) { return o.report["result"]["error"]; }

} // namespace

TEST_CASE("examples from the command reference") {
  auto c = run_script("classify", "eq over free(a): a t a t^-1 a t = 1");
  CHECK(c.exit_code == 0);
  CHECK(c.report["result"]["kind"] == "unimodular");
  CHECK(c.report["result"]["exponent_sum"] == 1);
  CHECK(c.report["result"]["nontrivial"] == true);

  auto u = run_script("up-check", "set X in zn(1) = {0, 1}");
  CHECK(u.exit_code == 0);
  CHECK(u.report["result"]["unique_elements"] == json::array({"0", "2"}));

  auto r = run_script("rewrite-coset",
                      "geq over free(a) with zn(2): (a, (1,0)) (a^-1, (0,1)) (a, (0,0)) = 1");
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["expansion_verified"] == true);
  CHECK(r.report["result"]["rewritten"]["expansion"] == r.report["result"]["word"]);
}

TEST_CASE("exit codes") {
  CHECK(run_script("up-check", "set K in finite{klein} = {1, x, y, x y}").exit_code == 1);
  CHECK(run_script("solve-finite", "eq over finite{cyclic 2}: t g t^-1 = 1").exit_code == 1);
  CHECK(run_script("classify", "eq over free(a): a t = 1", {"missing"}).exit_code == 2);
  CHECK(run_script("nonsense", "").exit_code == 2);
  cli::Options bad;
  bad.max_degree = 1000;
  auto o = run_script("solve-finite", "eq over finite{cyclic 2}: t = 1", {}, bad);
  CHECK(o.exit_code == 2);
  CHECK(error_of(o)["type"] == "config");
}

TEST_CASE("parse errors carry positions") {
  struct Case {
    const char* script;
    int line, column;
  };
  Case cs[] = {
      {"group G = free(a)\neq E over G: a t = 2", 2, 20},
      {"eq over free(a) a t = 1", 1, 24},
      {"group G = free(a\n", 1, 17},
      {"\n\nlet x in zn(2) = (1,2,3)", 3, 18},
      {"frobnicate", 1, 1},
      {"meq over free(a) vars x, x: x = 1", 1, 26},
  };
  for (const auto& c : cs) {
    INFO(std::string(c.script));
    auto o = run_script("classify", c.script);
    REQUIRE(o.exit_code == 2);
    json e = error_of(o);
    CHECK(e["type"] == "parse");
    CHECK(e["line"] == c.line);
    CHECK(e["column"] == c.column);
  }
}

TEST_CASE("declarations resolve and names are unique") {
  Session s = parse_session(
      "group G = free(a) * finite{cyclic 3}\n"
      "let g in G = a g\n"
      "eq E over G: g t g^-1 t = 1\n"
      "eq over G var s: a s = 1\n");
  REQUIRE(s.equations.count("E"));
  CHECK(s.equations.at("E").to_string() == "a g t g^2 a^-1 t = 1");
  CHECK(s.equations.count("_1"));
  CHECK(s.equations.at("_1").variable() == "s");
  CHECK_THROWS_AS(parse_session("group G = free(a)\ngroup G = free(b)"), ParseError);
  CHECK_THROWS_AS(parse_session("eq over H: t = 1"), ParseError);
}

TEST_CASE("config file and option validation") {
  cli::Options o = cli::Options::from_json(json{{"radius", 2}, {"h_factors", {0, 1}}});
  CHECK(o.radius == 2);
  CHECK(o.h_factors == std::vector<int>{0, 1});
  CHECK(o.max_size == 14);
  CHECK_THROWS_AS(cli::Options::from_json(json{{"radius", 9}}), ConfigError);
  CHECK_THROWS_AS(cli::Options::from_json(json{{"colour", 1}}), ConfigError);
  CHECK(cli::Options::from_json(o.to_json()).to_json() == o.to_json());
}

TEST_CASE("golden reports are stable and re-verify") {
  bool update = std::getenv("GRPEQ_UPDATE_GOLDEN") != nullptr;
  for (const auto& g : cases::golden_cases()) {
    CAPTURE(g.name);
    auto first = cases::run_case(g);
    auto second = cases::run_case(g);
    std::string text = cli::render_structured(first.report);
    CHECK(text == cli::render_structured(second.report));
    CHECK(first.exit_code == g.exit_code);
    CHECK(cli::render_text(first.report) == cli::render_text(second.report));
    if (update) {
      std::ofstream(cases::golden_path(g), std::ios::binary) << text;
    } else {
      CHECK(text == cases::slurp(cases::golden_path(g)));
    }
    auto v = cli::run("verify", {}, {}, text);
    CHECK(v.exit_code == 0);
    CHECK(v.report["result"]["identical"] == true);
  }
}

TEST_CASE("verify detects a tampered report") {
  auto c = run_script("classify", "eq over free(a): a t a t^-1 a t = 1");
  json t = c.report;
  t["result"]["length"] = 5;
  auto v = cli::run("verify", {}, {}, t.dump());
  CHECK(v.exit_code == 1);
  CHECK(v.report["result"]["identical"] == false);
  auto junk = cli::run("verify", {}, {}, "{\n  \"schema\": ");
  CHECK(junk.exit_code == 2);
  CHECK(error_of(junk)["line"] == 2);
}

TEST_CASE("fuzzed scripts only produce structured reports") {
  cases::Fuzzer fz(2024);
  int errors = 0;
  for (int i = 0; i < 2000; ++i) {
    auto [command, s] = fz.next();
    auto o = cli::run(command, {}, {}, s);
    INFO(command << "\n" << s);
    REQUIRE(cases::well_formed(o));
    errors += o.exit_code == 2;
  }
  CHECK(errors > 0);
}
