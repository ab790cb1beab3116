// End-to-end checks of the command-line tool: happy paths, output shapes,
// and the exit-code contract (0 ok, 2 parse, 3 semantic, 4 resource bound).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(HFLAB_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/hflab_cli_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

using Json = nlohmann::ordered_json;

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("eval: truth, trace, JSON") {
  std::string model = write_temp("v2.json", "[\"{}\", \"{{}}\"]");

  RunResult r = run_cli("eval --model " + model +
                        " --formula \"E z . z in y\" --assign \"y={{}}\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "true\n");

  r = run_cli("eval --model " + model +
              " --formula \"E z . z in y\" --assign \"y={}\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "false\n");

  r = run_cli("eval --json --trace --model " + model +
              " --formula \"E z . z in y\" --assign \"y={{}}\"");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j["value"] == true);
  CHECK(j["formula"] == "E z . z in y");
  CHECK(j["assignment"]["y"] == "{{}}");
  CHECK(!j["trace"].empty());

  // nested-array sets and a "domain" wrapper are accepted too
  std::string wrapped = write_temp("wrapped.json", "{\"domain\": [[], [[]]]}");
  r = run_cli("eval --model " + wrapped + " --formula \"A w . (w in y -> w = 0)\"" +
              " --assign \"y={{}}\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "true\n");
}

TEST_CASE("eval: the exit-code contract") {
  std::string model = write_temp("v2.json", "[\"{}\", \"{{}}\"]");

  CHECK(run_cli("eval --model " + model + " --formula \"(z in\"").exit_code == 2);

  RunResult r = run_cli("eval --model " + model + " --formula \"z in y\" --assign \"y={}\"");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "unassigned variable 'z'"));

  CHECK(run_cli("eval --model /tmp/does_not_exist_hflab.json --formula \"0 = 0\"")
            .exit_code == 3);

  std::string bad = write_temp("bad.json", "this is not json");
  CHECK(run_cli("eval --model " + bad + " --formula \"0 = 0\"").exit_code == 2);

  CHECK(run_cli("eval --model " + model + " --formula \"0 = 0\" --assign broken")
            .exit_code == 3);

  // a depth bound set too low is a semantic rejection
  r = run_cli("eval --max-depth 1 --model " + model + " --formula \"!(0 = 0)\"");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "exceeds the bound"));
}

TEST_CASE("lhier: levels, collapse verdict, witnesses") {
  RunResult r = run_cli("lhier --levels 3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "L_3: 4 elements"));
  CHECK(contains(r.output, "L_n = V_n for all n <= 3: yes"));

  r = run_cli("lhier --levels 0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "L_0: 0 elements"));

  CHECK(run_cli("lhier --levels 99").exit_code == 4);

  r = run_cli("lhier --json --levels 4");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j["collapse"] == true);
  REQUIRE(j["levels"].size() == 5);
  CHECK(j["levels"][4]["size"] == 16);
  CHECK(j["vLevelSizes"] == Json::array({0, 1, 2, 4, 16}));

  r = run_cli("lhier --json --levels 2 --witnesses");
  Json jw = Json::parse(r.output);
  REQUIRE(jw["levels"][1].contains("witnesses"));
  CHECK(jw["levels"][1]["witnesses"][0]["formula"] == "!(y = y)");
}

TEST_CASE("force: the fragment sentence splits the conditions") {
  RunResult r = run_cli("force --json --bits 2 --sentence \"{<0,1>} in #G\"");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j["truthLemma"] == "pass");

  std::set<std::string> forcing, refuting;
  for (const Json& c : j["conditions"]) {
    if (c["forces"] == true) forcing.insert(c["id"].get<std::string>());
    if (c["forcesNegation"] == true) refuting.insert(c["id"].get<std::string>());
  }
  CHECK(forcing == std::set<std::string>{"1x", "10", "11"});
  CHECK(refuting == std::set<std::string>{"0x", "00", "01"});

  std::set<std::string> true_generics;
  for (const Json& gen : j["generics"]) {
    if (gen["true"] == true) true_generics.insert(gen["generator"].get<std::string>());
  }
  CHECK(true_generics == std::set<std::string>{"10", "11"});

  r = run_cli("force --bits 1 --sentence \"#G = #G\"");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "truth-lemma cross-check: pass"));
  CHECK(!contains(r.output, "no "));  // every row forces the sentence
}

TEST_CASE("force: focused condition and failure modes") {
  RunResult r = run_cli("force --bits 2 --sentence \"{<0,1>} in #G\" --condition x1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "undecided"));

  r = run_cli("force --json --bits 2 --sentence \"{<0,1>} in #G\" --condition 0x");
  Json j = Json::parse(r.output);
  CHECK(j["forces"] == false);
  CHECK(j["forcesNegation"] == true);

  CHECK(run_cli("force --bits 2 --sentence \"(\"").exit_code == 2);
  CHECK(run_cli("force --bits 2 --sentence \"#G = #G\" --condition zz").exit_code == 3);
  CHECK(run_cli("force --bits 2 --sentence \"y in #G\"").exit_code == 3);
  CHECK(run_cli("force --bits 7 --sentence \"#G = #G\"").exit_code == 4);
}

TEST_CASE("sites: transitive and planted") {
  std::string transitive = write_temp("t.json", "[\"{}\", \"{{}}\"]");
  RunResult r = run_cli("sites --model " + transitive);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "no evental sites"));

  std::string planted = write_temp("s.json", "[\"{{{}}}\", \"{}\"]");
  r = run_cli("sites --json --model " + planted);
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j["sites"] == Json::array({"{{{}}}"}));
  CHECK(j["emptyCount"] == 1);
  CHECK(j["sharingCount"] == 0);
}

TEST_CASE("report: registry shape and determinism") {
  RunResult r1 = run_cli("report --json --seed 42");
  CHECK(r1.exit_code == 0);
  RunResult r2 = run_cli("report --json --seed 42");
  CHECK(r1.output == r2.output);

  Json j = Json::parse(r1.output);
  CHECK(j["seed"] == 42);
  CHECK(j["scale"] == "small");
  REQUIRE(j["claims"].size() == 11);
  CHECK(j["summary"]["pass"] == 8);
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["summary"]["outOfScope"] == 3);
  std::set<std::string> ids;
  for (const Json& c : j["claims"]) {
    ids.insert(c["claimId"].get<std::string>());
    CHECK((c["verdict"] == "pass" || c["verdict"] == "out-of-scope"));
    CHECK(!c.contains("runtimeMs"));
    if (c["verdict"] == "out-of-scope") CHECK(c["witnesses"].contains("reason"));
  }
  CHECK(ids.size() == 11);  // every registry id exactly once
  CHECK(ids.count("cantor-excess") == 1);
  CHECK(ids.count("unnameable-impossibility") == 1);
  CHECK(ids.count("continuum-cardinality") == 1);

  // a different seed still passes but draws different randomized inputs
  RunResult r3 = run_cli("report --json --seed 7");
  CHECK(r3.exit_code == 0);
  CHECK(r3.output != r1.output);

  // timings add fields without disturbing verdicts
  Json jt = Json::parse(run_cli("report --json --timings").output);
  CHECK(jt["claims"][0].contains("runtimeMs"));
}

TEST_CASE("argument errors exit with the parse code") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("lhier").exit_code == 2);           // missing required option
  CHECK(run_cli("lhier --levels x").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(contains(run_cli("--help").output, "eval"));
}

TEST_SUITE_END();
