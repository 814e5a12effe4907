#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ces/cli.hpp"

using namespace ces;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json parsed(const Run& r) { return json::parse(r.out); }

std::string tmp_file(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/ces_kit_test_" + name;
  std::ofstream(path) << content;
  return path;
}

const std::string kTiles = std::string(CES_DATA_DIR) + "/tiles.json";

}  // namespace

TEST_CASE("dims report") {
  const Run r = run({"dims", "--dims", "3,3", "--dims", "2,2,2"});
  REQUIRE(r.code == kExitOk);
  const json j = parsed(r);
  CHECK(j["schema"] == "ces-kit/1");
  CHECK(j["results"][0]["M"] == 4);
  CHECK(j["results"][0]["level_sizes"] == json::array({1, 2, 3, 2, 1}));
  CHECK(j["results"][1]["M"] == 4);
  CHECK(j["config"]["seed"] == 0);
  CHECK(j["timing"]["recorded"] == false);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"dims", "--dims", "2"}).code == kExitUsage);
  CHECK(run({"dims", "--dims", "2,x"}).code == kExitUsage);
  CHECK(run({"dims"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"basis", "--dims", "2,3", "--pair", "1,1"}).code == kExitUsage);
  CHECK(run({"basis", "--dims", "2,3", "--pair", "1,3"}).code == kExitUsage);
  CHECK(run({"basis", "--dims", "2,3", "--pair", "1"}).code == kExitUsage);
  CHECK(run({"certify", "--dims", "2,3", "--weights", "degenerate"}).code == kExitUsage);
  CHECK(run({"certify", "--dims", "2,3", "--weights", "/no/such/file"}).code == kExitUsage);
  CHECK(run({"upb"}).code == kExitUsage);
  CHECK(run({"dims", "--dims", "2,2", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("basis routes") {
  json j = parsed(run({"basis", "--dims", "3,3"}));
  CHECK(j["results"][0]["route"] == "equal-bipartite");
  CHECK(j["results"][0]["check"]["ok"] == true);
  CHECK(j["results"][0]["vectors"].size() == 4);
  const Run r = run({"basis", "--dims", "2,3,4", "--pair", "3,2", "--no-vectors"});
  CHECK(r.code == kExitOk);
  j = parsed(r);
  CHECK(j["results"][0]["route"] == "general");
  CHECK(j["results"][0]["pair"] == json::array({3, 2}));
  CHECK_FALSE(j["results"][0].contains("vectors"));
  j = parsed(run({"basis", "--dims", "2,2,2", "--pair", "all", "--no-vectors"}));
  CHECK(j["results"].size() == 6);
}

TEST_CASE("certify P_S over every slot") {
  const Run r = run({"certify", "--dims", "2,3,4", "--all-levels"});
  REQUIRE(r.code == kExitOk);
  const json j = parsed(r);
  REQUIRE(j["results"].size() == 3);
  for (const auto& res : j["results"]) {
    CHECK(res["verdict"] == "NPT-certified");
    CHECK(res["quadratic"]["b"].get<double>() == doctest::Approx(-2.0 / 3.0));
    CHECK(res["witness_value"].get<double>() < -0.5);
  }
  CHECK(j["results"][2]["slot"] == 3);
}

TEST_CASE("uniform weights match P_S; degenerate weights log the third slot") {
  const json a = parsed(run({"certify", "--dims", "2,2,3"}));
  CHECK(a["results"][0]["operator"] == "P_S");
  CHECK(a["results"][0]["quadratic"]["b"].get<double>() == doctest::Approx(-2.0 / 3.0));
  const Run d = run({"certify", "--dims", "2,2,3", "--weights", "degenerate", "--seed", "5"});
  REQUIRE(d.code == kExitOk);
  const json j = parsed(d);
  CHECK(j["results"][0]["witness"]["degenerate"] == true);
  CHECK(j["results"][0]["witness"]["partner"] == 3);
  CHECK(j["results"][0]["note"].get<std::string>().find("degenerate") != std::string::npos);
}

TEST_CASE("weight files") {
  // (2,3) has M = 2; p_0 = 0 breaks the hypothesis.
  CHECK(run({"certify", "--dims", "2,3", "--weights", tmp_file("w0.json", "[0, 1]")}).code == kExitUsage);
  CHECK(run({"certify", "--dims", "2,3", "--weights", tmp_file("w3.json", "[1, 1, 1]")}).code == kExitUsage);
  CHECK(run({"certify", "--dims", "2,3", "--weights", tmp_file("wn.txt", "1 -1")}).code == kExitUsage);
  const Run ok = run({"certify", "--dims", "2,3", "--weights", tmp_file("w.txt", "0.7, 0.2\n")});
  REQUIRE(ok.code == kExitOk);
  CHECK(parsed(ok)["results"][0]["quadratic"]["b"].get<double>() == doctest::Approx(-0.7));
}

TEST_CASE("identical config and seed give identical bytes") {
  const std::vector<std::string> args{"certify", "--dims", "2,2,2", "--dims", "3,3", "--all-levels", "--weights", "random", "--seed", "42"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const Run s1 = run({"seesaw", "--dims", "2,3", "--restarts", "5", "--seed", "3"});
  const Run s2 = run({"seesaw", "--dims", "2,3", "--restarts", "5", "--seed", "3"});
  CHECK(s1.out == s2.out);
  const Run other = run({"certify", "--dims", "2,2,2", "--dims", "3,3", "--all-levels", "--weights", "random", "--seed", "43"});
  CHECK(other.out != a.out);
}

TEST_CASE("seed falls back to CES_KIT_SEED") {
  setenv("CES_KIT_SEED", "1234", 1);
  json j = parsed(run({"dims", "--dims", "2,2"}));
  CHECK(j["config"]["seed"] == 1234);
  j = parsed(run({"dims", "--dims", "2,2", "--seed", "7"}));
  CHECK(j["config"]["seed"] == 7);
  setenv("CES_KIT_SEED", "abc", 1);
  CHECK(run({"dims", "--dims", "2,2"}).code == kExitUsage);
  unsetenv("CES_KIT_SEED");
}

TEST_CASE("floats carry 17 significant digits") {
  const Run r = run({"certify", "--dims", "2,3,4", "--pair", "1,2"});
  CHECK(r.out.find("-0.6666666666666663") != std::string::npos);
}

TEST_CASE("R conjugation adds a second certificate") {
  const json j = parsed(run({"certify", "--dims", "2,2,3", "--weights", "random", "--conjugate-R"}));
  REQUIRE(j["results"].size() == 2);
  CHECK(j["results"][1]["operator"] == "R mixture R");
  CHECK(j["results"][1]["verdict"] == "NPT-certified");
}

TEST_CASE("seesaw targets") {
  json j = parsed(run({"seesaw", "--dims", "2,2", "--restarts", "10"}));
  CHECK(j["results"][0]["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(j["results"][0]["completely_entangled"] == true);
  j = parsed(run({"seesaw", "--dims", "2,3", "--target", "T", "--restarts", "5"}));
  CHECK(j["results"][0]["value"].get<double>() >= 1.0 - 1e-8);
}

TEST_CASE("upb pipeline") {
  Run r = run({"upb", "--fixture", kTiles});
  REQUIRE(r.code == kExitOk);
  json j = parsed(r);
  CHECK(j["results"][0]["verdict"] == "bound-entangled (numerical certificate)");
  CHECK(j["results"][0]["ppt"]["ppt"] == true);
  CHECK(j["results"][0]["state"]["rank"] == 4);
  CHECK(run({"upb", "--fixture", std::string(CES_TEST_DATA_DIR) + "/nonorthonormal.json"}).code == kExitUsage);
  CHECK(run({"upb", "--fixture", tmp_file("broken.json", "{\"dims\": [2,")}).code == kExitUsage);
  r = run({"upb", "--search-F", "--dims", "2,2"});
  REQUIRE(r.code == kExitOk);
  j = parsed(r);
  CHECK(j["results"][0]["largest_size"] == 2);
  CHECK(j["results"][0]["any_unextendable"] == false);
  r = run({"upb", "--search-F", "--dims", "2,3", "--grid", "0,1,-1,2+i,0.5i,inf"});
  CHECK(r.code == kExitOk);
  CHECK(parsed(r)["results"][0]["grid"][3] == json::array({2.0, 1.0}));
  CHECK(run({"upb", "--search-F", "--dims", "2,2", "--grid", "0,zz"}).code == kExitUsage);
}

TEST_CASE("csv output and --out") {
  Run r = run({"dims", "--dims", "3,3", "--format", "csv"});
  CHECK(r.out.rfind("dims,n,size\n3x3,0,1\n3x3,1,2\n", 0) == 0);
  r = run({"certify", "--dims", "2,2", "--format", "csv"});
  CHECK(r.out.find("2x2,P_S,1,NPT-certified") != std::string::npos);
  const std::string path = "/tmp/ces_kit_test_out.json";
  r = run({"dims", "--dims", "2,2", "--out", path});
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(json::parse(ss.str())["results"][0]["M"] == 1);
}

TEST_CASE("failed certifications exit with 1 unless surveyed") {
  // The summand census for (3,4) does not match the stated counts, which fails the basis invariants.
  CHECK(run({"basis", "--dims", "3,4", "--no-vectors"}).code == kExitFailed);
  CHECK(run({"basis", "--dims", "3,4", "--no-vectors", "--no-assert"}).code == kExitOk);
  // An extendable family is not bound-entangled.
  const std::string single = tmp_file("single.json", "{\"dims\": [2, 2], \"vectors\": [[[1, 0], [1, 0]]]}");
  CHECK(run({"upb", "--fixture", single, "--restarts", "5"}).code == kExitFailed);
  CHECK(run({"upb", "--fixture", single, "--restarts", "5", "--no-assert"}).code == kExitOk);
}

TEST_CASE("PPT search is a survey") {
  const Run r = run({"certify", "--dims", "2,2,2", "--ppt-search", "5"});
  REQUIRE(r.code == kExitOk);
  const json j = parsed(r);
  CHECK(j["results"][0]["trials"] == 5);
  CHECK(j["results"][0]["best_min_pt_eigenvalue"].get<double>() < 0.0);
}
