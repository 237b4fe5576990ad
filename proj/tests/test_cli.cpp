#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mirrorgw/cli.hpp"

using namespace mirrorgw;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mirrorgw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return Run{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cubic preset reproduces the published list") {
  Run r = run({"--preset", "cubic"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["verified"] == true);
  CHECK(doc["mismatches"].empty());
  const Json& first = doc["documents"][0];
  CHECK(first["geometry"]["n"] == 5);
  CHECK(first["geometry"]["a"] == Json::array({3}));
  REQUIRE(first["results"].size() == 13);
  CHECK(first["results"][0]["gw"] == "18");
  CHECK(first["results"][12]["gw"] == "15552");
  CHECK(first["results"][12]["N"] == 4);
  CHECK(first["results"][12]["bps"].is_null());
  CHECK(first["meta"]["version"] == kVersion);
}

TEST_CASE("table presets") {
  Run r = run({"--preset", "table1", "--degree", "3"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["verified"] == true);
  REQUIRE(doc["documents"].size() == 8);
  const Json& x8 = doc["documents"][0];
  CHECK(x8["geometry"]["n"] == 8);
  CHECK(x8["results"][1]["d"] == 2);
  CHECK(x8["results"][1]["bps"] == "821654025830400");
  CHECK(x8["results"][2]["bps"] == "12197109744970010814464");
  const Json& x334 = doc["documents"][7];
  CHECK(x334["results"][2]["bps"] == "64359976334347296");
  for (const char* table : {"table2", "table3", "table4"}) {
    Run t = run({"--preset", table, "--degree", "2"});
    CHECK(t.code == 0);
    CHECK(Json::parse(t.out)["verified"] == true);
  }
}

TEST_CASE("tree suite") {
  Run r = run({"--suite", "trees"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["passed"] == true);
  std::string all = doc["details"].dump();
  CHECK(all.find("weighted count 823543") != std::string::npos);
}

TEST_CASE("single invariants, rationals as strings and BPS columns") {
  Run r = run({"--n", "5", "--a", "5", "--c", "1,1,1", "--degree", "3"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  REQUIRE(doc["results"].size() == 4);
  CHECK(doc["results"][0]["gw"] == "5");
  CHECK(doc["results"][0]["bps"].is_null());
  CHECK(doc["results"][2]["gw"] == "4876875");
  CHECK(doc["results"][2]["bps"] == "4874000");  // 4876875 - 2875
  CHECK(doc["meta"]["K"] == 3);

  Run frac = run({"--n", "5", "--a", "5", "--c", "0", "--b", "1", "--degree", "2"});
  REQUIRE(frac.code == 0);
  Json fd = Json::parse(frac.out);
  CHECK(fd["results"][2]["gw"] == "-4876875/4");
  CHECK(fd["results"][2]["bps"].is_null());
}

TEST_CASE("csv output and files") {
  Run r = run({"--n", "5", "--a", "3", "--c", "3,1,1", "--degree", "1", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,a,d,N,b,c,gw,bps\n", 0) == 0);
  CHECK(r.out.find("5,3,1,3,0;0;0,3;1;1,18,") != std::string::npos);

  std::string path = "mirrorgw_cli_test_output.json";
  Run f = run({"--preset", "cubic", "--out", path});
  REQUIRE(f.code == 0);
  CHECK(f.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(Json::parse(text.str())["verified"] == true);
  std::remove(path.c_str());
}

TEST_CASE("output is deterministic and round-trips") {
  std::vector<std::string> args = {"--n", "5", "--a", "3", "--points", "3", "--degree", "2"};
  Run a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::ordered_json::parse(a.out).dump(2) + "\n" == a.out);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"--n", "5", "--points", "0"}).code == 2);
  CHECK(run({"--n", "5", "--a", "x", "--c", "1"}).code == 2);
  CHECK(run({"--n", "4", "--a", "5", "--c", "1,1,1"}).code == 2);
  CHECK(run({"--n", "5", "--c", "1,1", "--b", "0"}).code == 2);
  CHECK(run({"--n", "5", "--c", "1,1", "--points", "3"}).code == 2);
  CHECK(run({"--n", "5", "--c", "1", "--degree", "3", "--K", "2"}).code == 2);
  CHECK(run({"--preset", "table9"}).code == 2);
  CHECK(run({"--suite", "nothing"}).code == 2);
  CHECK(run({"--format", "xml", "--preset", "cubic"}).code == 2);
  CHECK(run({"--preset", "cubic", "--suite", "trees"}).code == 2);
  Run r = run({"--n", "5", "--c", "-1"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}
