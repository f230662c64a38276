#include <fstream>
#include <sstream>

#include "cli_runner.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string data(const char* name) { return std::string(TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("apply, classify, bound") {
  RunResult r = run_cli("apply --word f1 --point bone:1/2");
  CHECK(r.code == 0);
  CHECK(r.out == "bone:1/4\n");
  r = run_cli("apply --word \"g1,f1\" --point row:1:1/4 --format json");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["point"] == "row:3:7/16");  // g1: row 1 at 1/8, then piece 0 of 7
  r = run_cli("classify --word f1,g1");
  CHECK(json::parse(r.out)["kind"] == "Collapsed");
  r = run_cli("classify --word g1,g2,f1,f2");
  CHECK(json::parse(r.out)["class"] == "FafterG(k=2, n=2)");
  r = run_cli("bound --word g1,g3,g2");
  CHECK(json::parse(r.out)["bound_sq"] == "1/64");
}

TEST_CASE("stats and table") {
  RunResult r = run_cli("stats --gen 1");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["rows"] == "12");
  CHECK(j["s"] == "20");
  CHECK(j["search_agrees"] == true);
  r = run_cli("--sequence " + data("odd_ceiling.seq") + " table --gens 3");
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string first;
  std::getline(lines, first);
  CHECK(json::parse(first)["s"] == "3");
  CHECK(json::parse(first)["s_exact"] == false);
}

TEST_CASE("plan and certify") {
  RunResult r = run_cli("plan --lambda 1/10");
  REQUIRE(r.code == 0);
  json p = json::parse(r.out);
  CHECK(p["n1"] == 4);
  CHECK(p["m"].get<int>() == p["n1"].get<int>() + p["n2"].get<int>());
  std::string out = "cli_cert.json";
  r = run_cli("certify --lambda 1/10 -o " + out);
  CHECK(r.code == 0);
  json c = json::parse(read_file(out));
  CHECK(c["valid"] == true);
  CHECK(c["n1"] == 4);
  CHECK(c["m"] == p["m"]);
  std::remove(out.c_str());
}

TEST_CASE("checks emit JSON lines and exit codes") {
  RunResult r = run_cli("cover-check --depth 1 --seed 5");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["seed"] == 5);
  CHECK(run_cli("collapse-check --depth 1").code == 0);
  CHECK(run_cli("tooth-check --gen 0 --gen 1").code == 0);
  CHECK(run_cli("halving-check --trials 20 --max-len 4").code == 0);
  CHECK(run_cli("sampling-check --word g1 --depth 1 --denom 32").code == 0);
  CHECK(run_cli("--sequence " + data("empty_generation.seq") + " --table-depth 2 cover-check --depth 1").code == 0);
  r = run_cli("oracle --max-len 2 --depth 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"words\":100") != std::string::npos);
}

TEST_CASE("usage and resource errors") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("apply --word f9 --point bone:1/2").code == 2);
  CHECK(run_cli("apply --word f1 --point bone:3/2").code == 2);
  CHECK(run_cli("plan --lambda 0.1").code == 2);
  CHECK(run_cli("plan --lambda 0").code == 2);
  CHECK(run_cli("stats").code == 2);
  CHECK(run_cli("oracle --max-len 3", "SHARKTEETH_BUDGET=99").code == 3);
  CHECK(run_cli("render --depth 4 -o cli_big.svg").code == 3);
}

TEST_CASE("render is byte-deterministic") {
  CHECK(run_cli("render --depth 1 -o cli_a.svg").code == 0);
  CHECK(run_cli("render --depth 1 -o cli_b.svg").code == 0);
  std::string a = read_file("cli_a.svg");
  CHECK(!a.empty());
  CHECK(a == read_file("cli_b.svg"));
  CHECK(run_cli("render --figure 2 --gen 1 --tooth 1 -o cli_c.svg").code == 0);
  CHECK(read_file("cli_c.svg").find("piece20") != std::string::npos);
  for (const char* f : {"cli_a.svg", "cli_b.svg", "cli_c.svg"}) std::remove(f);
}
