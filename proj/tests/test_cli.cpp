#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

const std::string kCli = NNREACH_CLI;
const std::string kData = NNREACH_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

Run run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " > cli_out.txt 2> cli_err.txt").c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp("cli_out.txt"), slurp("cli_err.txt")};
}

nlohmann::json strip_wall_clock(nlohmann::json j) {
  j["execution"].erase("wall_seconds");
  if (j.contains("steps"))
    for (auto& s : j["steps"]) s.erase("wall_seconds");
  return j;
}

std::string scenario_with_unsafe(const std::string& unsafe_block) {
  std::string text = slurp(kData + "/nncs_linear.yaml");
  text = text.substr(0, text.find("unsafe:")) + unsafe_block;
  text.replace(text.find("controller: nncs_controller.yaml"), 32, "controller: " + kData + "/nncs_controller.yaml");
  return text;
}

}  // namespace

TEST_CASE("reach-nn") {
  const std::string net = kData + "/mlp_2_7_2.yaml";
  SUBCASE("900 boxes at M = 30") {
    const auto r = run("reach-nn " + net + " --box=-1:1,-1:1 --partition 30,30");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["cell_count"] == 900);
    CHECK(j["result"]["boxes"].size() == 900);
    CHECK(j["execution"]["wall_seconds"].get<double>() >= 0.0);
  }
  SUBCASE("single cell") {
    const auto r = run("reach-nn " + net + " -b -1:1,-1:1 -p 1");
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["result"]["boxes"].size() == 1);
  }
  SUBCASE("writes to --out") {
    REQUIRE(run("reach-nn " + net + " --box=-1:1,-1:1 -p 3 -o reach_out.json").code == 0);
    CHECK(nlohmann::json::parse(slurp("reach_out.json"))["result"]["cell_count"] == 9);
  }
  SUBCASE("malformed weight row") {
    spit("bad_net.yaml",
         "format: nnreach-network/1\nlayers:\n  - activation: tanh\n    weights:\n      - [1, 2]\n      - [3]\n"
         "    bias: [0, 0]\n");
    const auto r = run("reach-nn bad_net.yaml --box=0:1,0:1 -p 2");
    CHECK(r.code == 2);
    CHECK(r.err.find("bad_net.yaml:6") != std::string::npos);
  }
  SUBCASE("dimension mismatch") {
    CHECK(run("reach-nn " + net + " --box=0:1 -p 2").code == 2);
    CHECK(run("reach-nn " + net + " --box=0:1,0:1 -p 2,2,2").code == 2);
  }
  SUBCASE("bad flags") {
    CHECK(run("reach-nn " + net + " -p 2").code == 2);
    CHECK(run("reach-nn /nonexistent.yaml --box=0:1,0:1 -p 2").code == 2);
    CHECK(run("frobnicate").code == 2);
  }
  SUBCASE("rerun from the echoed config") {
    const auto first = run("reach-nn " + net + " --box=-1:1,-0.5:1 -p 4,7 -e 0.001");
    REQUIRE(first.code == 0);
    const auto j = nlohmann::json::parse(first.out);
    spit("echo_net.yaml", j["config"]["network"].get<std::string>());
    std::string box, part;
    for (std::size_t i = 0; i < j["config"]["input_box"]["lo"].size(); ++i) {
      box += (i ? "," : "") + nlohmann::json(j["config"]["input_box"]["lo"][i]).dump() + ":" +
             nlohmann::json(j["config"]["input_box"]["hi"][i]).dump();
      part += (i ? "," : "") + j["config"]["partition"][i].dump();
    }
    const auto second =
        run("reach-nn echo_net.yaml --box=" + box + " -p " + part + " -e " + j["config"]["epsilon"].dump());
    REQUIRE(second.code == 0);
    CHECK(strip_wall_clock(nlohmann::json::parse(second.out)).dump() == strip_wall_clock(j).dump());
  }
}

TEST_CASE("reach-cls") {
  const std::string scn = kData + "/nncs_linear.yaml";
  SUBCASE("eleven steps") {
    const auto r = run("reach-cls " + scn + " --partition 5");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["steps"].size() == 11);
    CHECK(j["steps"][10]["t"] == 10);
    CHECK(j["steps"][0]["cells"] == 25);
  }
  SUBCASE("horizon override") {
    const auto r = run("reach-cls " + scn + " --horizon 0");
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["steps"].size() == 1);
  }
  SUBCASE("unknown plant") {
    std::string text = slurp(scn);
    text.replace(text.find("kind: linear"), 12, "kind: segway");
    spit("unknown_plant.yaml", text);
    const auto r = run("reach-cls unknown_plant.yaml");
    CHECK(r.code == 2);
    CHECK(r.err.find("segway") != std::string::npos);
  }
  SUBCASE("nonlinear scenario") {
    const auto r = run("reach-cls " + kData + "/van_der_pol.yaml -j 2");
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["steps"].size() == 21);
  }
  SUBCASE("rerun from the echoed config") {
    const auto first = run("reach-cls " + scn + " -p 7 -n 4");
    REQUIRE(first.code == 0);
    const auto j = nlohmann::json::parse(first.out);
    spit("echo_scenario.yaml", j["config"]["scenario"].get<std::string>());
    const auto second = run("reach-cls echo_scenario.yaml");
    REQUIRE(second.code == 0);
    CHECK(strip_wall_clock(nlohmann::json::parse(second.out)).dump() == strip_wall_clock(j).dump());
  }
}

TEST_CASE("verify") {
  SUBCASE("shipped scenario is SAFE") {
    for (const char* m : {"5", "20"}) {
      const auto r = run("verify " + kData + "/nncs_linear.yaml -p " + m);
      CHECK(r.code == 0);
      CHECK(nlohmann::json::parse(r.out)["verdict"] == "SAFE");
      CHECK(r.err.find("SAFE") != std::string::npos);
    }
  }
  SUBCASE("unsafe region equal to the initial set") {
    spit("unsafe_x0.yaml", scenario_with_unsafe("unsafe:\n  - {center: [2.5, 2.5], radius: 0.5}\n"));
    const auto r = run("verify unsafe_x0.yaml");
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "UNCERTAIN");
    CHECK(j["witnesses"][0]["t"] == 0);
  }
  SUBCASE("empty unsafe list") {
    spit("unsafe_none.yaml", scenario_with_unsafe("unsafe: []\n"));
    const auto r = run("verify unsafe_none.yaml");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "SAFE");
  }
}

TEST_CASE("sample") {
  const std::string net = kData + "/mlp_2_7_2.yaml";
  SUBCASE("5000 outputs") {
    const auto r = run("sample " + net + " --box=-1:1,-1:1 --count 5000 --seed 1");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::size_t rows = 0;
    std::getline(in, line);
    CHECK(line == "y1,y2");
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 5000);
  }
  SUBCASE("point box gives one deterministic row") {
    const auto r = run("sample " + net + " --box=0,0 -c 1 -s 99");
    REQUIRE(r.code == 0);
    double y1 = 0.0, y2 = 0.0;
    REQUIRE(std::sscanf(r.out.c_str(), "y1,y2\n%lf,%lf\n", &y1, &y2) == 2);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
    CHECK(std::abs(y1 - 0.2577397416014516) < 1e-12);
    CHECK(std::abs(y2 + 0.45842222375379704) < 1e-12);
  }
  SUBCASE("repeated seed is byte-identical") {
    REQUIRE(run("sample " + net + " --box=-1:1,-1:1 -c 300 -s 4 -o s1.csv").code == 0);
    REQUIRE(run("sample " + net + " --box=-1:1,-1:1 -c 300 -s 4 -j 3 -o s2.csv").code == 0);
    CHECK(slurp("s1.csv") == slurp("s2.csv"));
    REQUIRE(run("sample " + net + " --box=-1:1,-1:1 -c 300 -s 5 -o s3.csv").code == 0);
    CHECK(slurp("s1.csv") != slurp("s3.csv"));
  }
  SUBCASE("scenario trajectories") {
    const auto r = run("sample " + kData + "/nncs_linear.yaml -c 3 -s 2 -n 2");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("sample,t,x1,x2\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 3 * 3);
  }
  SUBCASE("network sampling needs a box") { CHECK(run("sample " + net + " -c 3").code == 2); }
}
