#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nnreach/error.hpp"
#include "nnreach/io.hpp"
#include "test_support.hpp"

using namespace nnreach;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(NNREACH_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_network(const NetworkModel& a, const NetworkModel& b) {
  if (a.layers().size() != b.layers().size()) return false;
  for (std::size_t l = 0; l < a.layers().size(); ++l) {
    const auto& x = a.layers()[l];
    const auto& y = b.layers()[l];
    if (x.activation() != y.activation() || x.weights() != y.weights() || x.bias() != y.bias()) return false;
  }
  return true;
}

const char* kTinyNet = R"(format: nnreach-network/1
layers:
  - activation: relu
    weights:
      - [1.0, -2.0]
      - [0.5, 0.25]
    bias: [0.0, 1.0]
)";

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, -0.0, 1.0, 0.1, -1.0927, 1e-300, 6.02214076e23, 0.2577397416014516})
    CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("shipped network files match the literal weights") {
  const auto net = load_network(std::string(NNREACH_DATA_DIR) + "/mlp_2_7_2.yaml");
  CHECK(net.name() == "mlp-2-7-2");
  CHECK(same_network(net, oracle::build(oracle::example_mlp_layers())));
  const auto ctrl = load_network(std::string(NNREACH_DATA_DIR) + "/nncs_controller.yaml");
  CHECK(same_network(ctrl, oracle::build(oracle::example_controller_layers())));
}

TEST_CASE("network round trip") {
  const auto net = parse_network(slurp("mlp_2_7_2.yaml"));
  const auto again = parse_network(format_network(net));
  CHECK(same_network(net, again));
  CHECK(again.name() == net.name());
  CHECK(format_network(again) == format_network(net));
}

TEST_CASE("network parse errors") {
  SUBCASE("short weight row reports its line") {
    const std::string text = R"(format: nnreach-network/1
layers:
  - activation: tanh
    weights:
      - [1.0, 2.0]
      - [3.0]
    bias: [0, 0]
)";
    try {
      parse_network(text, "bad.yaml");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.source() == "bad.yaml");
      CHECK(e.line() == 6);
      CHECK(std::string(e.what()).find("row 2 has 1 entries, expected 2") != std::string::npos);
    }
  }
  SUBCASE("wrong format tag") {
    CHECK_THROWS_AS(parse_network("format: something/2\nlayers: []\n"), ParseError);
  }
  SUBCASE("unknown activation") {
    std::string text = kTinyNet;
    text.replace(text.find("relu"), 4, "softsign");
    CHECK_THROWS_AS(parse_network(text), ParseError);
  }
  SUBCASE("bias length mismatch") {
    std::string text = kTinyNet;
    text.replace(text.find("[0.0, 1.0]"), 10, "[0.0]");
    CHECK_THROWS_AS(parse_network(text), ParseError);
  }
  SUBCASE("non-numeric weight") {
    std::string text = kTinyNet;
    text.replace(text.find("0.25"), 4, "abc");
    CHECK_THROWS_AS(parse_network(text), ParseError);
  }
  SUBCASE("chained dimensions") {
    const std::string text = std::string(kTinyNet) + R"(  - activation: linear
    weights:
      - [1.0, 2.0, 3.0]
    bias: [0]
)";
    CHECK_THROWS_AS(parse_network(text), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_network("/nonexistent/net.yaml"), ParseError);
  }
}

TEST_CASE("scenario documents") {
  const auto doc = load_scenario(std::string(NNREACH_DATA_DIR) + "/nncs_linear.yaml");
  CHECK(doc.name == "nncs-linear");
  CHECK(doc.scenario.initial_set == HyperBox{{2, 3}, {2, 3}});
  REQUIRE(doc.scenario.disturbance_set.has_value());
  CHECK(*doc.scenario.disturbance_set == HyperBox{{-0.5, 0.5}});
  CHECK(doc.scenario.horizon == 10);
  CHECK(doc.scenario.partition.counts() == std::vector<std::size_t>{5, 5});
  REQUIRE(doc.safety.unsafe.size() == 1);
  CHECK(doc.safety.unsafe[0] == HyperBox{{-3, -2}, {2, 3}});
  CHECK(doc.epsilon == 0.0);
  CHECK(same_network(doc.scenario.controller, oracle::build(oracle::example_controller_layers())));

  SUBCASE("round trip") {
    const auto again = parse_scenario(format_scenario(doc));
    CHECK(format_scenario(again) == format_scenario(doc));
    CHECK(again.scenario.initial_set == doc.scenario.initial_set);
    const auto a = reach_nncs(doc.scenario);
    const auto b = reach_nncs(again.scenario);
    for (std::size_t t = 0; t < a.steps.size(); ++t) CHECK(a.steps[t].state == b.steps[t].state);
  }
  SUBCASE("nonlinear plant with inline controller") {
    const auto vdp = load_scenario(std::string(NNREACH_DATA_DIR) + "/van_der_pol.yaml");
    CHECK(state_dim(vdp.scenario.plant) == 2);
    const auto again = parse_scenario(format_scenario(vdp));
    CHECK(format_scenario(again) == format_scenario(vdp));
  }
  SUBCASE("unknown plant kind") {
    std::string text = format_scenario(doc);
    text.replace(text.find("kind: linear"), 12, "kind: cartpole");
    try {
      parse_scenario(text, "s.yaml");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
  }
  SUBCASE("scalar partition is repeated") {
    std::string text = format_scenario(doc);
    text.replace(text.find("partition: [5, 5]"), 17, "partition: 7");
    CHECK(parse_scenario(text).scenario.partition.counts() == std::vector<std::size_t>{7, 7});
  }
  SUBCASE("negative radius") {
    std::string text = format_scenario(doc);
    const auto at = text.find("disturbance_set:");
    text.replace(at, text.find('\n', at) - at, "disturbance_set: {center: [0], radius: -1}");
    CHECK_THROWS_AS(parse_scenario(text), ParseError);
  }
  SUBCASE("missing horizon") {
    std::string text = format_scenario(doc);
    const auto at = text.find("horizon:");
    text.erase(at, text.find('\n', at) - at + 1);
    CHECK_THROWS_AS(parse_scenario(text), ParseError);
  }
}

TEST_CASE("detect_document") {
  CHECK(detect_document(slurp("mlp_2_7_2.yaml"), "a") == DocumentKind::network);
  CHECK(detect_document(slurp("nncs_linear.yaml"), "b") == DocumentKind::scenario);
  CHECK_THROWS_AS(detect_document("format: other/1\n", "c"), ParseError);
  CHECK_THROWS_AS(detect_document("foo: 1\n", "d"), ParseError);
}

TEST_CASE("command-line values") {
  CHECK(parse_box_arg("-1:1,0.5:2") == HyperBox{{-1, 1}, {0.5, 2}});
  CHECK(parse_box_arg("3") == HyperBox{Interval::point(3)});
  CHECK_THROWS_AS(parse_box_arg("2:1"), ArgumentError);
  CHECK_THROWS_AS(parse_box_arg("a:b"), ArgumentError);
  CHECK_THROWS_AS(parse_box_arg(""), ArgumentError);
  CHECK(parse_partition_arg("3,4").counts() == std::vector<std::size_t>{3, 4});
  CHECK(parse_partition_arg("6", 3).counts() == std::vector<std::size_t>{6, 6, 6});
  CHECK_THROWS_AS(parse_partition_arg("0,2"), ArgumentError);
  CHECK_THROWS_AS(parse_partition_arg("-2"), ArgumentError);
}

TEST_CASE("reports") {
  const auto net = oracle::build(oracle::example_mlp_layers());
  const HyperBox input{{-1, 1}, {-1, 1}};
  const PartitionSpec m{3, 3};
  const auto result = reach_mlp(net, BoxUnion(input), m);
  const auto j = nlohmann::json::parse(reach_nn_report(net, input, m, result, {{2, 0.0}, 0.25}));
  CHECK(j["schema"] == std::string(kReportSchema));
  CHECK(j["command"] == "reach-nn");
  CHECK(j["execution"]["threads"] == 2);
  CHECK(j["result"]["cell_count"] == 9);
  REQUIRE(j["result"]["boxes"].size() == 9);
  CHECK(j["result"]["boxes"][4]["cell"] == 4);
  CHECK(same_network(parse_network(j["config"]["network"].get<std::string>()), net));

  const auto doc = load_scenario(std::string(NNREACH_DATA_DIR) + "/nncs_linear.yaml");
  const auto v = verify_nncs(doc.scenario, doc.safety);
  const auto t = nlohmann::json::parse(tube_report(doc, v.tube, &v, {}));
  CHECK(t["command"] == "verify");
  CHECK(t["verdict"] == "SAFE");
  REQUIRE(t["steps"].size() == 11);
  CHECK(t["steps"][10]["control_hull"].is_null());
  const auto plain = nlohmann::json::parse(tube_report(doc, v.tube, nullptr, {}));
  CHECK(plain["command"] == "reach-cls");
  CHECK_FALSE(plain.contains("verdict"));
}

TEST_CASE("csv writers") {
  CHECK(format_points({{1, 2}, {0.5, -3}}) == "y1,y2\n1,2\n0.5,-3\n");
  CHECK(format_trajectories({{{1, 2}, {3, 4}}}) == "sample,t,x1,x2\n0,0,1,2\n0,1,3,4\n");
}
