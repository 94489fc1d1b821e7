#include <doctest.h>

#include "tsnsim/scenario.hpp"

using namespace tsnsim;

namespace {

Json minimal_doc() {
  return Json::parse(R"({
    "duration": "400us",
    "talkers": [
      { "pod": "talker1", "priority": 1, "period": "33us", "payloadSize": 64, "listener": "listener1" }
    ],
    "gcl": {
      "cycleTime": "40us",
      "windows": [
        { "start": 0, "end": "10us", "priorities": [1] },
        { "start": "10us", "end": "40us", "priorities": [0, 2] }
      ]
    }
  })");
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("durations parse as integer nanoseconds or suffixed values") {
  CHECK(parse_duration("1500") == 1500);
  CHECK(parse_duration("40us") == 40'000);
  CHECK(parse_duration("3ms") == 3'000'000);
  CHECK(parse_duration("2s") == 2'000'000'000);
  CHECK(parse_duration("0ns") == 0);
  CHECK_THROWS_AS(parse_duration("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_duration("10min"), std::invalid_argument);
  CHECK_THROWS_AS(parse_duration(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_duration("99999999999999999999s"), std::invalid_argument);
}

TEST_CASE("a minimal document parses with defaults applied") {
  const Scenario scenario = scenario_from_json(minimal_doc());
  CHECK(scenario.duration == 400'000);
  CHECK(scenario.seed == 0);
  CHECK(scenario.proxy_enabled);
  CHECK(scenario.strategy == KeyStrategy::BufferAddress);
  CHECK(scenario.serialization_time == 0);
  CHECK(scenario.host_path.clone_probability == 0.0);
  CHECK(scenario.host_path.forward_delay == 0);
  CHECK(scenario.gc.interval == 2'000'000'000);
  CHECK(scenario.gc.max_age == 5'000'000'000);
  REQUIRE(scenario.talkers.size() == 1);
  CHECK(scenario.talkers[0].period == 33'000);
  CHECK_FALSE(scenario.talkers[0].count.has_value());
  CHECK(scenario.gcl.windows.size() == 2);
}

TEST_CASE("validation errors name the offending field") {
  Json doc = minimal_doc();
  doc["talkers"][0].erase("period");
  CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("talkers[0].period"),
                       ScenarioError);

  doc = minimal_doc();
  doc["talkers"][0]["period"] = 0;
  CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("period"), ScenarioError);

  doc = minimal_doc();
  doc["hostPath"] = Json::object({{"cloneProbability", 1.5}});
  CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("cloneProbability"),
                       ScenarioError);

  doc = minimal_doc();
  doc["talkers"][0]["pod"] = "bad name,with comma";
  CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("pod"), ScenarioError);

  doc = minimal_doc();
  doc["gcl"]["windows"][1]["end"] = "39us";
  CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("gcl"), ScenarioError);

  doc = minimal_doc();
  doc["strategy"] = "pointer-address";
  CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("strategy"), ScenarioError);

  doc = minimal_doc();
  doc["gcl"]["baseTime"] = "1us";  // after the first send
  CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("baseTime"), ScenarioError);
}

TEST_CASE("unparseable text and missing files are reported") {
  CHECK_THROWS_AS(parse_scenario("{ nope"), ScenarioError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

TEST_CASE("the bundled operation-example scenario loads") {
  const Scenario scenario = load_scenario(std::string(TSNSIM_SCENARIO_DIR) + "/paper-fig2.json");
  CHECK(scenario.name == "paper-fig2");
  CHECK(scenario.gcl.cycle_time == 40'000);
  REQUIRE(scenario.gcl.windows.size() == 3);
  CHECK(scenario.gcl.windows[0].open_priorities == std::vector<std::uint32_t>{1});
  CHECK(scenario.gcl.windows[1].open_priorities == std::vector<std::uint32_t>{2});
  CHECK(scenario.gcl.windows[2].open_priorities == std::vector<std::uint32_t>{0});
  REQUIRE(scenario.talkers.size() == 2);
  CHECK(scenario.talkers[0].priority == 1);
  CHECK(scenario.talkers[1].priority == 2);
  // at least 1000 packets per talker fit in the duration
  for (const TalkerSpec& talker : scenario.talkers) {
    CHECK(scenario.duration / talker.period >= 1000);
  }
}

}  // TEST_SUITE
