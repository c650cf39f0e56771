#include <gtest/gtest.h>

#include <string>

#include "mogmesh/error.hpp"
#include "mogmesh/scenario.hpp"

namespace mogmesh {
namespace {

constexpr const char* kMinimal = R"({
  "players": [
    {"id": 1, "position": [0, 0], "devices": [{"id": "a", "compute": 5, "battery": 50}]},
    {"id": 2, "position": [3, 4], "devices": [{"id": "b", "compute": 7, "battery": 60}]}
  ],
  "services": [{"kind": "GameStateManagement"}]
})";

std::string with(const std::string& needle, const std::string& replacement) {
  std::string text = kMinimal;
  auto at = text.find(needle);
  EXPECT_NE(at, std::string::npos) << needle;
  return text.replace(at, needle.size(), replacement);
}

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

TEST(ParseScenario, MinimalAppliesDefaults) {
  Scenario sc = parse_scenario(kMinimal);
  ASSERT_EQ(sc.players.size(), 2u);
  EXPECT_DOUBLE_EQ(sc.arena_width, 100.0);
  EXPECT_DOUBLE_EQ(sc.players[0].radio_range, 50.0);
  EXPECT_DOUBLE_EQ(sc.players[0].speed, 0.0);
  EXPECT_EQ(sc.players[0].devices[0].interfaces.size(), 1u);
  EXPECT_EQ(sc.players[0].devices[0].interfaces[0].type, LinkType::ShortRange);
  ASSERT_EQ(sc.services.size(), 1u);
  EXPECT_EQ(sc.services[0].name, "GameStateManagement");
  EXPECT_EQ(sc.services[0].workload_per_client, 1);
  EXPECT_TRUE(sc.services[0].state_bearing);
  EXPECT_EQ(sc.allocator, AllocatorKind::Heuristic);
  EXPECT_TRUE(sc.core_affinity);
  EXPECT_FALSE(sc.energy.wireless_multicast);
  EXPECT_EQ(sc.long_range_hop_cost, 1u);
  EXPECT_FALSE(sc.sync_window.has_value());
}

TEST(ParseScenario, DuplicateNodeIdNamesTheId) {
  auto err = error_of(with(R"("id": 2, "position": [3, 4])", R"("id": 1, "position": [3, 4])"));
  EXPECT_NE(err.find("duplicate node id 1"), std::string::npos) << err;
}

TEST(ParseScenario, NegativeBatteryNamesTheField) {
  auto err = error_of(with(R"("battery": 60)", R"("battery": -1)"));
  EXPECT_NE(err.find("players[1].devices[0].battery"), std::string::npos) << err;
}

TEST(ParseScenario, UnknownKeyRejected) {
  auto err = error_of(with(R"("players")", R"("colour": "red", "players")"));
  EXPECT_NE(err.find("colour: unknown key"), std::string::npos) << err;
  err = error_of(with(R"("compute": 5)", R"("compute": 5, "ram": 2)"));
  EXPECT_NE(err.find("players[0].devices[0].ram"), std::string::npos) << err;
}

TEST(ParseScenario, SyntaxErrorCarriesLineAndColumn) {
  try {
    parse_scenario("{\n  \"players\": [,]\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 15u);
  }
}

TEST(ParseScenario, SemanticErrors) {
  EXPECT_NE(error_of(with(R"({"kind": "GameStateManagement"})", R"({"kind": "Rendering"})"))
                .find("services[0].kind"),
            std::string::npos);
  EXPECT_NE(error_of(with(R"({"kind": "GameStateManagement"})", R"({"kind": "InputManagement"})"))
                .find("services"),
            std::string::npos);
  EXPECT_NE(error_of(with(R"("position": [0, 0])", R"("position": [0])")).find("position"),
            std::string::npos);
  EXPECT_NE(error_of(with(R"("players")", R"("server": 9, "players")")).find("server"),
            std::string::npos);
  EXPECT_NE(error_of(with(R"("players")", R"("version": 2, "players")")).find("version"),
            std::string::npos);
  EXPECT_NE(error_of(with(R"("players")", R"("allocator": "greedy", "players")")).find("allocator"),
            std::string::npos);
  EXPECT_NE(error_of("[]").find("expected an object"), std::string::npos);
}

TEST(ParseScenario, CustomInterfacesAndLinks) {
  auto sc = parse_scenario(with(
      R"("id": "b", "compute": 7, "battery": 60)",
      R"("id": "b", "compute": 7, "battery": 60, "interfaces": ["long_range", {"type": "short_range", "bandwidth": 54}])"));
  const auto& ifs = sc.players[1].devices[0].interfaces;
  ASSERT_EQ(ifs.size(), 2u);
  EXPECT_EQ(ifs[0].type, LinkType::LongRange);
  EXPECT_DOUBLE_EQ(ifs[0].bandwidth, 5.0);
  EXPECT_DOUBLE_EQ(ifs[1].bandwidth, 54.0);
  EXPECT_DOUBLE_EQ(ifs[1].cost_per_message, 1.0);
}

TEST(ParseScenario, BotsAddAiServices) {
  auto sc = parse_scenario(with(R"("players")", R"("bots": [{"id": 50, "position": [1, 1]}], "players")"));
  auto all = sc.all_services();
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[1].name, "ai:bot-50");
  EXPECT_EQ(all[1].kind, ModuleKind::ArtificialIntelligence);
  EXPECT_NE(error_of(with(R"("players")", R"("bots": [{"id": 1, "position": [1, 1]}], "players")"))
                .find("already in use"),
            std::string::npos);
}

TEST(ScenarioToJson, RoundTrips) {
  auto text = with(R"("players")",
                   R"("external_server": {"id": 9, "position": [5, 5]}, "energy": {"send": 3},
                      "bots": [{"id": 50, "position": [1, 1], "speed": 2}], "sync_window": 4,
                      "wireless_multicast": true, "allocator": "auction", "players")");
  Scenario sc = parse_scenario(text);
  Scenario back = parse_scenario(scenario_to_json(sc));
  EXPECT_EQ(back, sc);
  EXPECT_EQ(scenario_to_json(back), scenario_to_json(sc));
}

}  // namespace
}  // namespace mogmesh
