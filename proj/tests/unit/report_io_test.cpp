#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "mogmesh/report_io.hpp"
#include "support/scenarios.hpp"

namespace mogmesh {
namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

MetricsReport sample() {
  SplitMix64 rng(3);
  auto sc = testing::connected_scenario(rng, 6, true);
  sc.external_server = ExternalServerSpec{NodeId{99}, {0, 0}};
  return run(sc, Architecture::HybridDistributed, 2, 40);
}

TEST(MetricsCsv, FixedHeaderAndGlobalRow) {
  auto r = sample();
  auto rows = parse_csv(metrics_csv(r));
  ASSERT_EQ(rows.size(), r.nodes.size() + 2);
  EXPECT_EQ(rows[0].size(), 12u);
  EXPECT_EQ(rows[0][0], "node_id");
  EXPECT_EQ(rows[0][6], "failure_tick");
  EXPECT_EQ(rows[0][7], "mean_hops");
  for (const auto& row : rows) EXPECT_EQ(row.size(), 12u);
  EXPECT_EQ(rows.back()[0], "GLOBAL");
  // The external server has no battery.
  EXPECT_EQ(rows[r.nodes.size()][0], "99");
  EXPECT_EQ(rows[r.nodes.size()][5], "");
}

TEST(MetricsCsv, ZeroTickReport) {
  auto sc = testing::line_scenario(2);
  auto text = metrics_csv(run(sc, Architecture::PureP2P, 1, 0));
  EXPECT_EQ(text,
            std::string(kCsvHeader) +
                "\n1,0,0,0,0,1000,,,,,,\n2,0,0,0,0,1000,,,,,,\nGLOBAL,0,0,0,0,,,0,0,0,1,0\n");
}

TEST(MetricsJson, EncodesTheSameValuesAsCsv) {
  auto r = sample();
  RunInfo info{2, Architecture::HybridDistributed, 40, 0xabcull};
  auto j = nlohmann::json::parse(metrics_json(r, info));
  auto rows = parse_csv(metrics_csv(r));
  EXPECT_EQ(j["seed"], 2);
  EXPECT_EQ(j["arch"], "hybrid");
  EXPECT_EQ(j["scenario_digest"], "0000000000000abc");
  ASSERT_EQ(j["nodes"].size(), r.nodes.size());
  const char* node_cols[] = {"node_id", "sent", "received", "relayed",
                             "work_units", "final_battery", "failure_tick"};
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    for (std::size_t c = 0; c < 7; ++c) {
      const auto& v = j["nodes"][i][node_cols[c]];
      EXPECT_EQ(v.is_null() ? "" : v.dump(), rows[i + 1][c]) << node_cols[c];
    }
  }
  const auto& g = j["global"];
  const auto& last = rows.back();
  const char* global_cols[] = {"mean_hops", "max_load", "total_messages", "consistency_rate",
                               "dr_suppression"};
  for (std::size_t c = 0; c < 5; ++c) {
    EXPECT_EQ(std::stod(last[7 + c]), g[global_cols[c]].get<double>()) << global_cols[c];
  }
  EXPECT_EQ(std::to_string(g["sent"].get<std::uint64_t>()), last[1]);
}

TEST(ScenarioDigest, IgnoresFormattingButNotContent) {
  auto sc = testing::line_scenario(2);
  auto copy = parse_scenario(scenario_to_json(sc));
  EXPECT_EQ(scenario_digest(sc), scenario_digest(copy));
  copy.players[0].speed = 0.5;
  EXPECT_NE(scenario_digest(sc), scenario_digest(copy));
}

}  // namespace
}  // namespace mogmesh
