#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "mogmesh/error.hpp"
#include "mogmesh/pan.hpp"

namespace mogmesh {
namespace {

const LinkClass kShort{LinkType::ShortRange, 10.0, 1.0, 1};

DeviceProfile device(std::string id, std::int64_t compute, std::int64_t battery,
                     std::vector<LinkClass> links = {kShort}) {
  DeviceProfile d;
  d.device_id = std::move(id);
  d.compute = compute;
  d.battery = battery;
  d.interfaces = std::move(links);
  return d;
}

TEST(ElectCoordinator, HigherComputeWins) {
  std::vector<DeviceProfile> ds{device("A", 10, 5), device("B", 4, 9)};
  EXPECT_EQ(elect_coordinator(ds), "A");
}

TEST(ElectCoordinator, ComputeTieBrokenByBattery) {
  std::vector<DeviceProfile> ds{device("A", 7, 2), device("B", 7, 9)};
  EXPECT_EQ(elect_coordinator(ds), "B");
}

TEST(ElectCoordinator, FullTieBrokenBySmallerId) {
  std::vector<DeviceProfile> ds{device("b", 7, 9), device("a", 7, 9)};
  EXPECT_EQ(elect_coordinator(ds), "a");
}

TEST(ElectCoordinator, Singleton) {
  std::vector<DeviceProfile> ds{device("A", 1, 1)};
  EXPECT_EQ(elect_coordinator(ds), "A");
}

TEST(ElectCoordinator, MatchesSortOracle) {
  std::vector<DeviceProfile> ds;
  for (int i = 0; i < 30; ++i) {
    ds.push_back(device("d" + std::to_string(i), (i * 7) % 5, (i * 11) % 4));
  }
  auto sorted = ds;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.compute != b.compute) return a.compute > b.compute;
    if (a.battery != b.battery) return a.battery > b.battery;
    return a.device_id < b.device_id;
  });
  EXPECT_EQ(elect_coordinator(ds), sorted.front().device_id);
}

TEST(ElectCoordinator, EmptyThrows) {
  EXPECT_THROW(elect_coordinator({}), ValidationError);
}

TEST(ScoreLink, HealthyBatteryIgnoresEnergy) {
  EXPECT_DOUBLE_EQ(score_link({LinkType::LongRange, 10.0, 2.0, 3}, 100, 20), 8.0);
}

TEST(ScoreLink, LowBatteryChargesEnergy) {
  EXPECT_DOUBLE_EQ(score_link({LinkType::LongRange, 10.0, 2.0, 3}, 5, 20), 5.0);
}

TEST(ScoreLink, DegenerateLink) {
  EXPECT_DOUBLE_EQ(score_link({LinkType::ShortRange, 1e-9, 0.0, 0}, 100, 20), 1e-9);
}

TEST(SelectGateway, BestLongRangeScoreWins) {
  // Scores: A = 10 - 2 = 8, B = 7 - 2 = 5.
  std::vector<DeviceProfile> ds{device("A", 1, 100, {{LinkType::LongRange, 10.0, 2.0, 3}}),
                                device("B", 9, 100, {{LinkType::LongRange, 7.0, 2.0, 3}})};
  auto gw = select_gateway(ds);
  EXPECT_EQ(gw.device_id, "A");
  EXPECT_FALSE(gw.local_only);
}

TEST(SelectGateway, OnlyLongRangeCandidate) {
  std::vector<DeviceProfile> ds{device("A", 9, 100),
                                device("B", 1, 100, {{LinkType::LongRange, 5.0, 3.0, 2}})};
  EXPECT_EQ(select_gateway(ds).device_id, "B");
}

TEST(SelectGateway, FallsBackToCoordinatorWhenLocalOnly) {
  std::vector<DeviceProfile> ds{device("A", 3, 100), device("B", 4, 100)};
  auto gw = select_gateway(ds);
  EXPECT_EQ(gw.device_id, elect_coordinator(ds));
  EXPECT_TRUE(gw.local_only);
}

TEST(SelectGateway, LowBatteryShiftsChoice) {
  // Equal links; the drained device pays the energy penalty.
  LinkClass lr{LinkType::LongRange, 10.0, 2.0, 3};
  std::vector<DeviceProfile> ds{device("A", 1, 5, {lr}), device("B", 1, 100, {lr})};
  EXPECT_EQ(select_gateway(ds, 20).device_id, "B");
}

TEST(AggregatePan, SumsComputeAndTakesMinBattery) {
  std::vector<DeviceProfile> ds{device("A", 3, 9), device("B", 4, 2)};
  auto pan = aggregate_pan(ds, NodeId{5}, {1, 2}, 30.0);
  EXPECT_EQ(pan.aggregated.compute, 7);
  EXPECT_EQ(pan.aggregated.battery, 2);
  EXPECT_EQ(pan.aggregated.node_id, NodeId{5});
  EXPECT_EQ(pan.aggregated.position, (Position{1, 2}));
  EXPECT_DOUBLE_EQ(pan.aggregated.radio_range, 30.0);
}

TEST(AggregatePan, SingletonMatchesDevice) {
  LinkClass lr{LinkType::LongRange, 5.0, 3.0, 2};
  std::vector<DeviceProfile> ds{device("A", 6, 40, {kShort, lr})};
  auto pan = aggregate_pan(ds, NodeId{1}, {}, 10.0);
  EXPECT_EQ(pan.aggregated.compute, 6);
  EXPECT_EQ(pan.aggregated.battery, 40);
  EXPECT_EQ(pan.aggregated.interfaces.size(), 2u);
  EXPECT_EQ(pan.coordinator, "A");
  EXPECT_EQ(pan.gateway, "A");
  EXPECT_FALSE(pan.local_only);
}

TEST(AggregatePan, InterfaceUnionIsDeduplicated) {
  std::vector<DeviceProfile> ds{device("A", 1, 1), device("B", 1, 1)};
  auto pan = aggregate_pan(ds, NodeId{1}, {}, 10.0);
  EXPECT_EQ(pan.aggregated.interfaces.size(), 1u);
}

TEST(AggregatePan, RejectsBadInput) {
  EXPECT_THROW(aggregate_pan({}, NodeId{1}, {}, 10.0), ValidationError);
  std::vector<DeviceProfile> ds{device("A", 1, 1)};
  EXPECT_THROW(aggregate_pan(ds, NodeId{1}, {}, 0.0), ValidationError);
}

}  // namespace
}  // namespace mogmesh
