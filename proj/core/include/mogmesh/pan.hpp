#pragma once

#include <span>
#include <string>

#include "mogmesh/model.hpp"

namespace mogmesh {

inline constexpr std::int64_t kDefaultLowBatteryThreshold = 20;

// A player's devices organized as one logical overlay node.
struct PanConfig {
  std::string coordinator;
  std::string gateway;
  // No device holds a LongRange interface; the gateway is the coordinator.
  bool local_only = false;
  NodeProfile aggregated;
};

// Device with the largest compute, then battery, then smallest id.
// Throws ValidationError("no devices") on an empty set.
std::string elect_coordinator(std::span<const DeviceProfile> devices);

// Always-best-connected score; higher is better. Energy cost only counts
// once the battery falls below the threshold.
double score_link(const LinkClass& link, std::int64_t battery,
                  std::int64_t low_battery_threshold = kDefaultLowBatteryThreshold);

struct GatewayChoice {
  std::string device_id;
  bool local_only = false;
};

GatewayChoice select_gateway(
    std::span<const DeviceProfile> devices,
    std::int64_t low_battery_threshold = kDefaultLowBatteryThreshold);

// compute is summed, battery is the minimum, interfaces are the union.
PanConfig aggregate_pan(
    std::span<const DeviceProfile> devices, NodeId node_id,
    const Position& position, double radio_range,
    std::int64_t low_battery_threshold = kDefaultLowBatteryThreshold);

}  // namespace mogmesh
