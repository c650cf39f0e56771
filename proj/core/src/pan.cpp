#include "mogmesh/pan.hpp"

#include <algorithm>
#include <tuple>

#include "mogmesh/error.hpp"

namespace mogmesh {

namespace {

void require_devices(std::span<const DeviceProfile> devices) {
  if (devices.empty()) throw ValidationError("no devices");
}

}  // namespace

std::string elect_coordinator(std::span<const DeviceProfile> devices) {
  require_devices(devices);
  const DeviceProfile* best = &devices.front();
  for (const auto& d : devices.subspan(1)) {
    // Larger compute, larger battery, then the smaller id wins.
    if (std::tie(d.compute, d.battery, best->device_id) >
        std::tie(best->compute, best->battery, d.device_id)) {
      best = &d;
    }
  }
  return best->device_id;
}

double score_link(const LinkClass& link, std::int64_t battery,
                  std::int64_t low_battery_threshold) {
  double score = link.bandwidth - link.cost_per_message;
  if (battery < low_battery_threshold) {
    score -= static_cast<double>(link.energy_per_message);
  }
  return score;
}

GatewayChoice select_gateway(std::span<const DeviceProfile> devices,
                             std::int64_t low_battery_threshold) {
  require_devices(devices);
  const DeviceProfile* best = nullptr;
  double best_score = 0.0;
  for (const auto& d : devices) {
    const LinkClass* lr = d.interface(LinkType::LongRange);
    if (lr == nullptr) continue;
    double s = score_link(*lr, d.battery, low_battery_threshold);
    if (best == nullptr || s > best_score ||
        (s == best_score && d.device_id < best->device_id)) {
      best = &d;
      best_score = s;
    }
  }
  if (best == nullptr) return {elect_coordinator(devices), true};
  return {best->device_id, false};
}

PanConfig aggregate_pan(std::span<const DeviceProfile> devices, NodeId node_id,
                        const Position& position, double radio_range,
                        std::int64_t low_battery_threshold) {
  require_devices(devices);
  if (!(radio_range > 0.0)) throw ValidationError("radio_range must be > 0");

  PanConfig pan;
  pan.coordinator = elect_coordinator(devices);
  auto gw = select_gateway(devices, low_battery_threshold);
  pan.gateway = gw.device_id;
  pan.local_only = gw.local_only;

  NodeProfile& node = pan.aggregated;
  node.node_id = node_id;
  node.position = position;
  node.radio_range = radio_range;
  node.battery = devices.front().battery;
  for (const auto& d : devices) {
    node.compute += d.compute;
    node.battery = std::min(node.battery, d.battery);
    node.interfaces.insert(node.interfaces.end(), d.interfaces.begin(),
                           d.interfaces.end());
  }
  std::sort(node.interfaces.begin(), node.interfaces.end());
  node.interfaces.erase(
      std::unique(node.interfaces.begin(), node.interfaces.end()),
      node.interfaces.end());
  return pan;
}

}  // namespace mogmesh
