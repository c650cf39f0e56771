#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mogmesh/model.hpp"
#include "mogmesh/pan.hpp"
#include "mogmesh/placement.hpp"
#include "mogmesh/plan.hpp"

namespace mogmesh {

struct PlayerSpec {
  NodeId id{};
  std::vector<DeviceProfile> devices;
  Position position;
  double radio_range = 50.0;
  double speed = 0.0;       // meters/tick
  double event_rate = 0.0;  // probability of a score action per tick
  bool trusted = false;
  std::int64_t capacity_cap = 0;

  friend bool operator==(const PlayerSpec&, const PlayerSpec&) = default;
};

// A computer-controlled actor. Its AI runs as its own service instance.
struct BotSpec {
  std::uint32_t id = 0;
  Position position;
  double speed = 0.0;
  double event_rate = 0.0;
  std::int64_t workload = 1;

  std::string service_name() const;

  friend bool operator==(const BotSpec&, const BotSpec&) = default;
};

struct ExternalServerSpec {
  NodeId id{};
  Position position;

  friend bool operator==(const ExternalServerSpec&, const ExternalServerSpec&) = default;
};

struct EnergyModel {
  std::int64_t send = 1;
  std::int64_t receive = 1;
  std::int64_t relay = 1;
  std::int64_t compute = 0;  // per work-unit
  // One transmission reaches every tree child when set.
  bool wireless_multicast = false;

  friend bool operator==(const EnergyModel&, const EnergyModel&) = default;
};

enum class AllocatorKind : std::uint8_t { Heuristic, Auction };

std::string_view to_string(AllocatorKind kind) noexcept;
std::optional<AllocatorKind> allocator_from_string(std::string_view name);

struct Scenario {
  double arena_width = 100.0;
  double arena_height = 100.0;
  std::vector<PlayerSpec> players;
  std::vector<BotSpec> bots;
  std::optional<ExternalServerSpec> external_server;
  // Central node for the client/server architectures.
  std::optional<NodeId> server;
  std::vector<ServiceSpec> services;
  EnergyModel energy;
  AllocatorKind allocator = AllocatorKind::Heuristic;
  bool core_affinity = true;
  double dr_threshold = 1.0;
  std::int64_t low_battery_threshold = kDefaultLowBatteryThreshold;
  std::uint32_t long_range_hop_cost = 1;
  RankWeights rank_weights;
  double price_increment = 1.0;
  // Ticks a replica waits before applying an event; defaults to the overlay
  // diameter at start.
  std::optional<std::uint32_t> sync_window;

  // Declared services plus one AI instance per bot.
  std::vector<ServiceSpec> all_services() const;

  // Throws ValidationError naming the offending field.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Strict JSON scenario reader: unknown keys are rejected and every omitted
// optional field takes its documented default. Throws ParseError (with line
// and column) on malformed text and ValidationError on semantic problems.
Scenario parse_scenario(std::string_view text);

// Inverse of parse_scenario; every field is written out explicitly.
std::string scenario_to_json(const Scenario& scenario);

}  // namespace mogmesh
