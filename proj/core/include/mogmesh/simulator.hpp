#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mogmesh/association.hpp"
#include "mogmesh/overlay.hpp"
#include "mogmesh/placement.hpp"
#include "mogmesh/rng.hpp"
#include "mogmesh/scenario.hpp"
#include "mogmesh/sync.hpp"

namespace mogmesh {

enum class Architecture : std::uint8_t {
  ClientServerDirect,   // every client one hop from the server
  ClientServerOverlay,  // clients reach the server over the mesh
  PureP2P,              // every node runs every service for itself
  HybridDistributed,    // services placed and replicated by an allocator
};

// CLI spellings: cs, cs-overlay, p2p, hybrid.
std::string_view to_string(Architecture arch) noexcept;
std::optional<Architecture> architecture_from_string(std::string_view name);

struct NodeRuntime {
  std::int64_t initial_battery = 0;
  std::int64_t battery = 0;
  std::int64_t debited = 0;
  bool unbounded = false;  // the external server never runs down
  bool failed = false;
  std::optional<std::uint64_t> failure_tick;
  Position waypoint;
  double speed = 0.0;
  double event_rate = 0.0;
  Velocity velocity;
  // Integer position last published to the game state.
  std::int64_t reported_x = 0;
  std::int64_t reported_y = 0;
  DeadReckoningFilter dr{0.0};
  std::uint64_t next_seq = 0;

  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::uint64_t relayed = 0;
  std::uint64_t arrivals = 0;  // messages this node paid to receive
  std::int64_t work_units = 0;

  friend bool operator==(const NodeRuntime&, const NodeRuntime&) = default;
};

struct BotRuntime {
  Position position;
  Position waypoint;
  double speed = 0.0;
  double event_rate = 0.0;
  Velocity velocity;
  std::int64_t reported_x = 0;
  std::int64_t reported_y = 0;
  DeadReckoningFilter dr{0.0};

  friend bool operator==(const BotRuntime&, const BotRuntime&) = default;
};

struct ReplicaRuntime {
  GameState state;
  std::vector<GameEvent> pending;

  friend bool operator==(const ReplicaRuntime&, const ReplicaRuntime&) = default;
};

// A state update travelling down a dissemination tree.
struct UpdateFlow {
  std::string service;
  BroadcastTree tree;
  std::vector<NodeId> clients;  // ascending
  std::map<NodeId, std::uint64_t> subtree_clients;
  std::uint64_t pending = 0;

  friend bool operator==(const UpdateFlow&, const UpdateFlow&) = default;
};

// One in-flight transmission, arriving at `at` on its deliver tick.
struct Message {
  enum class Kind : std::uint8_t { Event, Update };
  Kind kind = Kind::Event;
  NodeId at{};
  NodeId from{};
  // Event messages.
  NodeId destination{};
  std::string service;
  GameEvent event;
  // Update messages.
  std::uint64_t flow = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

struct Ledger {
  std::uint64_t expected = 0;  // deliveries owed by every message ever sent
  std::uint64_t received = 0;
  std::uint64_t dropped = 0;
  std::uint64_t transmissions = 0;
  std::uint64_t dr_observations = 0;
  std::uint64_t dr_suppressed = 0;
  std::uint64_t hop_samples = 0;
  std::uint64_t hop_sum = 0;
  std::uint32_t hop_max = 0;
  std::int64_t max_load = 0;
  std::uint64_t consistency_checks = 0;
  std::uint64_t consistency_passes = 0;
  std::uint64_t reconfigurations = 0;
  std::uint64_t replacements = 0;

  friend bool operator==(const Ledger&, const Ledger&) = default;
};

struct SimState {
  Scenario scenario;
  Architecture arch = Architecture::HybridDistributed;
  std::uint64_t seed = 0;
  std::uint64_t tick = 0;
  std::vector<ServiceSpec> services;
  OverlayGraph overlay;
  PlacementPlan plan;
  AssignmentMap assignment;
  std::map<NodeId, NodeRuntime> nodes;
  std::map<std::uint32_t, BotRuntime> bots;
  // (service, host) -> replica of a state-bearing service.
  std::map<std::pair<std::string, NodeId>, ReplicaRuntime> replicas;
  // (deliver tick, insertion counter) -> transmission.
  std::map<std::pair<std::uint64_t, std::uint64_t>, Message> queue;
  std::uint64_t inserted = 0;
  std::map<std::uint64_t, UpdateFlow> flows;
  std::uint64_t next_flow = 0;
  std::uint32_t sync_window = 0;
  SplitMix64 rng;
  Ledger ledger;

  // Deliveries carried by messages still in the queue.
  std::uint64_t in_flight() const;

  friend bool operator==(const SimState&, const SimState&) = default;
};

struct NodeMetrics {
  NodeId id{};
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::uint64_t relayed = 0;
  std::int64_t work_units = 0;
  std::optional<std::int64_t> final_battery;  // empty for the external server
  std::optional<std::uint64_t> failure_tick;

  friend bool operator==(const NodeMetrics&, const NodeMetrics&) = default;
};

struct MetricsReport {
  std::vector<NodeMetrics> nodes;  // ascending id
  double mean_hops = 0.0;
  std::uint32_t max_hops = 0;
  std::int64_t max_load = 0;
  std::uint64_t total_messages = 0;
  double consistency_rate = 1.0;
  double dr_suppression = 0.0;

  std::uint64_t ticks = 0;
  std::uint64_t deliveries_expected = 0;
  std::uint64_t deliveries_received = 0;
  std::uint64_t deliveries_dropped = 0;
  std::uint64_t deliveries_in_flight = 0;
  std::uint64_t reconfigurations = 0;
  std::uint64_t replacements = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Aggregates PANs, builds the mesh, places services for `arch` and assigns
// clients. Throws ValidationError on an unusable scenario.
SimState init(const Scenario& scenario, Architecture arch, std::uint64_t seed);

// Advances one tick: mobility, overlay maintenance, message delivery, event
// emission, replica application and update dissemination, compute and
// energy accounting, then failure handling. Throws InvariantViolation if the
// energy ledger or message conservation breaks.
SimState step(SimState state);
void step_in_place(SimState& state);

MetricsReport report(const SimState& state);

MetricsReport run(const Scenario& scenario, Architecture arch, std::uint64_t seed,
                  std::uint64_t ticks);

// Throws InvariantViolation describing the first broken invariant.
void check_invariants(const SimState& state);

}  // namespace mogmesh
