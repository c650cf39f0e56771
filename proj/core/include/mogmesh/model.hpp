#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mogmesh {

// The game-engine software modules a game is assembled from.
enum class ModuleKind : std::uint8_t {
  InputManagement,
  AudioSound,
  SceneGraph,
  PhysicsSystem,
  CollisionDetection,
  GameStateManagement,
  VirtualMapStore,
  ArtificialIntelligence,
  FiniteStateMachine,
  DeadReckoning,
  AccountingScore,
  Networking,
  OverlayManagement,
};

inline constexpr std::array<ModuleKind, 13> kAllModuleKinds = {
    ModuleKind::InputManagement,     ModuleKind::AudioSound,
    ModuleKind::SceneGraph,          ModuleKind::PhysicsSystem,
    ModuleKind::CollisionDetection,  ModuleKind::GameStateManagement,
    ModuleKind::VirtualMapStore,     ModuleKind::ArtificialIntelligence,
    ModuleKind::FiniteStateMachine,  ModuleKind::DeadReckoning,
    ModuleKind::AccountingScore,     ModuleKind::Networking,
    ModuleKind::OverlayManagement,
};

// Where a module is allowed to run.
enum class PlacementClass : std::uint8_t {
  MandatoryEverywhere,
  Distributable,
  DistributableReplicable,
  ExternalServer,
  TrustedNode,
};

PlacementClass classify_module(ModuleKind kind) noexcept;

std::string_view to_string(ModuleKind kind) noexcept;
std::string_view to_string(PlacementClass cls) noexcept;
// Accepts the enumerator spelling, e.g. "GameStateManagement".
std::optional<ModuleKind> module_kind_from_string(std::string_view name);

// Planar coordinates in meters.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double euclidean_distance(const Position& a, const Position& b) noexcept;

// Node identifiers are totally ordered; every deterministic tie-break in the
// library resolves towards the smaller id.
enum class NodeId : std::uint32_t {};

constexpr std::uint32_t value_of(NodeId id) noexcept {
  return static_cast<std::uint32_t>(id);
}

enum class LinkType : std::uint8_t { ShortRange, LongRange };

std::string_view to_string(LinkType type) noexcept;

// A network interface class with its abstract cost figures.
struct LinkClass {
  LinkType type = LinkType::ShortRange;
  double bandwidth = 1.0;         // units/tick, > 0
  double cost_per_message = 0.0;  // abstract cost
  std::int64_t energy_per_message = 0;

  friend auto operator<=>(const LinkClass&, const LinkClass&) = default;
};

// One physical device carried by a player.
struct DeviceProfile {
  std::string device_id;
  std::int64_t compute = 0;  // work-units/tick
  std::int64_t battery = 0;  // energy-units
  std::vector<LinkClass> interfaces;
  std::string owner;

  bool has(LinkType type) const noexcept;
  const LinkClass* interface(LinkType type) const noexcept;

  friend bool operator==(const DeviceProfile&, const DeviceProfile&) = default;
};

// A node of the overlay: either an aggregated player PAN or the external
// server.
struct NodeProfile {
  NodeId node_id{};
  std::int64_t compute = 0;
  std::int64_t battery = 0;
  Position position;
  double radio_range = 1.0;
  std::vector<LinkClass> interfaces;
  // Max clients per hosted service; 0 selects the association default.
  std::int64_t capacity_cap = 0;
  bool trusted = false;
  // The external server has unbounded compute and battery and is reachable
  // only through LongRange links.
  bool external_server = false;

  bool has(LinkType type) const noexcept;
  // Highest bandwidth over all interfaces, 0 without any.
  double best_bandwidth() const noexcept;

  friend bool operator==(const NodeProfile&, const NodeProfile&) = default;
};

}  // namespace mogmesh

template <>
struct std::hash<mogmesh::NodeId> {
  std::size_t operator()(mogmesh::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(mogmesh::value_of(id));
  }
};
