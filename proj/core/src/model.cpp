#include "mogmesh/model.hpp"

#include <algorithm>
#include <cmath>

namespace mogmesh {

PlacementClass classify_module(ModuleKind kind) noexcept {
  switch (kind) {
    case ModuleKind::InputManagement:
    case ModuleKind::AudioSound:
    case ModuleKind::SceneGraph:
    case ModuleKind::DeadReckoning:
    case ModuleKind::Networking:
      return PlacementClass::MandatoryEverywhere;
    case ModuleKind::PhysicsSystem:
    case ModuleKind::CollisionDetection:
    case ModuleKind::GameStateManagement:
      return PlacementClass::DistributableReplicable;
    case ModuleKind::ArtificialIntelligence:
    case ModuleKind::FiniteStateMachine:
    case ModuleKind::OverlayManagement:
      return PlacementClass::Distributable;
    case ModuleKind::VirtualMapStore:
      return PlacementClass::ExternalServer;
    case ModuleKind::AccountingScore:
      return PlacementClass::TrustedNode;
  }
  return PlacementClass::MandatoryEverywhere;
}

std::string_view to_string(ModuleKind kind) noexcept {
  switch (kind) {
    case ModuleKind::InputManagement: return "InputManagement";
    case ModuleKind::AudioSound: return "AudioSound";
    case ModuleKind::SceneGraph: return "SceneGraph";
    case ModuleKind::PhysicsSystem: return "PhysicsSystem";
    case ModuleKind::CollisionDetection: return "CollisionDetection";
    case ModuleKind::GameStateManagement: return "GameStateManagement";
    case ModuleKind::VirtualMapStore: return "VirtualMapStore";
    case ModuleKind::ArtificialIntelligence: return "ArtificialIntelligence";
    case ModuleKind::FiniteStateMachine: return "FiniteStateMachine";
    case ModuleKind::DeadReckoning: return "DeadReckoning";
    case ModuleKind::AccountingScore: return "AccountingScore";
    case ModuleKind::Networking: return "Networking";
    case ModuleKind::OverlayManagement: return "OverlayManagement";
  }
  return "?";
}

std::string_view to_string(PlacementClass cls) noexcept {
  switch (cls) {
    case PlacementClass::MandatoryEverywhere: return "MandatoryEverywhere";
    case PlacementClass::Distributable: return "Distributable";
    case PlacementClass::DistributableReplicable: return "DistributableReplicable";
    case PlacementClass::ExternalServer: return "ExternalServer";
    case PlacementClass::TrustedNode: return "TrustedNode";
  }
  return "?";
}

std::optional<ModuleKind> module_kind_from_string(std::string_view name) {
  for (ModuleKind kind : kAllModuleKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

double euclidean_distance(const Position& a, const Position& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string_view to_string(LinkType type) noexcept {
  return type == LinkType::LongRange ? "long_range" : "short_range";
}

bool DeviceProfile::has(LinkType type) const noexcept {
  return interface(type) != nullptr;
}

const LinkClass* DeviceProfile::interface(LinkType type) const noexcept {
  auto it = std::find_if(interfaces.begin(), interfaces.end(),
                         [type](const LinkClass& l) { return l.type == type; });
  return it == interfaces.end() ? nullptr : &*it;
}

bool NodeProfile::has(LinkType type) const noexcept {
  return std::any_of(interfaces.begin(), interfaces.end(),
                     [type](const LinkClass& l) { return l.type == type; });
}

double NodeProfile::best_bandwidth() const noexcept {
  double best = 0.0;
  for (const auto& l : interfaces) best = std::max(best, l.bandwidth);
  return best;
}

}  // namespace mogmesh
