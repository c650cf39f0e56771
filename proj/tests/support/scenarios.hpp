#pragma once

// Programmatic scenario builders shared by simulator tests and the
// acceptance suite.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mogmesh/plan.hpp"
#include "mogmesh/rng.hpp"
#include "mogmesh/scenario.hpp"

namespace mogmesh::testing {

inline PlayerSpec player(std::uint32_t id, double x, double y, std::int64_t compute = 20,
                         std::int64_t battery = 1000, double range = 15.0) {
  PlayerSpec p;
  p.id = NodeId{id};
  p.position = {x, y};
  p.radio_range = range;
  DeviceProfile d;
  d.device_id = "dev";
  d.compute = compute;
  d.battery = battery;
  d.interfaces = {{LinkType::ShortRange, 10.0, 1.0, 1}};
  p.devices = {d};
  return p;
}

inline ServiceSpec service(ModuleKind kind, std::int64_t workload, std::string name = {}) {
  return make_service(kind, workload, std::move(name));
}

// Players on a horizontal line, 10 units apart, so consecutive ids are one
// hop from each other.
inline Scenario line_scenario(std::uint32_t n, std::int64_t battery = 1000) {
  Scenario sc;
  for (std::uint32_t i = 1; i <= n; ++i) sc.players.push_back(player(i, 10.0 * i, 50, 20, battery));
  sc.services = {service(ModuleKind::GameStateManagement, 1)};
  sc.energy = {0, 0, 0, 0, false};
  return sc;
}

// n players, each within radio range of an earlier one, so the initial mesh
// is connected. Every player has a capacity cap.
inline Scenario connected_scenario(SplitMix64& rng, std::uint32_t n, bool mobile) {
  Scenario sc;
  sc.arena_width = 100;
  sc.arena_height = 100;
  std::vector<Position> placed;
  for (std::uint32_t i = 1; i <= n; ++i) {
    Position pos{50, 50};
    if (!placed.empty()) {
      const Position& anchor = placed[rng.next() % placed.size()];
      double dx = (rng.uniform() - 0.5) * 24.0;
      double dy = (rng.uniform() - 0.5) * 24.0;
      pos = {std::clamp(anchor.x + dx, 0.0, 100.0), std::clamp(anchor.y + dy, 0.0, 100.0)};
    }
    placed.push_back(pos);
    auto compute = static_cast<std::int64_t>(10 + rng.next() % 30);
    auto p = player(i, pos.x, pos.y, compute, 100000, 18.0);
    p.speed = mobile ? rng.uniform() * 1.5 : 0.0;
    p.event_rate = 0.1 + 0.4 * rng.uniform();
    p.capacity_cap = static_cast<std::int64_t>(3 + rng.next() % 3);
    sc.players.push_back(std::move(p));
  }
  sc.services = {service(ModuleKind::PhysicsSystem, 1 + static_cast<std::int64_t>(rng.next() % 3)),
                 service(ModuleKind::GameStateManagement, 1 + static_cast<std::int64_t>(rng.next() % 3)),
                 service(ModuleKind::ArtificialIntelligence, 1)};
  sc.core_affinity = rng.uniform() < 0.5;
  sc.energy = {1, 1, 1, 0, rng.uniform() < 0.5};
  return sc;
}

// Small random scenario with tight batteries so nodes run dry mid-run.
inline Scenario draining_scenario(SplitMix64& rng) {
  Scenario sc;
  sc.arena_width = 60;
  sc.arena_height = 60;
  auto n = static_cast<std::uint32_t>(4 + rng.next() % 7);
  for (std::uint32_t i = 1; i <= n; ++i) {
    auto p = player(i, rng.uniform() * 60, rng.uniform() * 60,
                    static_cast<std::int64_t>(5 + rng.next() % 30),
                    static_cast<std::int64_t>(rng.next() % 400), 20.0 + rng.uniform() * 20);
    if (rng.uniform() < 0.3) {
      p.devices.front().interfaces.push_back({LinkType::LongRange, 5.0, 3.0, 2});
    }
    p.speed = rng.uniform() * 2.0;
    p.event_rate = rng.uniform();
    p.trusted = i == 1;
    sc.players.push_back(std::move(p));
  }
  if (rng.uniform() < 0.5) sc.external_server = ExternalServerSpec{NodeId{500}, {30, 30}};
  if (rng.uniform() < 0.5) {
    BotSpec b;
    b.id = 900;
    b.position = {10, 10};
    b.speed = 1.0;
    b.event_rate = 0.5;
    sc.bots.push_back(b);
  }
  sc.services = {service(ModuleKind::GameStateManagement, 1),
                 service(ModuleKind::PhysicsSystem, 1),
                 service(ModuleKind::AccountingScore, 1)};
  sc.energy = {static_cast<std::int64_t>(rng.next() % 4), static_cast<std::int64_t>(rng.next() % 3),
               static_cast<std::int64_t>(rng.next() % 3), static_cast<std::int64_t>(rng.next() % 2),
               rng.uniform() < 0.5};
  sc.allocator = rng.uniform() < 0.5 ? AllocatorKind::Heuristic : AllocatorKind::Auction;
  sc.dr_threshold = rng.uniform() * 3.0;
  return sc;
}

}  // namespace mogmesh::testing
