#pragma once

#include <cstdint>
#include <string>

#include "mogmesh/simulator.hpp"

namespace mogmesh::testing {

// Energy a node has been charged, recounted from its activity counters.
// Exact for nodes that are still alive: every counted action was paid in full.
inline std::int64_t recounted_debits(const Scenario& sc, const NodeRuntime& n) {
  const auto& e = sc.energy;
  return e.send * static_cast<std::int64_t>(n.sent) +
         e.relay * static_cast<std::int64_t>(n.relayed) +
         e.receive * static_cast<std::int64_t>(n.arrivals) + e.compute * n.work_units;
}

// Empty string when the energy ledger of every node is consistent.
inline std::string energy_ledger_error(const SimState& s) {
  for (const auto& [id, n] : s.nodes) {
    const std::string who = "node " + std::to_string(value_of(id)) + ": ";
    if (n.unbounded) continue;
    if (n.battery < 0) return who + "negative battery";
    if ((n.battery == 0) != n.failed) return who + "failed flag disagrees with battery";
    if (n.failed != n.failure_tick.has_value()) return who + "failure tick mismatch";
    if (!n.failed && n.initial_battery - recounted_debits(s.scenario, n) != n.battery) {
      return who + "battery " + std::to_string(n.battery) + " != initial " +
             std::to_string(n.initial_battery) + " - debits " +
             std::to_string(recounted_debits(s.scenario, n));
    }
  }
  return {};
}

}  // namespace mogmesh::testing
