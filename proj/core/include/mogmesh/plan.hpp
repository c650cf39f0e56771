#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mogmesh/model.hpp"

namespace mogmesh {

// A distributable module instance to be placed on the overlay. Names are
// unique; several instances may share a kind (one AI instance per bot).
struct ServiceSpec {
  std::string name;
  ModuleKind kind = ModuleKind::GameStateManagement;
  std::int64_t workload_per_client = 1;  // work-units/tick, > 0
  bool state_bearing = false;

  bool replicable() const noexcept;
  bool trusted_only() const noexcept;

  friend bool operator==(const ServiceSpec&, const ServiceSpec&) = default;
};

// Builds a validated spec; the name defaults to the kind's name and
// GameStateManagement is always state bearing.
ServiceSpec make_service(ModuleKind kind, std::int64_t workload_per_client,
                         std::string name = {});

// Throws ValidationError on mandatory/external kinds, non-positive workloads
// or duplicate names.
void validate_services(const std::vector<ServiceSpec>& services);

// Service name -> consuming node count.
using ClientCounts = std::map<std::string, std::int64_t>;

struct PlacementPlan {
  // Service name -> hosting nodes, ascending.
  std::map<std::string, std::vector<NodeId>> hosts;

  bool hosts_service(const std::string& service, NodeId node) const;
  std::vector<std::string> services_on(NodeId node) const;

  friend bool operator==(const PlacementPlan&, const PlacementPlan&) = default;
};

struct AssignmentMap {
  // Service name -> client -> serving replica. A host maps to itself.
  std::map<std::string, std::map<NodeId, NodeId>> by_service;
  // Clients with no reachable replica; only filled in lenient mode.
  std::map<std::string, std::vector<NodeId>> unserved;

  std::optional<NodeId> replica_of(const std::string& service, NodeId client) const;
  // Replica -> its clients, excluding the replica itself.
  std::map<NodeId, std::vector<NodeId>> clients_of(const std::string& service) const;

  friend bool operator==(const AssignmentMap&, const AssignmentMap&) = default;
};

}  // namespace mogmesh
