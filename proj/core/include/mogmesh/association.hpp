#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "mogmesh/overlay.hpp"
#include "mogmesh/plan.hpp"

namespace mogmesh {

// Max clients `host` may serve for `service`.
using CapacityFn = std::function<std::int64_t(const std::string& service, NodeId host)>;

// Uses each host's capacity_cap when set, otherwise
// ceil(clients of the service / replica count) + 1.
CapacityFn default_capacity(const PlacementPlan& plan, const OverlayGraph& g);

struct AssignOptions {
  // Record clients without a reachable replica, or whose reachable replicas
  // are all full, in `unserved` instead of throwing.
  bool lenient = false;
};

// Clients in ascending id order each take the nearest replica with residual
// capacity; ties go to the smaller replica id. Every non-host node of the
// graph (the external server excluded) is a client of every service.
AssignmentMap assign_clients(const PlacementPlan& plan, const OverlayGraph& g,
                             const CapacityFn& caps, const AssignOptions& options = {});

AssignmentMap assign_clients(const PlacementPlan& plan, const OverlayGraph& g);

// Shortest-path tree from `replica`, pruned to branches that lead to a
// client. Throws ValidationError if a client is unreachable.
BroadcastTree build_dissemination_tree(const OverlayGraph& g, NodeId replica,
                                       std::span<const NodeId> clients);

}  // namespace mogmesh
