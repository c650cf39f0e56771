#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mogmesh/overlay.hpp"
#include "mogmesh/plan.hpp"

namespace mogmesh {

struct RankWeights {
  double compute = 1.0;
  double battery = 1.0;
  double bandwidth = 1.0;

  friend bool operator==(const RankWeights&, const RankWeights&) = default;
};

struct PlacementOptions {
  RankWeights weights;
  // Co-place the physics, collision and game-state replicas.
  bool core_affinity = true;
  double price_increment = 1.0;
};

// ceil(clients * workload / node_compute), at least 1; always 1 for
// non-replicable services.
std::int64_t estimate_replicas(const ServiceSpec& svc, std::int64_t clients,
                               std::int64_t node_compute);

double rank_score(const NodeProfile& node, const RankWeights& weights = {});

// Descending score, ties by ascending id.
std::vector<NodeId> rank_nodes(std::span<const NodeProfile> profiles,
                               const RankWeights& weights = {});

// Services that must share hosts are allocated together as one unit.
struct AllocationUnit {
  std::string name;
  std::vector<std::string> services;
  std::int64_t total_load = 0;  // sum of clients * workload
  bool replicable = false;
  bool trusted_only = false;

  // Budgeted load of a single replica when the unit has `replicas` hosts.
  std::int64_t replica_load(std::int64_t replicas) const;
};

// Ordered by descending total load, then name.
std::vector<AllocationUnit> allocation_units(const std::vector<ServiceSpec>& services,
                                             const ClientCounts& clients,
                                             bool core_affinity);

// Greedy uniform spread: each unit takes the top-ranked eligible node, then
// repeatedly the eligible node farthest (max-min hops) from those chosen.
PlacementPlan allocate_heuristic(const std::vector<ServiceSpec>& services,
                                 const OverlayGraph& g, const ClientCounts& clients,
                                 const PlacementOptions& options = {});

// Everything the clock phase decided, exposed for inspection.
struct AuctionOutcome {
  PlacementPlan plan;
  std::vector<AllocationUnit> units;
  std::map<std::string, std::int64_t> initial_demand;  // by unit name
  std::map<std::string, std::int64_t> final_demand;     // after the clock
  std::map<std::string, std::vector<NodeId>> candidates;  // best first
  std::int64_t slot_load = 0;  // widest per-replica load at initial_demand
  std::map<NodeId, std::int64_t> slots;
  std::map<NodeId, double> valuation;
  double final_price = 0.0;
  std::int64_t rounds = 0;
  std::int64_t matched = 0;
};

// Ascending clock auction: a uniform price rises until total slot demand
// fits the fixed supply; slots whose marginal host is worth less than the
// price are dropped one at a time, cheapest first. The surviving demand is
// then matched to hosts by min-cost maximum flow. A unit that lost replicas
// carries more load per replica than one slot, which plan_violations reports.
AuctionOutcome run_auction(const std::vector<ServiceSpec>& services,
                           const OverlayGraph& g, const ClientCounts& clients,
                           const PlacementOptions& options = {});

PlacementPlan allocate_auction(const std::vector<ServiceSpec>& services,
                               const OverlayGraph& g, const ClientCounts& clients,
                               const PlacementOptions& options = {});

struct PlanCost {
  std::int64_t max_load = 0;  // work-units/tick
  double mean_hops = 0.0;     // over clients that are not their own replica

  friend bool operator==(const PlanCost&, const PlanCost&) = default;
};

// A node's load is the sum over hosted services of (clients served,
// itself included) * workload.
PlanCost plan_cost(const PlacementPlan& plan, const OverlayGraph& g,
                   const AssignmentMap& assignment,
                   const std::vector<ServiceSpec>& services);

// Structural check of an allocator result. Returns one message per broken
// rule; empty means the plan is valid.
std::vector<std::string> plan_violations(const PlacementPlan& plan,
                                         const std::vector<ServiceSpec>& services,
                                         const OverlayGraph& g,
                                         const ClientCounts& clients,
                                         bool core_affinity = true);

}  // namespace mogmesh
