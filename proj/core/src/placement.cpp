#include "mogmesh/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mogmesh/error.hpp"

namespace mogmesh {

namespace {

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  return num <= 0 ? 0 : (num + den - 1) / den;
}

std::string id_str(NodeId id) { return std::to_string(value_of(id)); }

bool is_core(ModuleKind kind) {
  return kind == ModuleKind::PhysicsSystem ||
         kind == ModuleKind::CollisionDetection ||
         kind == ModuleKind::GameStateManagement;
}

const ServiceSpec& find_service(const std::vector<ServiceSpec>& services,
                                const std::string& name) {
  for (const auto& s : services) {
    if (s.name == name) return s;
  }
  throw ValidationError("unknown service " + name);
}

// Nodes allowed to host the unit, best ranked first.
std::vector<NodeId> candidates_for(const AllocationUnit& unit, const OverlayGraph& g,
                                   const RankWeights& weights) {
  std::vector<NodeProfile> eligible;
  for (const auto& p : g.profiles()) {
    if (p.external_server) continue;
    if (unit.trusted_only && !p.trusted) continue;
    eligible.push_back(p);
  }
  if (eligible.empty()) {
    throw ValidationError(unit.trusted_only ? "no trusted node for service " + unit.name
                                            : "no candidate host for service " + unit.name);
  }
  return rank_nodes(eligible, weights);
}

std::int64_t initial_replicas(const AllocationUnit& unit, const OverlayGraph& g,
                              const std::vector<NodeId>& candidates) {
  if (!unit.replicable) return 1;
  std::int64_t best = 0;
  for (NodeId id : candidates) best = std::max(best, g.profile(id).compute);
  if (best <= 0) {
    throw ValidationError("no node with positive compute for service " + unit.name);
  }
  return std::max<std::int64_t>(1, ceil_div(unit.total_load, best));
}

constexpr std::uint64_t kFar = std::numeric_limits<std::uint64_t>::max();

// Greedy farthest-point selection over `eligible` (rank order).
std::vector<NodeId> spread(const std::vector<NodeId>& eligible, std::size_t k,
                           const OverlayGraph& g) {
  std::vector<NodeId> chosen{eligible.front()};
  std::vector<bool> taken(eligible.size(), false);
  taken[0] = true;
  while (chosen.size() < k) {
    std::size_t best = eligible.size();
    std::uint64_t best_gap = 0;
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      if (taken[i]) continue;
      std::uint64_t gap = kFar;
      for (NodeId c : chosen) {
        auto d = g.distance(eligible[i], c);
        gap = std::min<std::uint64_t>(gap, d ? *d : kFar);
      }
      if (best == eligible.size() || gap > best_gap) {
        best = i;
        best_gap = gap;
      }
    }
    taken[best] = true;
    chosen.push_back(eligible[best]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// Successive shortest paths with Bellman-Ford; edges are scanned in insertion
// order so the result is deterministic.
class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t n) : out_(n) {}

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t cap, double cost) {
    out_[from].push_back(edges_.size());
    edges_.push_back({to, cap, cost});
    out_[to].push_back(edges_.size());
    edges_.push_back({from, 0, -cost});
    return edges_.size() - 2;
  }

  std::int64_t flow_on(std::size_t edge) const { return edges_[edge ^ 1].cap; }

  std::int64_t run(std::size_t source, std::size_t sink) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr double kEps = 1e-9;
    const std::size_t n = out_.size();
    std::int64_t total = 0;
    for (;;) {
      std::vector<double> dist(n, kInf);
      std::vector<std::size_t> via(n, edges_.size());
      dist[source] = 0.0;
      for (std::size_t iter = 0; iter + 1 < n; ++iter) {
        bool changed = false;
        for (std::size_t u = 0; u < n; ++u) {
          if (dist[u] == kInf) continue;
          for (std::size_t e : out_[u]) {
            const auto& ed = edges_[e];
            if (ed.cap > 0 && dist[u] + ed.cost < dist[ed.to] - kEps) {
              dist[ed.to] = dist[u] + ed.cost;
              via[ed.to] = e;
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (dist[sink] == kInf) break;
      std::int64_t push = std::numeric_limits<std::int64_t>::max();
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        push = std::min(push, edges_[via[v]].cap);
      }
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].cap -= push;
        edges_[via[v] ^ 1].cap += push;
      }
      total += push;
    }
    return total;
  }

 private:
  struct FlowEdge {
    std::size_t to;
    std::int64_t cap;
    double cost;
  };
  std::vector<FlowEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

}  // namespace

std::int64_t estimate_replicas(const ServiceSpec& svc, std::int64_t clients,
                               std::int64_t node_compute) {
  if (node_compute <= 0) throw ValidationError("node_compute must be > 0");
  if (clients < 0) throw ValidationError("clients must be >= 0");
  if (!svc.replicable()) return 1;
  return std::max<std::int64_t>(1, ceil_div(clients * svc.workload_per_client, node_compute));
}

double rank_score(const NodeProfile& node, const RankWeights& w) {
  return w.compute * static_cast<double>(node.compute) +
         w.battery * static_cast<double>(node.battery) +
         w.bandwidth * node.best_bandwidth();
}

std::vector<NodeId> rank_nodes(std::span<const NodeProfile> profiles,
                               const RankWeights& weights) {
  if (profiles.empty()) throw ValidationError("rank_nodes: no nodes");
  std::vector<std::pair<double, NodeId>> scored;
  scored.reserve(profiles.size());
  for (const auto& p : profiles) scored.emplace_back(rank_score(p, weights), p.node_id);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<NodeId> out;
  out.reserve(scored.size());
  for (const auto& [s, id] : scored) out.push_back(id);
  return out;
}

std::int64_t AllocationUnit::replica_load(std::int64_t replicas) const {
  return ceil_div(total_load, std::max<std::int64_t>(1, replicas));
}

std::vector<AllocationUnit> allocation_units(const std::vector<ServiceSpec>& services,
                                             const ClientCounts& clients,
                                             bool core_affinity) {
  validate_services(services);
  auto load_of = [&](const ServiceSpec& s) {
    auto it = clients.find(s.name);
    if (it == clients.end()) throw ValidationError("no client count for service " + s.name);
    if (it->second < 0) throw ValidationError("negative client count for " + s.name);
    return it->second * s.workload_per_client;
  };

  std::vector<AllocationUnit> units;
  AllocationUnit core;
  core.replicable = true;
  for (const auto& s : services) {
    if (core_affinity && is_core(s.kind)) {
      core.services.push_back(s.name);
      core.total_load += load_of(s);
      continue;
    }
    AllocationUnit u;
    u.name = s.name;
    u.services = {s.name};
    u.total_load = load_of(s);
    u.replicable = s.replicable();
    u.trusted_only = s.trusted_only();
    units.push_back(std::move(u));
  }
  if (core.services.size() == 1) {
    core.name = core.services.front();
    units.push_back(std::move(core));
  } else if (!core.services.empty()) {
    core.name = "core";
    for (const auto& n : core.services) core.name += ":" + n;
    units.push_back(std::move(core));
  }
  std::sort(units.begin(), units.end(), [](const auto& a, const auto& b) {
    if (a.total_load != b.total_load) return a.total_load > b.total_load;
    return a.name < b.name;
  });
  return units;
}

PlacementPlan allocate_heuristic(const std::vector<ServiceSpec>& services,
                                 const OverlayGraph& g, const ClientCounts& clients,
                                 const PlacementOptions& options) {
  auto units = allocation_units(services, clients, options.core_affinity);
  std::map<NodeId, std::int64_t> residual;
  for (const auto& p : g.profiles()) residual[p.node_id] = p.compute;

  PlacementPlan plan;
  for (const auto& unit : units) {
    auto ranked = candidates_for(unit, g, options.weights);
    const std::int64_t first_k = initial_replicas(unit, g, ranked);
    const std::int64_t last_k =
        unit.replicable ? static_cast<std::int64_t>(ranked.size()) : 1;

    std::vector<NodeId> chosen;
    std::int64_t load = 0;
    // Add replicas until enough nodes can absorb the per-replica share.
    for (std::int64_t k = first_k; k <= last_k && chosen.empty(); ++k) {
      load = unit.replica_load(k);
      std::vector<NodeId> eligible;
      for (NodeId id : ranked) {
        if (residual[id] >= load) eligible.push_back(id);
      }
      if (static_cast<std::int64_t>(eligible.size()) >= k) {
        chosen = spread(eligible, static_cast<std::size_t>(k), g);
      }
    }
    if (chosen.empty()) {
      throw ValidationError("insufficient compute for service " + unit.name);
    }
    for (NodeId id : chosen) residual[id] -= load;
    for (const auto& name : unit.services) plan.hosts[name] = chosen;
  }
  return plan;
}

AuctionOutcome run_auction(const std::vector<ServiceSpec>& services,
                           const OverlayGraph& g, const ClientCounts& clients,
                           const PlacementOptions& options) {
  if (!(options.price_increment > 0.0)) {
    throw ValidationError("price_increment must be > 0");
  }
  AuctionOutcome out;
  out.units = allocation_units(services, clients, options.core_affinity);
  const auto& units = out.units;
  if (units.empty()) return out;

  std::vector<NodeId> sellers;
  for (const auto& p : g.profiles()) {
    if (p.external_server) continue;
    sellers.push_back(p.node_id);
    out.valuation[p.node_id] = rank_score(p, options.weights);
  }

  std::vector<std::int64_t> demand;
  for (const auto& u : units) {
    auto cands = candidates_for(u, g, options.weights);
    demand.push_back(initial_replicas(u, g, cands));
    out.initial_demand[u.name] = demand.back();
    out.candidates[u.name] = std::move(cands);
  }

  // Every node offers slots sized to the widest per-replica load at the
  // initial estimates. Supply stays fixed while the clock runs.
  for (std::size_t i = 0; i < units.size(); ++i) {
    out.slot_load = std::max(out.slot_load, units[i].replica_load(demand[i]));
  }
  std::int64_t supply = 0;
  for (NodeId id : sellers) {
    std::int64_t c = std::max<std::int64_t>(0, g.profile(id).compute);
    std::int64_t s = out.slot_load == 0 ? static_cast<std::int64_t>(units.size())
                                        : c / out.slot_load;
    out.slots[id] = s;
    supply += s;
  }
  auto benefit = [&](std::size_t i, double price) {
    const auto& cands = out.candidates.at(units[i].name);
    auto d = static_cast<std::size_t>(demand[i]);
    if (d > cands.size()) return -std::numeric_limits<double>::infinity();
    return out.valuation.at(cands[d - 1]) - price;
  };

  std::int64_t wanted = 0;
  for (auto d : demand) wanted += d;
  double price = 0.0;
  while (wanted > supply) {
    if (std::all_of(demand.begin(), demand.end(), [](std::int64_t d) { return d <= 1; })) {
      throw ValidationError("insufficient hosting supply for " +
                            std::to_string(units.size()) + " services");
    }
    price += options.price_increment;
    ++out.rounds;
    while (wanted > supply) {
      std::size_t drop = units.size();
      double lowest = 0.0;
      for (std::size_t i = 0; i < units.size(); ++i) {
        if (demand[i] <= 1) continue;
        double b = benefit(i, price);
        if (b < 0.0 && (drop == units.size() || b <= lowest)) {
          drop = i;
          lowest = b;
        }
      }
      if (drop == units.size()) break;
      --demand[drop];
      --wanted;
    }
  }
  out.final_price = price;
  for (std::size_t i = 0; i < units.size(); ++i) out.final_demand[units[i].name] = demand[i];

  // Flow network: source -> unit -> host -> sink. The first slot of every
  // unit carries a large bonus so no unit is starved while another takes a
  // second replica; host valuations break the remaining ties.
  const std::size_t source = 0;
  const std::size_t unit_base = 1;
  const std::size_t host_base = unit_base + units.size();
  const std::size_t sink = host_base + sellers.size();
  double biggest = 0.0;
  for (const auto& [id, v] : out.valuation) biggest = std::max(biggest, std::abs(v));
  const double bonus = 1.0 + 2.0 * static_cast<double>(wanted + 1) * (biggest + 1.0);

  MinCostFlow flow(sink + 1);
  std::vector<std::vector<std::pair<std::size_t, NodeId>>> unit_edges(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    flow.add_edge(source, unit_base + i, 1, -bonus);
    if (demand[i] > 1) flow.add_edge(source, unit_base + i, demand[i] - 1, 0.0);
    for (NodeId id : out.candidates.at(units[i].name)) {
      auto pos = std::lower_bound(sellers.begin(), sellers.end(), id) - sellers.begin();
      std::size_t e = flow.add_edge(unit_base + i, host_base + static_cast<std::size_t>(pos), 1,
                                    -out.valuation.at(id));
      unit_edges[i].emplace_back(e, id);
    }
  }
  for (std::size_t j = 0; j < sellers.size(); ++j) {
    flow.add_edge(host_base + j, sink, out.slots.at(sellers[j]), 0.0);
  }
  out.matched = flow.run(source, sink);

  for (std::size_t i = 0; i < units.size(); ++i) {
    std::vector<NodeId> hosts;
    for (auto [e, id] : unit_edges[i]) {
      if (flow.flow_on(e) > 0) hosts.push_back(id);
    }
    if (hosts.empty()) {
      throw ValidationError("insufficient hosting supply for service " + units[i].name);
    }
    std::sort(hosts.begin(), hosts.end());
    for (const auto& name : units[i].services) out.plan.hosts[name] = hosts;
  }
  return out;
}

PlacementPlan allocate_auction(const std::vector<ServiceSpec>& services,
                               const OverlayGraph& g, const ClientCounts& clients,
                               const PlacementOptions& options) {
  return run_auction(services, g, clients, options).plan;
}

PlanCost plan_cost(const PlacementPlan& plan, const OverlayGraph& g,
                   const AssignmentMap& assignment,
                   const std::vector<ServiceSpec>& services) {
  std::map<NodeId, std::int64_t> load;
  std::uint64_t hop_sum = 0;
  std::uint64_t hop_count = 0;
  for (const auto& [name, mapping] : assignment.by_service) {
    const auto& svc = find_service(services, name);
    for (const auto& [client, replica] : mapping) {
      if (!plan.hosts_service(name, replica)) {
        throw ValidationError("assignment of " + name + " uses non-host " + id_str(replica));
      }
      if (!g.contains(client) || !g.contains(replica)) {
        throw ValidationError("assignment of " + name + " references unknown node");
      }
      load[replica] += svc.workload_per_client;
      if (client == replica) continue;
      auto d = g.distance(client, replica);
      if (!d) {
        throw ValidationError("client " + id_str(client) + " cannot reach replica " +
                              id_str(replica));
      }
      hop_sum += *d;
      ++hop_count;
    }
  }
  PlanCost cost;
  for (const auto& [id, l] : load) cost.max_load = std::max(cost.max_load, l);
  if (hop_count > 0) {
    cost.mean_hops = static_cast<double>(hop_sum) / static_cast<double>(hop_count);
  }
  return cost;
}

std::vector<std::string> plan_violations(const PlacementPlan& plan,
                                         const std::vector<ServiceSpec>& services,
                                         const OverlayGraph& g,
                                         const ClientCounts& clients,
                                         bool core_affinity) {
  std::vector<std::string> bad;
  for (const auto& [name, hosts] : plan.hosts) {
    bool known = std::any_of(services.begin(), services.end(),
                             [&](const ServiceSpec& s) { return s.name == name; });
    if (!known) bad.push_back("plan names unknown service " + name);
  }
  for (const auto& s : services) {
    auto it = plan.hosts.find(s.name);
    if (it == plan.hosts.end() || it->second.empty()) {
      bad.push_back(s.name + " has no host");
      continue;
    }
    const auto& hosts = it->second;
    if (!s.replicable() && hosts.size() != 1) {
      bad.push_back(s.name + " is not replicable but has " +
                    std::to_string(hosts.size()) + " hosts");
    }
    if (!std::is_sorted(hosts.begin(), hosts.end()) ||
        std::adjacent_find(hosts.begin(), hosts.end()) != hosts.end()) {
      bad.push_back(s.name + " host list is not strictly ascending");
    }
    for (NodeId h : hosts) {
      if (!g.contains(h)) {
        bad.push_back(s.name + " hosted on unknown node " + id_str(h));
        continue;
      }
      const auto& p = g.profile(h);
      if (p.external_server) bad.push_back(s.name + " hosted on the external server");
      if (s.trusted_only() && !p.trusted) {
        bad.push_back(s.name + " hosted on untrusted node " + id_str(h));
      }
    }
  }
  if (!bad.empty()) return bad;

  std::map<NodeId, std::int64_t> budget;
  for (const auto& unit : allocation_units(services, clients, core_affinity)) {
    const auto& hosts = plan.hosts.at(unit.services.front());
    for (const auto& name : unit.services) {
      if (plan.hosts.at(name) != hosts) {
        bad.push_back(name + " is not co-placed with " + unit.services.front());
      }
    }
    const auto load = unit.replica_load(static_cast<std::int64_t>(hosts.size()));
    for (NodeId h : hosts) budget[h] += load;
  }
  for (const auto& [id, load] : budget) {
    if (load > g.profile(id).compute) {
      bad.push_back("node " + id_str(id) + " budgeted " + std::to_string(load) +
                    " work-units over compute " + std::to_string(g.profile(id).compute));
    }
  }
  return bad;
}

}  // namespace mogmesh
