#include "mogmesh/association.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mogmesh/error.hpp"

namespace mogmesh {

namespace {

std::string id_str(NodeId id) { return std::to_string(value_of(id)); }

std::vector<NodeId> clients_of(const std::vector<NodeId>& hosts, const OverlayGraph& g) {
  std::vector<NodeId> out;
  for (const auto& p : g.profiles()) {
    if (p.external_server) continue;
    if (!std::binary_search(hosts.begin(), hosts.end(), p.node_id)) out.push_back(p.node_id);
  }
  return out;
}

}  // namespace

CapacityFn default_capacity(const PlacementPlan& plan, const OverlayGraph& g) {
  std::map<std::string, std::int64_t> fallback;
  for (const auto& [name, hosts] : plan.hosts) {
    auto n = static_cast<std::int64_t>(clients_of(hosts, g).size());
    auto r = std::max<std::int64_t>(1, static_cast<std::int64_t>(hosts.size()));
    fallback[name] = (n + r - 1) / r + 1;
  }
  std::map<NodeId, std::int64_t> explicit_caps;
  for (const auto& p : g.profiles()) {
    if (p.capacity_cap > 0) explicit_caps[p.node_id] = p.capacity_cap;
  }
  return [fallback = std::move(fallback), explicit_caps = std::move(explicit_caps)](
             const std::string& service, NodeId host) -> std::int64_t {
    if (auto it = explicit_caps.find(host); it != explicit_caps.end()) return it->second;
    auto it = fallback.find(service);
    return it == fallback.end() ? 0 : it->second;
  };
}

AssignmentMap assign_clients(const PlacementPlan& plan, const OverlayGraph& g,
                             const CapacityFn& caps, const AssignOptions& options) {
  AssignmentMap out;
  for (const auto& [name, hosts] : plan.hosts) {
    if (hosts.empty()) throw ValidationError("service " + name + " has no replica");
    auto& mapping = out.by_service[name];
    std::map<NodeId, std::int64_t> residual;
    for (NodeId h : hosts) {
      if (!g.contains(h)) throw ValidationError("replica " + id_str(h) + " not in overlay");
      mapping[h] = h;
      residual[h] = caps(name, h);
    }
    for (NodeId client : clients_of(hosts, g)) {
      std::optional<NodeId> best;
      std::uint32_t best_d = 0;
      bool reachable = false;
      for (NodeId h : hosts) {
        auto d = g.distance(client, h);
        if (!d) continue;
        reachable = true;
        if (residual[h] <= 0) continue;
        if (!best || *d < best_d) {
          best = h;
          best_d = *d;
        }
      }
      if (!reachable) {
        if (options.lenient) {
          out.unserved[name].push_back(client);
          continue;
        }
        throw ValidationError("client " + id_str(client) + " cannot reach any replica of " +
                              name);
      }
      if (!best) {
        if (options.lenient) {
          out.unserved[name].push_back(client);
          continue;
        }
        throw ValidationError("service capacity exhausted: " + name);
      }
      mapping[client] = *best;
      --residual[*best];
    }
  }
  return out;
}

AssignmentMap assign_clients(const PlacementPlan& plan, const OverlayGraph& g) {
  return assign_clients(plan, g, default_capacity(plan, g));
}

BroadcastTree build_dissemination_tree(const OverlayGraph& g, NodeId replica,
                                       std::span<const NodeId> clients) {
  BroadcastTree full = broadcast_cover(g, replica);
  std::set<NodeId> keep{replica};
  for (NodeId c : clients) {
    if (!full.contains(c)) {
      throw ValidationError("client " + id_str(c) + " unreachable from replica " +
                            id_str(replica));
    }
    for (NodeId v = c; keep.insert(v).second;) v = *full.at(v).parent;
  }
  BroadcastTree pruned(replica);
  // Shallow nodes first so every parent is attached before its children.
  std::vector<std::pair<std::uint32_t, NodeId>> order;
  for (NodeId v : keep) {
    if (v != replica) order.emplace_back(full.at(v).depth, v);
  }
  std::sort(order.begin(), order.end());
  for (auto [depth, v] : order) pruned.attach(v, *full.at(v).parent, depth);
  return pruned;
}

}  // namespace mogmesh
