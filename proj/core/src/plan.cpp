#include "mogmesh/plan.hpp"

#include <algorithm>
#include <set>

#include "mogmesh/error.hpp"

namespace mogmesh {

bool ServiceSpec::replicable() const noexcept {
  return classify_module(kind) == PlacementClass::DistributableReplicable;
}

bool ServiceSpec::trusted_only() const noexcept {
  return classify_module(kind) == PlacementClass::TrustedNode;
}

ServiceSpec make_service(ModuleKind kind, std::int64_t workload_per_client,
                         std::string name) {
  ServiceSpec svc;
  svc.kind = kind;
  svc.workload_per_client = workload_per_client;
  svc.name = name.empty() ? std::string(to_string(kind)) : std::move(name);
  svc.state_bearing = kind == ModuleKind::GameStateManagement;
  validate_services({svc});
  return svc;
}

void validate_services(const std::vector<ServiceSpec>& services) {
  std::set<std::string> names;
  for (const auto& s : services) {
    auto cls = classify_module(s.kind);
    if (cls == PlacementClass::MandatoryEverywhere ||
        cls == PlacementClass::ExternalServer) {
      throw ValidationError("service " + s.name + ": " +
                            std::string(to_string(s.kind)) + " is not placeable");
    }
    if (s.workload_per_client <= 0) {
      throw ValidationError("service " + s.name + ": workload must be > 0");
    }
    if (s.name.empty()) throw ValidationError("service name must not be empty");
    if (!names.insert(s.name).second) {
      throw ValidationError("duplicate service name " + s.name);
    }
  }
}

bool PlacementPlan::hosts_service(const std::string& service, NodeId node) const {
  auto it = hosts.find(service);
  return it != hosts.end() &&
         std::binary_search(it->second.begin(), it->second.end(), node);
}

std::vector<std::string> PlacementPlan::services_on(NodeId node) const {
  std::vector<std::string> out;
  for (const auto& [name, nodes] : hosts) {
    if (std::binary_search(nodes.begin(), nodes.end(), node)) out.push_back(name);
  }
  return out;
}

std::optional<NodeId> AssignmentMap::replica_of(const std::string& service,
                                                NodeId client) const {
  auto it = by_service.find(service);
  if (it == by_service.end()) return std::nullopt;
  auto jt = it->second.find(client);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

std::map<NodeId, std::vector<NodeId>> AssignmentMap::clients_of(
    const std::string& service) const {
  std::map<NodeId, std::vector<NodeId>> out;
  auto it = by_service.find(service);
  if (it == by_service.end()) return out;
  for (const auto& [client, replica] : it->second) {
    if (client != replica) out[replica].push_back(client);
  }
  return out;
}

}  // namespace mogmesh
