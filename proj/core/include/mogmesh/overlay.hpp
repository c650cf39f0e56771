#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "mogmesh/model.hpp"

namespace mogmesh {

struct OverlayOptions {
  // Hop-equivalents charged for an edge to the external server.
  std::uint32_t long_range_hop_cost = 1;

  friend bool operator==(const OverlayOptions&, const OverlayOptions&) = default;
};

struct Edge {
  NodeId to{};
  std::uint32_t weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Wireless mesh over a set of nodes. Two ordinary nodes are adjacent iff
// their distance is within the smaller of their radio ranges; the external
// server is adjacent to every node with a LongRange interface.
//
// Routes are shortest paths in hop-equivalents. Searches visit neighbours in
// ascending id order, so routes and trees are reproducible.
//
// Values are immutable after construction; reconfigure() returns a new graph.
class OverlayGraph {
 public:
  OverlayGraph() = default;

  std::size_t size() const noexcept { return nodes_.size(); }
  const OverlayOptions& options() const noexcept { return options_; }

  // Ascending by id.
  std::span<const NodeProfile> profiles() const noexcept { return nodes_; }
  std::vector<NodeId> node_ids() const;
  bool contains(NodeId id) const noexcept;
  const NodeProfile& profile(NodeId id) const;

  // Ascending by id.
  std::span<const Edge> neighbors(NodeId id) const;
  bool adjacent(NodeId a, NodeId b) const;
  // Undirected edge list with first < second, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // nullopt when b is unreachable from a.
  std::optional<std::uint32_t> distance(NodeId a, NodeId b) const;
  // First hop on the route from `from` to `to`; nullopt if unreachable or
  // from == to.
  std::optional<NodeId> next_hop(NodeId from, NodeId to) const;

  // Largest finite distance from `from`.
  std::uint32_t eccentricity(NodeId from) const;

  friend bool operator==(const OverlayGraph&, const OverlayGraph&) = default;

 private:
  friend OverlayGraph build_mesh(std::vector<NodeProfile>, const OverlayOptions&);
  friend struct OverlayMutator;

  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  std::size_t index_of(NodeId id) const;
  std::optional<std::uint32_t> edge_weight(const NodeProfile& a,
                                           const NodeProfile& b) const;
  void connect(std::size_t i);
  void compute_routes();

  OverlayOptions options_;
  std::vector<NodeProfile> nodes_;
  std::vector<std::vector<Edge>> adj_;
  std::vector<std::uint32_t> dist_;  // row-major n x n
  std::vector<std::uint32_t> next_;  // index of the first hop
};

// Throws ValidationError on duplicate ids or non-positive radio ranges.
OverlayGraph build_mesh(std::vector<NodeProfile> profiles,
                        const OverlayOptions& options = {});

// Throws ValidationError when either node is unknown.
std::optional<std::uint32_t> hop_distance(const OverlayGraph& g, NodeId a, NodeId b);

struct Join {
  NodeProfile profile;
};
struct Leave {
  NodeId id{};
};
struct Move {
  NodeId id{};
  Position to;
};
using TopologyEvent = std::variant<Join, Leave, Move>;

// Equivalent to build_mesh over the updated profile set; edges are patched
// incrementally and routes recomputed.
OverlayGraph reconfigure(const OverlayGraph& g, const TopologyEvent& ev);

// Shortest-path tree rooted at `root` covering its connected component.
class BroadcastTree {
 public:
  struct Entry {
    std::optional<NodeId> parent;
    std::uint32_t depth = 0;
    std::vector<NodeId> children;  // ascending

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  BroadcastTree() = default;
  explicit BroadcastTree(NodeId root);

  NodeId root() const noexcept { return root_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(NodeId id) const noexcept { return entries_.contains(id); }
  const Entry& at(NodeId id) const;
  const std::map<NodeId, Entry>& entries() const noexcept { return entries_; }
  std::uint32_t max_depth() const noexcept;

  // Adds `child` below `parent`, which must already be in the tree.
  void attach(NodeId child, NodeId parent, std::uint32_t depth);

  friend bool operator==(const BroadcastTree&, const BroadcastTree&) = default;

 private:
  NodeId root_{};
  std::map<NodeId, Entry> entries_;
};

BroadcastTree broadcast_cover(const OverlayGraph& g, NodeId root);

}  // namespace mogmesh
