#include "mogmesh/overlay.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "mogmesh/error.hpp"

namespace mogmesh {

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

std::string id_str(NodeId id) { return std::to_string(value_of(id)); }

struct SearchResult {
  std::vector<std::uint32_t> dist;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> order;  // settlement order, non-decreasing dist
};

// Breadth-first search generalized to small integer weights with one FIFO
// bucket per distance. With unit weights this is plain FIFO BFS: a node's
// parent is whichever node discovered it first.
SearchResult search(const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>& adj,
                    std::uint32_t src) {
  const std::size_t n = adj.size();
  SearchResult r{std::vector<std::uint32_t>(n, kInf),
                 std::vector<std::uint32_t>(n, kInf), {}};
  std::vector<bool> settled(n, false);
  std::vector<std::deque<std::uint32_t>> buckets(1);
  r.dist[src] = 0;
  buckets[0].push_back(src);
  for (std::size_t d = 0; d < buckets.size(); ++d) {
    while (!buckets[d].empty()) {
      std::uint32_t u = buckets[d].front();
      buckets[d].pop_front();
      if (settled[u] || r.dist[u] != d) continue;
      settled[u] = true;
      r.order.push_back(u);
      for (auto [v, w] : adj[u]) {
        std::uint32_t nd = static_cast<std::uint32_t>(d) + w;
        if (nd < r.dist[v]) {
          r.dist[v] = nd;
          r.parent[v] = u;
          if (buckets.size() <= nd) buckets.resize(nd + 1);
          buckets[nd].push_back(v);
        }
      }
    }
  }
  return r;
}

}  // namespace

std::size_t OverlayGraph::index_of(NodeId id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const NodeProfile& p, NodeId key) { return p.node_id < key; });
  if (it == nodes_.end() || it->node_id != id) {
    throw ValidationError("unknown node " + id_str(id));
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::vector<NodeId> OverlayGraph::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size());
  for (const auto& p : nodes_) ids.push_back(p.node_id);
  return ids;
}

bool OverlayGraph::contains(NodeId id) const noexcept {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const NodeProfile& p, NodeId key) { return p.node_id < key; });
  return it != nodes_.end() && it->node_id == id;
}

const NodeProfile& OverlayGraph::profile(NodeId id) const {
  return nodes_[index_of(id)];
}

std::span<const Edge> OverlayGraph::neighbors(NodeId id) const {
  return adj_[index_of(id)];
}

bool OverlayGraph::adjacent(NodeId a, NodeId b) const {
  const auto& list = adj_[index_of(a)];
  index_of(b);
  return std::any_of(list.begin(), list.end(),
                     [b](const Edge& e) { return e.to == b; });
}

std::vector<std::pair<NodeId, NodeId>> OverlayGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (const auto& e : adj_[i]) {
      if (nodes_[i].node_id < e.to) out.emplace_back(nodes_[i].node_id, e.to);
    }
  }
  return out;
}

std::optional<std::uint32_t> OverlayGraph::distance(NodeId a, NodeId b) const {
  std::uint32_t d = dist_[index_of(a) * nodes_.size() + index_of(b)];
  if (d == kInf) return std::nullopt;
  return d;
}

std::optional<NodeId> OverlayGraph::next_hop(NodeId from, NodeId to) const {
  std::uint32_t h = next_[index_of(from) * nodes_.size() + index_of(to)];
  if (h == kNone) return std::nullopt;
  return nodes_[h].node_id;
}

std::uint32_t OverlayGraph::eccentricity(NodeId from) const {
  const std::size_t n = nodes_.size();
  const std::size_t i = index_of(from);
  std::uint32_t ecc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::uint32_t d = dist_[i * n + j];
    if (d != kInf) ecc = std::max(ecc, d);
  }
  return ecc;
}

std::optional<std::uint32_t> OverlayGraph::edge_weight(const NodeProfile& a,
                                                       const NodeProfile& b) const {
  if (a.node_id == b.node_id) return std::nullopt;
  if (a.external_server || b.external_server) {
    if (a.external_server && b.external_server) return std::nullopt;
    const NodeProfile& client = a.external_server ? b : a;
    if (client.has(LinkType::LongRange)) return options_.long_range_hop_cost;
    return std::nullopt;
  }
  if (euclidean_distance(a.position, b.position) <=
      std::min(a.radio_range, b.radio_range)) {
    return 1u;
  }
  return std::nullopt;
}

// Recomputes every edge incident to node i, keeping all lists sorted.
void OverlayGraph::connect(std::size_t i) {
  const NodeId self = nodes_[i].node_id;
  adj_[i].clear();
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if (j == i) continue;
    auto& other = adj_[j];
    other.erase(std::remove_if(other.begin(), other.end(),
                               [self](const Edge& e) { return e.to == self; }),
                other.end());
    if (auto w = edge_weight(nodes_[i], nodes_[j])) {
      adj_[i].push_back({nodes_[j].node_id, *w});
      Edge back{self, *w};
      other.insert(std::lower_bound(other.begin(), other.end(), back,
                                    [](const Edge& x, const Edge& y) {
                                      return x.to < y.to;
                                    }),
                   back);
    }
  }
}

void OverlayGraph::compute_routes() {
  const std::size_t n = nodes_.size();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> idx(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : adj_[i]) {
      idx[i].emplace_back(static_cast<std::uint32_t>(index_of(e.to)), e.weight);
    }
  }
  dist_.assign(n * n, kInf);
  next_.assign(n * n, kNone);
  for (std::uint32_t s = 0; s < n; ++s) {
    SearchResult r = search(idx, s);
    for (std::uint32_t v : r.order) {
      dist_[s * n + v] = r.dist[v];
      if (v == s) continue;
      std::uint32_t p = r.parent[v];
      next_[s * n + v] = (p == s) ? v : next_[s * n + p];
    }
  }
}

OverlayGraph build_mesh(std::vector<NodeProfile> profiles,
                        const OverlayOptions& options) {
  std::sort(profiles.begin(), profiles.end(),
            [](const NodeProfile& a, const NodeProfile& b) {
              return a.node_id < b.node_id;
            });
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (i > 0 && profiles[i].node_id == profiles[i - 1].node_id) {
      throw ValidationError("duplicate node id " + id_str(profiles[i].node_id));
    }
    if (!profiles[i].external_server && !(profiles[i].radio_range > 0.0)) {
      throw ValidationError("node " + id_str(profiles[i].node_id) +
                            ": radio_range must be > 0");
    }
  }
  if (options.long_range_hop_cost == 0) {
    throw ValidationError("long_range_hop_cost must be >= 1");
  }

  OverlayGraph g;
  g.options_ = options;
  g.nodes_ = std::move(profiles);
  const std::size_t n = g.nodes_.size();
  g.adj_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (auto w = g.edge_weight(g.nodes_[i], g.nodes_[j])) {
        g.adj_[i].push_back({g.nodes_[j].node_id, *w});
      }
    }
  }
  g.compute_routes();
  return g;
}

std::optional<std::uint32_t> hop_distance(const OverlayGraph& g, NodeId a, NodeId b) {
  return g.distance(a, b);
}

struct OverlayMutator {
  static OverlayGraph apply(const OverlayGraph& g, const Join& ev) {
    if (g.contains(ev.profile.node_id)) {
      throw ValidationError("join: duplicate node id " + id_str(ev.profile.node_id));
    }
    if (!ev.profile.external_server && !(ev.profile.radio_range > 0.0)) {
      throw ValidationError("join: radio_range must be > 0");
    }
    OverlayGraph out = g;
    auto pos = std::lower_bound(
        out.nodes_.begin(), out.nodes_.end(), ev.profile.node_id,
        [](const NodeProfile& p, NodeId key) { return p.node_id < key; });
    auto i = static_cast<std::size_t>(pos - out.nodes_.begin());
    out.nodes_.insert(pos, ev.profile);
    out.adj_.insert(out.adj_.begin() + static_cast<std::ptrdiff_t>(i), std::vector<Edge>{});
    out.connect(i);
    out.compute_routes();
    return out;
  }

  static OverlayGraph apply(const OverlayGraph& g, const Leave& ev) {
    std::size_t i = g.index_of(ev.id);
    OverlayGraph out = g;
    out.nodes_.erase(out.nodes_.begin() + static_cast<std::ptrdiff_t>(i));
    out.adj_.erase(out.adj_.begin() + static_cast<std::ptrdiff_t>(i));
    for (auto& list : out.adj_) {
      list.erase(std::remove_if(list.begin(), list.end(),
                                [&](const Edge& e) { return e.to == ev.id; }),
                 list.end());
    }
    out.compute_routes();
    return out;
  }

  static OverlayGraph apply(const OverlayGraph& g, const Move& ev) {
    std::size_t i = g.index_of(ev.id);
    OverlayGraph out = g;
    out.nodes_[i].position = ev.to;
    out.connect(i);
    out.compute_routes();
    return out;
  }
};

OverlayGraph reconfigure(const OverlayGraph& g, const TopologyEvent& ev) {
  return std::visit([&](const auto& e) { return OverlayMutator::apply(g, e); }, ev);
}

BroadcastTree::BroadcastTree(NodeId root) : root_(root) {
  entries_.emplace(root, Entry{});
}

const BroadcastTree::Entry& BroadcastTree::at(NodeId id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw ValidationError("node " + id_str(id) + " not in tree");
  }
  return it->second;
}

std::uint32_t BroadcastTree::max_depth() const noexcept {
  std::uint32_t m = 0;
  for (const auto& [id, e] : entries_) m = std::max(m, e.depth);
  return m;
}

void BroadcastTree::attach(NodeId child, NodeId parent, std::uint32_t depth) {
  auto& p = entries_.at(parent);
  p.children.insert(std::upper_bound(p.children.begin(), p.children.end(), child),
                    child);
  entries_[child] = Entry{parent, depth, {}};
}

BroadcastTree broadcast_cover(const OverlayGraph& g, NodeId root) {
  if (!g.contains(root)) throw ValidationError("unknown root " + id_str(root));
  auto ids = g.node_ids();
  auto index = [&](NodeId id) {
    return static_cast<std::uint32_t>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (const auto& e : g.neighbors(ids[i])) adj[i].emplace_back(index(e.to), e.weight);
  }
  SearchResult r = search(adj, index(root));
  BroadcastTree tree(root);
  for (std::uint32_t v : r.order) {
    if (ids[v] == root) continue;
    tree.attach(ids[v], ids[r.parent[v]], r.dist[v]);
  }
  return tree;
}

}  // namespace mogmesh
