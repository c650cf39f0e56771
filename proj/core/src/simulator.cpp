#include "mogmesh/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mogmesh/error.hpp"
#include "mogmesh/pan.hpp"

namespace mogmesh {

namespace {

constexpr std::int64_t kUnboundedCompute = std::int64_t{1} << 50;

std::string id_str(NodeId id) { return std::to_string(value_of(id)); }

bool alive(const SimState& s, NodeId id) {
  auto it = s.nodes.find(id);
  return it != s.nodes.end() && !it->second.failed && s.overlay.contains(id);
}

// Charges `cost` to the node. The action is affordable iff the battery
// covered the whole cost; a battery that reaches zero fails the node.
bool debit(SimState& s, NodeId id, std::int64_t cost) {
  auto& n = s.nodes.at(id);
  if (n.failed) return false;
  if (n.unbounded || cost == 0) return true;
  std::int64_t take = std::min(cost, n.battery);
  n.battery -= take;
  n.debited += take;
  if (n.battery == 0) {
    n.failed = true;
    n.failure_tick = s.tick;
  }
  return take == cost;
}

void schedule(SimState& s, Message msg) {
  s.queue.emplace(std::make_pair(s.tick + 1, s.inserted++), std::move(msg));
}

std::vector<NodeId> live_players(const SimState& s) {
  std::vector<NodeId> out;
  for (const auto& p : s.overlay.profiles()) {
    if (!p.external_server && !s.nodes.at(p.node_id).failed) out.push_back(p.node_id);
  }
  return out;
}

NodeId choose_server(const SimState& s) {
  if (s.scenario.server && alive(s, *s.scenario.server)) return *s.scenario.server;
  if (s.scenario.external_server && alive(s, s.scenario.external_server->id)) {
    return s.scenario.external_server->id;
  }
  std::vector<NodeProfile> candidates;
  for (NodeId id : live_players(s)) candidates.push_back(s.overlay.profile(id));
  return rank_nodes(candidates, s.scenario.rank_weights).front();
}

PlacementPlan plan_for(const SimState& s, const std::vector<ServiceSpec>& services) {
  PlacementPlan plan;
  auto players = live_players(s);
  if (players.empty() || services.empty()) return plan;
  switch (s.arch) {
    case Architecture::PureP2P:
      for (const auto& svc : services) plan.hosts[svc.name] = players;
      return plan;
    case Architecture::ClientServerDirect:
    case Architecture::ClientServerOverlay: {
      NodeId server = choose_server(s);
      for (const auto& svc : services) plan.hosts[svc.name] = {server};
      return plan;
    }
    case Architecture::HybridDistributed: {
      ClientCounts clients;
      for (const auto& svc : services) {
        clients[svc.name] = static_cast<std::int64_t>(players.size());
      }
      PlacementOptions options{s.scenario.rank_weights, s.scenario.core_affinity,
                               s.scenario.price_increment};
      return s.scenario.allocator == AllocatorKind::Auction
                 ? allocate_auction(services, s.overlay, clients, options)
                 : allocate_heuristic(services, s.overlay, clients, options);
    }
  }
  return plan;
}

AssignmentMap associate(const SimState& s) {
  CapacityFn caps;
  if (s.arch == Architecture::HybridDistributed) {
    caps = default_capacity(s.plan, s.overlay);
  } else {
    caps = [](const std::string&, NodeId) { return std::numeric_limits<std::int64_t>::max(); };
  }
  return assign_clients(s.plan, s.overlay, caps, AssignOptions{true});
}

GameState initial_game_state(const Scenario& sc) {
  GameState g;
  for (const auto& p : sc.players) {
    g.actors[value_of(p.id)] = {std::llround(p.position.x), std::llround(p.position.y), 0, 0, 0};
  }
  for (const auto& b : sc.bots) {
    g.actors[b.id] = {std::llround(b.position.x), std::llround(b.position.y), 0, 0, 0};
  }
  return g;
}

Position draw_waypoint(SimState& s) {
  double x = s.rng.uniform() * s.scenario.arena_width;
  double y = s.rng.uniform() * s.scenario.arena_height;
  return {x, y};
}

// Moves `pos` toward its waypoint, drawing a new waypoint on arrival.
Position advance(SimState& s, Position pos, Position& waypoint, double speed) {
  double d = euclidean_distance(pos, waypoint);
  if (d <= speed) {
    pos = waypoint;
    waypoint = draw_waypoint(s);
    return pos;
  }
  double f = speed / d;
  return {pos.x + (waypoint.x - pos.x) * f, pos.y + (waypoint.y - pos.y) * f};
}

std::int16_t clamp16(std::int64_t v) {
  return static_cast<std::int16_t>(std::clamp<std::int64_t>(v, INT16_MIN, INT16_MAX));
}

const ServiceSpec& service_named(const SimState& s, const std::string& name) {
  for (const auto& svc : s.services) {
    if (svc.name == name) return svc;
  }
  throw InvariantViolation("unknown service " + name);
}

void drop_subtree(SimState& s, UpdateFlow& flow, NodeId v) {
  std::uint64_t k = flow.subtree_clients.at(v);
  s.ledger.dropped += k;
  flow.pending -= k;
}

// Transmits an update from `from` to its children in the flow's tree.
void forward_update(SimState& s, std::uint64_t flow_id, NodeId from, bool originating) {
  auto& flow = s.flows.at(flow_id);
  std::vector<NodeId> reachable;
  for (NodeId c : flow.tree.at(from).children) {
    if (s.overlay.contains(c) && s.overlay.adjacent(from, c)) {
      reachable.push_back(c);
    } else {
      drop_subtree(s, flow, c);
    }
  }
  if (reachable.empty()) return;
  const std::int64_t cost = originating ? s.scenario.energy.send : s.scenario.energy.relay;
  auto& node = s.nodes.at(from);
  auto count = [&] {
    (originating ? node.sent : node.relayed) += 1;
    ++s.ledger.transmissions;
  };
  auto enqueue = [&](NodeId c) {
    Message m;
    m.kind = Message::Kind::Update;
    m.at = c;
    m.from = from;
    m.service = flow.service;
    m.flow = flow_id;
    schedule(s, std::move(m));
  };
  if (s.scenario.energy.wireless_multicast) {
    if (!debit(s, from, cost)) {
      for (NodeId c : reachable) drop_subtree(s, flow, c);
      return;
    }
    count();
    for (NodeId c : reachable) enqueue(c);
    return;
  }
  for (NodeId c : reachable) {
    if (!debit(s, from, cost)) {
      drop_subtree(s, flow, c);
      continue;
    }
    count();
    enqueue(c);
  }
}

void release_flow(SimState& s, std::uint64_t flow_id) {
  auto it = s.flows.find(flow_id);
  if (it != s.flows.end() && it->second.pending == 0) s.flows.erase(it);
}

void deliver_event(SimState& s, const Message& m) {
  if (!alive(s, m.at) || !debit(s, m.at, s.scenario.energy.receive)) {
    ++s.ledger.dropped;
    return;
  }
  auto& node = s.nodes.at(m.at);
  ++node.arrivals;
  if (m.at == m.destination) {
    ++node.received;
    ++s.ledger.received;
    auto rep = s.replicas.find({m.service, m.at});
    if (rep != s.replicas.end()) rep->second.pending.push_back(m.event);
    return;
  }
  std::optional<NodeId> next;
  if (s.overlay.contains(m.destination)) next = s.overlay.next_hop(m.at, m.destination);
  if (!next || !debit(s, m.at, s.scenario.energy.relay)) {
    ++s.ledger.dropped;
    return;
  }
  ++node.relayed;
  ++s.ledger.transmissions;
  Message fwd = m;
  fwd.from = m.at;
  fwd.at = *next;
  schedule(s, std::move(fwd));
}

void deliver_update(SimState& s, const Message& m) {
  auto& flow = s.flows.at(m.flow);
  if (!alive(s, m.at) || !debit(s, m.at, s.scenario.energy.receive)) {
    drop_subtree(s, flow, m.at);
    release_flow(s, m.flow);
    return;
  }
  ++s.nodes.at(m.at).arrivals;
  if (std::binary_search(flow.clients.begin(), flow.clients.end(), m.at)) {
    ++s.nodes.at(m.at).received;
    ++s.ledger.received;
    --flow.pending;
  }
  forward_update(s, m.flow, m.at, false);
  release_flow(s, m.flow);
}

void emit(SimState& s, NodeId source, std::uint32_t actor, const ActionDelta& delta) {
  auto& src = s.nodes.at(source);
  GameEvent e{++src.next_seq, source, s.tick, encode_payload(delta), actor};
  for (const auto& svc : s.services) {
    if (!svc.state_bearing) continue;
    auto hosts = s.plan.hosts.find(svc.name);
    if (hosts == s.plan.hosts.end()) continue;
    for (NodeId host : hosts->second) {
      if (host == source) {
        s.replicas.at({svc.name, host}).pending.push_back(e);
        continue;
      }
      ++s.ledger.expected;
      std::optional<NodeId> next;
      if (alive(s, source) && s.overlay.contains(host)) next = s.overlay.next_hop(source, host);
      if (!next || !debit(s, source, s.scenario.energy.send)) {
        ++s.ledger.dropped;
        continue;
      }
      ++src.sent;
      ++s.ledger.transmissions;
      Message m;
      m.kind = Message::Kind::Event;
      m.at = *next;
      m.from = source;
      m.destination = host;
      m.service = svc.name;
      m.event = e;
      schedule(s, std::move(m));
    }
  }
}

// Publishes a kinematic update when dead reckoning can no longer cover the
// actor's true position.
template <typename Actor>
void observe_actor(SimState& s, Actor& a, const Position& pos, NodeId source,
                   std::uint32_t actor) {
  ++s.ledger.dr_observations;
  if (!a.dr.observe(s.tick, pos, a.velocity)) {
    ++s.ledger.dr_suppressed;
    return;
  }
  std::int16_t dx = clamp16(std::llround(pos.x) - a.reported_x);
  std::int16_t dy = clamp16(std::llround(pos.y) - a.reported_y);
  a.reported_x += dx;
  a.reported_y += dy;
  emit(s, source, actor, {Action::Move, dx, dy});
}

void move_everything(SimState& s) {
  std::vector<NodeProfile> profiles(s.overlay.profiles().begin(), s.overlay.profiles().end());
  bool moved = false;
  for (auto& p : profiles) {
    auto& n = s.nodes.at(p.node_id);
    if (n.failed || n.unbounded || n.speed <= 0.0) {
      n.velocity = {};
      continue;
    }
    Position next = advance(s, p.position, n.waypoint, n.speed);
    n.velocity = {next.x - p.position.x, next.y - p.position.y};
    moved = moved || !(next == p.position);
    p.position = next;
  }
  for (auto& [id, b] : s.bots) {
    if (b.speed <= 0.0) continue;
    Position next = advance(s, b.position, b.waypoint, b.speed);
    b.velocity = {next.x - b.position.x, next.y - b.position.y};
    b.position = next;
  }
  if (!moved) return;
  OverlayGraph rebuilt = build_mesh(std::move(profiles), s.overlay.options());
  if (rebuilt.edges() != s.overlay.edges()) ++s.ledger.reconfigurations;
  s.overlay = std::move(rebuilt);
}

void deliver_arrivals(SimState& s) {
  while (!s.queue.empty() && s.queue.begin()->first.first <= s.tick) {
    auto node = s.queue.extract(s.queue.begin());
    const Message& m = node.mapped();
    if (m.kind == Message::Kind::Event) {
      deliver_event(s, m);
    } else {
      deliver_update(s, m);
    }
  }
}

void emit_events(SimState& s) {
  for (auto& [id, n] : s.nodes) {
    if (n.unbounded || !alive(s, id)) continue;
    observe_actor(s, n, s.overlay.profile(id).position, id, value_of(id));
    if (n.event_rate > 0.0 && s.rng.uniform() < n.event_rate && alive(s, id)) {
      emit(s, id, value_of(id), {Action::Score, 1, 0});
    }
  }
  for (const auto& bot : s.scenario.bots) {
    auto& b = s.bots.at(bot.id);
    // Drawn before the host check so a lost AI host does not shift the stream.
    bool fires = b.event_rate > 0.0 && s.rng.uniform() < b.event_rate;
    auto hosts = s.plan.hosts.find(bot.service_name());
    if (hosts == s.plan.hosts.end() || hosts->second.empty()) continue;
    NodeId host = hosts->second.front();
    if (!alive(s, host)) continue;
    observe_actor(s, b, b.position, host, bot.id);
    if (fires && alive(s, host)) emit(s, host, bot.id, {Action::Score, 1, 0});
  }
}

void start_update(SimState& s, const std::string& service, NodeId host) {
  auto clients_by_replica = s.assignment.clients_of(service);
  auto it = clients_by_replica.find(host);
  if (it == clients_by_replica.end()) return;
  std::vector<NodeId> reachable;
  for (NodeId c : it->second) {
    ++s.ledger.expected;
    if (alive(s, c) && s.overlay.distance(host, c)) {
      reachable.push_back(c);
    } else {
      ++s.ledger.dropped;
    }
  }
  if (reachable.empty()) return;

  UpdateFlow flow;
  flow.service = service;
  flow.tree = build_dissemination_tree(s.overlay, host, reachable);
  flow.clients = reachable;
  flow.pending = reachable.size();
  // Deepest first, so children are counted before their parents.
  std::vector<std::pair<std::uint32_t, NodeId>> order;
  for (const auto& [v, e] : flow.tree.entries()) order.emplace_back(e.depth, v);
  std::sort(order.rbegin(), order.rend());
  for (auto [depth, v] : order) {
    std::uint64_t k = std::binary_search(reachable.begin(), reachable.end(), v) ? 1 : 0;
    for (NodeId c : flow.tree.at(v).children) k += flow.subtree_clients.at(c);
    flow.subtree_clients[v] = k;
  }
  std::uint64_t id = s.next_flow++;
  s.flows.emplace(id, std::move(flow));
  forward_update(s, id, host, true);
  release_flow(s, id);
}

void apply_replicas(SimState& s) {
  for (auto& [key, rep] : s.replicas) {
    const auto& [service, host] = key;
    if (!alive(s, host)) continue;
    std::vector<GameEvent> batch;
    std::vector<GameEvent> keep;
    for (const auto& e : rep.pending) {
      (e.tick + s.sync_window <= s.tick ? batch : keep).push_back(e);
    }
    if (batch.empty()) continue;
    rep.pending = std::move(keep);
    rep.state = apply_events(rep.state, order_events(std::move(batch)));
    start_update(s, service, host);
  }
}

void account_compute(SimState& s) {
  std::map<NodeId, std::int64_t> load;
  for (const auto& [service, mapping] : s.assignment.by_service) {
    const auto& svc = service_named(s, service);
    for (const auto& [client, replica] : mapping) {
      if (alive(s, client) && alive(s, replica)) load[replica] += svc.workload_per_client;
      if (client == replica || !alive(s, client) || !alive(s, replica)) continue;
      if (auto d = s.overlay.distance(client, replica)) {
        ++s.ledger.hop_samples;
        s.ledger.hop_sum += *d;
        s.ledger.hop_max = std::max(s.ledger.hop_max, *d);
      }
    }
  }
  for (const auto& [id, l] : load) {
    if (!alive(s, id)) continue;
    s.nodes.at(id).work_units += l;
    s.ledger.max_load = std::max(s.ledger.max_load, l);
    debit(s, id, s.scenario.energy.compute * l);
  }

  for (const auto& svc : s.services) {
    if (!svc.state_bearing) continue;
    std::vector<StateDigest> digests;
    for (const auto& [key, rep] : s.replicas) {
      if (key.first == svc.name && alive(s, key.second)) digests.push_back(state_digest(rep.state));
    }
    if (digests.empty()) continue;
    ++s.ledger.consistency_checks;
    if (check_consistency(digests)) ++s.ledger.consistency_passes;
  }
}

void handle_failures(SimState& s) {
  std::vector<NodeId> failed;
  for (const auto& [id, n] : s.nodes) {
    if (n.failed && s.overlay.contains(id)) failed.push_back(id);
  }
  if (failed.empty()) return;
  for (NodeId id : failed) s.overlay = reconfigure(s.overlay, Leave{id});

  std::map<std::string, GameState> last_state;
  std::vector<ServiceSpec> orphans;
  for (auto& [service, hosts] : s.plan.hosts) {
    std::vector<NodeId> survivors;
    for (NodeId h : hosts) {
      if (alive(s, h)) {
        survivors.push_back(h);
        continue;
      }
      auto rep = s.replicas.find({service, h});
      if (rep != s.replicas.end()) {
        last_state.try_emplace(service, rep->second.state);
        s.replicas.erase(rep);
      }
    }
    hosts = std::move(survivors);
    if (hosts.empty()) orphans.push_back(service_named(s, service));
  }
  std::erase_if(s.plan.hosts, [](const auto& kv) { return kv.second.empty(); });

  if (!orphans.empty()) {
    PlacementPlan replaced;
    try {
      replaced = plan_for(s, orphans);
    } catch (const ValidationError&) {
      // Left unhosted; its clients go unserved.
    }
    for (auto& [service, hosts] : replaced.hosts) {
      ++s.ledger.replacements;
      s.plan.hosts[service] = hosts;
      auto last = last_state.find(service);
      if (last == last_state.end()) continue;
      for (NodeId h : hosts) s.replicas[{service, h}] = ReplicaRuntime{last->second, {}};
    }
  }
  s.assignment = associate(s);
}

}  // namespace

std::string_view to_string(Architecture arch) noexcept {
  switch (arch) {
    case Architecture::ClientServerDirect: return "cs";
    case Architecture::ClientServerOverlay: return "cs-overlay";
    case Architecture::PureP2P: return "p2p";
    case Architecture::HybridDistributed: return "hybrid";
  }
  return "?";
}

std::optional<Architecture> architecture_from_string(std::string_view name) {
  for (auto a : {Architecture::ClientServerDirect, Architecture::ClientServerOverlay,
                 Architecture::PureP2P, Architecture::HybridDistributed}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

std::uint64_t SimState::in_flight() const {
  std::uint64_t total = 0;
  for (const auto& [key, m] : queue) {
    total += m.kind == Message::Kind::Event ? 1 : flows.at(m.flow).subtree_clients.at(m.at);
  }
  return total;
}

SimState init(const Scenario& scenario, Architecture arch, std::uint64_t seed) {
  scenario.validate();
  SimState s;
  s.scenario = scenario;
  s.arch = arch;
  s.seed = seed;
  s.rng = SplitMix64(seed);
  s.services = scenario.all_services();

  std::vector<NodeProfile> profiles;
  for (const auto& p : scenario.players) {
    auto pan = aggregate_pan(p.devices, p.id, p.position, p.radio_range,
                             scenario.low_battery_threshold);
    NodeProfile prof = pan.aggregated;
    prof.trusted = p.trusted;
    prof.capacity_cap = p.capacity_cap;

    NodeRuntime n;
    n.initial_battery = n.battery = prof.battery;
    n.speed = p.speed;
    n.event_rate = p.event_rate;
    n.reported_x = std::llround(p.position.x);
    n.reported_y = std::llround(p.position.y);
    n.dr = DeadReckoningFilter(scenario.dr_threshold);
    // Replicas start from the initial positions, which counts as the first send.
    n.dr.observe(0, p.position, {});
    if (n.battery == 0) {
      n.failed = true;
      n.failure_tick = 0;
    } else {
      profiles.push_back(prof);
    }
    s.nodes.emplace(p.id, n);
  }
  if (scenario.external_server) {
    NodeProfile ext;
    ext.node_id = scenario.external_server->id;
    ext.compute = kUnboundedCompute;
    ext.position = scenario.external_server->position;
    ext.external_server = true;
    profiles.push_back(ext);
    NodeRuntime n;
    n.unbounded = true;
    s.nodes.emplace(ext.node_id, n);
  }
  s.overlay = build_mesh(std::move(profiles), {scenario.long_range_hop_cost});

  for (auto& [id, n] : s.nodes) {
    if (!n.failed && !n.unbounded && n.speed > 0.0) n.waypoint = draw_waypoint(s);
  }
  for (const auto& b : scenario.bots) {
    BotRuntime r;
    r.position = b.position;
    r.speed = b.speed;
    r.event_rate = b.event_rate;
    r.reported_x = std::llround(b.position.x);
    r.reported_y = std::llround(b.position.y);
    r.dr = DeadReckoningFilter(scenario.dr_threshold);
    r.dr.observe(0, b.position, {});
    if (b.speed > 0.0) r.waypoint = draw_waypoint(s);
    s.bots.emplace(b.id, r);
  }

  s.plan = plan_for(s, s.services);
  if (arch == Architecture::ClientServerDirect && !s.plan.hosts.empty()) {
    NodeId server = s.plan.hosts.begin()->second.front();
    for (NodeId id : live_players(s)) {
      bool long_range = s.overlay.profile(id).has(LinkType::LongRange) &&
                        (s.overlay.profile(server).external_server ||
                         s.overlay.profile(server).has(LinkType::LongRange));
      if (id != server && !s.overlay.adjacent(id, server) && !long_range) {
        throw ValidationError("cs: client " + id_str(id) + " has neither a direct nor a long-range link to server " +
                              id_str(server));
      }
    }
  }
  s.assignment = associate(s);

  GameState start = initial_game_state(scenario);
  for (const auto& svc : s.services) {
    if (!svc.state_bearing) continue;
    auto hosts = s.plan.hosts.find(svc.name);
    if (hosts == s.plan.hosts.end()) continue;
    for (NodeId h : hosts->second) s.replicas[{svc.name, h}] = ReplicaRuntime{start, {}};
  }

  if (scenario.sync_window) {
    s.sync_window = *scenario.sync_window;
  } else {
    for (NodeId id : live_players(s)) {
      s.sync_window = std::max(s.sync_window, s.overlay.eccentricity(id));
    }
  }
  return s;
}

void step_in_place(SimState& s) {
  try {
    move_everything(s);
    deliver_arrivals(s);
    emit_events(s);
    apply_replicas(s);
    account_compute(s);
    handle_failures(s);
  } catch (const InvariantViolation&) {
    throw;
  } catch (const Error& e) {
    throw InvariantViolation("tick " + std::to_string(s.tick) + ": " + e.what());
  }
  check_invariants(s);
  ++s.tick;
}

SimState step(SimState state) {
  step_in_place(state);
  return state;
}

void check_invariants(const SimState& s) {
  auto fail = [&](const std::string& what) {
    throw InvariantViolation("tick " + std::to_string(s.tick) + ": " + what);
  };
  for (const auto& [id, n] : s.nodes) {
    if (n.unbounded) continue;
    if (n.battery < 0) fail("node " + id_str(id) + " has negative battery");
    if (n.initial_battery - n.debited != n.battery) {
      fail("energy ledger mismatch at node " + id_str(id));
    }
    if ((n.battery == 0) != n.failed) fail("node " + id_str(id) + " failure flag disagrees with battery");
    if (n.failed && s.overlay.contains(id)) fail("failed node " + id_str(id) + " still in overlay");
  }
  for (const auto& [service, hosts] : s.plan.hosts) {
    for (NodeId h : hosts) {
      if (!alive(s, h)) fail("service " + service + " hosted on dead node " + id_str(h));
    }
  }
  if (s.ledger.expected != s.ledger.received + s.ledger.dropped + s.in_flight()) {
    fail("message conservation broken");
  }
  for (const auto& [key, m] : s.queue) {
    if (key.first <= s.tick) fail("stale message in queue");
  }
}

MetricsReport report(const SimState& s) {
  MetricsReport r;
  for (const auto& [id, n] : s.nodes) {
    NodeMetrics m;
    m.id = id;
    m.sent = n.sent;
    m.received = n.received;
    m.relayed = n.relayed;
    m.work_units = n.work_units;
    if (!n.unbounded) m.final_battery = n.battery;
    m.failure_tick = n.failure_tick;
    r.nodes.push_back(m);
  }
  const auto& l = s.ledger;
  if (l.hop_samples > 0) {
    r.mean_hops = static_cast<double>(l.hop_sum) / static_cast<double>(l.hop_samples);
  }
  r.max_hops = l.hop_max;
  r.max_load = l.max_load;
  r.total_messages = l.transmissions;
  if (l.consistency_checks > 0) {
    r.consistency_rate =
        static_cast<double>(l.consistency_passes) / static_cast<double>(l.consistency_checks);
  }
  if (l.dr_observations > 0) {
    r.dr_suppression =
        static_cast<double>(l.dr_suppressed) / static_cast<double>(l.dr_observations);
  }
  r.ticks = s.tick;
  r.deliveries_expected = l.expected;
  r.deliveries_received = l.received;
  r.deliveries_dropped = l.dropped;
  r.deliveries_in_flight = s.in_flight();
  r.reconfigurations = l.reconfigurations;
  r.replacements = l.replacements;
  return r;
}

MetricsReport run(const Scenario& scenario, Architecture arch, std::uint64_t seed,
                  std::uint64_t ticks) {
  SimState s = init(scenario, arch, seed);
  for (std::uint64_t i = 0; i < ticks; ++i) step_in_place(s);
  return report(s);
}

}  // namespace mogmesh
