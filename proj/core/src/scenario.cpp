#include "mogmesh/scenario.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "json.hpp"
#include "mogmesh/error.hpp"

namespace mogmesh {

namespace {

using nlohmann::json;

constexpr double kMaxArena = 30000.0;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

double get_number(const json& obj, const std::string& path, std::string_view key,
                  std::optional<double> fallback = std::nullopt) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (!fallback) fail(join(path, key), "required");
    return *fallback;
  }
  if (!it->is_number()) fail(join(path, key), "expected a number");
  double v = it->get<double>();
  if (!std::isfinite(v)) fail(join(path, key), "must be finite");
  return v;
}

std::int64_t get_int(const json& obj, const std::string& path, std::string_view key,
                     std::optional<std::int64_t> fallback = std::nullopt) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (!fallback) fail(join(path, key), "required");
    return *fallback;
  }
  if (!it->is_number_integer()) fail(join(path, key), "expected an integer");
  if (it->is_number_unsigned() && it->get<std::uint64_t>() > INT64_MAX) {
    fail(join(path, key), "out of range");
  }
  return it->get<std::int64_t>();
}

bool get_bool(const json& obj, const std::string& path, std::string_view key,
              bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) fail(join(path, key), "expected true or false");
  return it->get<bool>();
}

std::string get_string(const json& obj, const std::string& path, std::string_view key,
                       std::optional<std::string> fallback = std::nullopt) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (!fallback) fail(join(path, key), "required");
    return *fallback;
  }
  if (!it->is_string()) fail(join(path, key), "expected a string");
  return it->get<std::string>();
}

NodeId get_node_id(const json& obj, const std::string& path, std::string_view key) {
  std::int64_t v = get_int(obj, path, key);
  if (v < 0 || v > UINT32_MAX) fail(join(path, key), "node id out of range");
  return NodeId{static_cast<std::uint32_t>(v)};
}

Position get_position(const json& obj, const std::string& path) {
  auto it = obj.find("position");
  std::string p = join(path, "position");
  if (it == obj.end()) fail(p, "required");
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
    fail(p, "expected [x, y]");
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

LinkClass default_link(LinkType type) {
  if (type == LinkType::LongRange) return {LinkType::LongRange, 5.0, 3.0, 2};
  return {LinkType::ShortRange, 10.0, 1.0, 1};
}

LinkType link_type_from(const json& value, const std::string& path) {
  if (!value.is_string()) fail(path, "expected \"short_range\" or \"long_range\"");
  auto s = value.get<std::string>();
  if (s == "short_range") return LinkType::ShortRange;
  if (s == "long_range") return LinkType::LongRange;
  fail(path, "unknown link type \"" + s + "\"");
}

LinkClass parse_link_fields(const json& obj, const std::string& path, LinkClass base) {
  base.bandwidth = get_number(obj, path, "bandwidth", base.bandwidth);
  base.cost_per_message = get_number(obj, path, "cost", base.cost_per_message);
  base.energy_per_message = get_int(obj, path, "energy", base.energy_per_message);
  return base;
}

json link_json(const LinkClass& l) {
  return {{"type", std::string(to_string(l.type))},
          {"bandwidth", l.bandwidth},
          {"cost", l.cost_per_message},
          {"energy", l.energy_per_message}};
}

json position_json(const Position& p) { return json::array({p.x, p.y}); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string BotSpec::service_name() const { return "ai:bot-" + std::to_string(id); }

std::string_view to_string(AllocatorKind kind) noexcept {
  return kind == AllocatorKind::Auction ? "auction" : "heuristic";
}

std::optional<AllocatorKind> allocator_from_string(std::string_view name) {
  if (name == "heuristic") return AllocatorKind::Heuristic;
  if (name == "auction") return AllocatorKind::Auction;
  return std::nullopt;
}

std::vector<ServiceSpec> Scenario::all_services() const {
  std::vector<ServiceSpec> out = services;
  for (const auto& b : bots) {
    ServiceSpec ai;
    ai.name = b.service_name();
    ai.kind = ModuleKind::ArtificialIntelligence;
    ai.workload_per_client = b.workload;
    out.push_back(std::move(ai));
  }
  return out;
}

void Scenario::validate() const {
  auto finite = [](const Position& p) { return std::isfinite(p.x) && std::isfinite(p.y); };
  if (!(arena_width > 0.0 && arena_width <= kMaxArena)) fail("arena.width", "must be in (0, 30000]");
  if (!(arena_height > 0.0 && arena_height <= kMaxArena)) fail("arena.height", "must be in (0, 30000]");
  if (players.empty()) fail("players", "at least one player is required");

  std::set<std::uint32_t> node_ids;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const auto& p = players[i];
    const std::string path = "players[" + std::to_string(i) + "]";
    if (!node_ids.insert(value_of(p.id)).second) {
      fail(path + ".id", "duplicate node id " + std::to_string(value_of(p.id)));
    }
    if (p.devices.empty()) fail(path + ".devices", "at least one device is required");
    if (!finite(p.position)) fail(path + ".position", "must be finite");
    if (!(p.radio_range > 0.0)) fail(path + ".radio_range", "must be > 0");
    if (!(p.speed >= 0.0)) fail(path + ".speed", "must be >= 0");
    if (!(p.event_rate >= 0.0 && p.event_rate <= 1.0)) fail(path + ".event_rate", "must be in [0, 1]");
    if (p.capacity_cap < 0) fail(path + ".capacity_cap", "must be >= 0");
    std::set<std::string> device_ids;
    for (std::size_t j = 0; j < p.devices.size(); ++j) {
      const auto& d = p.devices[j];
      const std::string dpath = path + ".devices[" + std::to_string(j) + "]";
      if (d.device_id.empty()) fail(dpath + ".id", "must not be empty");
      if (!device_ids.insert(d.device_id).second) fail(dpath + ".id", "duplicate device id " + d.device_id);
      if (d.compute < 0) fail(dpath + ".compute", "must be >= 0");
      if (d.battery < 0) fail(dpath + ".battery", "must be >= 0");
      if (d.interfaces.empty()) fail(dpath + ".interfaces", "at least one interface is required");
      for (const auto& l : d.interfaces) {
        if (!(l.bandwidth > 0.0)) fail(dpath + ".interfaces", "bandwidth must be > 0");
        if (l.energy_per_message < 0) fail(dpath + ".interfaces", "energy must be >= 0");
      }
    }
  }
  if (external_server) {
    if (!node_ids.insert(value_of(external_server->id)).second) {
      fail("external_server.id", "duplicate node id " + std::to_string(value_of(external_server->id)));
    }
    if (!finite(external_server->position)) fail("external_server.position", "must be finite");
  }
  if (server && !node_ids.contains(value_of(*server))) {
    fail("server", "unknown node id " + std::to_string(value_of(*server)));
  }

  std::set<std::uint32_t> actor_ids;
  for (const auto& p : players) actor_ids.insert(value_of(p.id));
  for (std::size_t i = 0; i < bots.size(); ++i) {
    const auto& b = bots[i];
    const std::string path = "bots[" + std::to_string(i) + "]";
    if (!actor_ids.insert(b.id).second) fail(path + ".id", "actor id " + std::to_string(b.id) + " already in use");
    if (!finite(b.position)) fail(path + ".position", "must be finite");
    if (!(b.speed >= 0.0)) fail(path + ".speed", "must be >= 0");
    if (!(b.event_rate >= 0.0 && b.event_rate <= 1.0)) fail(path + ".event_rate", "must be in [0, 1]");
    if (b.workload <= 0) fail(path + ".workload", "must be > 0");
  }

  try {
    validate_services(all_services());
  } catch (const ValidationError& e) {
    fail("services", e.what());
  }

  if (energy.send < 0) fail("energy.send", "must be >= 0");
  if (energy.receive < 0) fail("energy.receive", "must be >= 0");
  if (energy.relay < 0) fail("energy.relay", "must be >= 0");
  if (energy.compute < 0) fail("energy.compute", "must be >= 0");
  if (!(dr_threshold >= 0.0)) fail("dr_threshold", "must be >= 0");
  if (low_battery_threshold < 0) fail("low_battery_threshold", "must be >= 0");
  if (long_range_hop_cost < 1) fail("long_range_hop_cost", "must be >= 1");
  if (!(price_increment > 0.0)) fail("price_increment", "must be > 0");
}

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what(),
                     line, col);
  }

  check_keys(root, "",
             {"version", "arena", "links", "players", "bots", "external_server", "server",
              "services", "energy", "allocator", "core_affinity", "wireless_multicast",
              "dr_threshold", "low_battery_threshold", "long_range_hop_cost",
              "rank_weights", "price_increment", "sync_window"});

  if (root.contains("version") && get_int(root, "", "version") != 1) {
    fail("version", "unsupported version (expected 1)");
  }

  Scenario sc;
  if (auto it = root.find("arena"); it != root.end()) {
    check_keys(*it, "arena", {"width", "height"});
    sc.arena_width = get_number(*it, "arena", "width", sc.arena_width);
    sc.arena_height = get_number(*it, "arena", "height", sc.arena_height);
  }

  LinkClass short_link = default_link(LinkType::ShortRange);
  LinkClass long_link = default_link(LinkType::LongRange);
  if (auto it = root.find("links"); it != root.end()) {
    check_keys(*it, "links", {"short_range", "long_range"});
    if (auto s = it->find("short_range"); s != it->end()) {
      check_keys(*s, "links.short_range", {"bandwidth", "cost", "energy"});
      short_link = parse_link_fields(*s, "links.short_range", short_link);
    }
    if (auto l = it->find("long_range"); l != it->end()) {
      check_keys(*l, "links.long_range", {"bandwidth", "cost", "energy"});
      long_link = parse_link_fields(*l, "links.long_range", long_link);
    }
  }

  auto players = root.find("players");
  if (players == root.end()) fail("players", "required");
  if (!players->is_array()) fail("players", "expected an array");
  for (std::size_t i = 0; i < players->size(); ++i) {
    const json& pj = (*players)[i];
    const std::string path = "players[" + std::to_string(i) + "]";
    check_keys(pj, path,
               {"id", "position", "radio_range", "speed", "event_rate", "trusted",
                "capacity_cap", "devices"});
    PlayerSpec p;
    p.id = get_node_id(pj, path, "id");
    p.position = get_position(pj, path);
    p.radio_range = get_number(pj, path, "radio_range", p.radio_range);
    p.speed = get_number(pj, path, "speed", p.speed);
    p.event_rate = get_number(pj, path, "event_rate", p.event_rate);
    p.trusted = get_bool(pj, path, "trusted", p.trusted);
    p.capacity_cap = get_int(pj, path, "capacity_cap", p.capacity_cap);
    auto devices = pj.find("devices");
    if (devices == pj.end()) fail(path + ".devices", "required");
    if (!devices->is_array()) fail(path + ".devices", "expected an array");
    for (std::size_t j = 0; j < devices->size(); ++j) {
      const json& dj = (*devices)[j];
      const std::string dpath = path + ".devices[" + std::to_string(j) + "]";
      check_keys(dj, dpath, {"id", "compute", "battery", "interfaces"});
      DeviceProfile d;
      d.device_id = get_string(dj, dpath, "id");
      d.compute = get_int(dj, dpath, "compute");
      d.battery = get_int(dj, dpath, "battery");
      d.owner = std::to_string(value_of(p.id));
      auto ifs = dj.find("interfaces");
      if (ifs == dj.end()) {
        d.interfaces = {short_link};
      } else {
        if (!ifs->is_array()) fail(dpath + ".interfaces", "expected an array");
        for (std::size_t k = 0; k < ifs->size(); ++k) {
          const json& lj = (*ifs)[k];
          const std::string lpath = dpath + ".interfaces[" + std::to_string(k) + "]";
          if (lj.is_string()) {
            auto type = link_type_from(lj, lpath);
            d.interfaces.push_back(type == LinkType::LongRange ? long_link : short_link);
          } else {
            check_keys(lj, lpath, {"type", "bandwidth", "cost", "energy"});
            auto tj = lj.find("type");
            if (tj == lj.end()) fail(lpath + ".type", "required");
            auto type = link_type_from(*tj, lpath + ".type");
            d.interfaces.push_back(parse_link_fields(
                lj, lpath, type == LinkType::LongRange ? long_link : short_link));
          }
        }
      }
      p.devices.push_back(std::move(d));
    }
    sc.players.push_back(std::move(p));
  }

  if (auto bots = root.find("bots"); bots != root.end()) {
    if (!bots->is_array()) fail("bots", "expected an array");
    for (std::size_t i = 0; i < bots->size(); ++i) {
      const json& bj = (*bots)[i];
      const std::string path = "bots[" + std::to_string(i) + "]";
      check_keys(bj, path, {"id", "position", "speed", "event_rate", "workload"});
      BotSpec b;
      std::int64_t id = get_int(bj, path, "id");
      if (id < 0 || id > UINT32_MAX) fail(path + ".id", "out of range");
      b.id = static_cast<std::uint32_t>(id);
      b.position = get_position(bj, path);
      b.speed = get_number(bj, path, "speed", b.speed);
      b.event_rate = get_number(bj, path, "event_rate", b.event_rate);
      b.workload = get_int(bj, path, "workload", b.workload);
      sc.bots.push_back(b);
    }
  }

  if (auto ext = root.find("external_server"); ext != root.end()) {
    check_keys(*ext, "external_server", {"id", "position"});
    sc.external_server =
        ExternalServerSpec{get_node_id(*ext, "external_server", "id"), get_position(*ext, "external_server")};
  }
  if (root.contains("server")) sc.server = get_node_id(root, "", "server");

  if (auto svcs = root.find("services"); svcs != root.end()) {
    if (!svcs->is_array()) fail("services", "expected an array");
    for (std::size_t i = 0; i < svcs->size(); ++i) {
      const json& sj = (*svcs)[i];
      const std::string path = "services[" + std::to_string(i) + "]";
      check_keys(sj, path, {"kind", "workload", "name"});
      auto kind_name = get_string(sj, path, "kind");
      auto kind = module_kind_from_string(kind_name);
      if (!kind) fail(path + ".kind", "unknown module kind \"" + kind_name + "\"");
      ServiceSpec s;
      s.kind = *kind;
      s.workload_per_client = get_int(sj, path, "workload", 1);
      s.name = get_string(sj, path, "name", std::string(to_string(*kind)));
      s.state_bearing = *kind == ModuleKind::GameStateManagement;
      sc.services.push_back(std::move(s));
    }
  }

  if (auto e = root.find("energy"); e != root.end()) {
    check_keys(*e, "energy", {"send", "receive", "relay", "compute"});
    sc.energy.send = get_int(*e, "energy", "send", sc.energy.send);
    sc.energy.receive = get_int(*e, "energy", "receive", sc.energy.receive);
    sc.energy.relay = get_int(*e, "energy", "relay", sc.energy.relay);
    sc.energy.compute = get_int(*e, "energy", "compute", sc.energy.compute);
  }
  sc.energy.wireless_multicast = get_bool(root, "", "wireless_multicast", false);

  auto alloc = get_string(root, "", "allocator", "heuristic");
  auto kind = allocator_from_string(alloc);
  if (!kind) fail("allocator", "expected \"heuristic\" or \"auction\"");
  sc.allocator = *kind;

  sc.core_affinity = get_bool(root, "", "core_affinity", true);
  sc.dr_threshold = get_number(root, "", "dr_threshold", sc.dr_threshold);
  sc.low_battery_threshold = get_int(root, "", "low_battery_threshold", sc.low_battery_threshold);
  std::int64_t hop_cost = get_int(root, "", "long_range_hop_cost", 1);
  if (hop_cost < 1 || hop_cost > 1000) fail("long_range_hop_cost", "must be in [1, 1000]");
  sc.long_range_hop_cost = static_cast<std::uint32_t>(hop_cost);
  if (auto w = root.find("rank_weights"); w != root.end()) {
    check_keys(*w, "rank_weights", {"compute", "battery", "bandwidth"});
    sc.rank_weights.compute = get_number(*w, "rank_weights", "compute", 1.0);
    sc.rank_weights.battery = get_number(*w, "rank_weights", "battery", 1.0);
    sc.rank_weights.bandwidth = get_number(*w, "rank_weights", "bandwidth", 1.0);
  }
  sc.price_increment = get_number(root, "", "price_increment", sc.price_increment);
  if (root.contains("sync_window")) {
    std::int64_t w = get_int(root, "", "sync_window");
    if (w < 0 || w > 100000) fail("sync_window", "must be in [0, 100000]");
    sc.sync_window = static_cast<std::uint32_t>(w);
  }

  sc.validate();
  return sc;
}

std::string scenario_to_json(const Scenario& sc) {
  json root;
  root["version"] = 1;
  root["arena"] = {{"width", sc.arena_width}, {"height", sc.arena_height}};
  json players = json::array();
  for (const auto& p : sc.players) {
    json devices = json::array();
    for (const auto& d : p.devices) {
      json ifs = json::array();
      for (const auto& l : d.interfaces) ifs.push_back(link_json(l));
      devices.push_back({{"id", d.device_id},
                         {"compute", d.compute},
                         {"battery", d.battery},
                         {"interfaces", ifs}});
    }
    players.push_back({{"id", value_of(p.id)},
                       {"position", position_json(p.position)},
                       {"radio_range", p.radio_range},
                       {"speed", p.speed},
                       {"event_rate", p.event_rate},
                       {"trusted", p.trusted},
                       {"capacity_cap", p.capacity_cap},
                       {"devices", devices}});
  }
  root["players"] = players;
  json bots = json::array();
  for (const auto& b : sc.bots) {
    bots.push_back({{"id", b.id},
                    {"position", position_json(b.position)},
                    {"speed", b.speed},
                    {"event_rate", b.event_rate},
                    {"workload", b.workload}});
  }
  root["bots"] = bots;
  if (sc.external_server) {
    root["external_server"] = {{"id", value_of(sc.external_server->id)},
                               {"position", position_json(sc.external_server->position)}};
  }
  if (sc.server) root["server"] = value_of(*sc.server);
  json services = json::array();
  for (const auto& s : sc.services) {
    services.push_back({{"kind", std::string(to_string(s.kind))},
                        {"workload", s.workload_per_client},
                        {"name", s.name}});
  }
  root["services"] = services;
  root["energy"] = {{"send", sc.energy.send},
                    {"receive", sc.energy.receive},
                    {"relay", sc.energy.relay},
                    {"compute", sc.energy.compute}};
  root["wireless_multicast"] = sc.energy.wireless_multicast;
  root["allocator"] = std::string(to_string(sc.allocator));
  root["core_affinity"] = sc.core_affinity;
  root["dr_threshold"] = sc.dr_threshold;
  root["low_battery_threshold"] = sc.low_battery_threshold;
  root["long_range_hop_cost"] = sc.long_range_hop_cost;
  root["rank_weights"] = {{"compute", sc.rank_weights.compute},
                          {"battery", sc.rank_weights.battery},
                          {"bandwidth", sc.rank_weights.bandwidth}};
  root["price_increment"] = sc.price_increment;
  if (sc.sync_window) root["sync_window"] = *sc.sync_window;
  return root.dump(2) + "\n";
}

}  // namespace mogmesh
