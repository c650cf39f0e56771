#include "mogmesh/report_io.hpp"

#include <fmt/format.h>

#include "json.hpp"

namespace mogmesh {

namespace {

template <typename T>
std::string cell(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : std::string{};
}

template <typename T>
nlohmann::json nullable(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

struct Totals {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::uint64_t relayed = 0;
  std::int64_t work_units = 0;
};

Totals totals(const MetricsReport& r) {
  Totals t;
  for (const auto& n : r.nodes) {
    t.sent += n.sent;
    t.received += n.received;
    t.relayed += n.relayed;
    t.work_units += n.work_units;
  }
  return t;
}

}  // namespace

std::uint64_t scenario_digest(const Scenario& scenario) {
  std::string text = scenario_to_json(scenario);
  return fnv1a64({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::string metrics_csv(const MetricsReport& r) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& n : r.nodes) {
    out += fmt::format("{},{},{},{},{},{},{},,,,,\n", value_of(n.id), n.sent, n.received,
                       n.relayed, n.work_units, cell(n.final_battery), cell(n.failure_tick));
  }
  Totals t = totals(r);
  out += fmt::format("GLOBAL,{},{},{},{},,,{},{},{},{},{}\n", t.sent, t.received, t.relayed,
                     t.work_units, r.mean_hops, r.max_load, r.total_messages,
                     r.consistency_rate, r.dr_suppression);
  return out;
}

std::string metrics_json(const MetricsReport& r, const RunInfo& info) {
  nlohmann::ordered_json j;
  j["seed"] = info.seed;
  j["arch"] = std::string(to_string(info.arch));
  j["ticks"] = info.ticks;
  j["scenario_digest"] = fmt::format("{:016x}", info.scenario_digest);
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& n : r.nodes) {
    nlohmann::ordered_json row;
    row["node_id"] = value_of(n.id);
    row["sent"] = n.sent;
    row["received"] = n.received;
    row["relayed"] = n.relayed;
    row["work_units"] = n.work_units;
    row["final_battery"] = nullable(n.final_battery);
    row["failure_tick"] = nullable(n.failure_tick);
    nodes.push_back(std::move(row));
  }
  j["nodes"] = std::move(nodes);
  Totals t = totals(r);
  j["global"] = {
      {"sent", t.sent},
      {"received", t.received},
      {"relayed", t.relayed},
      {"work_units", t.work_units},
      {"mean_hops", r.mean_hops},
      {"max_hops", r.max_hops},
      {"max_load", r.max_load},
      {"total_messages", r.total_messages},
      {"consistency_rate", r.consistency_rate},
      {"dr_suppression", r.dr_suppression},
      {"deliveries_expected", r.deliveries_expected},
      {"deliveries_received", r.deliveries_received},
      {"deliveries_dropped", r.deliveries_dropped},
      {"deliveries_in_flight", r.deliveries_in_flight},
      {"reconfigurations", r.reconfigurations},
      {"replacements", r.replacements},
  };
  return j.dump(2) + "\n";
}

}  // namespace mogmesh
