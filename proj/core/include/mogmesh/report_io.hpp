#pragma once

#include <cstdint>
#include <string>

#include "mogmesh/scenario.hpp"
#include "mogmesh/simulator.hpp"

namespace mogmesh {

struct RunInfo {
  std::uint64_t seed = 0;
  Architecture arch = Architecture::HybridDistributed;
  std::uint64_t ticks = 0;
  std::uint64_t scenario_digest = 0;
};

// FNV-1a 64 over scenario_to_json(), so equivalent files share a digest.
std::uint64_t scenario_digest(const Scenario& scenario);

inline constexpr const char* kCsvHeader =
    "node_id,sent,received,relayed,work_units,final_battery,failure_tick,"
    "mean_hops,max_load,total_messages,consistency_rate,dr_suppression";

// One row per node in ascending id, then a GLOBAL row. Node rows leave the
// global columns empty; the GLOBAL row sums the per-node counters and leaves
// final_battery and failure_tick empty. Missing values are empty cells.
std::string metrics_csv(const MetricsReport& report);

// The same values as metrics_csv plus run metadata; missing values are null.
std::string metrics_json(const MetricsReport& report, const RunInfo& info);

}  // namespace mogmesh
