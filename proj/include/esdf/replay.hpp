#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "esdf/config.hpp"
#include "esdf/occupancy.hpp"
#include "esdf/oracle.hpp"

namespace esdf {

struct ReplayResult {
  std::vector<ErrorReport> rows;
  std::vector<double> epoch_times_ms;
};

// Streams frames through occupancy integration, triggers an ESDF epoch
// every update_period of dataset time, then scores the final field against
// the brute-force ground truth. Writes results.csv, stats.json and any
// requested slices into cfg.out_dir. sweep is "", "connectivity",
// "block_size" or "rule".
ReplayResult run_replay(const RunConfig& cfg,
                        const std::vector<SensorFrame>& frames,
                        const std::string& sweep, std::ostream& log);

}  // namespace esdf
