#include "esdf/replay.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace esdf {

namespace {

using nlohmann::json;

struct SingleRun {
  ErrorReport report;
  std::vector<double> epoch_times_ms;
  int64_t total_k = 0, total_n = 0;
  MemoryStats memory;
};

double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double idx = p * (static_cast<double>(v.size()) - 1.0);
  const size_t lo = static_cast<size_t>(idx);
  const size_t hi = std::min(lo + 1, v.size() - 1);
  const double f = idx - static_cast<double>(lo);
  return v[lo] + (v[hi] - v[lo]) * f;
}

SingleRun run_once(const RunConfig& cfg, const std::vector<SensorFrame>& frames,
                   std::ostream& log) {
  EsdfMap map(cfg.index, cfg.occupancy, cfg.esdf);
  SingleRun out;

  double next_epoch = frames.empty()
                          ? 0.0
                          : frames.front().timestamp + cfg.update_period;
  for (const SensorFrame& frame : frames) {
    while (cfg.update_period > 0.0 && frame.timestamp >= next_epoch) {
      const EpochReport r = map.run_epoch();
      out.epoch_times_ms.push_back(r.wall_time_ms);
      out.total_k += r.k_initialized;
      out.total_n += r.n_expanded;
      next_epoch += cfg.update_period;
    }
    map.integrate_frame(frame);
  }
  {
    const EpochReport r = map.run_epoch();
    out.epoch_times_ms.push_back(r.wall_time_ms);
    out.total_k += r.k_initialized;
    out.total_n += r.n_expanded;
  }

  const auto domain = map.observed_voxels();
  const auto occupied = map.occupied_voxels();
  const auto truth = exact_edt(occupied, domain);
  ErrorReport report = rms_error(map, domain, truth);
  report.scenario = cfg.scenario_id;
  // Average epoch updating time; the accuracy columns stay timing-free.
  report.wall_time_ms =
      out.epoch_times_ms.empty()
          ? 0.0
          : std::accumulate(out.epoch_times_ms.begin(),
                            out.epoch_times_ms.end(), 0.0) /
                static_cast<double>(out.epoch_times_ms.size());
  out.report = report;
  out.memory = map.index().memory_stats();

  for (const SliceRequest& s : cfg.slices) {
    const std::string base = cfg.out_dir + "/slice_" +
                             std::string(s.axis == 0   ? "x"
                                         : s.axis == 1 ? "y"
                                                       : "z") +
                             "_" + std::to_string(s.index);
    std::ofstream csv(base + ".csv");
    map.write_slice_csv(csv, s.axis, s.index);
    std::ofstream pgm(base + ".pgm", std::ios::binary);
    map.write_slice_pgm(pgm, s.axis, s.index, cfg.slice_pgm_max_voxels);
    log << "wrote " << base << ".{csv,pgm}\n";
  }
  return out;
}

std::vector<RunConfig> sweep_configs(const RunConfig& base,
                                     const std::string& sweep) {
  std::vector<RunConfig> out;
  if (sweep.empty()) {
    out.push_back(base);
  } else if (sweep == "connectivity") {
    for (Connectivity c : {Connectivity::C6, Connectivity::C18,
                           Connectivity::C24, Connectivity::C26,
                           Connectivity::C32}) {
      RunConfig cfg = base;
      cfg.esdf.connectivity = c;
      out.push_back(cfg);
    }
  } else if (sweep == "block_size") {
    for (int bs : {1, 2, 4, 8, 16}) {
      RunConfig cfg = base;
      cfg.index.backend = IndexBackend::HashedBlocks;
      cfg.index.block_size = bs;
      out.push_back(cfg);
    }
  } else if (sweep == "rule") {
    for (UpdateRule r :
         {UpdateRule::EuclideanClosestObstacle, UpdateRule::QuasiEuclidean}) {
      RunConfig cfg = base;
      cfg.esdf.rule = r;
      out.push_back(cfg);
    }
  } else {
    throw DataError("unknown sweep: " + sweep +
                    " (want connectivity, block_size or rule)");
  }
  return out;
}

}  // namespace

ReplayResult run_replay(const RunConfig& cfg,
                        const std::vector<SensorFrame>& frames,
                        const std::string& sweep, std::ostream& log) {
  std::filesystem::create_directories(cfg.out_dir);
  ReplayResult result;
  json stats = json::array();

  for (const RunConfig& variant : sweep_configs(cfg, sweep)) {
    const SingleRun run = run_once(variant, frames, log);
    result.rows.push_back(run.report);
    result.epoch_times_ms.insert(result.epoch_times_ms.end(),
                                 run.epoch_times_ms.begin(),
                                 run.epoch_times_ms.end());

    json s;
    s["scenario"] = run.report.scenario;
    s["connectivity"] = run.report.connectivity;
    s["rule"] = run.report.rule;
    s["block_size"] = run.report.block_size;
    s["epochs"] = run.epoch_times_ms.size();
    s["epoch_ms_mean"] = run.report.wall_time_ms;
    s["epoch_ms_p50"] = percentile(run.epoch_times_ms, 0.5);
    s["epoch_ms_p95"] = percentile(run.epoch_times_ms, 0.95);
    s["k_initialized_total"] = run.total_k;
    s["n_expanded_total"] = run.total_n;
    s["m_observed"] = run.report.compared_voxel_count +
                      run.report.excluded_voxel_count;
    s["allocated_voxel_records"] = run.memory.allocated_voxel_records;
    s["allocated_blocks"] = run.memory.allocated_blocks;
    s["rms_error_voxels"] = run.report.rms_error_voxels;
    s["max_error_voxels"] = run.report.max_error_voxels;
    s["empty"] = run.report.empty;
    stats.push_back(s);

    log << run.report.scenario << " " << run.report.connectivity << " "
        << run.report.rule << " bs=" << run.report.block_size
        << " rms=" << run.report.rms_error_voxels
        << " compared=" << run.report.compared_voxel_count << "\n";
  }

  {
    std::ofstream csv(cfg.out_dir + "/results.csv");
    csv << ErrorReport::csv_header() << '\n';
    for (const ErrorReport& r : result.rows) csv << r.csv_row() << '\n';
  }
  {
    std::ofstream js(cfg.out_dir + "/stats.json");
    js << stats.dump(2) << '\n';
  }
  return result;
}

}  // namespace esdf
