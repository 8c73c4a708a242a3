#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "esdf/esdf_map.hpp"
#include "esdf/voxel_index.hpp"

namespace esdf {

struct SliceRequest {
  int axis = 2;   // 0=x, 1=y, 2=z
  int index = 0;  // voxels
};

struct RunConfig {
  IndexConfig index;
  OccupancyConfig occupancy;
  EsdfConfig esdf;
  double update_period = 0.5;  // seconds of dataset time per ESDF epoch
  std::string out_dir = ".";
  std::string scenario_id = "run";
  double slice_pgm_max_voxels = 20.0;
  std::vector<SliceRequest> slices;
};

// Flat key=value file, '#' comments. Keys are section-prefixed:
// index.*, occupancy.*, esdf.*, run.*. Every key can also be given as a
// --key value command-line override.
RunConfig parse_config_file(const std::filesystem::path& file);

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

// "axis=z,index=12" -> SliceRequest
SliceRequest parse_slice_request(const std::string& text);

}  // namespace esdf
