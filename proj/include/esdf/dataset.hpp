#pragma once

#include <filesystem>
#include <vector>

#include "esdf/occupancy.hpp"

namespace esdf {

struct DatasetLoadResult {
  std::vector<SensorFrame> frames;  // timestamp order
  int skipped_missing_clouds = 0;
};

// Reads a recorded log directory:
//   poses.csv            header: timestamp,tx,ty,tz,qx,qy,qz,qw
//   cloud_<rowindex>.csv header: x,y,z   (sensor frame, meters)
// <rowindex> is the 0-based data-row index in poses.csv. Poses without a
// matching cloud file are skipped and counted.
DatasetLoadResult load_dataset(const std::filesystem::path& dir);

}  // namespace esdf
