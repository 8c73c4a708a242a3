#pragma once

#include <span>
#include <string>
#include <vector>

#include "esdf/esdf_map.hpp"
#include "esdf/types.hpp"

namespace esdf {

// One benchmark/accuracy row; serializes to a results.csv line.
struct ErrorReport {
  std::string scenario;
  std::string connectivity;
  std::string rule;
  int block_size = 0;
  double rms_error_voxels = 0.0;
  double max_error_voxels = 0.0;
  int64_t compared_voxel_count = 0;
  int64_t excluded_voxel_count = 0;
  double wall_time_ms = 0.0;
  bool empty = false;  // no comparable voxels

  static std::string csv_header();
  std::string csv_row() const;
};

// Ground truth: exact nearest-obstacle Euclidean distance for every domain
// voxel, +inf when the occupied set is empty. Results are aligned with
// `domain`. Three independent routes of the same function:
//   - direct serial scan (reference)
//   - OpenMP-parallel scan over the domain
//   - kd-tree nearest-neighbor queries
std::vector<double> exact_edt_serial(std::span<const VoxelKey> occupied,
                                     std::span<const VoxelKey> domain);
std::vector<double> exact_edt_parallel(std::span<const VoxelKey> occupied,
                                       std::span<const VoxelKey> domain);
std::vector<double> exact_edt_kdtree(std::span<const VoxelKey> occupied,
                                     std::span<const VoxelKey> domain);

// Default entry point used by the replay harness.
inline std::vector<double> exact_edt(std::span<const VoxelKey> occupied,
                                     std::span<const VoxelKey> domain) {
  return exact_edt_parallel(occupied, domain);
}

// RMS/max error of the map's field against truth over `domain`, in voxel
// units. Voxels where either side is infinite are excluded and counted.
ErrorReport rms_error(const EsdfMap& map, std::span<const VoxelKey> domain,
                      std::span<const double> truth,
                      FieldLayer layer = FieldLayer::Primary);

}  // namespace esdf
