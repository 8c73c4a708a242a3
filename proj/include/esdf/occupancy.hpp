#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <vector>

#include "esdf/types.hpp"

namespace esdf {

// One posed depth measurement: points are in the sensor frame, meters.
struct SensorFrame {
  double timestamp = 0.0;
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
  std::vector<Eigen::Vector3d> points;
};

struct OccupancyConfig {
  double voxel_size = 0.1;  // meters
  double log_odds_hit = 0.85;
  double log_odds_miss = -0.40;
  double log_odds_min = -2.0;
  double log_odds_max = 3.5;
  double occupied_threshold = 0.8472978603872034;  // logit(0.7)
  double max_ray_range = 5.0;  // meters
  // Occupancy is fixed 0/1 at first observation; misses never free an
  // occupied voxel (the insert-only regime).
  bool deterministic = false;

  void validate() const {
    if (!(log_odds_min < occupied_threshold &&
          occupied_threshold < log_odds_max))
      throw DataError("require log_odds_min < occupied_threshold < log_odds_max");
    if (voxel_size <= 0) throw DataError("voxel_size must be positive");
    if (max_ray_range <= 0) throw DataError("max_ray_range must be positive");
  }
};

enum class OccState { Unknown, Free, Occupied };

inline VoxelKey point_to_voxel(const Eigen::Vector3d& p, double voxel_size) {
  return {static_cast<int32_t>(std::floor(p.x() / voxel_size)),
          static_cast<int32_t>(std::floor(p.y() / voxel_size)),
          static_cast<int32_t>(std::floor(p.z() / voxel_size))};
}

inline Eigen::Vector3d voxel_center(const VoxelKey& k, double voxel_size) {
  return {(k.x + 0.5) * voxel_size, (k.y + 0.5) * voxel_size,
          (k.z + 0.5) * voxel_size};
}

// Incremental grid walk from start to end (meters). Yields every voxel the
// segment passes through, in order, both endpoint voxels included.
std::vector<VoxelKey> traverse_ray(const Eigen::Vector3d& start,
                                   const Eigen::Vector3d& end,
                                   double voxel_size);

}  // namespace esdf
