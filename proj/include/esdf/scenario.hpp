#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "esdf/occupancy.hpp"
#include "esdf/types.hpp"

namespace esdf {

struct ObstacleSpec {
  enum class Shape { Box, Sphere };
  Shape shape = Shape::Box;
  // Box
  Eigen::Vector3d box_min = Eigen::Vector3d::Zero();
  Eigen::Vector3d box_max = Eigen::Vector3d::Zero();
  // Sphere
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
  // Epoch schedule; disappear < 0 means never.
  int appear_epoch = 0;
  int disappear_epoch = -1;
};

struct SensorModel {
  double max_range = 5.0;
  int rays_per_frame = 500;
  enum class Pattern { FullSphere, Fan };
  Pattern pattern = Pattern::FullSphere;
  double fan_half_angle_deg = 45.0;  // cone around the sensor +x axis
};

struct TrajectoryPose {
  double timestamp = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
};

// Synthetic world spec. Identical seed + spec yields identical streams.
struct ScenarioSpec {
  std::string id = "scenario";
  uint64_t seed = 1;
  Eigen::Vector3d world_min = Eigen::Vector3d::Constant(-10.0);
  Eigen::Vector3d world_max = Eigen::Vector3d::Constant(10.0);
  std::vector<ObstacleSpec> obstacles;
  std::vector<TrajectoryPose> trajectory;
  SensorModel sensor;
};

ScenarioSpec load_scenario(const std::filesystem::path& file);

// Casts rays against the active obstacles from each trajectory pose.
// Obstacle schedules are evaluated against epoch = floor(t / update_period)
// (epoch 0 for update_period <= 0). Only rays that hit produce points.
std::vector<SensorFrame> generate_scenario(const ScenarioSpec& spec,
                                           double update_period);

}  // namespace esdf
