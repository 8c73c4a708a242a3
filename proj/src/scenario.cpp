#include "esdf/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

namespace esdf {

namespace {

using nlohmann::json;

Eigen::Vector3d vec3(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw DataError("expected a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// Slab test; returns smallest t in (0, t_max] or a negative value.
double ray_box(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
               const Eigen::Vector3d& bmin, const Eigen::Vector3d& bmax,
               double t_max) {
  double t0 = 0.0, t1 = t_max;
  for (int a = 0; a < 3; ++a) {
    if (std::abs(dir[a]) < 1e-15) {
      if (origin[a] < bmin[a] || origin[a] > bmax[a]) return -1.0;
      continue;
    }
    double tn = (bmin[a] - origin[a]) / dir[a];
    double tf = (bmax[a] - origin[a]) / dir[a];
    if (tn > tf) std::swap(tn, tf);
    t0 = std::max(t0, tn);
    t1 = std::min(t1, tf);
    if (t0 > t1) return -1.0;
  }
  return t0 > 0.0 ? t0 : -1.0;  // origin inside the box casts no surface hit
}

double ray_sphere(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                  const Eigen::Vector3d& center, double radius, double t_max) {
  const Eigen::Vector3d oc = origin - center;
  const double b = oc.dot(dir);
  const double c = oc.squaredNorm() - radius * radius;
  const double disc = b * b - c;
  if (disc < 0.0) return -1.0;
  const double s = std::sqrt(disc);
  double t = -b - s;
  if (t <= 0.0) t = -b + s;
  if (t <= 0.0 || t > t_max) return -1.0;
  return t;
}

bool active(const ObstacleSpec& o, int epoch) {
  if (epoch < o.appear_epoch) return false;
  return o.disappear_epoch < 0 || epoch < o.disappear_epoch;
}

void validate(const ObstacleSpec& o) {
  if (o.shape == ObstacleSpec::Shape::Box) {
    if ((o.box_max - o.box_min).minCoeff() <= 0.0)
      throw DataError("degenerate box obstacle (zero or negative extent)");
  } else if (o.radius <= 0.0) {
    throw DataError("degenerate sphere obstacle (non-positive radius)");
  }
}

}  // namespace

std::vector<SensorFrame> generate_scenario(const ScenarioSpec& spec,
                                           double update_period) {
  for (const ObstacleSpec& o : spec.obstacles) validate(o);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> uang(0.0, 2.0 * M_PI);

  const double cos_half =
      std::cos(spec.sensor.fan_half_angle_deg * M_PI / 180.0);

  std::vector<SensorFrame> frames;
  frames.reserve(spec.trajectory.size());
  for (const TrajectoryPose& pose : spec.trajectory) {
    const int epoch =
        update_period > 0.0
            ? static_cast<int>(std::floor(pose.timestamp / update_period))
            : 0;
    SensorFrame frame;
    frame.timestamp = pose.timestamp;
    frame.translation = pose.position;
    frame.rotation = pose.rotation.normalized();

    for (int r = 0; r < spec.sensor.rays_per_frame; ++r) {
      // Uniform direction on the sphere; fan mode rejects to a cone
      // around the sensor-frame +x axis.
      Eigen::Vector3d dir_local;
      do {
        const double z = uni(rng);
        const double phi = uang(rng);
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        dir_local = {s * std::cos(phi), s * std::sin(phi), z};
      } while (spec.sensor.pattern == SensorModel::Pattern::Fan &&
               dir_local.x() < cos_half);

      const Eigen::Vector3d dir_world = frame.rotation * dir_local;
      double best_t = -1.0;
      for (const ObstacleSpec& o : spec.obstacles) {
        if (!active(o, epoch)) continue;
        const double t =
            o.shape == ObstacleSpec::Shape::Box
                ? ray_box(frame.translation, dir_world, o.box_min, o.box_max,
                          spec.sensor.max_range)
                : ray_sphere(frame.translation, dir_world, o.center, o.radius,
                             spec.sensor.max_range);
        if (t > 0.0 && (best_t < 0.0 || t < best_t)) best_t = t;
      }
      if (best_t > 0.0) frame.points.push_back(dir_local * best_t);
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

ScenarioSpec load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open scenario file: " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DataError("scenario JSON parse error: " + std::string(e.what()));
  }

  ScenarioSpec spec;
  spec.id = j.value("id", std::string("scenario"));
  spec.seed = j.value("seed", uint64_t{1});
  if (j.contains("world_min")) spec.world_min = vec3(j["world_min"]);
  if (j.contains("world_max")) spec.world_max = vec3(j["world_max"]);

  for (const json& jo : j.value("obstacles", json::array())) {
    ObstacleSpec o;
    const std::string type = jo.value("type", std::string("box"));
    if (type == "box") {
      o.shape = ObstacleSpec::Shape::Box;
      o.box_min = vec3(jo.at("min"));
      o.box_max = vec3(jo.at("max"));
    } else if (type == "sphere") {
      o.shape = ObstacleSpec::Shape::Sphere;
      o.center = vec3(jo.at("center"));
      o.radius = jo.at("radius").get<double>();
    } else {
      throw DataError("unknown obstacle type: " + type);
    }
    o.appear_epoch = jo.value("appear", 0);
    o.disappear_epoch = jo.value("disappear", -1);
    validate(o);
    spec.obstacles.push_back(o);
  }

  for (const json& jp : j.value("trajectory", json::array())) {
    TrajectoryPose p;
    p.timestamp = jp.at("t").get<double>();
    p.position = vec3(jp.at("pos"));
    if (jp.contains("quat")) {
      const json& q = jp["quat"];
      if (!q.is_array() || q.size() != 4)
        throw DataError("quat must be [x,y,z,w]");
      p.rotation = Eigen::Quaterniond(q[3].get<double>(), q[0].get<double>(),
                                      q[1].get<double>(), q[2].get<double>());
      if (std::abs(p.rotation.norm() - 1.0) > 1e-6)
        throw DataError("trajectory quaternion is not normalized");
    }
    spec.trajectory.push_back(p);
  }

  if (j.contains("sensor")) {
    const json& js = j["sensor"];
    spec.sensor.max_range = js.value("max_range", spec.sensor.max_range);
    spec.sensor.rays_per_frame =
        js.value("rays", spec.sensor.rays_per_frame);
    const std::string pat = js.value("pattern", std::string("sphere"));
    if (pat == "sphere" || pat == "full_sphere")
      spec.sensor.pattern = SensorModel::Pattern::FullSphere;
    else if (pat == "fan")
      spec.sensor.pattern = SensorModel::Pattern::Fan;
    else
      throw DataError("unknown sensor pattern: " + pat);
    spec.sensor.fan_half_angle_deg =
        js.value("fan_half_angle_deg", spec.sensor.fan_half_angle_deg);
  }
  return spec;
}

}  // namespace esdf
