#include "esdf/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace esdf {

namespace {

std::vector<double> parse_row(const std::string& line,
                              const std::string& file, int lineno,
                              size_t expected) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(cell, &used));
      while (used < cell.size() && std::isspace((unsigned char)cell[used]))
        ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw DataError(file + " line " + std::to_string(lineno) +
                      ": bad numeric field '" + cell + "'");
    }
  }
  if (out.size() != expected)
    throw DataError(file + " line " + std::to_string(lineno) + ": expected " +
                    std::to_string(expected) + " fields, got " +
                    std::to_string(out.size()));
  return out;
}

std::vector<Eigen::Vector3d> load_cloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<Eigen::Vector3d> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;  // header
    const auto v = parse_row(line, path.filename().string(), lineno, 3);
    pts.emplace_back(v[0], v[1], v[2]);
  }
  return pts;
}

}  // namespace

DatasetLoadResult load_dataset(const std::filesystem::path& dir) {
  const std::filesystem::path poses_path = dir / "poses.csv";
  std::ifstream in(poses_path);
  if (!in) throw DataError("cannot open " + poses_path.string());

  DatasetLoadResult result;
  std::string line;
  int lineno = 0;
  int row = -1;  // 0-based data-row index
  double prev_t = -kInf;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;  // header
    ++row;
    const auto v = parse_row(line, "poses.csv", lineno, 8);
    if (v[0] < prev_t)
      throw DataError("poses.csv line " + std::to_string(lineno) +
                      ": timestamp regression");
    prev_t = v[0];

    const std::filesystem::path cloud_path =
        dir / ("cloud_" + std::to_string(row) + ".csv");
    if (!std::filesystem::exists(cloud_path)) {
      ++result.skipped_missing_clouds;
      continue;
    }

    SensorFrame frame;
    frame.timestamp = v[0];
    frame.translation = {v[1], v[2], v[3]};
    frame.rotation = Eigen::Quaterniond(v[7], v[4], v[5], v[6]);
    if (std::abs(frame.rotation.norm() - 1.0) > 1e-6)
      throw DataError("poses.csv line " + std::to_string(lineno) +
                      ": quaternion is not normalized");
    frame.rotation.normalize();
    frame.points = load_cloud(cloud_path);
    result.frames.push_back(std::move(frame));
  }
  return result;
}

}  // namespace esdf
