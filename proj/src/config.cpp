#include "esdf/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace esdf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw DataError("bad boolean for " + key + ": " + v);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw DataError("bad number for " + key + ": " + v);
  }
}

int parse_int(const std::string& v, const std::string& key) {
  const double d = parse_double(v, key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw DataError("bad integer for " + key + ": " + v);
  return i;
}

Connectivity parse_connectivity(std::string v) {
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "c6" || v == "6") return Connectivity::C6;
  if (v == "c18" || v == "18") return Connectivity::C18;
  if (v == "c24" || v == "24") return Connectivity::C24;
  if (v == "c26" || v == "26") return Connectivity::C26;
  if (v == "c32" || v == "32") return Connectivity::C32;
  throw DataError("bad connectivity: " + v);
}

VoxelBounds parse_bounds(const std::string& v) {
  std::stringstream ss(v);
  std::string cell;
  std::vector<int> n;
  while (std::getline(ss, cell, ','))
    n.push_back(parse_int(trim(cell), "index.bounds"));
  if (n.size() != 6)
    throw DataError("index.bounds wants minx,miny,minz,maxx,maxy,maxz");
  VoxelBounds b{{n[0], n[1], n[2]}, {n[3], n[4], n[5]}};
  if (b.min.x > b.max.x || b.min.y > b.max.y || b.min.z > b.max.z)
    throw DataError("index.bounds min exceeds max");
  return b;
}

}  // namespace

SliceRequest parse_slice_request(const std::string& text) {
  SliceRequest r;
  std::stringstream ss(text);
  std::string part;
  bool have_axis = false, have_index = false;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw DataError("bad slice request: " + text);
    const std::string k = trim(part.substr(0, eq));
    const std::string v = trim(part.substr(eq + 1));
    if (k == "axis") {
      if (v == "x" || v == "0")
        r.axis = 0;
      else if (v == "y" || v == "1")
        r.axis = 1;
      else if (v == "z" || v == "2")
        r.axis = 2;
      else
        throw DataError("bad slice axis: " + v);
      have_axis = true;
    } else if (k == "index") {
      r.index = parse_int(v, "slice index");
      have_index = true;
    } else {
      throw DataError("unknown slice field: " + k);
    }
  }
  if (!have_axis || !have_index)
    throw DataError("slice request needs axis=<x|y|z>,index=<int>: " + text);
  return r;
}

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "index.backend") {
    if (value == "dense" || value == "array")
      cfg.index.backend = IndexBackend::DenseArray;
    else if (value == "hashed" || value == "hash")
      cfg.index.backend = IndexBackend::HashedBlocks;
    else
      throw DataError("bad index.backend: " + value);
  } else if (key == "index.block_size") {
    cfg.index.block_size = parse_int(value, key);
  } else if (key == "index.bounds") {
    cfg.index.bounds = parse_bounds(value);
  } else if (key == "occupancy.voxel_size") {
    cfg.occupancy.voxel_size = parse_double(value, key);
  } else if (key == "occupancy.log_odds_hit") {
    cfg.occupancy.log_odds_hit = parse_double(value, key);
  } else if (key == "occupancy.log_odds_miss") {
    cfg.occupancy.log_odds_miss = parse_double(value, key);
  } else if (key == "occupancy.log_odds_min") {
    cfg.occupancy.log_odds_min = parse_double(value, key);
  } else if (key == "occupancy.log_odds_max") {
    cfg.occupancy.log_odds_max = parse_double(value, key);
  } else if (key == "occupancy.occupied_threshold") {
    cfg.occupancy.occupied_threshold = parse_double(value, key);
  } else if (key == "occupancy.max_ray_range") {
    cfg.occupancy.max_ray_range = parse_double(value, key);
  } else if (key == "occupancy.deterministic") {
    cfg.occupancy.deterministic = parse_bool(value, key);
  } else if (key == "esdf.connectivity") {
    cfg.esdf.connectivity = parse_connectivity(value);
  } else if (key == "esdf.queue") {
    if (value == "fifo")
      cfg.esdf.discipline = QueueDiscipline::FIFO;
    else if (value == "priority")
      cfg.esdf.discipline = QueueDiscipline::PriorityByDistance;
    else
      throw DataError("bad esdf.queue: " + value);
  } else if (key == "esdf.rule") {
    if (value == "euclidean")
      cfg.esdf.rule = UpdateRule::EuclideanClosestObstacle;
    else if (value == "quasi" || value == "quasi_euclidean")
      cfg.esdf.rule = UpdateRule::QuasiEuclidean;
    else
      throw DataError("bad esdf.rule: " + value);
  } else if (key == "esdf.signed") {
    cfg.esdf.signed_mode = parse_bool(value, key);
  } else if (key == "esdf.patch") {
    cfg.esdf.limited_observation_patch = parse_bool(value, key);
  } else if (key == "run.update_period") {
    cfg.update_period = parse_double(value, key);
  } else if (key == "run.out") {
    cfg.out_dir = value;
  } else if (key == "run.scenario_id") {
    cfg.scenario_id = value;
  } else if (key == "run.slice_pgm_max_voxels") {
    cfg.slice_pgm_max_voxels = parse_double(value, key);
  } else if (key == "run.slice") {
    cfg.slices.push_back(parse_slice_request(value));
  } else {
    throw DataError("unknown config key: " + key);
  }
}

RunConfig parse_config_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open config file: " + file.string());
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError(file.string() + " line " + std::to_string(lineno) +
                      ": expected key = value");
    try {
      apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const DataError& e) {
      throw DataError(file.string() + " line " + std::to_string(lineno) +
                      ": " + e.what());
    }
  }
  return cfg;
}

}  // namespace esdf
