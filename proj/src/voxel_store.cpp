#include "esdf/voxel_store.hpp"

#include <vector>

namespace esdf {
namespace {

int max_abs(const VoxelKey& k) {
  int m = std::abs(k.x);
  m = std::max(m, std::abs(k.y));
  return std::max(m, std::abs(k.z));
}

int manhattan(const VoxelKey& k) {
  return std::abs(k.x) + std::abs(k.y) + std::abs(k.z);
}

std::vector<VoxelKey> unit_cube_offsets(int max_manhattan) {
  std::vector<VoxelKey> v;
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y)
      for (int z = -1; z <= 1; ++z) {
        VoxelKey k{x, y, z};
        int m = manhattan(k);
        if (m >= 1 && m <= max_manhattan) v.push_back(k);
      }
  return v;
}

std::vector<VoxelKey> two_step_faces() {
  return {{2, 0, 0}, {-2, 0, 0}, {0, 2, 0}, {0, -2, 0}, {0, 0, 2}, {0, 0, -2}};
}

std::vector<VoxelKey> build(Connectivity c) {
  switch (c) {
    case Connectivity::C6:
      return unit_cube_offsets(1);
    case Connectivity::C18:
      return unit_cube_offsets(2);
    case Connectivity::C26:
      return unit_cube_offsets(3);
    case Connectivity::C24: {
      auto v = unit_cube_offsets(2);
      auto t = two_step_faces();
      v.insert(v.end(), t.begin(), t.end());
      return v;
    }
    case Connectivity::C32: {
      auto v = unit_cube_offsets(3);
      auto t = two_step_faces();
      v.insert(v.end(), t.begin(), t.end());
      return v;
    }
  }
  return {};
}

}  // namespace

std::span<const VoxelKey> connectivity_offsets(Connectivity c) {
  static const std::vector<VoxelKey> c6 = build(Connectivity::C6);
  static const std::vector<VoxelKey> c18 = build(Connectivity::C18);
  static const std::vector<VoxelKey> c24 = build(Connectivity::C24);
  static const std::vector<VoxelKey> c26 = build(Connectivity::C26);
  static const std::vector<VoxelKey> c32 = build(Connectivity::C32);
  switch (c) {
    case Connectivity::C6:
      return c6;
    case Connectivity::C18:
      return c18;
    case Connectivity::C24:
      return c24;
    case Connectivity::C26:
      return c26;
    case Connectivity::C32:
      return c32;
  }
  return {};
}

int connectivity_degree(Connectivity c) {
  return static_cast<int>(connectivity_offsets(c).size());
}

const char* to_string(Connectivity c) {
  switch (c) {
    case Connectivity::C6:
      return "C6";
    case Connectivity::C18:
      return "C18";
    case Connectivity::C24:
      return "C24";
    case Connectivity::C26:
      return "C26";
    case Connectivity::C32:
      return "C32";
  }
  return "?";
}

}  // namespace esdf
