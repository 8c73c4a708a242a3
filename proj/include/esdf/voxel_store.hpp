#pragma once

#include <span>

#include "esdf/types.hpp"

namespace esdf {

// One distance-field layer of a voxel record. The map keeps a primary
// layer; a complement layer (free voxels as obstacles) backs signed mode.
struct FieldState {
  double dis = kInf;          // Euclidean distance, voxel units
  VoxelKey coc = kUndefined;  // closest obstacle; kUndefined = Ideal Point
  VoxelKey prev = kUndefined;
  VoxelKey next = kUndefined;
  VoxelKey head = kUndefined;  // head of the list of voxels whose coc is this one
  bool linked = false;         // member of some DLL (its coc's, or IP's)
};

enum class FieldLayer : int { Primary = 0, Complement = 1 };

// Per-voxel record.
struct VoxelInfo {
  VoxelKey pos{};
  float occ = 0.f;   // occupancy log-odds
  bool obs = false;  // ever observed
  FieldState field[2];

  FieldState& layer(FieldLayer l) { return field[static_cast<int>(l)]; }
  const FieldState& layer(FieldLayer l) const {
    return field[static_cast<int>(l)];
  }
};

// Neighbor offset sets used by BFS propagation.
//   C6  faces; C18 faces+edges; C26 faces+edges+corners;
//   C24 faces+edges+two-step faces; C32 = C26 + two-step faces.
enum class Connectivity { C6, C18, C24, C26, C32 };

std::span<const VoxelKey> connectivity_offsets(Connectivity c);
int connectivity_degree(Connectivity c);

const char* to_string(Connectivity c);

}  // namespace esdf
