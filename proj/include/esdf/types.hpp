#pragma once

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace esdf {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Malformed input (files, frames, configs). Exit code 1 at the CLI.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal structural invariant broken. Exit code 2 at the CLI.
struct CorruptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Key outside the configured bounds of a dense-array index.
struct BoundsError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Integer voxel coordinate. Ordering is lexicographic (x, y, z).
struct VoxelKey {
  int32_t x = 0, y = 0, z = 0;

  friend bool operator==(const VoxelKey&, const VoxelKey&) = default;
  friend auto operator<=>(const VoxelKey&, const VoxelKey&) = default;

  friend VoxelKey operator+(const VoxelKey& a, const VoxelKey& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend VoxelKey operator-(const VoxelKey& a, const VoxelKey& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
};

// Sentinel shared by "no link" and the Ideal Point (closest obstacle at
// infinity). Never a real lattice point.
inline constexpr VoxelKey kUndefined{INT32_MIN, INT32_MIN, INT32_MIN};

inline bool defined(const VoxelKey& k) { return k != kUndefined; }

inline int64_t dist_sq(const VoxelKey& a, const VoxelKey& b) {
  const int64_t dx = int64_t{a.x} - b.x;
  const int64_t dy = int64_t{a.y} - b.y;
  const int64_t dz = int64_t{a.z} - b.z;
  return dx * dx + dy * dy + dz * dz;
}

inline double dist(const VoxelKey& a, const VoxelKey& b) {
  return std::sqrt(static_cast<double>(dist_sq(a, b)));
}

struct VoxelKeyHash {
  size_t operator()(const VoxelKey& k) const {
    uint64_t h = (uint64_t)(uint32_t)k.x * 0x9e3779b97f4a7c15ULL;
    h ^= (uint64_t)(uint32_t)k.y * 0xc2b2ae3d27d4eb4fULL;
    h ^= (uint64_t)(uint32_t)k.z * 0x165667b19e3779f9ULL;
    h ^= h >> 29;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 32;
    return static_cast<size_t>(h);
  }
};

// Coordinate of a block of block_size^3 voxels.
struct BlockKey {
  int32_t x = 0, y = 0, z = 0;
  friend bool operator==(const BlockKey&, const BlockKey&) = default;
  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
};

struct BlockKeyHash {
  size_t operator()(const BlockKey& k) const {
    return VoxelKeyHash{}(VoxelKey{k.x, k.y, k.z});
  }
};

inline int32_t floor_div(int32_t v, int32_t d) {
  int32_t q = v / d;
  if ((v % d != 0) && ((v < 0) != (d < 0))) --q;
  return q;
}

struct BlockCoord {
  BlockKey block;
  VoxelKey offset;  // components in [0, block_size)
};

// Floor semantics so negative coordinates split correctly; arithmetic
// shift when block_size is a power of two.
inline BlockCoord block_of(const VoxelKey& key, int block_size) {
  BlockCoord r;
  if (block_size == 1) {
    r.block = {key.x, key.y, key.z};
    r.offset = {0, 0, 0};
  } else if ((block_size & (block_size - 1)) == 0) {
    const int s = std::countr_zero(static_cast<unsigned>(block_size));
    const int32_t m = block_size - 1;
    r.block = {key.x >> s, key.y >> s, key.z >> s};
    r.offset = {key.x & m, key.y & m, key.z & m};
  } else {
    r.block = {floor_div(key.x, block_size), floor_div(key.y, block_size),
               floor_div(key.z, block_size)};
    r.offset = {key.x - r.block.x * block_size, key.y - r.block.y * block_size,
                key.z - r.block.z * block_size};
  }
  return r;
}

// Inclusive axis-aligned voxel box.
struct VoxelBounds {
  VoxelKey min{0, 0, 0};
  VoxelKey max{0, 0, 0};

  bool contains(const VoxelKey& k) const {
    return k.x >= min.x && k.x <= max.x && k.y >= min.y && k.y <= max.y &&
           k.z >= min.z && k.z <= max.z;
  }
  int64_t size_x() const { return int64_t{max.x} - min.x + 1; }
  int64_t size_y() const { return int64_t{max.y} - min.y + 1; }
  int64_t size_z() const { return int64_t{max.z} - min.z + 1; }
  int64_t volume() const { return size_x() * size_y() * size_z(); }
};

}  // namespace esdf
