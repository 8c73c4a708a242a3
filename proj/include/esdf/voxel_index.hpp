#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "esdf/types.hpp"
#include "esdf/voxel_store.hpp"

namespace esdf {

enum class IndexBackend { DenseArray, HashedBlocks };

struct IndexConfig {
  IndexBackend backend = IndexBackend::HashedBlocks;
  std::optional<VoxelBounds> bounds;  // required for DenseArray
  int block_size = 8;                 // HashedBlocks only
};

struct MemoryStats {
  int64_t allocated_voxel_records = 0;
  int64_t allocated_blocks = 0;
};

// Coordinate -> VoxelInfo mapping. DenseArray pre-sizes storage over the
// configured bounds and materializes records per voxel; HashedBlocks keeps
// a hash table of block_size^3-cell blocks and allocates whole blocks.
class VoxelIndex {
 public:
  explicit VoxelIndex(IndexConfig cfg) : cfg_(cfg) {
    if (cfg_.backend == IndexBackend::DenseArray) {
      if (!cfg_.bounds)
        throw DataError("DenseArray index requires bounds");
      bounds_ = *cfg_.bounds;
      dense_.resize(static_cast<size_t>(bounds_.volume()));
      dense_alloc_.assign(dense_.size(), 0);
    } else {
      if (cfg_.block_size < 1)
        throw DataError("HashedBlocks index requires block_size >= 1");
    }
  }

  const IndexConfig& config() const { return cfg_; }

  // Always true for HashedBlocks; bounds test for DenseArray.
  bool in_bounds(const VoxelKey& key) const {
    return cfg_.backend != IndexBackend::DenseArray || bounds_.contains(key);
  }

  // No allocation. Returns the record if its block (hashed) or slot
  // (dense) has been allocated.
  VoxelInfo* lookup(const VoxelKey& key) {
    if (cfg_.backend == IndexBackend::DenseArray) {
      if (!bounds_.contains(key)) throw BoundsError(oob_message(key));
      size_t i = dense_offset(key);
      return dense_alloc_[i] ? &dense_[i] : nullptr;
    }
    const BlockCoord bc = block_of(key, cfg_.block_size);
    auto it = blocks_.find(bc.block);
    if (it == blocks_.end()) return nullptr;
    return &it->second->cells[cell_offset(bc.offset)];
  }

  const VoxelInfo* lookup(const VoxelKey& key) const {
    return const_cast<VoxelIndex*>(this)->lookup(key);
  }

  // Creates the record (and, for HashedBlocks, its whole block) if absent.
  VoxelInfo& allocate(const VoxelKey& key) {
    if (cfg_.backend == IndexBackend::DenseArray) {
      if (!bounds_.contains(key)) throw BoundsError(oob_message(key));
      size_t i = dense_offset(key);
      if (!dense_alloc_[i]) {
        dense_alloc_[i] = 1;
        ++dense_count_;
        dense_[i].pos = key;
      }
      return dense_[i];
    }
    const BlockCoord bc = block_of(key, cfg_.block_size);
    auto it = blocks_.find(bc.block);
    if (it == blocks_.end()) {
      auto block = std::make_unique<Block>();
      const int bs = cfg_.block_size;
      block->cells.resize(static_cast<size_t>(bs) * bs * bs);
      const VoxelKey origin{bc.block.x * bs, bc.block.y * bs, bc.block.z * bs};
      size_t i = 0;
      for (int x = 0; x < bs; ++x)
        for (int y = 0; y < bs; ++y)
          for (int z = 0; z < bs; ++z)
            block->cells[i++].pos = origin + VoxelKey{x, y, z};
      it = blocks_.emplace(bc.block, std::move(block)).first;
    }
    return it->second->cells[cell_offset(bc.offset)];
  }

  MemoryStats memory_stats() const {
    MemoryStats s;
    if (cfg_.backend == IndexBackend::DenseArray) {
      s.allocated_voxel_records = dense_count_;
      s.allocated_blocks = dense_count_ > 0 ? 1 : 0;
    } else {
      s.allocated_blocks = static_cast<int64_t>(blocks_.size());
      const int64_t bs = cfg_.block_size;
      s.allocated_voxel_records = s.allocated_blocks * bs * bs * bs;
    }
    return s;
  }

  // Visits every allocated record in deterministic (lexicographic) order.
  void for_each(const std::function<void(VoxelInfo&)>& fn) {
    if (cfg_.backend == IndexBackend::DenseArray) {
      for (size_t i = 0; i < dense_.size(); ++i)
        if (dense_alloc_[i]) fn(dense_[i]);
      return;
    }
    std::vector<BlockKey> keys;
    keys.reserve(blocks_.size());
    for (const auto& [k, _] : blocks_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (const BlockKey& k : keys)
      for (VoxelInfo& rec : blocks_.at(k)->cells) fn(rec);
  }

  void for_each(const std::function<void(const VoxelInfo&)>& fn) const {
    const_cast<VoxelIndex*>(this)->for_each(
        [&](VoxelInfo& rec) { fn(rec); });
  }

 private:
  struct Block {
    std::vector<VoxelInfo> cells;
  };

  size_t dense_offset(const VoxelKey& k) const {
    const int64_t ix = k.x - bounds_.min.x;
    const int64_t iy = k.y - bounds_.min.y;
    const int64_t iz = k.z - bounds_.min.z;
    return static_cast<size_t>((ix * bounds_.size_y() + iy) * bounds_.size_z() +
                               iz);
  }

  size_t cell_offset(const VoxelKey& off) const {
    const int bs = cfg_.block_size;
    return static_cast<size_t>((off.x * bs + off.y) * bs + off.z);
  }

  static std::string oob_message(const VoxelKey& k) {
    return "voxel (" + std::to_string(k.x) + "," + std::to_string(k.y) + "," +
           std::to_string(k.z) + ") outside dense index bounds";
  }

  IndexConfig cfg_;
  VoxelBounds bounds_{};
  std::vector<VoxelInfo> dense_;
  std::vector<uint8_t> dense_alloc_;
  int64_t dense_count_ = 0;
  std::unordered_map<BlockKey, std::unique_ptr<Block>, BlockKeyHash> blocks_;
};

}  // namespace esdf
