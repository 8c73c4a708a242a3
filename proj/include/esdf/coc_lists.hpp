#pragma once

#include <vector>

#include "esdf/types.hpp"
#include "esdf/voxel_index.hpp"
#include "esdf/voxel_store.hpp"

namespace esdf {

// Doubly-linked lists threading, per obstacle voxel, all voxels whose
// closest obstacle it is. The owner kUndefined stands for the Ideal Point,
// whose head lives here rather than in any record. Links are VoxelKeys
// resolved through the index so both backends work unchanged.
class CocLists {
 public:
  CocLists(VoxelIndex& index, FieldLayer layer)
      : index_(&index), layer_(layer) {}

  VoxelKey ip_head() const { return ip_head_; }

  // The owning map re-points us at its own index after a move.
  void rebind(VoxelIndex& index) { index_ = &index; }

  void insert(const VoxelKey& owner, const VoxelKey& member) {
    VoxelInfo& rec = require(member);
    FieldState& fs = rec.layer(layer_);
    if (fs.linked)
      throw CorruptionError("insert of already-linked DLL member");
    VoxelKey& head = head_of(owner);
    fs.next = head;
    fs.prev = kUndefined;
    if (defined(head)) require(head).layer(layer_).prev = member;
    head = member;
    fs.linked = true;
  }

  void remove(const VoxelKey& owner, const VoxelKey& member) {
    VoxelInfo& rec = require(member);
    FieldState& fs = rec.layer(layer_);
    if (!fs.linked)
      throw CorruptionError("remove of unlinked DLL member");
    VoxelKey& head = head_of(owner);
    if (defined(fs.prev))
      require(fs.prev).layer(layer_).next = fs.next;
    else {
      if (head != member)
        throw CorruptionError("DLL member without prev is not the head");
      head = fs.next;
    }
    if (defined(fs.next)) require(fs.next).layer(layer_).prev = fs.prev;
    fs.prev = fs.next = kUndefined;
    fs.linked = false;
  }

  template <class F>
  void iterate(const VoxelKey& owner, F&& fn) const {
    const VoxelKey head =
        defined(owner) ? require(owner).layer(layer_).head : ip_head_;
    // Walk bound: a cycle would otherwise not terminate.
    int64_t limit = index_->memory_stats().allocated_voxel_records + 1;
    VoxelKey cur = head;
    while (defined(cur)) {
      if (--limit < 0) throw CorruptionError("cycle detected in DLL walk");
      const VoxelInfo& rec = require(cur);
      VoxelKey next = rec.layer(layer_).next;
      fn(cur);
      cur = next;
    }
  }

  std::vector<VoxelKey> collect(const VoxelKey& owner) const {
    std::vector<VoxelKey> v;
    iterate(owner, [&](const VoxelKey& k) { v.push_back(k); });
    return v;
  }

 private:
  VoxelKey& head_of(const VoxelKey& owner) {
    return defined(owner) ? require(owner).layer(layer_).head : ip_head_;
  }

  VoxelInfo& require(const VoxelKey& key) const {
    VoxelInfo* rec = index_->lookup(key);
    if (!rec) throw CorruptionError("DLL link to unallocated voxel");
    return *rec;
  }

  VoxelIndex* index_;
  FieldLayer layer_;
  VoxelKey ip_head_ = kUndefined;
};

}  // namespace esdf
