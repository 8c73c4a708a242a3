#pragma once

#include <deque>
#include <optional>
#include <queue>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "esdf/coc_lists.hpp"
#include "esdf/occupancy.hpp"
#include "esdf/types.hpp"
#include "esdf/voxel_index.hpp"
#include "esdf/voxel_store.hpp"

namespace esdf {

enum class QueueDiscipline { FIFO, PriorityByDistance };
enum class UpdateRule { EuclideanClosestObstacle, QuasiEuclidean };

const char* to_string(UpdateRule r);

struct EsdfConfig {
  Connectivity connectivity = Connectivity::C24;
  QueueDiscipline discipline = QueueDiscipline::FIFO;
  UpdateRule rule = UpdateRule::EuclideanClosestObstacle;
  bool signed_mode = false;
  // Test hook. The limited-observation patch is required for correctness
  // under partial observation; disabling it exists only to demonstrate the
  // failure it prevents.
  bool limited_observation_patch = true;
};

struct EpochReport {
  int64_t k_initialized = 0;  // voxels handled during queue initialization
  int64_t n_expanded = 0;     // voxels popped by the BFS propagation
  int64_t pops = 0;           // total queue pops, stale entries included
  int64_t inserts = 0;
  int64_t deletes = 0;
  double wall_time_ms = 0.0;
};

// Facade binding the index, occupancy fusion, and the incremental distance
// field. Single mutating owner; queries are read-only between epochs.
class EsdfMap {
 public:
  EsdfMap(IndexConfig index_cfg, OccupancyConfig occ_cfg, EsdfConfig esdf_cfg);

  // The coc lists hold a pointer into this object; moves must rebind it.
  EsdfMap(const EsdfMap&) = delete;
  EsdfMap& operator=(const EsdfMap&) = delete;
  EsdfMap(EsdfMap&& other) noexcept
      : index_cfg_(std::move(other.index_cfg_)),
        occ_cfg_(other.occ_cfg_),
        esdf_cfg_(other.esdf_cfg_),
        index_(std::move(other.index_)),
        primary_lists_(std::move(other.primary_lists_)),
        complement_lists_(std::move(other.complement_lists_)),
        observed_count_(other.observed_count_),
        epoch_baseline_(std::move(other.epoch_baseline_)),
        epoch_touched_(std::move(other.epoch_touched_)) {
    primary_lists_.rebind(index_);
    complement_lists_.rebind(index_);
  }
  EsdfMap& operator=(EsdfMap&&) = delete;

  const OccupancyConfig& occupancy_config() const { return occ_cfg_; }
  const EsdfConfig& esdf_config() const { return esdf_cfg_; }
  VoxelIndex& index() { return index_; }
  const VoxelIndex& index() const { return index_; }

  // --- occupancy integration -------------------------------------------
  void integrate_frame(const SensorFrame& frame);

  // Direct voxel-level mutation, used by synthetic scenarios and tests.
  // Goes through the same observation/crossing bookkeeping as raycasting.
  void observe_free(const VoxelKey& key);
  void observe_occupied(const VoxelKey& key);
  void clear_occupied(const VoxelKey& key);

  OccState occupancy_state(const VoxelKey& key) const;

  // Pending per-epoch queues, computed from state at first touch vs. now.
  std::vector<VoxelKey> pending_inserts() const;
  std::vector<VoxelKey> pending_deletes() const;

  // --- ESDF update -------------------------------------------------------
  EpochReport run_epoch();

  // --- queries -----------------------------------------------------------
  struct DistanceQuery {
    double distance = kInf;  // meters
    bool observed = false;
  };
  DistanceQuery query_distance(const Eigen::Vector3d& point,
                               FieldLayer layer = FieldLayer::Primary) const;
  std::optional<double> query_distance_interpolated(
      const Eigen::Vector3d& point,
      FieldLayer layer = FieldLayer::Primary) const;
  std::optional<Eigen::Vector3d> query_gradient(
      const Eigen::Vector3d& point) const;
  // Requires signed_mode; +inf where unobserved.
  double signed_distance(const Eigen::Vector3d& point) const;

  // Voxel-level field access (voxel units).
  double voxel_distance(const VoxelKey& key,
                        FieldLayer layer = FieldLayer::Primary) const;
  VoxelKey voxel_coc(const VoxelKey& key,
                     FieldLayer layer = FieldLayer::Primary) const;

  std::vector<VoxelKey> occupied_voxels() const;
  std::vector<VoxelKey> observed_voxels() const;
  int64_t observed_count() const { return observed_count_; }

  std::vector<VoxelKey> ip_members(FieldLayer layer = FieldLayer::Primary) const;
  std::vector<VoxelKey> dll_members(const VoxelKey& owner,
                                    FieldLayer layer = FieldLayer::Primary) const;

  // --- invariant scans (test support) -------------------------------------
  // Neighbor pairs where some voxel could still improve another.
  int64_t count_fixed_point_violations(
      FieldLayer layer = FieldLayer::Primary) const;
  // Every observed voxel linked in exactly one DLL, matching its coc.
  bool check_dll_partition(std::string* error = nullptr,
                           FieldLayer layer = FieldLayer::Primary) const;

  // --- slice export --------------------------------------------------------
  // axis: 0=x, 1=y, 2=z; index in voxels. Values are dis in voxel units.
  void write_slice_csv(std::ostream& os, int axis, int index,
                       FieldLayer layer = FieldLayer::Primary) const;
  void write_slice_pgm(std::ostream& os, int axis, int index,
                       double max_distance_voxels,
                       FieldLayer layer = FieldLayer::Primary) const;

 private:
  struct Touch {
    OccState baseline;
  };

  // FIFO by default; the priority variant pops by smallest distance with
  // lexicographic key tiebreak for determinism. Entries carry the dis they
  // were pushed with so stale ones can be dropped on pop.
  struct UpdateQueue {
    struct Entry {
      VoxelKey key;
      double dis;
    };
    explicit UpdateQueue(QueueDiscipline d) : discipline(d) {}
    QueueDiscipline discipline;
    std::deque<Entry> fifo;
    std::priority_queue<std::pair<double, VoxelKey>,
                        std::vector<std::pair<double, VoxelKey>>,
                        std::greater<>>
        heap;

    bool empty() const {
      return discipline == QueueDiscipline::FIFO ? fifo.empty() : heap.empty();
    }
    void push(const VoxelKey& k, double dis) {
      if (discipline == QueueDiscipline::FIFO)
        fifo.push_back({k, dis});
      else
        heap.emplace(dis, k);
    }
    Entry pop() {
      if (discipline == QueueDiscipline::FIFO) {
        Entry e = fifo.front();
        fifo.pop_front();
        return e;
      }
      Entry e{heap.top().second, heap.top().first};
      heap.pop();
      return e;
    }
  };

  VoxelInfo& touch(const VoxelKey& key);
  void apply_hit(const VoxelKey& key);
  void apply_miss(const VoxelKey& key);
  void mark_observed(const VoxelKey& key, VoxelInfo& rec);
  OccState state_of(const VoxelInfo& rec) const;
  bool field_occupied(const VoxelKey& key, FieldLayer layer) const;

  void build_epoch_queues(std::vector<VoxelKey>& ins, std::vector<VoxelKey>& del,
                          std::vector<VoxelKey>& cins,
                          std::vector<VoxelKey>& cdel) const;
  void update_field(FieldLayer layer, const std::vector<VoxelKey>& insert_queue,
                    const std::vector<VoxelKey>& delete_queue,
                    EpochReport& report);
  void initialize_queues(FieldLayer layer,
                         const std::vector<VoxelKey>& insert_queue,
                         const std::vector<VoxelKey>& delete_queue,
                         UpdateQueue& update_queue, EpochReport& report);
  void propagate(FieldLayer layer, UpdateQueue& update_queue,
                 EpochReport& report);
  void relink(const VoxelKey& key, FieldState& fs, const VoxelKey& new_coc,
              FieldLayer layer);
  CocLists& lists(FieldLayer layer) {
    return layer == FieldLayer::Primary ? primary_lists_ : complement_lists_;
  }
  const CocLists& lists(FieldLayer layer) const {
    return layer == FieldLayer::Primary ? primary_lists_ : complement_lists_;
  }

  bool slice_bounds(VoxelBounds& out) const;

  IndexConfig index_cfg_;
  OccupancyConfig occ_cfg_;
  EsdfConfig esdf_cfg_;
  VoxelIndex index_;
  CocLists primary_lists_;
  CocLists complement_lists_;

  int64_t observed_count_ = 0;

  std::unordered_map<VoxelKey, Touch, VoxelKeyHash> epoch_baseline_;
  std::vector<VoxelKey> epoch_touched_;  // first-touch order
};

}  // namespace esdf
