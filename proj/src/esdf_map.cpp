#include "esdf/esdf_map.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace esdf {

namespace {

constexpr int64_t kInfSq = std::numeric_limits<int64_t>::max();

int64_t coc_dist_sq(const FieldState& fs, const VoxelKey& at) {
  return defined(fs.coc) ? dist_sq(fs.coc, at) : kInfSq;
}

double clampd(double v, double lo, double hi) {
  return std::min(hi, std::max(lo, v));
}

}  // namespace

const char* to_string(UpdateRule r) {
  return r == UpdateRule::EuclideanClosestObstacle ? "euclidean" : "quasi";
}

EsdfMap::EsdfMap(IndexConfig index_cfg, OccupancyConfig occ_cfg,
                 EsdfConfig esdf_cfg)
    : index_cfg_(index_cfg),
      occ_cfg_(occ_cfg),
      esdf_cfg_(esdf_cfg),
      index_(index_cfg),
      primary_lists_(index_, FieldLayer::Primary),
      complement_lists_(index_, FieldLayer::Complement) {
  occ_cfg_.validate();
}

// ---------------------------------------------------------------------------
// Occupancy integration
// ---------------------------------------------------------------------------

OccState EsdfMap::state_of(const VoxelInfo& rec) const {
  if (!rec.obs) return OccState::Unknown;
  return rec.occ >= occ_cfg_.occupied_threshold ? OccState::Occupied
                                                : OccState::Free;
}

OccState EsdfMap::occupancy_state(const VoxelKey& key) const {
  if (!index_.in_bounds(key)) return OccState::Unknown;
  const VoxelInfo* rec = index_.lookup(key);
  return rec ? state_of(*rec) : OccState::Unknown;
}

VoxelInfo& EsdfMap::touch(const VoxelKey& key) {
  VoxelInfo& rec = index_.allocate(key);
  auto [it, inserted] = epoch_baseline_.try_emplace(key);
  if (inserted) {
    it->second.baseline = state_of(rec);
    epoch_touched_.push_back(key);
  }
  return rec;
}

void EsdfMap::mark_observed(const VoxelKey& key, VoxelInfo& rec) {
  if (rec.obs) return;
  rec.obs = true;
  ++observed_count_;
  // Newly observed voxels join the Ideal Point's list until first updated.
  primary_lists_.insert(kUndefined, key);
  if (esdf_cfg_.signed_mode) complement_lists_.insert(kUndefined, key);
}

void EsdfMap::apply_hit(const VoxelKey& key) {
  if (!index_.in_bounds(key)) return;
  VoxelInfo& rec = touch(key);
  mark_observed(key, rec);
  if (occ_cfg_.deterministic)
    rec.occ = static_cast<float>(occ_cfg_.log_odds_max);
  else
    rec.occ = static_cast<float>(clampd(rec.occ + occ_cfg_.log_odds_hit,
                                        occ_cfg_.log_odds_min,
                                        occ_cfg_.log_odds_max));
}

void EsdfMap::apply_miss(const VoxelKey& key) {
  if (!index_.in_bounds(key)) return;
  VoxelInfo& rec = touch(key);
  const bool first = !rec.obs;
  mark_observed(key, rec);
  if (occ_cfg_.deterministic) {
    // First observation pins the state; occupied voxels never decay.
    if (first) rec.occ = static_cast<float>(occ_cfg_.log_odds_min);
  } else {
    rec.occ = static_cast<float>(clampd(rec.occ + occ_cfg_.log_odds_miss,
                                        occ_cfg_.log_odds_min,
                                        occ_cfg_.log_odds_max));
  }
}

void EsdfMap::integrate_frame(const SensorFrame& frame) {
  if (!frame.translation.allFinite() || !frame.rotation.coeffs().allFinite())
    throw DataError("frame pose has non-finite components");
  if (std::abs(frame.rotation.norm() - 1.0) > 1e-6)
    throw DataError("frame quaternion is not normalized");
  for (const auto& p : frame.points)
    if (!p.allFinite()) throw DataError("frame contains non-finite point");

  const Eigen::Vector3d origin = frame.translation;
  std::vector<VoxelKey> hit_order, miss_order;
  std::unordered_set<VoxelKey, VoxelKeyHash> hits, misses;
  auto add = [](std::vector<VoxelKey>& order,
                std::unordered_set<VoxelKey, VoxelKeyHash>& set,
                const VoxelKey& k) {
    if (set.insert(k).second) order.push_back(k);
  };

  for (const auto& p : frame.points) {
    const Eigen::Vector3d world = frame.rotation * p + origin;
    const Eigen::Vector3d d = world - origin;
    const double range = d.norm();
    const bool clamped = range > occ_cfg_.max_ray_range;
    const Eigen::Vector3d endpoint =
        clamped ? Eigen::Vector3d(origin + d * (occ_cfg_.max_ray_range / range))
                : world;
    const auto voxels = traverse_ray(origin, endpoint, occ_cfg_.voxel_size);
    for (size_t i = 0; i + 1 < voxels.size(); ++i)
      add(miss_order, misses, voxels[i]);
    if (clamped)
      add(miss_order, misses, voxels.back());
    else
      add(hit_order, hits, voxels.back());
  }

  // Hit wins over miss within a frame.
  for (const VoxelKey& k : hit_order) apply_hit(k);
  for (const VoxelKey& k : miss_order)
    if (!hits.count(k)) apply_miss(k);
}

void EsdfMap::observe_free(const VoxelKey& key) {
  VoxelInfo& rec = touch(key);
  mark_observed(key, rec);
  rec.occ = static_cast<float>(occ_cfg_.log_odds_min);
}

void EsdfMap::observe_occupied(const VoxelKey& key) {
  VoxelInfo& rec = touch(key);
  mark_observed(key, rec);
  rec.occ = static_cast<float>(occ_cfg_.log_odds_max);
}

void EsdfMap::clear_occupied(const VoxelKey& key) {
  VoxelInfo& rec = touch(key);
  mark_observed(key, rec);
  rec.occ = static_cast<float>(occ_cfg_.log_odds_min);
}

void EsdfMap::build_epoch_queues(std::vector<VoxelKey>& ins,
                                 std::vector<VoxelKey>& del,
                                 std::vector<VoxelKey>& cins,
                                 std::vector<VoxelKey>& cdel) const {
  for (const VoxelKey& key : epoch_touched_) {
    const OccState old_state = epoch_baseline_.at(key).baseline;
    const VoxelInfo* rec = index_.lookup(key);
    if (!rec) throw CorruptionError("touched voxel missing from index");
    const OccState now = state_of(*rec);
    if (now == OccState::Occupied && old_state != OccState::Occupied)
      ins.push_back(key);
    if (old_state == OccState::Occupied && now != OccState::Occupied)
      del.push_back(key);
    if (esdf_cfg_.signed_mode) {
      if (now == OccState::Free && old_state != OccState::Free)
        cins.push_back(key);
      if (old_state == OccState::Free && now != OccState::Free)
        cdel.push_back(key);
    }
  }
}

std::vector<VoxelKey> EsdfMap::pending_inserts() const {
  std::vector<VoxelKey> ins, del, cins, cdel;
  build_epoch_queues(ins, del, cins, cdel);
  return ins;
}

std::vector<VoxelKey> EsdfMap::pending_deletes() const {
  std::vector<VoxelKey> ins, del, cins, cdel;
  build_epoch_queues(ins, del, cins, cdel);
  return del;
}

// ---------------------------------------------------------------------------
// ESDF update
// ---------------------------------------------------------------------------

bool EsdfMap::field_occupied(const VoxelKey& key, FieldLayer layer) const {
  const OccState s = occupancy_state(key);
  return layer == FieldLayer::Primary ? s == OccState::Occupied
                                      : s == OccState::Free;
}

void EsdfMap::relink(const VoxelKey& key, FieldState& fs,
                     const VoxelKey& new_coc, FieldLayer layer) {
  CocLists& L = lists(layer);
  if (fs.linked) L.remove(fs.coc, key);
  fs.coc = new_coc;
  L.insert(new_coc, key);
}

void EsdfMap::initialize_queues(FieldLayer layer,
                                const std::vector<VoxelKey>& insert_queue,
                                const std::vector<VoxelKey>& delete_queue,
                                UpdateQueue& update_queue,
                                EpochReport& report) {
  CocLists& L = lists(layer);

  for (const VoxelKey& cur : insert_queue) {
    VoxelInfo* rec = index_.lookup(cur);
    if (!rec || !rec->obs)
      throw CorruptionError("queued insert voxel unallocated or unobserved");
    FieldState& fs = rec->layer(layer);
    relink(cur, fs, cur, layer);  // becomes its own closest obstacle
    fs.dis = 0.0;
    update_queue.push(cur, 0.0);
    ++report.k_initialized;
  }

  for (const VoxelKey& cur : delete_queue) {
    VoxelInfo* rec = index_.lookup(cur);
    if (!rec || !rec->obs)
      throw CorruptionError("queued delete voxel unallocated or unobserved");
    // Snapshot: members get unlinked and relinked as they are processed.
    const std::vector<VoxelKey> members = L.collect(cur);
    for (const VoxelKey& vox : members) {
      VoxelInfo* vrec = index_.lookup(vox);
      if (!vrec) throw CorruptionError("DLL member unallocated");
      FieldState& vf = vrec->layer(layer);
      L.remove(cur, vox);
      vf.coc = kUndefined;
      vf.dis = kInf;
      // Adopt the best surviving closest obstacle among the neighbors'.
      int64_t best_sq = kInfSq;
      VoxelKey best = kUndefined;
      for (const VoxelKey& off : connectivity_offsets(esdf_cfg_.connectivity)) {
        const VoxelKey nk = vox + off;
        if (!index_.in_bounds(nk)) continue;
        const VoxelInfo* nrec = index_.lookup(nk);
        if (!nrec || !nrec->obs) continue;
        const VoxelKey cand = nrec->layer(layer).coc;
        if (!defined(cand) || !field_occupied(cand, layer)) continue;
        const int64_t d2 = dist_sq(cand, vox);
        if (d2 < best_sq) {
          best_sq = d2;
          best = cand;
        }
      }
      if (defined(best)) {
        vf.coc = best;
        vf.dis = std::sqrt(static_cast<double>(best_sq));
        L.insert(best, vox);
        update_queue.push(vox, vf.dis);
      } else {
        L.insert(kUndefined, vox);
      }
      ++report.k_initialized;
    }
  }
}

void EsdfMap::propagate(FieldLayer layer, UpdateQueue& q,
                        EpochReport& report) {
  const auto offsets = connectivity_offsets(esdf_cfg_.connectivity);
  const bool quasi = esdf_cfg_.rule == UpdateRule::QuasiEuclidean;
  const int64_t pop_guard =
      std::max<int64_t>(4096, index_.memory_stats().allocated_voxel_records *
                                  static_cast<int64_t>(offsets.size()));
  int64_t pops = 0;

  struct NbrRef {
    VoxelKey key;
    VoxelInfo* rec;
  };
  NbrRef nbrs[32];  // largest connectivity degree

  while (!q.empty()) {
    const auto [cur, pushed_dis] = q.pop();
    if (++pops > pop_guard)
      throw CorruptionError("ESDF propagation exceeded queue growth bound");
    VoxelInfo* rec = index_.lookup(cur);
    if (!rec) throw CorruptionError("queued voxel unallocated");
    FieldState& cf = rec->layer(layer);
    // Improved since this entry was pushed: a fresher entry is in flight.
    if (cf.dis < pushed_dis) continue;

    // One lookup pass shared by the patch scan and the expansion.
    int nn = 0;
    for (const VoxelKey& off : offsets) {
      const VoxelKey nk = cur + off;
      if (!index_.in_bounds(nk)) continue;
      VoxelInfo* nrec = index_.lookup(nk);
      if (nrec && nrec->obs) nbrs[nn++] = {nk, nrec};
    }

    if (esdf_cfg_.limited_observation_patch) {
      // Newly observed voxels may be improvable by already-settled
      // neighbors; adopt the best such obstacle and defer expansion.
      bool improved = false;
      if (!quasi) {
        int64_t best_sq = coc_dist_sq(cf, cur);
        VoxelKey best = kUndefined;
        for (int i = 0; i < nn; ++i) {
          const VoxelKey cand = nbrs[i].rec->layer(layer).coc;
          if (!defined(cand)) continue;
          const int64_t d2 = dist_sq(cand, cur);
          if (d2 < best_sq) {
            best_sq = d2;
            best = cand;
          }
        }
        if (defined(best)) {
          relink(cur, cf, best, layer);
          cf.dis = std::sqrt(static_cast<double>(best_sq));
          improved = true;
        }
      } else {
        double best_dis = cf.dis;
        VoxelKey best = kUndefined;
        for (int i = 0; i < nn; ++i) {
          const FieldState& nf = nbrs[i].rec->layer(layer);
          if (!defined(nf.coc)) continue;
          const double cand_dis = nf.dis + dist(nbrs[i].key, cur);
          if (cand_dis < best_dis) {
            best_dis = cand_dis;
            best = nf.coc;
          }
        }
        if (defined(best)) {
          relink(cur, cf, best, layer);
          cf.dis = best_dis;
          improved = true;
        }
      }
      if (improved) {
        q.push(cur, cf.dis);
        continue;
      }
    }

    if (!defined(cf.coc)) continue;
    const VoxelKey coc = cf.coc;
    for (int i = 0; i < nn; ++i) {
      const VoxelKey nk = nbrs[i].key;
      FieldState& nf = nbrs[i].rec->layer(layer);
      if (!quasi) {
        const int64_t d2 = dist_sq(coc, nk);
        if (d2 < coc_dist_sq(nf, nk)) {
          relink(nk, nf, coc, layer);
          nf.dis = std::sqrt(static_cast<double>(d2));
          q.push(nk, nf.dis);
        }
      } else {
        const double nd = cf.dis + dist(cur, nk);
        if (nd < nf.dis) {
          relink(nk, nf, coc, layer);  // coc kept for bookkeeping only
          nf.dis = nd;
          q.push(nk, nf.dis);
        }
      }
    }
    ++report.n_expanded;
  }
  report.pops += pops;
}

void EsdfMap::update_field(FieldLayer layer,
                           const std::vector<VoxelKey>& insert_queue,
                           const std::vector<VoxelKey>& delete_queue,
                           EpochReport& report) {
  UpdateQueue q(esdf_cfg_.discipline);
  initialize_queues(layer, insert_queue, delete_queue, q, report);
  propagate(layer, q, report);
}

EpochReport EsdfMap::run_epoch() {
  const auto t0 = std::chrono::steady_clock::now();
  EpochReport report;
  std::vector<VoxelKey> ins, del, cins, cdel;
  build_epoch_queues(ins, del, cins, cdel);
  report.inserts = static_cast<int64_t>(ins.size());
  report.deletes = static_cast<int64_t>(del.size());
  update_field(FieldLayer::Primary, ins, del, report);
  if (esdf_cfg_.signed_mode)
    update_field(FieldLayer::Complement, cins, cdel, report);
  epoch_baseline_.clear();
  epoch_touched_.clear();
  const auto t1 = std::chrono::steady_clock::now();
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return report;
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

double EsdfMap::voxel_distance(const VoxelKey& key, FieldLayer layer) const {
  if (!index_.in_bounds(key)) return kInf;
  const VoxelInfo* rec = index_.lookup(key);
  if (!rec || !rec->obs) return kInf;
  return rec->layer(layer).dis;
}

VoxelKey EsdfMap::voxel_coc(const VoxelKey& key, FieldLayer layer) const {
  if (!index_.in_bounds(key)) return kUndefined;
  const VoxelInfo* rec = index_.lookup(key);
  if (!rec || !rec->obs) return kUndefined;
  return rec->layer(layer).coc;
}

EsdfMap::DistanceQuery EsdfMap::query_distance(const Eigen::Vector3d& point,
                                               FieldLayer layer) const {
  const VoxelKey key = point_to_voxel(point, occ_cfg_.voxel_size);
  if (!index_.in_bounds(key)) return {kInf, false};
  const VoxelInfo* rec = index_.lookup(key);
  if (!rec || !rec->obs) return {kInf, false};
  return {rec->layer(layer).dis * occ_cfg_.voxel_size, true};
}

std::optional<double> EsdfMap::query_distance_interpolated(
    const Eigen::Vector3d& point, FieldLayer layer) const {
  const double vs = occ_cfg_.voxel_size;
  const Eigen::Vector3d q = point / vs - Eigen::Vector3d::Constant(0.5);
  const VoxelKey base{static_cast<int32_t>(std::floor(q.x())),
                      static_cast<int32_t>(std::floor(q.y())),
                      static_cast<int32_t>(std::floor(q.z()))};
  const Eigen::Vector3d f = q - Eigen::Vector3d(base.x, base.y, base.z);
  double corner[2][2][2];
  for (int dx = 0; dx < 2; ++dx)
    for (int dy = 0; dy < 2; ++dy)
      for (int dz = 0; dz < 2; ++dz) {
        const VoxelKey k = base + VoxelKey{dx, dy, dz};
        const double d = voxel_distance(k, layer);
        if (!std::isfinite(d)) return std::nullopt;
        corner[dx][dy][dz] = d;
      }
  auto lerp = [](double a, double b, double t) { return a + (b - a) * t; };
  const double c00 = lerp(corner[0][0][0], corner[1][0][0], f.x());
  const double c10 = lerp(corner[0][1][0], corner[1][1][0], f.x());
  const double c01 = lerp(corner[0][0][1], corner[1][0][1], f.x());
  const double c11 = lerp(corner[0][1][1], corner[1][1][1], f.x());
  const double c0 = lerp(c00, c10, f.y());
  const double c1 = lerp(c01, c11, f.y());
  return lerp(c0, c1, f.z()) * vs;
}

std::optional<Eigen::Vector3d> EsdfMap::query_gradient(
    const Eigen::Vector3d& point) const {
  const double h = occ_cfg_.voxel_size;
  Eigen::Vector3d g;
  for (int a = 0; a < 3; ++a) {
    Eigen::Vector3d hi = point, lo = point;
    hi[a] += h;
    lo[a] -= h;
    const auto dp = query_distance_interpolated(hi);
    const auto dm = query_distance_interpolated(lo);
    if (!dp || !dm) return std::nullopt;
    g[a] = (*dp - *dm) / (2.0 * h);
  }
  return g;
}

double EsdfMap::signed_distance(const Eigen::Vector3d& point) const {
  if (!esdf_cfg_.signed_mode)
    throw DataError("signed_distance requires signed_mode");
  const DistanceQuery occ = query_distance(point, FieldLayer::Primary);
  if (!occ.observed) return kInf;
  const DistanceQuery free = query_distance(point, FieldLayer::Complement);
  return occ.distance - free.distance;
}

std::vector<VoxelKey> EsdfMap::occupied_voxels() const {
  std::vector<VoxelKey> v;
  index_.for_each([&](const VoxelInfo& rec) {
    if (state_of(rec) == OccState::Occupied) v.push_back(rec.pos);
  });
  return v;
}

std::vector<VoxelKey> EsdfMap::observed_voxels() const {
  std::vector<VoxelKey> v;
  index_.for_each([&](const VoxelInfo& rec) {
    if (rec.obs) v.push_back(rec.pos);
  });
  return v;
}

std::vector<VoxelKey> EsdfMap::ip_members(FieldLayer layer) const {
  return lists(layer).collect(kUndefined);
}

std::vector<VoxelKey> EsdfMap::dll_members(const VoxelKey& owner,
                                           FieldLayer layer) const {
  return lists(layer).collect(owner);
}

// ---------------------------------------------------------------------------
// Invariant scans
// ---------------------------------------------------------------------------

int64_t EsdfMap::count_fixed_point_violations(FieldLayer layer) const {
  const auto offsets = connectivity_offsets(esdf_cfg_.connectivity);
  const bool quasi = esdf_cfg_.rule == UpdateRule::QuasiEuclidean;
  int64_t violations = 0;
  index_.for_each([&](const VoxelInfo& rec) {
    if (!rec.obs) return;
    const FieldState& fs = rec.layer(layer);
    if (!defined(fs.coc)) return;
    for (const VoxelKey& off : offsets) {
      const VoxelKey nk = rec.pos + off;
      if (!index_.in_bounds(nk)) continue;
      const VoxelInfo* nrec = index_.lookup(nk);
      if (!nrec || !nrec->obs) continue;
      const FieldState& nf = nrec->layer(layer);
      if (!quasi) {
        if (dist_sq(fs.coc, nk) < coc_dist_sq(nf, nk)) ++violations;
      } else {
        if (fs.dis + dist(rec.pos, nk) < nf.dis - 1e-9) ++violations;
      }
    }
  });
  return violations;
}

bool EsdfMap::check_dll_partition(std::string* error, FieldLayer layer) const {
  auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return false;
  };
  std::unordered_set<VoxelKey, VoxelKeyHash> seen;
  const CocLists& L = lists(layer);

  auto walk = [&](const VoxelKey& owner) -> bool {
    VoxelKey prev = kUndefined;
    bool ok = true;
    L.iterate(owner, [&](const VoxelKey& member) {
      if (!ok) return;
      const VoxelInfo* rec = index_.lookup(member);
      if (!rec || !rec->obs) {
        ok = fail("DLL member unallocated or unobserved");
        return;
      }
      const FieldState& fs = rec->layer(layer);
      if (!fs.linked || fs.coc != owner || fs.prev != prev) {
        ok = fail("DLL member links inconsistent with owner");
        return;
      }
      if (!seen.insert(member).second) {
        ok = fail("voxel linked in more than one DLL");
        return;
      }
      prev = member;
    });
    return ok;
  };

  if (!walk(kUndefined)) return false;
  bool ok = true;
  index_.for_each([&](const VoxelInfo& rec) {
    if (ok && defined(rec.layer(layer).head)) ok = walk(rec.pos);
  });
  if (!ok) return false;

  int64_t observed = 0;
  index_.for_each([&](const VoxelInfo& rec) {
    if (rec.obs) ++observed;
  });
  if (static_cast<int64_t>(seen.size()) != observed)
    return fail("DLL union does not cover the observed set exactly");
  return true;
}

// ---------------------------------------------------------------------------
// Slice export
// ---------------------------------------------------------------------------

bool EsdfMap::slice_bounds(VoxelBounds& out) const {
  bool any = false;
  index_.for_each([&](const VoxelInfo& rec) {
    if (!rec.obs) return;
    if (!any) {
      out.min = out.max = rec.pos;
      any = true;
      return;
    }
    out.min.x = std::min(out.min.x, rec.pos.x);
    out.min.y = std::min(out.min.y, rec.pos.y);
    out.min.z = std::min(out.min.z, rec.pos.z);
    out.max.x = std::max(out.max.x, rec.pos.x);
    out.max.y = std::max(out.max.y, rec.pos.y);
    out.max.z = std::max(out.max.z, rec.pos.z);
  });
  return any;
}

namespace {
VoxelKey slice_key(int axis, int index, int u, int v) {
  switch (axis) {
    case 0:
      return {index, u, v};
    case 1:
      return {u, index, v};
    default:
      return {u, v, index};
  }
}
void slice_axes(int axis, const VoxelBounds& b, int& u0, int& u1, int& v0,
                int& v1) {
  switch (axis) {
    case 0:
      u0 = b.min.y, u1 = b.max.y, v0 = b.min.z, v1 = b.max.z;
      break;
    case 1:
      u0 = b.min.x, u1 = b.max.x, v0 = b.min.z, v1 = b.max.z;
      break;
    default:
      u0 = b.min.x, u1 = b.max.x, v0 = b.min.y, v1 = b.max.y;
  }
}
}  // namespace

void EsdfMap::write_slice_csv(std::ostream& os, int axis, int index,
                              FieldLayer layer) const {
  if (axis < 0 || axis > 2) throw DataError("slice axis must be 0, 1 or 2");
  VoxelBounds b;
  if (!slice_bounds(b)) return;
  int u0, u1, v0, v1;
  slice_axes(axis, b, u0, u1, v0, v1);
  for (int v = v0; v <= v1; ++v) {
    for (int u = u0; u <= u1; ++u) {
      if (u > u0) os << ',';
      const double d = voxel_distance(slice_key(axis, index, u, v), layer);
      if (std::isfinite(d))
        os << d;
      else
        os << "inf";
    }
    os << '\n';
  }
}

void EsdfMap::write_slice_pgm(std::ostream& os, int axis, int index,
                              double max_distance_voxels,
                              FieldLayer layer) const {
  if (axis < 0 || axis > 2) throw DataError("slice axis must be 0, 1 or 2");
  if (max_distance_voxels <= 0)
    throw DataError("pgm max distance must be positive");
  VoxelBounds b;
  if (!slice_bounds(b)) return;
  int u0, u1, v0, v1;
  slice_axes(axis, b, u0, u1, v0, v1);
  const int w = u1 - u0 + 1, h = v1 - v0 + 1;
  os << "P5\n" << w << ' ' << h << "\n255\n";
  for (int v = v0; v <= v1; ++v)
    for (int u = u0; u <= u1; ++u) {
      const double d = voxel_distance(slice_key(axis, index, u, v), layer);
      const double s = std::isfinite(d)
                           ? clampd(d / max_distance_voxels, 0.0, 1.0)
                           : 1.0;
      os.put(static_cast<char>(static_cast<unsigned char>(
          std::lround(s * 255.0))));
    }
}

}  // namespace esdf
