#include "esdf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace esdf {

namespace {

constexpr int64_t kInfSq = std::numeric_limits<int64_t>::max();

int64_t nearest_sq_scan(const VoxelKey& v, std::span<const VoxelKey> occupied) {
  int64_t best = kInfSq;
  for (const VoxelKey& o : occupied) best = std::min(best, dist_sq(v, o));
  return best;
}

double to_dist(int64_t sq) {
  return sq == kInfSq ? kInf : std::sqrt(static_cast<double>(sq));
}

// Minimal 3-d kd-tree over integer points; nodes are stored in the build
// array itself, median split cycling axes.
class KdTree {
 public:
  explicit KdTree(std::span<const VoxelKey> points)
      : pts_(points.begin(), points.end()) {
    if (!pts_.empty()) build(0, static_cast<int>(pts_.size()), 0);
  }

  bool empty() const { return pts_.empty(); }

  int64_t nearest_sq(const VoxelKey& q) const {
    int64_t best = kInfSq;
    search(q, 0, static_cast<int>(pts_.size()), 0, best);
    return best;
  }

 private:
  static int32_t coord(const VoxelKey& k, int axis) {
    return axis == 0 ? k.x : axis == 1 ? k.y : k.z;
  }

  void build(int lo, int hi, int axis) {
    if (hi - lo <= 1) return;
    const int mid = (lo + hi) / 2;
    std::nth_element(pts_.begin() + lo, pts_.begin() + mid, pts_.begin() + hi,
                     [axis](const VoxelKey& a, const VoxelKey& b) {
                       return coord(a, axis) < coord(b, axis);
                     });
    build(lo, mid, (axis + 1) % 3);
    build(mid + 1, hi, (axis + 1) % 3);
  }

  void search(const VoxelKey& q, int lo, int hi, int axis,
              int64_t& best) const {
    if (hi <= lo) return;
    const int mid = (lo + hi) / 2;
    best = std::min(best, dist_sq(q, pts_[mid]));
    const int64_t plane = int64_t{coord(q, axis)} - coord(pts_[mid], axis);
    const int next = (axis + 1) % 3;
    if (plane < 0) {
      search(q, lo, mid, next, best);
      if (plane * plane < best) search(q, mid + 1, hi, next, best);
    } else {
      search(q, mid + 1, hi, next, best);
      if (plane * plane < best) search(q, lo, mid, next, best);
    }
  }

  std::vector<VoxelKey> pts_;
};

}  // namespace

std::vector<double> exact_edt_serial(std::span<const VoxelKey> occupied,
                                     std::span<const VoxelKey> domain) {
  std::vector<double> out(domain.size());
  for (size_t i = 0; i < domain.size(); ++i)
    out[i] = to_dist(nearest_sq_scan(domain[i], occupied));
  return out;
}

std::vector<double> exact_edt_parallel(std::span<const VoxelKey> occupied,
                                       std::span<const VoxelKey> domain) {
  std::vector<double> out(domain.size());
  const int64_t n = static_cast<int64_t>(domain.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i)
    out[i] = to_dist(nearest_sq_scan(domain[i], occupied));
  return out;
}

std::vector<double> exact_edt_kdtree(std::span<const VoxelKey> occupied,
                                     std::span<const VoxelKey> domain) {
  std::vector<double> out(domain.size());
  const KdTree tree(occupied);
  const int64_t n = static_cast<int64_t>(domain.size());
  if (tree.empty()) {
    std::fill(out.begin(), out.end(), kInf);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i)
    out[i] = to_dist(tree.nearest_sq(domain[i]));
  return out;
}

ErrorReport rms_error(const EsdfMap& map, std::span<const VoxelKey> domain,
                      std::span<const double> truth, FieldLayer layer) {
  if (domain.size() != truth.size())
    throw DataError("rms_error: domain/truth size mismatch");
  ErrorReport r;
  r.connectivity = to_string(map.esdf_config().connectivity);
  r.rule = to_string(map.esdf_config().rule);
  r.block_size = map.index().config().backend == IndexBackend::HashedBlocks
                     ? map.index().config().block_size
                     : 0;
  double sum_sq = 0.0;
  for (size_t i = 0; i < domain.size(); ++i) {
    const double field = map.voxel_distance(domain[i], layer);
    if (!std::isfinite(field) || !std::isfinite(truth[i])) {
      ++r.excluded_voxel_count;
      continue;
    }
    const double e = field - truth[i];
    sum_sq += e * e;
    r.max_error_voxels = std::max(r.max_error_voxels, std::abs(e));
    ++r.compared_voxel_count;
  }
  if (r.compared_voxel_count == 0) {
    r.empty = true;
    return r;
  }
  r.rms_error_voxels =
      std::sqrt(sum_sq / static_cast<double>(r.compared_voxel_count));
  return r;
}

std::string ErrorReport::csv_header() {
  return "scenario,connectivity,rule,block_size,rms_error_voxels,"
         "max_error_voxels,compared_voxel_count,excluded_voxel_count,"
         "wall_time_ms,empty";
}

std::string ErrorReport::csv_row() const {
  std::ostringstream os;
  os << scenario << ',' << connectivity << ',' << rule << ',' << block_size
     << ',' << rms_error_voxels << ',' << max_error_voxels << ','
     << compared_voxel_count << ',' << excluded_voxel_count << ','
     << wall_time_ms << ',' << (empty ? 1 : 0);
  return os.str();
}

}  // namespace esdf
