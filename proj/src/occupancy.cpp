#include "esdf/occupancy.hpp"

namespace esdf {

std::vector<VoxelKey> traverse_ray(const Eigen::Vector3d& start,
                                   const Eigen::Vector3d& end,
                                   double voxel_size) {
  std::vector<VoxelKey> out;
  const VoxelKey first = point_to_voxel(start, voxel_size);
  const VoxelKey last = point_to_voxel(end, voxel_size);
  out.push_back(first);
  if (first == last) return out;

  const Eigen::Vector3d dir = end - start;
  int32_t cur[3] = {first.x, first.y, first.z};
  const int32_t goal[3] = {last.x, last.y, last.z};
  int step[3];
  double t_max[3], t_delta[3];
  for (int a = 0; a < 3; ++a) {
    if (dir[a] > 0) {
      step[a] = 1;
      const double boundary = (cur[a] + 1) * voxel_size;
      t_max[a] = (boundary - start[a]) / dir[a];
      t_delta[a] = voxel_size / dir[a];
    } else if (dir[a] < 0) {
      step[a] = -1;
      const double boundary = cur[a] * voxel_size;
      t_max[a] = (boundary - start[a]) / dir[a];
      t_delta[a] = -voxel_size / dir[a];
    } else {
      step[a] = 0;
      t_max[a] = kInf;
      t_delta[a] = kInf;
    }
  }

  // Step bound: the walk visits at most the Manhattan span plus one cell
  // per axis; anything beyond that indicates an arithmetic problem.
  int64_t guard = 3;
  for (int a = 0; a < 3; ++a) guard += std::abs(int64_t{goal[a]} - cur[a]);

  while (cur[0] != goal[0] || cur[1] != goal[1] || cur[2] != goal[2]) {
    // Only axes still short of the end voxel may step; any crossing on a
    // finished axis lies beyond the segment.
    int axis = -1;
    for (int a = 0; a < 3; ++a) {
      if (cur[a] == goal[a]) continue;
      if (axis < 0 || t_max[a] < t_max[axis]) axis = a;
    }
    if (axis < 0)
      throw CorruptionError("ray traversal failed to reach the end voxel");
    cur[axis] += step[axis];
    t_max[axis] += t_delta[axis];
    out.push_back({cur[0], cur[1], cur[2]});
    if (--guard < 0)
      throw CorruptionError("ray traversal failed to reach the end voxel");
  }
  return out;
}

}  // namespace esdf
