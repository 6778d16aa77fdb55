#pragma once

#include "aim/geom.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace aim {

/// Dense binary occupancy grid. Layout is x-fastest: linear index
/// ix + dims.x * (iy + dims.y * iz). Two grids are comparable only when
/// origin, voxel_size and dims match exactly.
struct VoxelGrid {
  Vec3 origin = Vec3::Zero();
  Vec3 voxel_size = Vec3::Ones();  // per-axis edge length, scene units
  Eigen::Vector3i dims = Eigen::Vector3i::Ones();
  std::vector<std::uint8_t> occupancy;

  std::size_t linear_index(int ix, int iy, int iz) const {
    return static_cast<std::size_t>(ix) +
           static_cast<std::size_t>(dims.x()) *
               (static_cast<std::size_t>(iy) +
                static_cast<std::size_t>(dims.y()) * static_cast<std::size_t>(iz));
  }
  std::size_t occupied_count() const;
  bool comparable_with(const VoxelGrid& other) const;
};

/// Occupancy of the points on a grid over bounds. Voxel intervals are
/// half-open [lo, hi); points exactly on the global max face belong to the
/// last voxel. Points outside the bounds are skipped and counted into
/// *clipped when given. Bounds must have positive volume.
VoxelGrid voxelize(const Eigen::Matrix3Xd& points, const Eigen::AlignedBox3d& bounds,
                   const Eigen::Vector3i& resolution, std::size_t* clipped = nullptr);

/// |pred AND gt| / |pred OR gt| over occupied voxels. Grids must be
/// comparable and not both empty.
double voxel_iou(const VoxelGrid& pred, const VoxelGrid& gt);

/// Symmetric Chamfer distance in millimetres:
/// (1/|X|) sum_x min_y ||x-y|| + (1/|Y|) sum_y min_x ||y-x||, scene units
/// scaled by mm_per_unit. Both clouds must be nonempty.
double chamfer(const Eigen::Matrix3Xd& x, const Eigen::Matrix3Xd& y,
               double mm_per_unit = 1000.0);

/// Orientation-invariant angle between axis directions, degrees in [0, 90].
double axis_ang_err(const Vec3& pred, const Vec3& gt);

/// Shortest distance between two axis lines, reported in 0.1 m units
/// (10 * distance). Cross-product formula for non-parallel axes; the
/// perpendicular-offset formula when ||pred_dir x gt_dir|| < 1e-6.
double axis_pos_err(const AxisLine& pred, const AxisLine& gt);

/// Relative-motion discrepancy. Revolute: geodesic angle between the delta
/// rotations, degrees. Prismatic: ||delta_t_pred - delta_t_gt||, scene units.
double part_motion_err(const RigidTransform& pred_delta, const RigidTransform& gt_delta,
                       JointType joint_type);

/// One matched pair of part indices with its member-set IoU.
struct PartMatch {
  int pred_index = -1;
  int gt_index = -1;
  double member_iou = 0.0;
};

/// Optimal assignment between predicted and ground-truth parts.
struct PartAssignment {
  std::vector<PartMatch> matches;      // ordered by gt_index
  std::vector<int> unmatched_pred;
  std::vector<int> unmatched_gt;
  double total_iou = 0.0;
};

/// Exact assignment maximizing summed member-set IoU. Pairs with zero
/// overlap never match. Member lists need not be sorted; both part lists
/// must be nonempty and at least one side must have <= 20 parts.
PartAssignment match_parts(const std::vector<std::vector<int>>& pred_parts,
                           const std::vector<std::vector<int>>& gt_parts);

}  // namespace aim
