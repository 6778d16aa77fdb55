#include "aim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace aim {

namespace {

// Left-balanced k-d tree over fixed points; nodes store point indices and
// split along the widest axis of their subrange.
class KdTree {
 public:
  explicit KdTree(const Eigen::Matrix3Xd& points) : points_(points) {
    order_.resize(static_cast<std::size_t>(points.cols()));
    std::iota(order_.begin(), order_.end(), 0);
    axis_.assign(order_.size(), 0);
    build(0, static_cast<Eigen::Index>(order_.size()));
  }

  double nearest_distance(const Vec3& query) const {
    double best = std::numeric_limits<double>::infinity();
    search(query, 0, static_cast<Eigen::Index>(order_.size()), best);
    return std::sqrt(best);
  }

 private:
  void build(Eigen::Index lo, Eigen::Index hi) {
    if (hi - lo <= 1) return;
    Vec3 min = points_.col(order_[static_cast<std::size_t>(lo)]);
    Vec3 max = min;
    for (Eigen::Index i = lo + 1; i < hi; ++i) {
      const auto col = points_.col(order_[static_cast<std::size_t>(i)]);
      min = min.cwiseMin(col);
      max = max.cwiseMax(col);
    }
    int axis = 0;
    (max - min).maxCoeff(&axis);
    const Eigen::Index mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                     [&](Eigen::Index a, Eigen::Index b) {
                       return points_(axis, a) < points_(axis, b);
                     });
    axis_[static_cast<std::size_t>(mid)] = axis;
    build(lo, mid);
    build(mid + 1, hi);
  }

  void search(const Vec3& query, Eigen::Index lo, Eigen::Index hi, double& best_sq) const {
    if (hi <= lo) return;
    const Eigen::Index mid = lo + (hi - lo) / 2;
    const auto point = points_.col(order_[static_cast<std::size_t>(mid)]);
    best_sq = std::min(best_sq, (query - point).squaredNorm());
    if (hi - lo == 1) return;
    const int axis = axis_[static_cast<std::size_t>(mid)];
    const double delta = query[axis] - point[axis];
    if (delta < 0.0) {
      search(query, lo, mid, best_sq);
      if (delta * delta < best_sq) search(query, mid + 1, hi, best_sq);
    } else {
      search(query, mid + 1, hi, best_sq);
      if (delta * delta < best_sq) search(query, lo, mid, best_sq);
    }
  }

  const Eigen::Matrix3Xd& points_;
  std::vector<Eigen::Index> order_;
  std::vector<int> axis_;
};

double mean_nearest(const Eigen::Matrix3Xd& from, const KdTree& to) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < from.cols(); ++i) {
    sum += to.nearest_distance(from.col(i));
  }
  return sum / static_cast<double>(from.cols());
}

double member_set_iou(const std::vector<int>& a, const std::vector<int>& b) {
  // Both sorted. Intersection by merge; IoU over the union size.
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t inter = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

std::size_t VoxelGrid::occupied_count() const {
  std::size_t count = 0;
  for (const std::uint8_t v : occupancy) count += v != 0;
  return count;
}

bool VoxelGrid::comparable_with(const VoxelGrid& other) const {
  return origin == other.origin && voxel_size == other.voxel_size && dims == other.dims;
}

VoxelGrid voxelize(const Eigen::Matrix3Xd& points, const Eigen::AlignedBox3d& bounds,
                   const Eigen::Vector3i& resolution, std::size_t* clipped) {
  if ((resolution.array() < 1).any()) {
    throw std::invalid_argument("voxelize: resolution must be >= 1 per axis");
  }
  const Vec3 extent = bounds.max() - bounds.min();
  if (!(extent.minCoeff() > 0.0)) {
    throw std::invalid_argument("voxelize: bounds must have positive volume");
  }

  VoxelGrid grid;
  grid.origin = bounds.min();
  grid.dims = resolution;
  grid.voxel_size = extent.array() / resolution.cast<double>().array();
  grid.occupancy.assign(static_cast<std::size_t>(resolution.x()) *
                            static_cast<std::size_t>(resolution.y()) *
                            static_cast<std::size_t>(resolution.z()),
                        0);
  std::size_t outside = 0;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const Vec3 p = points.col(i);
    if ((p.array() < bounds.min().array()).any() || (p.array() > bounds.max().array()).any()) {
      ++outside;
      continue;
    }
    Eigen::Vector3i cell;
    for (int a = 0; a < 3; ++a) {
      const int idx = static_cast<int>((p[a] - grid.origin[a]) / grid.voxel_size[a]);
      cell[a] = std::min(idx, grid.dims[a] - 1);  // global max face closes the last voxel
    }
    grid.occupancy[grid.linear_index(cell.x(), cell.y(), cell.z())] = 1;
  }
  if (clipped) *clipped = outside;
  return grid;
}

double voxel_iou(const VoxelGrid& pred, const VoxelGrid& gt) {
  if (!pred.comparable_with(gt)) {
    throw std::invalid_argument("voxel_iou: grids have different origin/voxel_size/dims");
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < pred.occupancy.size(); ++i) {
    const bool a = pred.occupancy[i] != 0;
    const bool b = gt.occupancy[i] != 0;
    inter += a && b;
    uni += a || b;
  }
  if (uni == 0) {
    throw std::invalid_argument("voxel_iou: both grids are empty");
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double chamfer(const Eigen::Matrix3Xd& x, const Eigen::Matrix3Xd& y, double mm_per_unit) {
  if (x.cols() == 0 || y.cols() == 0) {
    throw std::invalid_argument("chamfer: point clouds must be nonempty");
  }
  if (!(mm_per_unit > 0.0) || !std::isfinite(mm_per_unit)) {
    throw std::invalid_argument("chamfer: mm_per_unit must be positive and finite");
  }
  const KdTree tree_x(x);
  const KdTree tree_y(y);
  return mm_per_unit * (mean_nearest(x, tree_y) + mean_nearest(y, tree_x));
}

double axis_ang_err(const Vec3& pred, const Vec3& gt) {
  const double np = pred.norm();
  const double ng = gt.norm();
  if (np < 1e-12 || ng < 1e-12) {
    throw std::invalid_argument("axis_ang_err: zero axis direction");
  }
  const double cosine = std::clamp(std::abs(pred.dot(gt)) / (np * ng), 0.0, 1.0);
  return std::acos(cosine) * 180.0 / k_pi;
}

double axis_pos_err(const AxisLine& pred, const AxisLine& gt) {
  const Vec3 dp = pred.direction.normalized();
  const Vec3 dg = gt.direction.normalized();
  const Vec3 cross = dp.cross(dg);
  const double cross_norm = cross.norm();
  double distance;
  if (cross_norm < 1e-6) {
    distance = (gt.point - pred.point).cross(dp).norm();
  } else {
    distance = std::abs(cross.dot(pred.point - gt.point)) / cross_norm;
  }
  return 10.0 * distance;
}

double part_motion_err(const RigidTransform& pred_delta, const RigidTransform& gt_delta,
                       JointType joint_type) {
  if (joint_type == JointType::prismatic) {
    return (pred_delta.translation - gt_delta.translation).norm();
  }
  const Mat3 relative = pred_delta.rotation * gt_delta.rotation.transpose();
  const double cosine = std::clamp((relative.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(cosine) * 180.0 / k_pi;
}

PartAssignment match_parts(const std::vector<std::vector<int>>& pred_parts,
                           const std::vector<std::vector<int>>& gt_parts) {
  if (pred_parts.empty() || gt_parts.empty()) {
    throw std::invalid_argument("match_parts: both part lists must be nonempty");
  }
  const std::size_t p = pred_parts.size();
  const std::size_t g = gt_parts.size();
  if (std::min(p, g) > 20) {
    throw std::invalid_argument("match_parts: more than 20 parts on both sides");
  }

  std::vector<std::vector<int>> pred_sorted = pred_parts;
  std::vector<std::vector<int>> gt_sorted = gt_parts;
  for (auto& v : pred_sorted) std::sort(v.begin(), v.end());
  for (auto& v : gt_sorted) std::sort(v.begin(), v.end());

  // IoU table; the DP enumerates subsets of the smaller side.
  const bool gt_small = g <= p;
  const std::size_t big = gt_small ? p : g;
  const std::size_t small = gt_small ? g : p;
  std::vector<double> iou(big * small, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      const double value = member_set_iou(pred_sorted[i], gt_sorted[j]);
      const std::size_t row = gt_small ? i : j;
      const std::size_t col = gt_small ? j : i;
      iou[row * small + col] = value;
    }
  }

  // dp[mask] = best total over the first `row` big-side parts using exactly
  // the small-side parts in mask; choice records the small index taken.
  const std::size_t masks = std::size_t{1} << small;
  std::vector<double> dp(masks, -1.0);
  std::vector<double> next(masks, -1.0);
  std::vector<std::int8_t> choice(big * masks, -2);  // -1 = skip, >= 0 = small index
  dp[0] = 0.0;
  for (std::size_t row = 0; row < big; ++row) {
    std::fill(next.begin(), next.end(), -1.0);
    for (std::size_t mask = 0; mask < masks; ++mask) {
      if (dp[mask] < 0.0) continue;
      if (next[mask] < dp[mask]) {
        next[mask] = dp[mask];
        choice[row * masks + mask] = -1;
      }
      for (std::size_t j = 0; j < small; ++j) {
        if (mask & (std::size_t{1} << j)) continue;
        const double value = iou[row * small + j];
        if (value <= 0.0) continue;  // zero overlap never matches
        const std::size_t to = mask | (std::size_t{1} << j);
        if (next[to] < dp[mask] + value) {
          next[to] = dp[mask] + value;
          choice[row * masks + to] = static_cast<std::int8_t>(j);
        }
      }
    }
    dp.swap(next);
  }

  std::size_t best_mask = 0;
  for (std::size_t mask = 1; mask < masks; ++mask) {
    if (dp[mask] > dp[best_mask]) best_mask = mask;
  }

  PartAssignment out;
  out.total_iou = std::max(dp[best_mask], 0.0);
  std::vector<int> pred_partner(p, -1);
  std::vector<int> gt_partner(g, -1);
  std::size_t mask = best_mask;
  for (std::size_t row = big; row-- > 0;) {
    const std::int8_t taken = choice[row * masks + mask];
    if (taken >= 0) {
      const std::size_t j = static_cast<std::size_t>(taken);
      const std::size_t pred_index = gt_small ? row : j;
      const std::size_t gt_index = gt_small ? j : row;
      pred_partner[pred_index] = static_cast<int>(gt_index);
      gt_partner[gt_index] = static_cast<int>(pred_index);
      mask &= ~(std::size_t{1} << j);
    }
  }
  for (std::size_t j = 0; j < g; ++j) {
    if (gt_partner[j] < 0) {
      out.unmatched_gt.push_back(static_cast<int>(j));
      continue;
    }
    PartMatch match;
    match.gt_index = static_cast<int>(j);
    match.pred_index = gt_partner[j];
    match.member_iou =
        member_set_iou(pred_sorted[static_cast<std::size_t>(gt_partner[j])], gt_sorted[j]);
    out.matches.push_back(match);
  }
  for (std::size_t i = 0; i < p; ++i) {
    if (pred_partner[i] < 0) out.unmatched_pred.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace aim
