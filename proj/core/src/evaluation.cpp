#include "aim/evaluation.hpp"

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aim {

namespace {

constexpr std::uint64_t k_salt_subsample = 0x73756273ull;

Eigen::Matrix3Xd gather_positions(const TrajectorySet& traj, const std::vector<int>& ids) {
  Eigen::Matrix3Xd out(3, static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = traj.frames.front().col(ids[i]);
  }
  return out;
}

// Seeded distinct-index subsample keeping input order.
Eigen::Matrix3Xd subsample(const Eigen::Matrix3Xd& points, int limit, std::uint64_t seed,
                           std::uint64_t salt) {
  const Eigen::Index n = points.cols();
  if (n <= limit) return points;
  std::vector<Eigen::Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  detail::Rng rng = detail::Rng::derive(seed, k_salt_subsample, salt);
  for (int i = 0; i < limit; ++i) {
    const auto j =
        i + static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  std::sort(pool.begin(), pool.begin() + limit);
  Eigen::Matrix3Xd out(3, limit);
  for (int i = 0; i < limit; ++i) out.col(i) = points.col(pool[static_cast<std::size_t>(i)]);
  return out;
}

double mean_or_nan(double sum, int count) {
  return count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

EvalReport evaluate(const PartMobilityResult& result, const synth::GroundTruth& gt,
                    const TrajectorySet* trajectories, const EvalOptions& options) {
  if (gt.parts.empty()) {
    throw std::invalid_argument("evaluate: ground truth has no moving parts");
  }
  if ((options.voxel_resolution.array() < 1).any() || options.chamfer_samples < 1 ||
      !(options.bbox_padding >= 0.0) || !(options.mm_per_unit > 0.0)) {
    throw std::invalid_argument("evaluate: invalid options");
  }

  std::vector<std::vector<int>> gt_members(gt.parts.size());
  for (std::size_t i = 0; i < gt.labels.size(); ++i) {
    const int label = gt.labels[i];
    if (label > 0) gt_members[static_cast<std::size_t>(label - 1)].push_back(static_cast<int>(i));
  }
  for (std::size_t k = 0; k < gt_members.size(); ++k) {
    if (gt_members[k].empty()) {
      throw std::invalid_argument("evaluate: ground-truth part " + std::to_string(k + 1) +
                                  " has no members");
    }
  }

  EvalReport report;
  report.gt_part_count = static_cast<int>(gt.parts.size());
  report.pred_part_count = static_cast<int>(result.parts.size());
  report.rows.resize(gt.parts.size());
  for (std::size_t j = 0; j < gt.parts.size(); ++j) {
    report.rows[j].gt_index = static_cast<int>(j);
    report.rows[j].gt_part_id = gt.parts[j].part_id;
    report.rows[j].gt_type = gt.parts[j].joint.joint_type;
  }

  PartAssignment assignment;
  if (!result.parts.empty()) {
    std::vector<std::vector<int>> pred_members(result.parts.size());
    for (std::size_t i = 0; i < result.parts.size(); ++i) {
      pred_members[i] = result.parts[i].member_ids;
    }
    assignment = match_parts(pred_members, gt_members);
  } else {
    for (std::size_t j = 0; j < gt.parts.size(); ++j) {
      assignment.unmatched_gt.push_back(static_cast<int>(j));
    }
  }
  report.unmatched_pred = assignment.unmatched_pred;

  const std::size_t delta_window = largest_span_window(result.ransac_config.windows);

  double iou_sum = 0.0;
  double cd_sum = 0.0;
  int cd_count = 0;
  double ang_sum = 0.0;
  int ang_count = 0;
  double pos_sum = 0.0;
  int pos_count = 0;
  double rev_sum = 0.0;
  int rev_count = 0;
  double pri_sum = 0.0;
  int pri_count = 0;

  for (const PartMatch& match : assignment.matches) {
    PartEvalRow& row = report.rows[static_cast<std::size_t>(match.gt_index)];
    const PartResult& pred = result.parts[static_cast<std::size_t>(match.pred_index)];
    const synth::GroundTruthPart& truth = gt.parts[static_cast<std::size_t>(match.gt_index)];
    row.matched = true;
    row.pred_index = match.pred_index;
    row.member_iou = match.member_iou;
    row.type_match = pred.joint.joint_type == truth.joint.joint_type;

    row.axis_ang_deg = axis_ang_err(pred.joint.axis_direction, truth.joint.axis_direction);
    ang_sum += row.axis_ang_deg;
    ++ang_count;

    if (truth.joint.joint_type == JointType::revolute && row.type_match &&
        pred.joint.axis_position) {
      row.axis_pos = axis_pos_err({*pred.joint.axis_position, pred.joint.axis_direction},
                                  truth.axis);
      pos_sum += row.axis_pos;
      ++pos_count;
    }

    row.motion_err = part_motion_err(pred.window_transforms[delta_window], truth.delta_0_to_1,
                                     truth.joint.joint_type);
    if (truth.joint.joint_type == JointType::revolute) {
      rev_sum += row.motion_err;
      ++rev_count;
    } else {
      pri_sum += row.motion_err;
      ++pri_count;
    }

    if (trajectories) {
      const Eigen::Matrix3Xd pred_points = gather_positions(*trajectories, pred.member_ids);
      const Eigen::Matrix3Xd gt_points = gather_positions(
          *trajectories, gt_members[static_cast<std::size_t>(match.gt_index)]);

      Eigen::AlignedBox3d bounds;
      for (Eigen::Index i = 0; i < pred_points.cols(); ++i) bounds.extend(pred_points.col(i));
      for (Eigen::Index i = 0; i < gt_points.cols(); ++i) bounds.extend(gt_points.col(i));
      // Padding keeps boundary points interior; tiny floor guards flat sets.
      const Vec3 pad =
          (bounds.max() - bounds.min()).cwiseMax(1e-6) * options.bbox_padding +
          Vec3::Constant(1e-9);
      bounds.min() -= pad;
      bounds.max() += pad;
      row.voxel_iou = voxel_iou(voxelize(pred_points, bounds, options.voxel_resolution),
                                voxelize(gt_points, bounds, options.voxel_resolution));

      const auto salt = static_cast<std::uint64_t>(match.gt_index);
      row.chamfer_mm =
          chamfer(subsample(pred_points, options.chamfer_samples, options.rng_seed, 2 * salt),
                  subsample(gt_points, options.chamfer_samples, options.rng_seed, 2 * salt + 1),
                  options.mm_per_unit);
      cd_sum += row.chamfer_mm;
      ++cd_count;
    }
    if (trajectories) iou_sum += row.voxel_iou;
  }

  if (trajectories) {
    report.mean_voxel_iou = iou_sum / static_cast<double>(gt.parts.size());
  }
  report.mean_chamfer_mm = mean_or_nan(cd_sum, cd_count);
  report.mean_axis_ang_deg = mean_or_nan(ang_sum, ang_count);
  report.mean_axis_pos = mean_or_nan(pos_sum, pos_count);
  report.mean_motion_rev_deg = mean_or_nan(rev_sum, rev_count);
  report.mean_motion_pri = mean_or_nan(pri_sum, pri_count);
  return report;
}

}  // namespace aim
