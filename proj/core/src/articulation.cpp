#include "aim/articulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aim {

std::size_t largest_span_window(const std::vector<Window>& windows) {
  std::size_t best = 0;
  for (std::size_t w = 1; w < windows.size(); ++w) {
    if (windows[w].t_b - windows[w].t_a > windows[best].t_b - windows[best].t_a) best = w;
  }
  return best;
}

namespace {

void append_note(std::string& diagnostic, const std::string& note) {
  if (!diagnostic.empty()) diagnostic += "; ";
  diagnostic += note;
}

}  // namespace

PartMobilityResult analyze(const TrajectorySet& trajectories, const RansacConfig& ransac_cfg,
                           const std::optional<SdmdConfig>& sdmd_cfg,
                           double revolute_threshold) {
  trajectories.validate();
  ransac_cfg.validate();
  if (sdmd_cfg) sdmd_cfg->validate();
  if (!(revolute_threshold > 0.0) || !(revolute_threshold < k_pi)) {
    throw std::invalid_argument("analyze: revolute threshold must lie in (0, pi)");
  }

  PartMobilityResult result;
  result.ransac_config = ransac_cfg;
  result.sdmd_config = sdmd_cfg;
  result.revolute_threshold = revolute_threshold;

  std::vector<int> moving(static_cast<std::size_t>(trajectories.point_count()));
  std::iota(moving.begin(), moving.end(), 0);
  if (sdmd_cfg) {
    StaticSplit split = detect_static(trajectories, moving, *sdmd_cfg);
    result.static_ids = std::move(split.static_ids);
    moving = std::move(split.moving_ids);
  }

  if (static_cast<int>(moving.size()) < std::max(ransac_cfg.min_support, 3)) {
    result.unassigned_ids = std::move(moving);
    append_note(result.diagnostic,
                "too few moving trajectories after the static filter; nothing to segment");
    return result;
  }

  SegmentationResult segmentation = sequential_fit(trajectories, moving, ransac_cfg);
  result.unassigned_ids = std::move(segmentation.unassigned_ids);

  const std::size_t joint_window = largest_span_window(ransac_cfg.windows);
  for (PartHypothesis& hypothesis : segmentation.parts) {
    JointParams joint;
    try {
      joint = extract_joint(hypothesis.transforms[joint_window], revolute_threshold);
    } catch (const DegenerateMotionError&) {
      // Identity-like group motion: neither joint type is representable.
      // With SDMD enabled such groups are normally filtered out before this.
      result.unassigned_ids.insert(result.unassigned_ids.end(),
                                   hypothesis.member_ids.begin(),
                                   hypothesis.member_ids.end());
      append_note(result.diagnostic,
                  "a rigid group of " + std::to_string(hypothesis.member_ids.size()) +
                      " trajectories has degenerate (identity-like) motion and was left "
                      "unassigned");
      continue;
    }
    PartResult part;
    part.part_id = static_cast<int>(result.parts.size());
    part.member_ids = std::move(hypothesis.member_ids);
    part.window_transforms = std::move(hypothesis.transforms);
    part.joint = joint;
    part.mean_residual = hypothesis.mean_residual;
    result.parts.push_back(std::move(part));
  }
  std::sort(result.unassigned_ids.begin(), result.unassigned_ids.end());
  return result;
}

Eigen::Matrix3Xd apply_joint_state(const JointParams& joint,
                                   const Eigen::Matrix3Xd& base_positions, double state) {
  if (std::abs(joint.axis_direction.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("apply_joint_state: axis direction must be unit length");
  }
  if (!std::isfinite(state)) {
    throw std::invalid_argument("apply_joint_state: state must be finite");
  }
  if (joint.joint_type == JointType::prismatic) {
    return base_positions.colwise() + (state * joint.axis_direction).eval();
  }
  if (!joint.axis_position) {
    throw std::invalid_argument("apply_joint_state: revolute joint needs an axis position");
  }
  const Mat3 rotation = compose_rotation(joint.axis_direction, state);
  const Vec3 pivot = *joint.axis_position;
  Eigen::Matrix3Xd out = rotation * (base_positions.colwise() - pivot);
  out.colwise() += pivot;
  return out;
}

}  // namespace aim
