#pragma once

#include "aim/geom.hpp"
#include "aim/ransac.hpp"
#include "aim/sdmd.hpp"
#include "aim/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aim {

/// One recovered rigid part with its joint description. The joint is
/// extracted from the transform of the largest-span configured window.
struct PartResult {
  int part_id = 0;  // extraction order, 0-based
  std::vector<int> member_ids;
  std::vector<RigidTransform> window_transforms;  // one per configured window
  JointParams joint;
  double mean_residual = 0.0;
};

/// Isotropic input normalization applied before analysis:
/// x' = (x - origin) / scale. Reported outputs are always mapped back to
/// the input frame; this echo records what was applied.
struct NormalizationInfo {
  bool enabled = false;
  Vec3 origin = Vec3::Zero();
  double scale = 1.0;
};

struct PartMobilityResult {
  std::vector<PartResult> parts;
  std::vector<int> static_ids;      // empty when SDMD is disabled
  std::vector<int> unassigned_ids;
  // Config echo: everything needed to reproduce the run.
  RansacConfig ransac_config;
  std::optional<SdmdConfig> sdmd_config;
  double revolute_threshold = k_default_revolute_threshold;
  NormalizationInfo normalization;
  std::string diagnostic;  // empty when nothing noteworthy happened
};

/// Index of the window with the largest time span (ties: the first). The
/// joint of every part is extracted from this window's transform.
std::size_t largest_span_window(const std::vector<Window>& windows);

/// Full pipeline: optional SDMD static filter, then sequential RANSAC over
/// the moving trajectories, then joint extraction per part. Groups whose
/// motion is degenerate (no joint type representable) are reported through
/// unassigned_ids plus a diagnostic instead of carrying an invalid joint.
PartMobilityResult analyze(const TrajectorySet& trajectories, const RansacConfig& ransac_cfg,
                           const std::optional<SdmdConfig>& sdmd_cfg = SdmdConfig{},
                           double revolute_threshold = k_default_revolute_threshold);

/// Replay a joint at a given state: rotation by `state` radians about the
/// axis (revolute, requires axis_position) or translation by `state` scene
/// units along the direction (prismatic). Columns are positions.
Eigen::Matrix3Xd apply_joint_state(const JointParams& joint,
                                   const Eigen::Matrix3Xd& base_positions, double state);

}  // namespace aim
