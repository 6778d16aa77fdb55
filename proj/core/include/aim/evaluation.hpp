#pragma once

#include "aim/articulation.hpp"
#include "aim/metrics.hpp"
#include "aim/synth.hpp"
#include "aim/trajectory.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace aim {

struct EvalOptions {
  Eigen::Vector3i voxel_resolution = Eigen::Vector3i(64, 64, 64);
  double bbox_padding = 0.02;   // fraction of each extent, added on both sides
  int chamfer_samples = 10000;  // per cloud; seeded subsample above this
  double mm_per_unit = 1000.0;
  std::uint64_t rng_seed = 0;
};

/// Per-ground-truth-part scores. NaN marks a metric that does not apply:
/// no match, no trajectory positions (voxel/chamfer), or a non-revolute or
/// type-mismatched pair (axis position).
struct PartEvalRow {
  int gt_index = 0;
  int gt_part_id = 0;
  int pred_index = -1;  // index into result.parts; -1 = unmatched
  JointType gt_type = JointType::revolute;
  bool matched = false;
  bool type_match = false;
  double member_iou = 0.0;
  double voxel_iou = std::numeric_limits<double>::quiet_NaN();
  double chamfer_mm = std::numeric_limits<double>::quiet_NaN();
  double axis_ang_deg = std::numeric_limits<double>::quiet_NaN();
  double axis_pos = std::numeric_limits<double>::quiet_NaN();  // 0.1 m units
  double motion_err = std::numeric_limits<double>::quiet_NaN();  // deg or units, by GT type
};

struct EvalReport {
  std::vector<PartEvalRow> rows;       // one per GT part, in GT order
  std::vector<int> unmatched_pred;     // indices into result.parts
  int pred_part_count = 0;
  int gt_part_count = 0;
  // Means: voxel IoU over ALL GT parts with unmatched counting 0; the rest
  // over the rows where the metric applies. NaN when no row applies.
  double mean_voxel_iou = std::numeric_limits<double>::quiet_NaN();
  double mean_chamfer_mm = std::numeric_limits<double>::quiet_NaN();
  double mean_axis_ang_deg = std::numeric_limits<double>::quiet_NaN();
  double mean_axis_pos = std::numeric_limits<double>::quiet_NaN();
  double mean_motion_rev_deg = std::numeric_limits<double>::quiet_NaN();
  double mean_motion_pri = std::numeric_limits<double>::quiet_NaN();
};

/// Score a pipeline result against ground truth. trajectories may be null:
/// voxel IoU and Chamfer need point positions (frame 0) and stay NaN
/// without them. Matching maximizes member-set IoU; the axis and motion
/// metrics compare the matched pair's joint and largest-span window delta.
EvalReport evaluate(const PartMobilityResult& result, const synth::GroundTruth& gt,
                    const TrajectorySet* trajectories, const EvalOptions& options = {});

}  // namespace aim
