#pragma once

#include "aim/geom.hpp"
#include "aim/trajectory.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace aim {

/// Time window (t_a, t_b), t_a < t_b: correspondences run from positions at
/// t_a to positions at t_b. Requested times snap to the nearest available
/// timestamp; the snapped endpoints must remain distinct.
struct Window {
  double t_a = 0.0;
  double t_b = 1.0;
};

struct RansacConfig {
  double inlier_threshold = 0.05;      // scene units, strict comparison
  int samples_per_model = 1000;
  int max_models = 16;
  int min_support = 20;
  double min_support_fraction = 0.01;  // of the points still unassigned
  std::uint64_t rng_seed = 0;
  std::vector<Window> windows = {{0.0, 0.5}, {0.0, 1.0}};

  void validate() const;  // throws std::invalid_argument
};

/// One rigid group: members plus the per-window transforms re-estimated
/// from all members. Every member's window-averaged error is strictly below
/// the inlier threshold; mean_residual is the mean of those errors.
struct PartHypothesis {
  std::vector<int> member_ids;             // sorted ascending
  std::vector<RigidTransform> transforms;  // one per configured window
  double mean_residual = 0.0;
};

struct SegmentationResult {
  std::vector<PartHypothesis> parts;  // extraction order (largest support first)
  std::vector<int> unassigned_ids;    // sorted ascending
};

/// One round of hypothesis sampling over the given trajectory subset:
/// samples_per_model minimal 3-point sets, per-window closed-form fits,
/// consensus scored by the window-averaged error, winner re-fit on its
/// full consensus set and iterated to a fixed point (members the refined
/// fit no longer explains drop out; pool points it does explain are
/// admitted). Returns none when the best support falls below
/// max(min_support, ceil(min_support_fraction * ids.size())). model_index
/// salts the RNG stream; sequential_fit passes the extraction round.
/// Deterministic for fixed (config, ids, model_index) regardless of the
/// worker-thread count.
std::optional<PartHypothesis> fit_one_model(const TrajectorySet& trajectories,
                                            const std::vector<int>& ids,
                                            const RansacConfig& config,
                                            std::uint64_t model_index = 0);

/// Greedy multi-model extraction: fit, remove members, repeat until no
/// model finds support or max_models is reached.
SegmentationResult sequential_fit(const TrajectorySet& trajectories,
                                  const RansacConfig& config);
SegmentationResult sequential_fit(const TrajectorySet& trajectories, std::vector<int> ids,
                                  const RansacConfig& config);

}  // namespace aim
