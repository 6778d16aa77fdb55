#pragma once

#include "aim/ransac.hpp"
#include "aim/trajectory.hpp"

#include <cstdint>
#include <vector>

namespace aim {

/// Static-group detection config. The decision rule is group-level: a rigid
/// group is static only if on EVERY window (sample_times[0], sample_times[k])
/// its rotation angle is <= static_angle_max and its translation norm is
/// <= static_translation_max. A group that moves away and returns is moving.
/// The remaining fields parameterize the internal sequential RANSAC pass
/// that forms the groups.
struct SdmdConfig {
  std::vector<double> sample_times = {0.0, 0.5, 1.0};
  double inlier_threshold = 0.05;       // scene units
  double static_angle_max = 0.1;        // radians
  double static_translation_max = 0.05; // scene units

  int samples_per_model = 1000;
  int max_models = 16;
  int min_support = 20;
  double min_support_fraction = 0.01;
  std::uint64_t rng_seed = 0;

  void validate() const;  // throws std::invalid_argument
};

/// Disjoint split of the considered IDs; both lists sorted ascending.
/// Points no rigid group claims are conservatively reported as moving.
struct StaticSplit {
  std::vector<int> static_ids;
  std::vector<int> moving_ids;
};

StaticSplit detect_static(const TrajectorySet& trajectories, const SdmdConfig& config);
StaticSplit detect_static(const TrajectorySet& trajectories, const std::vector<int>& ids,
                          const SdmdConfig& config);

}  // namespace aim
