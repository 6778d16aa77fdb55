#include "aim/sdmd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aim {

void SdmdConfig::validate() const {
  if (sample_times.size() < 2) {
    throw std::invalid_argument("sdmd config: need at least two sample times");
  }
  if (sample_times.front() != 0.0) {
    throw std::invalid_argument("sdmd config: first sample time must be 0");
  }
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    if (!std::isfinite(sample_times[i])) {
      throw std::invalid_argument("sdmd config: sample time not finite");
    }
    if (i > 0 && !(sample_times[i] > sample_times[i - 1])) {
      throw std::invalid_argument("sdmd config: sample times must be strictly increasing");
    }
  }
  if (!(static_angle_max > 0.0) || !(static_translation_max > 0.0)) {
    throw std::invalid_argument("sdmd config: static thresholds must be positive");
  }
  RansacConfig probe;
  probe.inlier_threshold = inlier_threshold;
  probe.samples_per_model = samples_per_model;
  probe.max_models = max_models;
  probe.min_support = min_support;
  probe.min_support_fraction = min_support_fraction;
  probe.validate();
}

namespace {

RansacConfig to_ransac(const SdmdConfig& config) {
  RansacConfig rc;
  rc.inlier_threshold = config.inlier_threshold;
  rc.samples_per_model = config.samples_per_model;
  rc.max_models = config.max_models;
  rc.min_support = config.min_support;
  rc.min_support_fraction = config.min_support_fraction;
  rc.rng_seed = config.rng_seed;
  rc.windows.clear();
  for (std::size_t k = 1; k < config.sample_times.size(); ++k) {
    rc.windows.push_back({config.sample_times.front(), config.sample_times[k]});
  }
  return rc;
}

bool group_is_static(const PartHypothesis& part, const SdmdConfig& config) {
  for (const RigidTransform& t : part.transforms) {
    const double angle = decompose_rotation(t.rotation).second;
    if (angle > config.static_angle_max) return false;
    if (t.translation.norm() > config.static_translation_max) return false;
  }
  return true;
}

}  // namespace

StaticSplit detect_static(const TrajectorySet& trajectories, const SdmdConfig& config) {
  std::vector<int> ids(static_cast<std::size_t>(trajectories.point_count()));
  std::iota(ids.begin(), ids.end(), 0);
  return detect_static(trajectories, ids, config);
}

StaticSplit detect_static(const TrajectorySet& trajectories, const std::vector<int>& ids,
                          const SdmdConfig& config) {
  config.validate();
  const SegmentationResult groups = sequential_fit(trajectories, ids, to_ransac(config));

  StaticSplit split;
  for (const PartHypothesis& part : groups.parts) {
    auto& bucket = group_is_static(part, config) ? split.static_ids : split.moving_ids;
    bucket.insert(bucket.end(), part.member_ids.begin(), part.member_ids.end());
  }
  split.moving_ids.insert(split.moving_ids.end(), groups.unassigned_ids.begin(),
                          groups.unassigned_ids.end());
  std::sort(split.static_ids.begin(), split.static_ids.end());
  std::sort(split.moving_ids.begin(), split.moving_ids.end());
  return split;
}

}  // namespace aim
