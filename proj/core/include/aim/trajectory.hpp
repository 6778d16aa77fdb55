#pragma once

#include "aim/geom.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace aim {

/// Dense 3D tracks: every point has a position at every timestamp.
/// Trajectory IDs are column indices 0 .. point_count()-1.
struct TrajectorySet {
  std::vector<double> timestamps;        // strictly increasing, first == 0
  std::vector<Eigen::Matrix3Xd> frames;  // one 3 x N position matrix per timestamp

  Eigen::Index point_count() const { return frames.empty() ? 0 : frames.front().cols(); }
  std::size_t frame_count() const { return frames.size(); }
  Vec3 position(Eigen::Index point, std::size_t frame) const { return frames[frame].col(point); }

  /// Index of the timestamp nearest to t; ties resolve to the earlier frame.
  std::size_t nearest_frame(double t) const;

  /// Throws std::invalid_argument naming the first offending entry.
  void validate() const;
};

/// frame_count timestamps spanning [0, 1] uniformly; {0} for a single frame.
std::vector<double> uniform_timestamps(std::size_t frame_count);

}  // namespace aim
