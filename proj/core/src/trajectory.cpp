#include "aim/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aim {

std::size_t TrajectorySet::nearest_frame(double t) const {
  if (timestamps.empty()) {
    throw std::invalid_argument("nearest_frame: empty trajectory set");
  }
  std::size_t best = 0;
  double best_dist = std::abs(timestamps[0] - t);
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    const double dist = std::abs(timestamps[i] - t);
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

void TrajectorySet::validate() const {
  if (timestamps.empty()) {
    throw std::invalid_argument("trajectory set: no timestamps");
  }
  if (timestamps.size() != frames.size()) {
    throw std::invalid_argument("trajectory set: " + std::to_string(timestamps.size()) +
                                " timestamps but " + std::to_string(frames.size()) + " frames");
  }
  if (timestamps.front() != 0.0) {
    throw std::invalid_argument("trajectory set: first timestamp must be 0, got " +
                                std::to_string(timestamps.front()));
  }
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (!std::isfinite(timestamps[i])) {
      throw std::invalid_argument("trajectory set: timestamp " + std::to_string(i) +
                                  " is not finite");
    }
    if (i > 0 && !(timestamps[i] > timestamps[i - 1])) {
      throw std::invalid_argument("trajectory set: timestamps not strictly increasing at index " +
                                  std::to_string(i));
    }
  }
  const Eigen::Index n = point_count();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].cols() != n) {
      throw std::invalid_argument("trajectory set: frame " + std::to_string(i) + " has " +
                                  std::to_string(frames[i].cols()) + " points, expected " +
                                  std::to_string(n));
    }
    if (!frames[i].allFinite()) {
      for (Eigen::Index p = 0; p < n; ++p) {
        if (!frames[i].col(p).allFinite()) {
          throw std::invalid_argument("trajectory set: non-finite position at point " +
                                      std::to_string(p) + ", frame " + std::to_string(i));
        }
      }
    }
  }
  if (n == 0) {
    throw std::invalid_argument("trajectory set: no points");
  }
}

std::vector<double> uniform_timestamps(std::size_t frame_count) {
  if (frame_count == 0) {
    throw std::invalid_argument("uniform_timestamps: frame count must be positive");
  }
  std::vector<double> out(frame_count);
  if (frame_count == 1) {
    out[0] = 0.0;
    return out;
  }
  for (std::size_t i = 0; i < frame_count; ++i) {
    out[i] = static_cast<double>(i) / static_cast<double>(frame_count - 1);
  }
  return out;
}

}  // namespace aim
