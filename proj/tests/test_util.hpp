#pragma once

#include "aim/geom.hpp"
#include "aim/trajectory.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace testutil {

using aim::Mat3;
using aim::RigidTransform;
using aim::Vec3;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline Vec3 unit_vec(std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(normal(gen), normal(gen), normal(gen));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline Mat3 random_rotation(std::mt19937_64& gen) {
  return aim::compose_rotation(unit_vec(gen), uniform(gen, 0.0, aim::k_pi));
}

// n uniform samples inside an axis-aligned box (volume, not surface).
inline Eigen::Matrix3Xd box_points(int n, const Vec3& center, const Vec3& extent,
                                   std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::Matrix3Xd out(3, n);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < 3; ++a) {
      out(a, i) = center[a] + (uniform(gen, 0.0, 1.0) - 0.5) * extent[a];
    }
  }
  return out;
}

// Rotation by `angle` about the line {point + s * dir} as x -> R x + t.
inline RigidTransform about_line(const Vec3& point, const Vec3& dir, double angle) {
  RigidTransform t;
  t.rotation = aim::compose_rotation(dir.normalized(), angle);
  t.translation = point - t.rotation * point;
  return t;
}

inline RigidTransform translation(const Vec3& d) { return {Mat3::Identity(), d}; }

// A rigid block: rest-pose points plus its transform as a function of the
// normalized timestamp.
struct Block {
  Eigen::Matrix3Xd rest;
  std::function<RigidTransform(double)> motion;
};

inline Block static_block(Eigen::Matrix3Xd rest) {
  return {std::move(rest), [](double) { return RigidTransform{}; }};
}

inline aim::TrajectorySet build_scene(const std::vector<Block>& blocks, std::size_t frames) {
  aim::TrajectorySet traj;
  traj.timestamps = aim::uniform_timestamps(frames);
  Eigen::Index total = 0;
  for (const Block& b : blocks) total += b.rest.cols();
  traj.frames.assign(frames, Eigen::Matrix3Xd(3, total));
  for (std::size_t f = 0; f < frames; ++f) {
    Eigen::Index at = 0;
    for (const Block& b : blocks) {
      const RigidTransform t = b.motion(traj.timestamps[f]);
      auto cols = traj.frames[f].middleCols(at, b.rest.cols());
      cols = t.rotation * b.rest;
      cols.colwise() += t.translation;
      at += b.rest.cols();
    }
  }
  return traj;
}

// IDs [first, first + count).
inline std::vector<int> id_range(int first, int count) {
  std::vector<int> ids(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) ids[static_cast<std::size_t>(i)] = first + i;
  return ids;
}

inline double point_line_distance(const Vec3& p, const Vec3& line_point, const Vec3& line_dir) {
  const Vec3 d = line_dir.normalized();
  return ((p - line_point) - (p - line_point).dot(d) * d).norm();
}

}  // namespace testutil
