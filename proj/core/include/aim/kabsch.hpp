#pragma once

#include "aim/geom.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace aim {

/// Paired point sets: column i of source corresponds to column i of target.
struct CorrespondenceSet {
  Eigen::Matrix3Xd source;
  Eigen::Matrix3Xd target;

  Eigen::Index size() const { return source.cols(); }
};

/// Source points are collinear (or coincident): the rotation about their
/// common line is unobservable.
struct RankDeficiencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Least-squares rigid transform mapping source onto target: SVD of the
/// centered cross-covariance with determinant correction, so the result is
/// always a proper rotation even for reflective noise configurations.
/// Requires >= 3 correspondences and non-collinear source points.
RigidTransform kabsch_fit(const CorrespondenceSet& corr);

/// Per-point alignment error ||target_i - (R source_i + t)||.
Eigen::VectorXd residual(const RigidTransform& transform, const CorrespondenceSet& corr);

/// Per-point error averaged over window fits: transforms[w] is scored
/// against windows[w] and the errors are averaged with equal weight.
/// All windows must pair the same number of points.
Eigen::VectorXd mean_residual(const std::vector<RigidTransform>& transforms,
                              const std::vector<CorrespondenceSet>& windows);

namespace detail {

/// errors += weight * ||target_i - (R source_i + t)|| for every column.
/// scratch must have the same number of columns as source.
void add_weighted_errors(const Mat3& rotation, const Vec3& translation,
                         const Eigen::Matrix3Xd& source, const Eigen::Matrix3Xd& target,
                         double weight, Eigen::ArrayXd& errors, Eigen::Matrix3Xd& scratch);

}  // namespace detail

}  // namespace aim
