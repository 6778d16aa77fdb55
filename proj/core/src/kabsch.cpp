#include "aim/kabsch.hpp"

#include <cmath>
#include <string>

namespace aim {

RigidTransform kabsch_fit(const CorrespondenceSet& corr) {
  const Eigen::Index n = corr.source.cols();
  if (corr.target.cols() != n) {
    throw std::invalid_argument("kabsch_fit: source and target sizes differ");
  }
  if (n < 3) {
    throw std::invalid_argument("kabsch_fit: need at least 3 correspondences, got " +
                                std::to_string(n));
  }
  if (!corr.source.allFinite() || !corr.target.allFinite()) {
    throw std::invalid_argument("kabsch_fit: non-finite coordinates");
  }

  const Vec3 centroid_src = corr.source.rowwise().mean();
  const Vec3 centroid_tgt = corr.target.rowwise().mean();
  const Eigen::Matrix3Xd src = corr.source.colwise() - centroid_src;
  const Eigen::Matrix3Xd tgt = corr.target.colwise() - centroid_tgt;

  // Collinearity check on the centered source: second singular value of the
  // 3xN matrix, cheap via the 3x3 scatter.
  Eigen::SelfAdjointEigenSolver<Mat3> scatter(src * src.transpose());
  const Vec3 evals = scatter.eigenvalues().cwiseMax(0.0);  // ascending
  const double sigma1 = std::sqrt(evals[2]);
  const double sigma2 = std::sqrt(evals[1]);
  if (sigma2 < 1e-9 * sigma1 || sigma1 == 0.0) {
    throw RankDeficiencyError("kabsch_fit: source points are collinear or coincident");
  }

  const Mat3 cross_cov = src * tgt.transpose();
  Eigen::JacobiSVD<Mat3> svd(cross_cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  Vec3 signs(1.0, 1.0, (v * u.transpose()).determinant() < 0.0 ? -1.0 : 1.0);

  RigidTransform out;
  out.rotation = v * signs.asDiagonal() * u.transpose();
  out.translation = centroid_tgt - out.rotation * centroid_src;
  return out;
}

Eigen::VectorXd residual(const RigidTransform& transform, const CorrespondenceSet& corr) {
  if (corr.source.cols() != corr.target.cols()) {
    throw std::invalid_argument("residual: source and target sizes differ");
  }
  Eigen::ArrayXd errors = Eigen::ArrayXd::Zero(corr.source.cols());
  Eigen::Matrix3Xd scratch(3, corr.source.cols());
  detail::add_weighted_errors(transform.rotation, transform.translation, corr.source,
                              corr.target, 1.0, errors, scratch);
  return errors.matrix();
}

Eigen::VectorXd mean_residual(const std::vector<RigidTransform>& transforms,
                              const std::vector<CorrespondenceSet>& windows) {
  if (transforms.empty() || transforms.size() != windows.size()) {
    throw std::invalid_argument("mean_residual: need one transform per window");
  }
  const Eigen::Index n = windows.front().source.cols();
  for (const CorrespondenceSet& w : windows) {
    if (w.source.cols() != n || w.target.cols() != n) {
      throw std::invalid_argument("mean_residual: windows pair different point counts");
    }
  }
  const double weight = 1.0 / static_cast<double>(windows.size());
  Eigen::ArrayXd errors = Eigen::ArrayXd::Zero(n);
  Eigen::Matrix3Xd scratch(3, n);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    detail::add_weighted_errors(transforms[w].rotation, transforms[w].translation,
                                windows[w].source, windows[w].target, weight, errors, scratch);
  }
  return errors.matrix();
}

namespace detail {

void add_weighted_errors(const Mat3& rotation, const Vec3& translation,
                         const Eigen::Matrix3Xd& source, const Eigen::Matrix3Xd& target,
                         double weight, Eigen::ArrayXd& errors, Eigen::Matrix3Xd& scratch) {
  scratch.noalias() = rotation * source;
  scratch.colwise() += translation;
  scratch = target - scratch;
  errors += weight * scratch.colwise().norm().transpose().array();
}

}  // namespace detail

}  // namespace aim
