#include "aim/geom.hpp"

#include <algorithm>
#include <cmath>

namespace aim {

namespace {

// First nonzero component made positive; |v| must be nonzero.
Vec3 canonical_sign(const Vec3& v) {
  for (int i = 0; i < 3; ++i) {
    if (v[i] != 0.0) return v[i] > 0.0 ? v : Vec3(-v);
  }
  return v;
}

}  // namespace

RigidTransform RigidTransform::inverse() const {
  RigidTransform out;
  out.rotation = rotation.transpose();
  out.translation = -(out.rotation * translation);
  return out;
}

RigidTransform RigidTransform::compose(const RigidTransform& other) const {
  RigidTransform out;
  out.rotation = rotation * other.rotation;
  out.translation = rotation * other.translation + translation;
  return out;
}

bool RigidTransform::is_valid(double tol) const {
  const Mat3 gram = rotation.transpose() * rotation;
  const double ortho_err = (gram - Mat3::Identity()).cwiseAbs().maxCoeff();
  return ortho_err <= tol && std::abs(rotation.determinant() - 1.0) <= tol &&
         translation.allFinite();
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

Mat3 compose_rotation(const Vec3& axis_direction, double angle) {
  const double norm = axis_direction.norm();
  if (std::abs(norm - 1.0) > 1e-6 || !std::isfinite(angle)) {
    throw std::invalid_argument("compose_rotation: axis must be unit length and angle finite");
  }
  const Vec3 u = axis_direction / norm;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return c * Mat3::Identity() + s * skew(u) + (1.0 - c) * (u * u.transpose());
}

std::pair<Vec3, double> decompose_rotation(const Mat3& rotation) {
  if (!RigidTransform{rotation, Vec3::Zero()}.is_valid(1e-6)) {
    throw std::invalid_argument("decompose_rotation: input is not a rotation matrix");
  }
  const double cos_angle = std::clamp((rotation.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double angle = std::acos(cos_angle);
  const Vec3 antisym(rotation(2, 1) - rotation(1, 2),
                     rotation(0, 2) - rotation(2, 0),
                     rotation(1, 0) - rotation(0, 1));
  const double sin_angle = std::sin(angle);

  if (sin_angle >= 1e-6) {
    return {antisym / (2.0 * sin_angle), angle};
  }
  if (angle < k_pi / 2.0) {
    // Angle ~ 0: axis is arbitrary, return the documented default.
    return {Vec3::UnitZ(), angle};
  }
  // Angle ~ pi: (B - cos I) / (1 - cos) ~ u u^T for B the symmetric part.
  const Mat3 sym = (rotation + rotation.transpose()) / 2.0;
  const Mat3 outer = (sym - cos_angle * Mat3::Identity()) / (1.0 - cos_angle);
  int col;
  outer.diagonal().maxCoeff(&col);
  Vec3 axis = outer.col(col) / std::sqrt(outer(col, col));
  const double along = antisym.dot(axis);
  if (std::abs(along) > 1e-12) {
    if (along < 0.0) axis = -axis;
  } else {
    axis = canonical_sign(axis);
  }
  return {axis, angle};
}

JointParams extract_joint(const RigidTransform& transform, double revolute_threshold) {
  if (!transform.is_valid(1e-6)) {
    throw std::invalid_argument("extract_joint: transform is not rigid");
  }
  if (!(revolute_threshold > 0.0) || !(revolute_threshold < k_pi)) {
    throw std::invalid_argument("extract_joint: revolute threshold must lie in (0, pi)");
  }
  const auto [axis, angle] = decompose_rotation(transform.rotation);
  const Vec3& t = transform.translation;

  JointParams joint;
  joint.angle = angle;
  if (angle > revolute_threshold) {
    joint.joint_type = JointType::revolute;
    joint.axis_direction = axis;
    const double pitch = axis.dot(t);  // signed slide along the axis
    joint.distance = std::abs(pitch);
    // (R - I) p = pitch * u - t. R - I has rank 2 with null space span(u),
    // so the minimum-norm least-squares solution is the axis point closest
    // to the origin (perpendicular to u).
    const Mat3 lhs = transform.rotation - Mat3::Identity();
    Eigen::JacobiSVD<Mat3> svd(lhs, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(1e-8);
    joint.axis_position = svd.solve(pitch * axis - t);
    return joint;
  }
  const double slide = t.norm();
  if (slide < 1e-9) {
    throw DegenerateMotionError(
        "extract_joint: motion has no rotation above the revolute threshold and no translation");
  }
  joint.joint_type = JointType::prismatic;
  joint.axis_direction = t / slide;
  joint.distance = slide;
  return joint;
}

}  // namespace aim
