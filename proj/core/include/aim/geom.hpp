#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <utility>

namespace aim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double k_pi = 3.141592653589793238462643383279502884;

/// Rigid motion applied as x -> R * x + t.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }
  RigidTransform inverse() const;
  /// Composition acting right-to-left: (a.compose(b))(x) == a(b(x)).
  RigidTransform compose(const RigidTransform& other) const;
  /// R^T R == I and det R == +1, both within tol.
  bool is_valid(double tol = 1e-9) const;
};

enum class JointType { revolute, prismatic };

/// Rotation angle (radians) above which a motion step counts as revolute.
inline constexpr double k_default_revolute_threshold = 10.0 * k_pi / 180.0;

/// Line in 3D: point + s * direction, direction unit length.
struct AxisLine {
  Vec3 point = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();
};

/// Joint step recovered from one rigid motion.
/// axis_direction is unit length. axis_position is set for revolute joints
/// only and is the point on the axis closest to the origin. angle is in
/// [0, pi] radians; distance is >= 0 in scene units. joint_type is revolute
/// exactly when angle exceeds the revolute threshold used at extraction.
struct JointParams {
  JointType joint_type = JointType::prismatic;
  Vec3 axis_direction = Vec3::UnitZ();
  std::optional<Vec3> axis_position;
  double angle = 0.0;
  double distance = 0.0;
};

/// Motion too small to orient: no rotation above the revolute threshold and
/// translation below 1e-9, so no axis direction is defined.
struct DegenerateMotionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Mat3 skew(const Vec3& v);

/// Rodrigues: cos(a) I + sin(a) [u]x + (1 - cos(a)) u u^T.
/// axis_direction must be unit length within 1e-6; angle in radians.
Mat3 compose_rotation(const Vec3& axis_direction, double angle);

/// Inverse of compose_rotation: angle in [0, pi]; the identity returns
/// (+z, 0). Near angle == pi the antisymmetric part vanishes and the axis
/// is recovered from the symmetric part instead, sign fixed by the
/// largest-magnitude antisymmetric component (first nonzero component made
/// positive when the motion is a half turn exactly).
std::pair<Vec3, double> decompose_rotation(const Mat3& rotation);

/// Classify one rigid motion as a revolute or prismatic joint step.
/// Revolute (angle > revolute_threshold): axis from the rotation, distance
/// |u . t| (the screw pitch component), axis position the minimum-norm
/// solution of (R - I) p = (u . t) u - t, which is the axis point closest
/// to the origin. Prismatic: direction t / ||t||, distance ||t||. Throws
/// DegenerateMotionError when neither is defined.
JointParams extract_joint(const RigidTransform& transform,
                          double revolute_threshold = k_default_revolute_threshold);

}  // namespace aim
