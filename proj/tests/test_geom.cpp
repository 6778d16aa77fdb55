#include "aim/geom.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <Eigen/Geometry>

#include <cmath>

using namespace aim;

namespace {

double max_entry_diff(const Mat3& a, const Mat3& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("skew matches the cross product") {
  auto gen = testutil::rng(11);
  for (int i = 0; i < 50; ++i) {
    const Vec3 v = testutil::unit_vec(gen) * testutil::uniform(gen, 0.1, 3.0);
    const Vec3 w = testutil::unit_vec(gen) * testutil::uniform(gen, 0.1, 3.0);
    CHECK((skew(v) * w - v.cross(w)).norm() == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("compose_rotation known values and independent oracle") {
  const Mat3 r = compose_rotation(Vec3::UnitZ(), k_pi / 2.0);
  CHECK((r * Vec3::UnitX() - Vec3::UnitY()).norm() < 1e-15);
  CHECK(max_entry_diff(compose_rotation(Vec3::UnitY(), 0.0), Mat3::Identity()) == 0.0);

  // Eigen's quaternion-backed AngleAxis is an independent construction.
  auto gen = testutil::rng(12);
  for (int i = 0; i < 200; ++i) {
    const Vec3 u = testutil::unit_vec(gen);
    const double angle = testutil::uniform(gen, -k_pi, k_pi);
    const Mat3 ours = compose_rotation(u, angle);
    const Mat3 oracle = Eigen::AngleAxisd(angle, u).toRotationMatrix();
    CHECK(max_entry_diff(ours, oracle) < 1e-12);
    CHECK(RigidTransform{ours, Vec3::Zero()}.is_valid());
  }

  CHECK_THROWS_AS(compose_rotation(Vec3(1.0, 1.0, 0.0), 0.3), std::invalid_argument);
}

TEST_CASE("decompose_rotation roundtrip across the angle range") {
  auto gen = testutil::rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 u = testutil::unit_vec(gen);
    const double angle = testutil::uniform(gen, 1e-4, k_pi - 1e-4);
    const Mat3 r = compose_rotation(u, angle);
    const auto [axis, got] = decompose_rotation(r);
    CHECK(got == doctest::Approx(angle).epsilon(1e-10));
    CHECK(max_entry_diff(compose_rotation(axis, got), r) < 1e-8);
    CHECK(std::abs(axis.dot(u)) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("decompose_rotation near-pi branch") {
  auto gen = testutil::rng(14);
  for (int i = 0; i < 500; ++i) {
    const Vec3 u = testutil::unit_vec(gen);
    const double angle = testutil::uniform(gen, k_pi - 1e-3, k_pi);
    const Mat3 r = compose_rotation(u, angle);
    const auto [axis, got] = decompose_rotation(r);
    CHECK(max_entry_diff(compose_rotation(axis, got), r) < 1e-6);
  }

  // Exact half turns about the coordinate axes and a skew direction.
  for (const Vec3& u : {Vec3::UnitX().eval(), Vec3::UnitY().eval(), Vec3::UnitZ().eval(),
                        Vec3(1.0, 2.0, -2.0).normalized().eval()}) {
    const Mat3 r = compose_rotation(u, k_pi);
    const auto [axis, got] = decompose_rotation(r);
    CHECK(got == doctest::Approx(k_pi).epsilon(1e-12));
    CHECK(max_entry_diff(compose_rotation(axis, got), r) < 1e-6);
    CHECK(std::abs(axis.dot(u)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("decompose_rotation identity and validation") {
  const auto [axis, angle] = decompose_rotation(Mat3::Identity());
  CHECK(angle == 0.0);
  CHECK((axis - Vec3::UnitZ()).norm() == 0.0);

  Mat3 not_rotation = Mat3::Identity();
  not_rotation(0, 0) = 2.0;
  CHECK_THROWS_AS(decompose_rotation(not_rotation), std::invalid_argument);
}

TEST_CASE("RigidTransform compose, inverse, validity") {
  auto gen = testutil::rng(15);
  for (int i = 0; i < 50; ++i) {
    const RigidTransform a{testutil::random_rotation(gen), testutil::unit_vec(gen)};
    const RigidTransform b{testutil::random_rotation(gen), 0.3 * testutil::unit_vec(gen)};
    const Vec3 x = testutil::unit_vec(gen) * 2.0;
    CHECK((a.compose(b).apply(x) - a.apply(b.apply(x))).norm() < 1e-12);
    const RigidTransform round = a.compose(a.inverse());
    CHECK(max_entry_diff(round.rotation, Mat3::Identity()) < 1e-12);
    CHECK(round.translation.norm() < 1e-12);
    CHECK(a.is_valid());
  }
  RigidTransform bad;
  bad.rotation(0, 0) = -1.0;
  CHECK_FALSE(bad.is_valid());
}

TEST_CASE("extract_joint recovers a known screw") {
  auto gen = testutil::rng(16);
  for (int i = 0; i < 200; ++i) {
    const Vec3 u = testutil::unit_vec(gen);
    const Vec3 p = testutil::unit_vec(gen) * testutil::uniform(gen, 0.2, 2.0);
    const double angle = testutil::uniform(gen, 0.2, k_pi - 0.2);
    const double pitch = testutil::uniform(gen, -0.5, 0.5);
    RigidTransform t = testutil::about_line(p, u, angle);
    t.translation += pitch * u;

    const JointParams joint = extract_joint(t);
    CHECK(joint.joint_type == JointType::revolute);
    CHECK(joint.angle == doctest::Approx(angle).epsilon(1e-6));
    CHECK(joint.distance == doctest::Approx(std::abs(pitch)).epsilon(1e-6));
    CHECK(std::abs(joint.axis_direction.dot(u)) == doctest::Approx(1.0).epsilon(1e-6));
    REQUIRE(joint.axis_position.has_value());
    CHECK(testutil::point_line_distance(*joint.axis_position, p, u) < 1e-6);
    // Minimum-norm representative: the reported point is the one on the axis
    // closest to the origin, i.e. orthogonal to the direction.
    CHECK(std::abs(joint.axis_position->dot(joint.axis_direction)) < 1e-6);
  }
}

TEST_CASE("extract_joint axis line is invariant to the construction point") {
  const Vec3 u = Vec3(0.0, 1.0, 0.0);
  const Vec3 p(0.4, 0.0, -0.2);
  const JointParams a = extract_joint(testutil::about_line(p, u, 0.8));
  const JointParams b = extract_joint(testutil::about_line(p + 3.7 * u, u, 0.8));
  REQUIRE(a.axis_position.has_value());
  REQUIRE(b.axis_position.has_value());
  CHECK((*a.axis_position - *b.axis_position).norm() < 1e-9);
  CHECK(a.angle == doctest::Approx(b.angle).epsilon(1e-12));
}

TEST_CASE("extract_joint prismatic") {
  const Vec3 d(0.3, -0.4, 0.0);
  const JointParams joint = extract_joint({Mat3::Identity(), d});
  CHECK(joint.joint_type == JointType::prismatic);
  CHECK(joint.angle == 0.0);
  CHECK(joint.distance == doctest::Approx(0.5).epsilon(1e-15));
  CHECK((joint.axis_direction - d.normalized()).norm() < 1e-15);
  CHECK_FALSE(joint.axis_position.has_value());
}

TEST_CASE("joint type flips exactly at the revolute threshold") {
  const Vec3 u = Vec3::UnitZ();
  const Vec3 t(0.0, 0.3, 0.0);
  for (const double delta : {1e-6, 1e-8}) {
    const RigidTransform above{compose_rotation(u, k_default_revolute_threshold + delta), t};
    const RigidTransform below{compose_rotation(u, k_default_revolute_threshold - delta), t};
    CHECK(extract_joint(above).joint_type == JointType::revolute);
    CHECK(extract_joint(below).joint_type == JointType::prismatic);
  }
  // The threshold itself is exclusive: angle == threshold stays prismatic.
  const RigidTransform at{compose_rotation(u, k_default_revolute_threshold), t};
  CHECK(extract_joint(at).joint_type == JointType::prismatic);
  // Custom threshold.
  const RigidTransform small{compose_rotation(u, 0.05), t};
  CHECK(extract_joint(small, 0.04).joint_type == JointType::revolute);
  CHECK_THROWS_AS(extract_joint(small, 0.0), std::invalid_argument);
}

TEST_CASE("degenerate motion throws") {
  CHECK_THROWS_AS(extract_joint(RigidTransform{}), DegenerateMotionError);
  const RigidTransform tiny{compose_rotation(Vec3::UnitX(), 1e-12), Vec3(0.0, 0.0, 1e-12)};
  CHECK_THROWS_AS(extract_joint(tiny), DegenerateMotionError);
  RigidTransform invalid;
  invalid.rotation(1, 1) = 3.0;
  CHECK_THROWS_AS(extract_joint(invalid), std::invalid_argument);
}
