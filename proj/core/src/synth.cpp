#include "aim/synth.hpp"

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aim::synth {

namespace {

constexpr std::uint64_t k_salt_geometry = 0x67656F6Dull;  // block point sampling
constexpr std::uint64_t k_salt_noise = 0x6E6F6973ull;     // per-frame jitter
constexpr std::uint64_t k_salt_select = 0x6F75746Cull;    // outlier id choice
constexpr std::uint64_t k_salt_walk = 0x77616C6Bull;      // per-outlier walk

constexpr double k_outlier_step_sigma = 0.02;  // walk step std per frame, scene units

double primitive_area(const PrimitiveSpec& p) {
  if (p.kind == PrimitiveKind::box) {
    const Vec3& e = p.extent;
    return 2.0 * (e.x() * e.y() + e.y() * e.z() + e.x() * e.z());
  }
  const double r = p.extent.x();
  const double h = p.extent.z();
  return 2.0 * k_pi * r * h + 2.0 * k_pi * r * r;
}

void validate_primitive(const PrimitiveSpec& p, const std::string& where) {
  if (p.kind == PrimitiveKind::box) {
    if (!(p.extent.minCoeff() > 0.0)) {
      throw std::invalid_argument(where + ": box extent must be positive on every axis");
    }
    return;
  }
  if (!(p.extent.x() > 0.0) || !(p.extent.z() > 0.0)) {
    throw std::invalid_argument(where + ": cylinder needs positive radius and height");
  }
  if (p.axis.norm() < 1e-12) {
    throw std::invalid_argument(where + ": cylinder axis must be nonzero");
  }
}

Vec3 sample_box_surface(const PrimitiveSpec& p, detail::Rng& rng) {
  const Vec3 half = p.extent / 2.0;
  const double ax = p.extent.y() * p.extent.z();  // +-x faces
  const double ay = p.extent.x() * p.extent.z();
  const double az = p.extent.x() * p.extent.y();
  const double pick = rng.next_double() * (ax + ay + az);
  const double u = rng.next_double();
  const double v = rng.next_double();
  const double side = rng.next_double() < 0.5 ? -1.0 : 1.0;
  Vec3 local;
  if (pick < ax) {
    local = Vec3(side * half.x(), (u - 0.5) * p.extent.y(), (v - 0.5) * p.extent.z());
  } else if (pick < ax + ay) {
    local = Vec3((u - 0.5) * p.extent.x(), side * half.y(), (v - 0.5) * p.extent.z());
  } else {
    local = Vec3((u - 0.5) * p.extent.x(), (v - 0.5) * p.extent.y(), side * half.z());
  }
  return p.center + local;
}

Vec3 sample_cylinder_surface(const PrimitiveSpec& p, detail::Rng& rng) {
  const double r = p.extent.x();
  const double h = p.extent.z();
  const Vec3 axis = p.axis.normalized();
  // Orthonormal frame around the axis; the seed of the cross product is the
  // coordinate axis least aligned with it.
  int smallest = 0;
  axis.cwiseAbs().minCoeff(&smallest);
  const Vec3 e1 = axis.cross(Vec3::Unit(smallest)).normalized();
  const Vec3 e2 = axis.cross(e1);

  const double side_area = 2.0 * k_pi * r * h;
  const double cap_area = k_pi * r * r;
  const double pick = rng.next_double() * (side_area + 2.0 * cap_area);
  const double u = rng.next_double();
  const double v = rng.next_double();
  if (pick < side_area) {
    const double phi = 2.0 * k_pi * u;
    const double z = (v - 0.5) * h;
    return p.center + r * (std::cos(phi) * e1 + std::sin(phi) * e2) + z * axis;
  }
  const double cap = pick < side_area + cap_area ? -0.5 : 0.5;
  const double rho = r * std::sqrt(u);
  const double phi = 2.0 * k_pi * v;
  return p.center + rho * (std::cos(phi) * e1 + std::sin(phi) * e2) + cap * h * axis;
}

// Area-weighted surface sampling over all primitives of one geometry.
void sample_geometry(const GeometrySpec& geometry, detail::Rng& rng, Eigen::Index count,
                     Eigen::Matrix3Xd& out, Eigen::Index offset) {
  std::vector<double> cumulative;
  cumulative.reserve(geometry.primitives.size());
  double total = 0.0;
  for (const PrimitiveSpec& p : geometry.primitives) {
    total += primitive_area(p);
    cumulative.push_back(total);
  }
  for (Eigen::Index i = 0; i < count; ++i) {
    const double pick = rng.next_double() * total;
    std::size_t which = 0;
    while (which + 1 < cumulative.size() && pick >= cumulative[which]) ++which;
    const PrimitiveSpec& p = geometry.primitives[which];
    out.col(offset + i) = p.kind == PrimitiveKind::box ? sample_box_surface(p, rng)
                                                       : sample_cylinder_surface(p, rng);
  }
}

double profile_value(MotionProfile profile, double t) {
  // t is the normalized timestamp; ease is the smoothstep ramp.
  return profile == MotionProfile::linear ? t : t * t * (3.0 - 2.0 * t);
}

RigidTransform joint_step(const PartSpec& part, double delta) {
  const Vec3 u = part.axis.direction.normalized();
  if (part.joint_type == JointType::prismatic) {
    return {Mat3::Identity(), delta * u};
  }
  const Mat3 r = compose_rotation(u, delta * k_pi / 180.0);
  return {r, part.axis.point - r * part.axis.point};
}

}  // namespace

void SceneSpec::validate() const {
  if (base_point_count < 1) {
    throw std::invalid_argument("scene spec: base_point_count must be >= 1");
  }
  if (base_geometry.primitives.empty()) {
    throw std::invalid_argument("scene spec: base geometry is empty");
  }
  for (const PrimitiveSpec& p : base_geometry.primitives) validate_primitive(p, "scene base");
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const PartSpec& part = parts[k];
    const std::string where = "scene part " + std::to_string(k);
    if (part.point_count < 1) {
      throw std::invalid_argument(where + ": point_count must be >= 1");
    }
    if (part.geometry.primitives.empty()) {
      throw std::invalid_argument(where + ": geometry is empty");
    }
    for (const PrimitiveSpec& p : part.geometry.primitives) validate_primitive(p, where);
    if (part.axis.direction.norm() < 1e-12) {
      throw std::invalid_argument(where + ": axis direction must be nonzero");
    }
    if (!std::isfinite(part.motion_start) || !std::isfinite(part.motion_end) ||
        part.motion_end == part.motion_start) {
      throw std::invalid_argument(where + ": motion range must be finite and nonempty");
    }
    if (part.joint_type == JointType::revolute &&
        std::abs(part.motion_end - part.motion_start) > 180.0 + 1e-9) {
      throw std::invalid_argument(where +
                                  ": revolute spans beyond 180 degrees alias under the "
                                  "canonical angle range");
    }
  }
  if (timestamps.size() < 2) {
    throw std::invalid_argument("scene spec: need at least two timestamps");
  }
  if (timestamps.front() != 0.0) {
    throw std::invalid_argument("scene spec: first timestamp must be 0");
  }
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (!std::isfinite(timestamps[i]) || timestamps[i] > 1.0 + 1e-12) {
      throw std::invalid_argument("scene spec: timestamps must be normalized to [0, 1]");
    }
    if (i > 0 && !(timestamps[i] > timestamps[i - 1])) {
      throw std::invalid_argument("scene spec: timestamps must be strictly increasing");
    }
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw std::invalid_argument("scene spec: noise_sigma must be >= 0");
  }
  if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0)) {
    throw std::invalid_argument("scene spec: outlier_fraction must lie in [0, 1)");
  }
}

std::pair<TrajectorySet, GroundTruth> generate(const SceneSpec& spec) {
  spec.validate();
  const std::size_t frame_count = spec.timestamps.size();
  const std::size_t part_count = spec.parts.size();

  Eigen::Index total = spec.base_point_count;
  std::vector<Eigen::Index> part_offset(part_count);
  for (std::size_t k = 0; k < part_count; ++k) {
    part_offset[k] = total;
    total += spec.parts[k].point_count;
  }

  // Rest pose: every block sampled from its own derived stream, so point
  // layouts do not shift when unrelated blocks change size.
  Eigen::Matrix3Xd rest(3, total);
  {
    detail::Rng rng = detail::Rng::derive(spec.rng_seed, k_salt_geometry, 0);
    sample_geometry(spec.base_geometry, rng, spec.base_point_count, rest, 0);
  }
  for (std::size_t k = 0; k < part_count; ++k) {
    detail::Rng rng = detail::Rng::derive(spec.rng_seed, k_salt_geometry, k + 1);
    sample_geometry(spec.parts[k].geometry, rng, spec.parts[k].point_count, rest,
                    part_offset[k]);
  }

  GroundTruth gt;
  gt.scene = spec.name;
  gt.timestamps = spec.timestamps;
  gt.noise_sigma = spec.noise_sigma;
  gt.outlier_fraction = spec.outlier_fraction;
  gt.rng_seed = spec.rng_seed;
  gt.labels.assign(static_cast<std::size_t>(total), 0);
  gt.parts.resize(part_count);

  for (std::size_t k = 0; k < part_count; ++k) {
    const PartSpec& part = spec.parts[k];
    GroundTruthPart& gt_part = gt.parts[k];
    gt_part.part_id = static_cast<int>(k) + 1;
    gt_part.transforms.reserve(frame_count);
    const double span = part.motion_end - part.motion_start;
    for (std::size_t f = 0; f < frame_count; ++f) {
      const double delta = span * profile_value(part.motion_profile, spec.timestamps[f]);
      gt_part.transforms.push_back(joint_step(part, delta));
    }
    gt_part.delta_0_to_1 = gt_part.transforms.back();

    const Vec3 u = part.axis.direction.normalized();
    const Vec3 dir = span >= 0.0 ? u : Vec3(-u);
    const Vec3 closest = part.axis.point - part.axis.point.dot(dir) * dir;
    gt_part.axis = {closest, dir};
    JointParams& joint = gt_part.joint;
    joint.axis_direction = dir;
    if (part.joint_type == JointType::revolute) {
      joint.joint_type = JointType::revolute;
      joint.axis_position = closest;
      joint.angle = std::abs(span) * k_pi / 180.0;
      joint.distance = 0.0;
    } else {
      joint.joint_type = JointType::prismatic;
      joint.axis_position.reset();
      joint.angle = 0.0;
      joint.distance = std::abs(span);
    }
    for (int i = 0; i < part.point_count; ++i) {
      gt.labels[static_cast<std::size_t>(part_offset[k]) + static_cast<std::size_t>(i)] =
          gt_part.part_id;
    }
  }

  TrajectorySet traj;
  traj.timestamps = spec.timestamps;
  traj.frames.assign(frame_count, Eigen::Matrix3Xd(3, total));
  for (std::size_t f = 0; f < frame_count; ++f) {
    Eigen::Matrix3Xd& frame = traj.frames[f];
    frame.leftCols(spec.base_point_count) = rest.leftCols(spec.base_point_count);
    for (std::size_t k = 0; k < part_count; ++k) {
      const RigidTransform& t = gt.parts[k].transforms[f];
      auto block = frame.middleCols(part_offset[k], spec.parts[k].point_count);
      block.noalias() = t.rotation * rest.middleCols(part_offset[k], spec.parts[k].point_count);
      block.colwise() += t.translation;
    }
  }

  if (spec.noise_sigma > 0.0) {
    detail::Rng rng = detail::Rng::derive(spec.rng_seed, k_salt_noise, 0);
    for (std::size_t f = 0; f < frame_count; ++f) {
      Eigen::Matrix3Xd& frame = traj.frames[f];
      for (Eigen::Index i = 0; i < total; ++i) {
        for (int a = 0; a < 3; ++a) frame(a, i) += spec.noise_sigma * rng.next_normal();
      }
    }
  }

  const auto outlier_count =
      static_cast<Eigen::Index>(std::floor(spec.outlier_fraction * static_cast<double>(total)));
  if (outlier_count > 0) {
    std::vector<Eigen::Index> pool(static_cast<std::size_t>(total));
    std::iota(pool.begin(), pool.end(), 0);
    detail::Rng select = detail::Rng::derive(spec.rng_seed, k_salt_select, 0);
    for (Eigen::Index i = 0; i < outlier_count; ++i) {
      const auto j = i + static_cast<Eigen::Index>(
                             select.next_below(static_cast<std::uint64_t>(total - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    for (Eigen::Index i = 0; i < outlier_count; ++i) {
      const Eigen::Index id = pool[static_cast<std::size_t>(i)];
      gt.labels[static_cast<std::size_t>(id)] = -1;
      detail::Rng walk =
          detail::Rng::derive(spec.rng_seed, k_salt_walk, static_cast<std::uint64_t>(id));
      Vec3 pos = rest.col(id);
      traj.frames[0].col(id) = pos;
      for (std::size_t f = 1; f < frame_count; ++f) {
        pos += k_outlier_step_sigma * Vec3(walk.next_normal(), walk.next_normal(),
                                           walk.next_normal());
        traj.frames[f].col(id) = pos;
      }
    }
  }

  return {std::move(traj), std::move(gt)};
}

namespace {

PrimitiveSpec box(const Vec3& center, const Vec3& extent) {
  PrimitiveSpec p;
  p.kind = PrimitiveKind::box;
  p.center = center;
  p.extent = extent;
  return p;
}

PrimitiveSpec cylinder(const Vec3& center, const Vec3& axis, double radius, double height) {
  PrimitiveSpec p;
  p.kind = PrimitiveKind::cylinder;
  p.center = center;
  p.extent = Vec3(radius, 0.0, height);
  p.axis = axis;
  return p;
}

PartSpec revolute_part(GeometrySpec geometry, const Vec3& axis_point, const Vec3& axis_dir,
                       double start_deg, double end_deg) {
  PartSpec part;
  part.geometry = std::move(geometry);
  part.joint_type = JointType::revolute;
  part.axis = {axis_point, axis_dir};
  part.motion_start = start_deg;
  part.motion_end = end_deg;
  return part;
}

PartSpec prismatic_part(GeometrySpec geometry, const Vec3& direction, double start,
                        double end) {
  PartSpec part;
  part.geometry = std::move(geometry);
  part.joint_type = JointType::prismatic;
  part.axis = {Vec3::Zero(), direction};
  part.motion_start = start;
  part.motion_end = end;
  return part;
}

GeometrySpec one(PrimitiveSpec p) { return {{std::move(p)}}; }

// Canonical placements. The catalog fixes joint types and motion ranges;
// the geometry is this artifact's own and keeps every revolute axis line
// at least 0.1 units clear of every sampled point (own part, base, and all
// other parts). With the 0.05 consensus threshold and the default windows,
// points closer to a hinge than roughly threshold / mean-chord-factor are
// inherently ambiguous between the rotating group and the static base, so
// the clearance makes exact zero-noise segmentation well posed. The two
// same-cabinet drawers of storage-47648 need extra care because their
// strokes (0.1 and 0.16) are only a couple of multiples of the threshold:
//   - equal slide directions would differ by a mean two-window residual of
//     0.045, under the threshold, so the drawers would merge: they slide in
//     opposite directions and sit stacked flush, which denies a bridging
//     rotation its lever arm;
//   - a weakly moving part placed off-center admits a small-rotation
//     compromise model that holds most of the static base plus the part
//     (the zero-motion locus covers the base, the far field matches the
//     stroke), out-supporting every pure block; centering the drawers in
//     the base footprint caps such coverage well below the base's own
//     support, and the 3x base density settles the contest;
//   - door points at hinge distance near a drawer stroke trace chords of
//     about the stroke's length, so a door band around that radius is
//     pointwise consistent with the drawer's translation regardless of
//     where the two parts sit; the doors therefore start 0.3 units from
//     their hinges, past the chord-match band of the longest stroke
//     (0.16 plus threshold slack);
//   - with the default two windows a stroke under 8/3 of the threshold
//     (0.133) admits a half-stroke screw that holds the whole drawer and
//     every base point near the screw axis, so the cabinet body is a
//     hollow five-slab shell: real scans are surfaces anyway, and a shell
//     leaves too little mass near any axis through the drawer column for
//     such a screw to outvote the pure static model.
SceneSpec make_builtin(const std::string& name) {
  SceneSpec spec;
  spec.name = name;
  if (name == "blade-103706") {
    spec.base_geometry = one(box({-0.3, 0.0, 0.0}, {0.6, 0.16, 0.06}));
    spec.parts = {prismatic_part(one(box({0.25, 0.0, 0.0}, {0.5, 0.1, 0.02})),
                                 {1.0, 0.0, 0.0}, 0.0, 0.5)};
  } else if (name == "fridge-10905") {
    spec.base_geometry = one(box({0.0, -0.05, 0.5}, {0.56, 0.5, 1.0}));
    spec.parts = {revolute_part(one(box({0.04, 0.30, 0.5}, {0.44, 0.04, 0.96})),
                                {-0.38, 0.30, 0.0}, {0.0, 0.0, 1.0}, -110.0, 0.0)};
  } else if (name == "oven-101917") {
    spec.base_geometry = one(box({0.0, -0.05, 0.4}, {0.7, 0.5, 0.8}));
    spec.parts = {revolute_part(one(box({0.0, 0.32, 0.49}, {0.5, 0.04, 0.5})),
                                {0.0, 0.32, 0.12}, {1.0, 0.0, 0.0}, 0.0, 90.0)};
  } else if (name == "scissor-11100") {
    spec.base_geometry = {{box({0.4, -0.06, 0.32}, {0.6, 0.05, 0.04}),
                           box({-0.4, -0.06, 0.32}, {0.6, 0.08, 0.05})}};
    GeometrySpec blade = {{box({0.4, 0.06, 0.36}, {0.6, 0.05, 0.04}),
                           box({-0.4, 0.06, 0.36}, {0.6, 0.08, 0.05})}};
    spec.parts = {revolute_part(std::move(blade), {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, 45.0,
                                -45.0)};
  } else if (name == "stapler-103111") {
    spec.base_geometry = one(box({0.0, 0.0, 0.075}, {1.0, 0.24, 0.15}));
    spec.parts = {revolute_part(one(box({0.06, 0.0, 0.27}, {0.88, 0.2, 0.1})),
                                {-0.5, 0.0, 0.27}, {0.0, 1.0, 0.0}, 0.0, -80.0)};
  } else if (name == "storage-45135") {
    spec.base_geometry = one(box({0.0, -0.1, 0.5}, {0.7, 0.6, 1.0}));
    spec.parts = {prismatic_part(one(box({0.0, 0.12, 0.35}, {0.5, 0.36, 0.24})),
                                 {0.0, 1.0, 0.0}, 0.0, 0.5)};
  } else if (name == "usb-100109") {
    spec.base_geometry = one(box({-0.4, 0.0, 0.2}, {0.56, 0.14, 0.1}));
    spec.parts = {revolute_part(one(box({0.36, 0.0, 0.2}, {0.48, 0.16, 0.12})),
                                {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, 0.0, -90.0)};
  } else if (name == "washer-103776") {
    spec.base_geometry = one(box({0.0, -0.06, 0.5}, {0.7, 0.44, 1.0}));
    spec.parts = {revolute_part(one(cylinder({0.0, 0.32, 0.5}, {0.0, 1.0, 0.0}, 0.25, 0.04)),
                                {-0.45, 0.36, 0.0}, {0.0, 0.0, 1.0}, 0.0, -60.0)};
  } else if (name == "fridge-11304") {
    spec.base_geometry = one(box({0.0, -0.06, 0.6}, {0.8, 0.48, 1.2}));
    spec.parts = {revolute_part(one(box({-0.15, 0.3, 0.6}, {0.26, 0.04, 1.16})),
                                {-0.5, 0.3, 0.0}, {0.0, 0.0, 1.0}, 0.0, -180.0),
                  revolute_part(one(box({0.15, 0.3, 0.6}, {0.26, 0.04, 1.16})),
                                {0.5, 0.3, 0.0}, {0.0, 0.0, 1.0}, 0.0, -90.0)};
  } else if (name == "storage-47024") {
    spec.base_geometry = one(box({0.0, -0.05, 0.5}, {0.8, 0.5, 1.0}));
    spec.parts = {revolute_part(one(box({0.2, 0.3, 0.7}, {0.36, 0.04, 0.55})),
                                {0.5, 0.32, 0.0}, {0.0, 0.0, 1.0}, 0.0, 90.0),
                  prismatic_part(one(box({-0.1, 0.08, 0.22}, {0.5, 0.44, 0.28})),
                                 {0.0, 1.0, 0.0}, 0.0, 0.7)};
  } else if (name == "storage-47648") {
    spec.base_geometry = {{box({0.0, -0.28, 0.6}, {1.2, 0.04, 1.2}),
                           box({-0.58, -0.05, 0.6}, {0.04, 0.5, 1.2}),
                           box({0.58, -0.05, 0.6}, {0.04, 0.5, 1.2}),
                           box({0.0, -0.05, 0.02}, {1.2, 0.5, 0.04}),
                           box({0.0, -0.05, 1.18}, {1.2, 0.5, 0.04})}};
    spec.parts = {revolute_part(one(box({-0.16, 0.3, 0.9}, {0.28, 0.04, 0.36})),
                                {-0.6, 0.32, 0.0}, {0.0, 0.0, 1.0}, 0.0, 120.0),
                  revolute_part(one(box({0.16, 0.3, 0.9}, {0.28, 0.04, 0.36})),
                                {0.6, 0.32, 0.0}, {0.0, 0.0, 1.0}, 0.0, -120.0),
                  revolute_part(one(box({-0.16, 0.3, 0.54}, {0.28, 0.04, 0.24})),
                                {-0.6, 0.32, 0.0}, {0.0, 0.0, 1.0}, 0.0, -60.0),
                  revolute_part(one(box({0.16, 0.3, 0.54}, {0.28, 0.04, 0.24})),
                                {0.6, 0.32, 0.0}, {0.0, 0.0, 1.0}, 0.0, 60.0),
                  prismatic_part(one(box({0.0, -0.05, 0.47}, {0.56, 0.34, 0.24})),
                                 {0.0, 1.0, 0.0}, 0.0, 0.1),
                  prismatic_part(one(box({0.0, -0.05, 0.73}, {0.56, 0.34, 0.24})),
                                 {0.0, -1.0, 0.0}, 0.0, 0.16)};
  } else if (name == "table-31249") {
    spec.base_geometry = {{box({0.0, 0.0, 0.75}, {0.76, 0.7, 0.1}),
                           box({0.3, 0.25, 0.35}, {0.08, 0.08, 0.7}),
                           box({-0.3, 0.25, 0.35}, {0.08, 0.08, 0.7}),
                           box({0.3, -0.25, 0.35}, {0.08, 0.08, 0.7}),
                           box({-0.3, -0.25, 0.35}, {0.08, 0.08, 0.7})}};
    spec.parts = {prismatic_part(one(box({-0.3, 0.05, 0.57}, {0.4, 0.3, 0.14})),
                                 {0.0, 1.0, 0.0}, 0.0, 0.38),
                  prismatic_part(one(box({0.3, 0.05, 0.57}, {0.4, 0.3, 0.14})),
                                 {0.0, 1.0, 0.0}, 0.35, 0.0),
                  revolute_part(one(box({-0.75, 0.0, 0.8}, {0.26, 0.7, 0.08})),
                                {-0.5, 0.0, 0.8}, {0.0, 1.0, 0.0}, 0.0, -90.0),
                  revolute_part(one(box({0.75, 0.0, 0.8}, {0.26, 0.7, 0.08})),
                                {0.5, 0.0, 0.8}, {0.0, 1.0, 0.0}, 0.0, 90.0)};
  } else {
    return spec;  // caller reports the unknown name
  }
  return spec;
}

const char* const k_rangeless[] = {"storage-47254", "fridge-10489"};

}  // namespace

SceneSpec builtin_scene(const std::string& name, int points_per_part) {
  if (points_per_part < 1) {
    throw std::invalid_argument("builtin_scene: points_per_part must be >= 1");
  }
  for (const char* rangeless : k_rangeless) {
    if (name == rangeless) {
      throw std::invalid_argument(
          "builtin_scene: catalog entry '" + name +
          "' has no published motion range; supply a custom scene spec file with explicit "
          "motion_range values instead");
    }
  }
  SceneSpec spec = make_builtin(name);
  if (spec.parts.empty()) {
    std::string names;
    for (const std::string& n : builtin_scene_names()) {
      if (!names.empty()) names += ", ";
      names += n;
    }
    throw std::invalid_argument("builtin_scene: unknown scene '" + name +
                                "'; available: " + names);
  }
  // The static base gets three times the part density. Scanned scenes are
  // dominated by static structure, and the sequential consensus stage needs
  // that: with equal-sized blocks, a weakly moving part (stroke within a few
  // multiples of the inlier threshold) can be bridged to a slice of the base
  // by a small-rotation compromise model whose support beats every pure
  // block, which breaks both the static prefilter and the segmentation.
  spec.base_point_count = 3 * points_per_part;
  for (PartSpec& part : spec.parts) part.point_count = points_per_part;
  return spec;
}

std::vector<std::string> builtin_scene_names() {
  return {"blade-103706",  "fridge-10905",  "oven-101917",  "scissor-11100",
          "stapler-103111", "storage-45135", "usb-100109",   "washer-103776",
          "fridge-11304",  "storage-47024", "storage-47648", "table-31249"};
}

}  // namespace aim::synth
