#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "aim/articulation.hpp"
#include "aim/synth.hpp"
#include "aim/trajectory.hpp"

namespace aim::io {

/// Raised for any malformed input file. The message always begins with the
/// file path and, where meaningful, a 1-based line number or byte offset:
///   "scene.aimt:4: expected 'points <count>', got 'pts 12'"
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Trajectory container format (extension-agnostic; conventionally .aimt).
///
/// Header, one field per line, in this exact order:
///   AIMT 1
///   encoding text            (or: encoding binary)
///   points <N>
///   timestamps <T>
///   times <t0> <t1> ... <t(T-1)>
///   data
/// Text payload: N*T lines of "x y z", point-major (all frames of point 0,
/// then point 1, ...). Binary payload: N*T*3 little-endian IEEE-754 doubles
/// in the same order, immediately after the "data" line.
///
/// Writing is byte-deterministic: text numbers use %.17g, binary is the raw
/// representation, so write(read(f)) reproduces f exactly for files this
/// library wrote.
TrajectorySet read_trajectories(const std::filesystem::path& path);
void write_trajectories(const TrajectorySet& trajectories,
                        const std::filesystem::path& path,
                        bool binary = true);

/// Analysis result, canonical JSON (fixed key order, %.17g numbers, two-space
/// indent, trailing newline). Writing the same result twice produces
/// byte-identical files.
void write_result(const PartMobilityResult& result,
                  const std::filesystem::path& path);
PartMobilityResult read_result(const std::filesystem::path& path);

/// Ground truth for a generated scene, canonical JSON as above.
void write_ground_truth(const synth::GroundTruth& truth,
                        const std::filesystem::path& path);
synth::GroundTruth read_ground_truth(const std::filesystem::path& path);

/// Scene description as JSON:
/// {
///   "name": "...",
///   "base": {"point_count": int, "geometry": [<primitive>, ...]},
///   "parts": [{"point_count": int, "geometry": [...],
///              "joint_type": "revolute"|"prismatic",
///              "axis": {"point": [x,y,z], "direction": [x,y,z]},
///              "motion_range": [start, end],
///              "motion_profile": "linear"|"ease"}, ...],
///   "frames": int            (or "timestamps": [t0, ...]),
///   "noise_sigma": double, "outlier_fraction": double, "rng_seed": uint
/// }
/// <primitive> is {"kind": "box", "center": [...], "extent": [...]} or
/// {"kind": "cylinder", "center": [...], "axis": [...], "radius": r,
///  "height": h}. motion_profile, noise_sigma, outlier_fraction and rng_seed
/// are optional and default to "linear", 0, 0 and 0.
synth::SceneSpec read_scene_spec(const std::filesystem::path& path);

}  // namespace aim::io
