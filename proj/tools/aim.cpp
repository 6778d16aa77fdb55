// aim: segment articulated scenes from 3D point trajectories and recover
// per-part joint parameters. Subcommands: analyze, sdmd, synth, eval, demo.
//
// Exit codes: 0 success, 2 usage or validation errors (bad flags, missing
// input files, invalid configs, unknown scenes), 1 runtime failures
// (malformed file content, numeric errors, write failures).
//
// Every command ends stdout with exactly one machine-readable JSON line;
// --quiet suppresses everything except that line. AIM_THREADS caps the
// worker threads (results are identical for any setting).

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

#include "aim/articulation.hpp"
#include "aim/evaluation.hpp"
#include "aim/io.hpp"
#include "aim/synth.hpp"

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Small JSON emission helpers for the machine-readable line (and the compact
// report files). %.17g round-trips doubles; NaN becomes null; -0 becomes 0.
// ---------------------------------------------------------------------------

std::string jnum(double v) {
  if (std::isnan(v)) return "null";
  if (!std::isfinite(v)) throw std::runtime_error("cannot serialize a non-finite number");
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string jstr(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", c);
          out += esc;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string jvec3(const aim::Vec3& v) {
  return "[" + jnum(v.x()) + "," + jnum(v.y()) + "," + jnum(v.z()) + "]";
}

std::string jints(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

class JsonLine {
 public:
  JsonLine& str(const char* k, std::string_view v) { return raw(k, jstr(v)); }
  JsonLine& num(const char* k, double v) { return raw(k, jnum(v)); }
  JsonLine& integer(const char* k, long long v) { return raw(k, std::to_string(v)); }
  JsonLine& uinteger(const char* k, std::uint64_t v) { return raw(k, std::to_string(v)); }
  JsonLine& boolean(const char* k, bool v) { return raw(k, v ? "true" : "false"); }
  JsonLine& null(const char* k) { return raw(k, "null"); }
  JsonLine& raw(const char* k, const std::string& v) {
    if (!first_) s_ += ",";
    first_ = false;
    s_ += jstr(k);
    s_ += ":";
    s_ += v;
    return *this;
  }
  std::string done() const { return s_ + "}"; }

 private:
  std::string s_ = "{";
  bool first_ = true;
};

void emit_machine_line(const JsonLine& line) { std::printf("%s\n", line.done().c_str()); }

// ---------------------------------------------------------------------------
// Argument helpers.
// ---------------------------------------------------------------------------

void require_file(const std::string& path, const char* what) {
  if (!fs::exists(fs::path(path))) {
    throw std::invalid_argument(std::string(what) + ": no such file: " + path);
  }
}

double parse_strict_double(std::string_view s, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument(what + ": malformed number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<aim::Window> parse_windows(const std::string& s) {
  std::vector<aim::Window> out;
  for (std::string_view item : split(s, ',')) {
    auto ab = split(item, ':');
    if (ab.size() != 2) {
      throw std::invalid_argument("--windows expects 't_a:t_b[,t_a:t_b...]', got '" + s + "'");
    }
    out.push_back({parse_strict_double(ab[0], "--windows"), parse_strict_double(ab[1], "--windows")});
  }
  return out;
}

std::vector<double> parse_times(const std::string& s, const char* flag) {
  std::vector<double> out;
  for (std::string_view item : split(s, ',')) {
    out.push_back(parse_strict_double(item, flag));
  }
  return out;
}

const char* joint_name(aim::JointType t) {
  return t == aim::JointType::revolute ? "revolute" : "prismatic";
}

std::string joint_json(const aim::JointParams& j) {
  JsonLine line;
  line.str("type", joint_name(j.joint_type));
  line.raw("axis_direction", jvec3(j.axis_direction));
  if (j.axis_position.has_value()) {
    line.raw("axis_position", jvec3(*j.axis_position));
  } else {
    line.null("axis_position");
  }
  line.num("angle_deg", j.angle * 180.0 / aim::k_pi);
  line.num("distance", j.distance);
  return line.done();
}

void write_text_file(const std::string& path, const std::string& content) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  const bool ok = std::fwrite(content.data(), 1, content.size(), f) == content.size();
  if (std::fclose(f) != 0 || !ok) {
    throw std::runtime_error(path + ": write failed");
  }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeOpts {
  std::string input;
  std::string output;
  double inlier_threshold = 0.05;
  int samples = 1000;
  int max_models = 16;
  int min_support = 20;
  double min_support_fraction = 0.01;
  std::string windows = "0:0.5,0:1";
  std::uint64_t seed = 0;
  bool no_sdmd = false;
  std::string sdmd_times = "0,0.5,1";
  double sdmd_angle_max = 0.1;
  double sdmd_trans_max = 0.05;
  double revolute_threshold_deg = 10.0;
  bool normalize = false;
  bool quiet = false;
};

void denormalize(aim::PartMobilityResult& result) {
  const aim::Vec3 origin = result.normalization.origin;
  const double scale = result.normalization.scale;
  const std::size_t joint_window = aim::largest_span_window(result.ransac_config.windows);

  std::vector<aim::PartResult> kept;
  for (aim::PartResult& part : result.parts) {
    for (aim::RigidTransform& t : part.window_transforms) {
      t.translation = origin - t.rotation * origin + scale * t.translation;
    }
    part.mean_residual *= scale;
    try {
      part.joint = aim::extract_joint(part.window_transforms.at(joint_window),
                                      result.revolute_threshold);
      kept.push_back(std::move(part));
    } catch (const aim::DegenerateMotionError&) {
      result.unassigned_ids.insert(result.unassigned_ids.end(), part.member_ids.begin(),
                                   part.member_ids.end());
      if (!result.diagnostic.empty()) result.diagnostic += "; ";
      result.diagnostic += "part " + std::to_string(part.part_id) +
                           " became degenerate after denormalization";
    }
  }
  result.parts = std::move(kept);
  std::sort(result.unassigned_ids.begin(), result.unassigned_ids.end());
}

int cmd_analyze(const AnalyzeOpts& o) {
  require_file(o.input, "--input");

  aim::RansacConfig rcfg;
  rcfg.inlier_threshold = o.inlier_threshold;
  rcfg.samples_per_model = o.samples;
  rcfg.max_models = o.max_models;
  rcfg.min_support = o.min_support;
  rcfg.min_support_fraction = o.min_support_fraction;
  rcfg.rng_seed = o.seed;
  rcfg.windows = parse_windows(o.windows);

  std::optional<aim::SdmdConfig> scfg;
  if (!o.no_sdmd) {
    aim::SdmdConfig s;
    s.sample_times = parse_times(o.sdmd_times, "--sdmd-times");
    s.inlier_threshold = o.inlier_threshold;
    s.static_angle_max = o.sdmd_angle_max;
    s.static_translation_max = o.sdmd_trans_max;
    s.samples_per_model = o.samples;
    s.max_models = o.max_models;
    s.min_support = o.min_support;
    s.min_support_fraction = o.min_support_fraction;
    s.rng_seed = o.seed;
    scfg = std::move(s);
  }
  const double revolute_threshold = o.revolute_threshold_deg * aim::k_pi / 180.0;

  aim::TrajectorySet traj = aim::io::read_trajectories(o.input);

  aim::NormalizationInfo norm;
  if (o.normalize) {
    aim::Vec3 lo = traj.frames.front().rowwise().minCoeff();
    aim::Vec3 hi = traj.frames.front().rowwise().maxCoeff();
    for (const Eigen::Matrix3Xd& frame : traj.frames) {
      lo = lo.cwiseMin(frame.rowwise().minCoeff());
      hi = hi.cwiseMax(frame.rowwise().maxCoeff());
    }
    double scale = (hi - lo).maxCoeff();
    if (!(scale > 0.0)) scale = 1.0;
    for (Eigen::Matrix3Xd& frame : traj.frames) {
      frame = (frame.colwise() - lo) / scale;
    }
    norm.enabled = true;
    norm.origin = lo;
    norm.scale = scale;
  }

  aim::PartMobilityResult result = aim::analyze(traj, rcfg, scfg, revolute_threshold);
  result.normalization = norm;
  if (norm.enabled) denormalize(result);

  if (!o.output.empty()) {
    aim::io::write_result(result, o.output);
  }

  if (!o.quiet) {
    std::printf("input: %s (%lld points, %zu frames)\n", o.input.c_str(),
                static_cast<long long>(traj.point_count()), traj.frame_count());
    if (norm.enabled) {
      std::printf("normalize: origin [%.6g %.6g %.6g], scale %.6g\n", norm.origin.x(),
                  norm.origin.y(), norm.origin.z(), norm.scale);
    }
    if (result.sdmd_config.has_value()) {
      std::printf("sdmd: %zu static\n", result.static_ids.size());
    }
    for (const aim::PartResult& part : result.parts) {
      const aim::JointParams& j = part.joint;
      std::printf("part %d: %zu members, %s, angle %.2f deg, distance %.4f, axis dir [%.4f %.4f %.4f], residual %.3g\n",
                  part.part_id, part.member_ids.size(), joint_name(j.joint_type),
                  j.angle * 180.0 / aim::k_pi, j.distance, j.axis_direction.x(),
                  j.axis_direction.y(), j.axis_direction.z(), part.mean_residual);
    }
    std::printf("parts: %zu\n", result.parts.size());
    std::printf("unassigned: %zu\n", result.unassigned_ids.size());
    if (!result.diagnostic.empty()) {
      std::printf("note: %s\n", result.diagnostic.c_str());
    }
    if (!o.output.empty()) {
      std::printf("wrote %s\n", o.output.c_str());
    }
  }

  std::string joints = "[";
  for (std::size_t i = 0; i < result.parts.size(); ++i) {
    if (i > 0) joints += ",";
    JsonLine jl;
    jl.integer("part_id", result.parts[i].part_id);
    jl.integer("member_count", static_cast<long long>(result.parts[i].member_ids.size()));
    joints += jl.raw("joint", joint_json(result.parts[i].joint)).done();
  }
  joints += "]";

  JsonLine line;
  line.str("command", "analyze");
  line.str("input", o.input);
  line.integer("points", static_cast<long long>(traj.point_count()));
  line.integer("frames", static_cast<long long>(traj.frame_count()));
  line.integer("parts", static_cast<long long>(result.parts.size()));
  line.integer("static_count", static_cast<long long>(result.static_ids.size()));
  line.integer("unassigned_count", static_cast<long long>(result.unassigned_ids.size()));
  line.raw("joints", joints);
  line.str("diagnostic", result.diagnostic);
  if (o.output.empty()) {
    line.null("output");
  } else {
    line.str("output", o.output);
  }
  emit_machine_line(line);
  return 0;
}

// ---------------------------------------------------------------------------
// sdmd
// ---------------------------------------------------------------------------

struct SdmdOpts {
  std::string input;
  std::string output;
  std::string times = "0,0.5,1";
  double angle_max = 0.1;
  double trans_max = 0.05;
  double inlier_threshold = 0.05;
  int samples = 1000;
  int max_models = 16;
  int min_support = 20;
  double min_support_fraction = 0.01;
  std::uint64_t seed = 0;
  bool quiet = false;
};

int cmd_sdmd(const SdmdOpts& o) {
  require_file(o.input, "--input");

  aim::SdmdConfig cfg;
  cfg.sample_times = parse_times(o.times, "--times");
  cfg.static_angle_max = o.angle_max;
  cfg.static_translation_max = o.trans_max;
  cfg.inlier_threshold = o.inlier_threshold;
  cfg.samples_per_model = o.samples;
  cfg.max_models = o.max_models;
  cfg.min_support = o.min_support;
  cfg.min_support_fraction = o.min_support_fraction;
  cfg.rng_seed = o.seed;

  const aim::TrajectorySet traj = aim::io::read_trajectories(o.input);
  const aim::StaticSplit split = aim::detect_static(traj, cfg);

  if (!o.output.empty()) {
    std::string out = "{\n  \"schema_version\": 1,\n  \"static_ids\": ";
    out += jints(split.static_ids);
    out += ",\n  \"moving_ids\": ";
    out += jints(split.moving_ids);
    out += "\n}\n";
    write_text_file(o.output, out);
  }

  if (!o.quiet) {
    std::printf("input: %s (%lld points, %zu frames)\n", o.input.c_str(),
                static_cast<long long>(traj.point_count()), traj.frame_count());
    std::printf("static: %zu\n", split.static_ids.size());
    std::printf("moving: %zu\n", split.moving_ids.size());
    if (!o.output.empty()) {
      std::printf("wrote %s\n", o.output.c_str());
    }
  }

  JsonLine line;
  line.str("command", "sdmd");
  line.str("input", o.input);
  line.integer("points", static_cast<long long>(traj.point_count()));
  line.integer("static_count", static_cast<long long>(split.static_ids.size()));
  line.integer("moving_count", static_cast<long long>(split.moving_ids.size()));
  if (o.output.empty()) {
    line.null("output");
  } else {
    line.str("output", o.output);
  }
  emit_machine_line(line);
  return 0;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthOpts {
  std::string scene;
  std::string spec_path;
  std::string output;
  std::string gt_path;
  int points_per_part = 1500;
  int frames = 0;          // 0: keep the scene's timestamps
  double noise = -1.0;     // <0: keep the scene's value
  double outliers = -1.0;  // <0: keep the scene's value
  bool seed_given = false;
  std::uint64_t seed = 0;
  bool text = false;
  bool quiet = false;
};

int cmd_synth(const SynthOpts& o) {
  if (o.scene.empty() == o.spec_path.empty()) {
    throw std::invalid_argument("give exactly one of --scene or --spec");
  }

  aim::synth::SceneSpec spec;
  if (!o.scene.empty()) {
    spec = aim::synth::builtin_scene(o.scene, o.points_per_part);
  } else {
    require_file(o.spec_path, "--spec");
    spec = aim::io::read_scene_spec(o.spec_path);
  }

  if (o.frames > 0) {
    if (o.frames < 2) {
      throw std::invalid_argument("--frames: expected at least 2");
    }
    spec.timestamps = aim::uniform_timestamps(static_cast<std::size_t>(o.frames));
  }
  if (o.noise >= 0.0) spec.noise_sigma = o.noise;
  if (o.outliers >= 0.0) spec.outlier_fraction = o.outliers;
  if (o.seed_given) spec.rng_seed = o.seed;

  auto [traj, truth] = aim::synth::generate(spec);
  aim::io::write_trajectories(traj, o.output, !o.text);
  if (!o.gt_path.empty()) {
    aim::io::write_ground_truth(truth, o.gt_path);
  }

  if (!o.quiet) {
    std::printf("scene %s: %zu moving parts, %lld points, %zu frames\n", spec.name.c_str(),
                spec.parts.size(), static_cast<long long>(traj.point_count()),
                traj.frame_count());
    std::printf("noise sigma %.6g, outlier fraction %.6g, seed %" PRIu64 "\n", spec.noise_sigma,
                spec.outlier_fraction, spec.rng_seed);
    std::printf("wrote %s\n", o.output.c_str());
    if (!o.gt_path.empty()) {
      std::printf("wrote %s\n", o.gt_path.c_str());
    }
  }

  JsonLine line;
  line.str("command", "synth");
  line.str("scene", spec.name);
  line.integer("points", static_cast<long long>(traj.point_count()));
  line.integer("frames", static_cast<long long>(traj.frame_count()));
  line.integer("parts", static_cast<long long>(spec.parts.size()));
  line.num("noise_sigma", spec.noise_sigma);
  line.num("outlier_fraction", spec.outlier_fraction);
  line.uinteger("rng_seed", spec.rng_seed);
  line.str("output", o.output);
  if (o.gt_path.empty()) {
    line.null("gt");
  } else {
    line.str("gt", o.gt_path);
  }
  emit_machine_line(line);
  return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOpts {
  std::string pred;
  std::string gt;
  std::string input;
  std::string output;
  int voxel_res = 64;
  int chamfer_samples = 10000;
  double mm_per_unit = 1000.0;
  std::uint64_t seed = 0;
  bool quiet = false;
};

std::string fmt_or_na(double v, const char* fmt) {
  if (std::isnan(v)) return "n/a";
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string row_json(const aim::PartEvalRow& row) {
  JsonLine jl;
  jl.integer("gt_index", row.gt_index);
  jl.integer("gt_part_id", row.gt_part_id);
  if (row.pred_index >= 0) {
    jl.integer("pred_index", row.pred_index);
  } else {
    jl.null("pred_index");
  }
  jl.str("gt_type", joint_name(row.gt_type));
  jl.boolean("matched", row.matched);
  jl.boolean("type_match", row.type_match);
  jl.num("member_iou", row.member_iou);
  jl.num("voxel_iou", row.voxel_iou);
  jl.num("chamfer_mm", row.chamfer_mm);
  jl.num("axis_ang_deg", row.axis_ang_deg);
  jl.num("axis_pos", row.axis_pos);
  jl.num("motion_err", row.motion_err);
  return jl.done();
}

int cmd_eval(const EvalOpts& o) {
  require_file(o.pred, "--pred");
  require_file(o.gt, "--gt");
  if (!o.input.empty()) {
    require_file(o.input, "--input");
  }
  if (o.voxel_res < 1) {
    throw std::invalid_argument("--voxel-res: expected a positive integer");
  }
  if (o.chamfer_samples < 1) {
    throw std::invalid_argument("--chamfer-samples: expected a positive integer");
  }

  const aim::PartMobilityResult result = aim::io::read_result(o.pred);
  const aim::synth::GroundTruth truth = aim::io::read_ground_truth(o.gt);
  std::optional<aim::TrajectorySet> traj;
  if (!o.input.empty()) {
    traj = aim::io::read_trajectories(o.input);
  }

  aim::EvalOptions opts;
  opts.voxel_resolution = Eigen::Vector3i(o.voxel_res, o.voxel_res, o.voxel_res);
  opts.chamfer_samples = o.chamfer_samples;
  opts.mm_per_unit = o.mm_per_unit;
  opts.rng_seed = o.seed;

  const aim::EvalReport report =
      aim::evaluate(result, truth, traj.has_value() ? &*traj : nullptr, opts);

  int matched = 0;
  for (const aim::PartEvalRow& row : report.rows) {
    if (row.matched) ++matched;
  }

  if (!o.quiet) {
    for (const aim::PartEvalRow& row : report.rows) {
      if (!row.matched) {
        std::printf("gt part %d (%s): unmatched\n", row.gt_part_id, joint_name(row.gt_type));
        continue;
      }
      std::printf("gt part %d (%s): pred %d, member IoU %.3f, voxel IoU %s, chamfer %s mm, "
                  "axis ang %s deg, axis pos %s, motion %s\n",
                  row.gt_part_id, joint_name(row.gt_type), row.pred_index, row.member_iou,
                  fmt_or_na(row.voxel_iou, "%.3f").c_str(), fmt_or_na(row.chamfer_mm, "%.3f").c_str(),
                  fmt_or_na(row.axis_ang_deg, "%.4f").c_str(), fmt_or_na(row.axis_pos, "%.5f").c_str(),
                  fmt_or_na(row.motion_err, "%.4f").c_str());
    }
    std::printf("matched %d/%d gt parts, %zu pred parts unmatched\n", matched,
                report.gt_part_count, report.unmatched_pred.size());
    std::printf("means: voxel IoU %s, chamfer %s mm, axis ang %s deg, axis pos %s, "
                "motion rev %s deg, motion pri %s\n",
                fmt_or_na(report.mean_voxel_iou, "%.4f").c_str(),
                fmt_or_na(report.mean_chamfer_mm, "%.4f").c_str(),
                fmt_or_na(report.mean_axis_ang_deg, "%.4f").c_str(),
                fmt_or_na(report.mean_axis_pos, "%.5f").c_str(),
                fmt_or_na(report.mean_motion_rev_deg, "%.4f").c_str(),
                fmt_or_na(report.mean_motion_pri, "%.5f").c_str());
  }

  std::string rows = "[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (i > 0) rows += ",";
    rows += row_json(report.rows[i]);
  }
  rows += "]";

  JsonLine means;
  means.num("voxel_iou", report.mean_voxel_iou);
  means.num("chamfer_mm", report.mean_chamfer_mm);
  means.num("axis_ang_deg", report.mean_axis_ang_deg);
  means.num("axis_pos", report.mean_axis_pos);
  means.num("motion_rev_deg", report.mean_motion_rev_deg);
  means.num("motion_pri", report.mean_motion_pri);

  if (!o.output.empty()) {
    JsonLine file;
    file.integer("schema_version", 1);
    file.integer("gt_parts", report.gt_part_count);
    file.integer("pred_parts", report.pred_part_count);
    file.integer("matched", matched);
    file.raw("rows", rows);
    file.raw("unmatched_pred", jints(report.unmatched_pred));
    file.raw("means", means.done());
    write_text_file(o.output, file.done() + "\n");
    if (!o.quiet) {
      std::printf("wrote %s\n", o.output.c_str());
    }
  }

  JsonLine line;
  line.str("command", "eval");
  line.integer("gt_parts", report.gt_part_count);
  line.integer("pred_parts", report.pred_part_count);
  line.integer("matched", matched);
  line.integer("unmatched_pred", static_cast<long long>(report.unmatched_pred.size()));
  line.raw("means", means.done());
  if (o.output.empty()) {
    line.null("output");
  } else {
    line.str("output", o.output);
  }
  emit_machine_line(line);
  return 0;
}

// ---------------------------------------------------------------------------
// demo
// ---------------------------------------------------------------------------

struct DemoOpts {
  std::string scene = "oven-101917";
  double noise = 0.0;
  std::uint64_t seed = 0;
  int points_per_part = 800;
  bool quiet = false;
};

int cmd_demo(const DemoOpts& o) {
  aim::synth::SceneSpec spec = aim::synth::builtin_scene(o.scene, o.points_per_part);
  spec.noise_sigma = o.noise;
  spec.rng_seed = o.seed;

  auto [traj, truth] = aim::synth::generate(spec);
  const aim::RansacConfig rcfg;
  const aim::PartMobilityResult result = aim::analyze(traj, rcfg);
  const aim::EvalReport report = aim::evaluate(result, truth, &traj);

  int matched = 0;
  for (const aim::PartEvalRow& row : report.rows) {
    if (row.matched) ++matched;
  }

  if (!o.quiet) {
    std::printf("demo scene %s: %lld points, %zu frames, noise sigma %.6g, seed %" PRIu64 "\n",
                o.scene.c_str(), static_cast<long long>(traj.point_count()), traj.frame_count(),
                o.noise, o.seed);
    for (const aim::PartResult& part : result.parts) {
      std::printf("part %d: %zu members, %s, angle %.2f deg, distance %.4f\n", part.part_id,
                  part.member_ids.size(), joint_name(part.joint.joint_type),
                  part.joint.angle * 180.0 / aim::k_pi, part.joint.distance);
    }
    std::printf("parts: %zu (ground truth %d)\n", result.parts.size(), report.gt_part_count);
    std::printf("matched %d/%d, mean axis ang %s deg, mean voxel IoU %s\n", matched,
                report.gt_part_count, fmt_or_na(report.mean_axis_ang_deg, "%.4f").c_str(),
                fmt_or_na(report.mean_voxel_iou, "%.4f").c_str());
  }

  JsonLine line;
  line.str("command", "demo");
  line.str("scene", o.scene);
  line.integer("gt_parts", report.gt_part_count);
  line.integer("pred_parts", report.pred_part_count);
  line.integer("matched", matched);
  line.num("mean_axis_ang_deg", report.mean_axis_ang_deg);
  line.num("mean_voxel_iou", report.mean_voxel_iou);
  emit_machine_line(line);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aim: articulated part mobility from 3D point trajectories"};
  app.require_subcommand(1);

  AnalyzeOpts a;
  CLI::App* analyze = app.add_subcommand("analyze", "Segment moving parts and recover joints");
  analyze->add_option("--input,-i", a.input, "Trajectory file (AIMT)")->required();
  analyze->add_option("--output,-o", a.output, "Write the result JSON here");
  analyze->add_option("--inlier-threshold", a.inlier_threshold, "Inlier distance threshold");
  analyze->add_option("--samples", a.samples, "RANSAC samples per model");
  analyze->add_option("--max-models", a.max_models, "Maximum number of parts");
  analyze->add_option("--min-support", a.min_support, "Minimum members per part");
  analyze->add_option("--min-support-fraction", a.min_support_fraction,
                      "Minimum members as a fraction of the unassigned points");
  analyze->add_option("--windows", a.windows, "Fit windows as 't_a:t_b[,t_a:t_b...]'");
  analyze->add_option("--seed", a.seed, "RNG seed");
  analyze->add_flag("--no-sdmd", a.no_sdmd, "Skip the static-part prefilter");
  analyze->add_option("--sdmd-times", a.sdmd_times, "Prefilter sample times 't0,t1,...'");
  analyze->add_option("--sdmd-angle-max", a.sdmd_angle_max,
                      "Max static rotation per window (radians)");
  analyze->add_option("--sdmd-trans-max", a.sdmd_trans_max,
                      "Max static translation per window");
  analyze->add_option("--revolute-threshold-deg", a.revolute_threshold_deg,
                      "Rotation above this is a revolute joint (degrees)");
  analyze->add_flag("--normalize", a.normalize,
                    "Scale the input to a unit box for fitting; outputs stay in input units");
  analyze->add_flag("--quiet,-q", a.quiet, "Print only the final JSON line");

  SdmdOpts s;
  CLI::App* sdmd = app.add_subcommand("sdmd", "Split trajectories into static and moving");
  sdmd->add_option("--input,-i", s.input, "Trajectory file (AIMT)")->required();
  sdmd->add_option("--output,-o", s.output, "Write the split JSON here");
  sdmd->add_option("--times", s.times, "Sample times 't0,t1,...' (first must be 0)");
  sdmd->add_option("--angle-max", s.angle_max, "Max static rotation per window (radians)");
  sdmd->add_option("--trans-max", s.trans_max, "Max static translation per window");
  sdmd->add_option("--inlier-threshold", s.inlier_threshold, "Inlier distance threshold");
  sdmd->add_option("--samples", s.samples, "RANSAC samples per model");
  sdmd->add_option("--max-models", s.max_models, "Maximum number of groups");
  sdmd->add_option("--min-support", s.min_support, "Minimum members per group");
  sdmd->add_option("--min-support-fraction", s.min_support_fraction,
                   "Minimum members as a fraction of the unassigned points");
  sdmd->add_option("--seed", s.seed, "RNG seed");
  sdmd->add_flag("--quiet,-q", s.quiet, "Print only the final JSON line");

  SynthOpts y;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic articulated scene");
  synth->add_option("--scene", y.scene, "Catalog scene name");
  synth->add_option("--spec", y.spec_path, "Scene spec JSON file");
  synth->add_option("--output,-o", y.output, "Trajectory file to write")->required();
  synth->add_option("--gt", y.gt_path, "Ground-truth JSON file to write");
  synth->add_option("--points-per-part", y.points_per_part,
                    "Points per part for catalog scenes");
  synth->add_option("--frames", y.frames, "Number of uniform frames");
  synth->add_option("--noise", y.noise, "Gaussian noise sigma");
  synth->add_option("--outliers", y.outliers, "Outlier fraction in [0, 1)");
  CLI::Option* seed_opt = synth->add_option("--seed", y.seed, "RNG seed");
  synth->add_flag("--text", y.text, "Write the text encoding instead of binary");
  synth->add_flag("--quiet,-q", y.quiet, "Print only the final JSON line");

  EvalOpts e;
  CLI::App* eval = app.add_subcommand("eval", "Score a result against ground truth");
  eval->add_option("--pred", e.pred, "Result JSON file")->required();
  eval->add_option("--gt", e.gt, "Ground-truth JSON file")->required();
  eval->add_option("--input,-i", e.input,
                   "Trajectory file; enables voxel IoU and Chamfer distance");
  eval->add_option("--output,-o", e.output, "Write the report JSON here");
  eval->add_option("--voxel-res", e.voxel_res, "Voxel grid resolution per axis");
  eval->add_option("--chamfer-samples", e.chamfer_samples, "Max points per Chamfer cloud");
  eval->add_option("--mm-per-unit", e.mm_per_unit, "Millimeters per scene unit");
  eval->add_option("--seed", e.seed, "RNG seed for metric subsampling");
  eval->add_flag("--quiet,-q", e.quiet, "Print only the final JSON line");

  DemoOpts d;
  CLI::App* demo = app.add_subcommand("demo", "Generate, analyze and score one scene");
  demo->add_option("--scene", d.scene, "Catalog scene name");
  demo->add_option("--noise", d.noise, "Gaussian noise sigma");
  demo->add_option("--seed", d.seed, "RNG seed");
  demo->add_option("--points-per-part", d.points_per_part, "Points per part");
  demo->add_flag("--quiet,-q", d.quiet, "Print only the final JSON line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }
  y.seed_given = seed_opt->count() > 0;

  try {
    if (analyze->parsed()) return cmd_analyze(a);
    if (sdmd->parsed()) return cmd_sdmd(s);
    if (synth->parsed()) return cmd_synth(y);
    if (eval->parsed()) return cmd_eval(e);
    if (demo->parsed()) return cmd_demo(d);
  } catch (const aim::io::ParseError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 2;
}
