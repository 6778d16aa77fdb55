#include "aim/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace aim::io {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Number formatting. %.17g round-trips every finite double; negative zero is
// canonicalized so that equal values always serialize to identical bytes.
// ---------------------------------------------------------------------------

std::string fmt_double(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("cannot serialize a non-finite number");
  }
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Canonical JSON writer: fixed key order decided by the caller, two-space
// indent, numeric arrays on one line. Deterministic byte-for-byte.
// ---------------------------------------------------------------------------

class JsonWriter {
 public:
  void begin_object() {
    prefix();
    buf_ += '{';
    levels_.push_back(0);
  }
  void end_object() { close('}'); }
  void begin_array() {
    prefix();
    buf_ += '[';
    levels_.push_back(0);
  }
  void end_array() { close(']'); }

  void key(std::string_view k) {
    if (levels_.back()++ > 0) buf_ += ',';
    buf_ += '\n';
    indent(levels_.size());
    append_string(k);
    buf_ += ": ";
    pending_value_ = true;
  }

  void string(std::string_view s) {
    prefix();
    append_string(s);
  }
  void number(double v) {
    prefix();
    buf_ += fmt_double(v);
  }
  void integer(long long v) {
    prefix();
    buf_ += std::to_string(v);
  }
  void uinteger(std::uint64_t v) {
    prefix();
    buf_ += std::to_string(v);
  }
  void boolean(bool v) {
    prefix();
    buf_ += v ? "true" : "false";
  }
  void null() {
    prefix();
    buf_ += "null";
  }

  void inline_numbers(const double* v, std::size_t n) {
    prefix();
    buf_ += '[';
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) buf_ += ", ";
      buf_ += fmt_double(v[i]);
    }
    buf_ += ']';
  }
  void inline_ints(const int* v, std::size_t n) {
    prefix();
    buf_ += '[';
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) buf_ += ", ";
      buf_ += std::to_string(v[i]);
    }
    buf_ += ']';
  }

  std::string take() && {
    buf_ += '\n';
    return std::move(buf_);
  }

 private:
  void prefix() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (levels_.empty()) return;  // root value
    if (levels_.back()++ > 0) buf_ += ',';
    buf_ += '\n';
    indent(levels_.size());
  }
  void close(char ch) {
    int items = levels_.back();
    levels_.pop_back();
    if (items > 0) {
      buf_ += '\n';
      indent(levels_.size());
    }
    buf_ += ch;
  }
  void indent(std::size_t depth) { buf_.append(2 * depth, ' '); }
  void append_string(std::string_view s) {
    buf_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': buf_ += "\\\""; break;
        case '\\': buf_ += "\\\\"; break;
        case '\n': buf_ += "\\n"; break;
        case '\r': buf_ += "\\r"; break;
        case '\t': buf_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char esc[8];
            std::snprintf(esc, sizeof esc, "\\u%04x", c);
            buf_ += esc;
          } else {
            buf_ += c;
          }
      }
    }
    buf_ += '"';
  }

  std::string buf_;
  std::vector<int> levels_;
  bool pending_value_ = false;
};

void write_vec3(JsonWriter& w, const Vec3& v) {
  double a[3] = {v.x(), v.y(), v.z()};
  w.inline_numbers(a, 3);
}

void write_rotation(JsonWriter& w, const Mat3& m) {
  w.begin_array();
  for (int r = 0; r < 3; ++r) {
    double row[3] = {m(r, 0), m(r, 1), m(r, 2)};
    w.inline_numbers(row, 3);
  }
  w.end_array();
}

void write_transform_fields(JsonWriter& w, const RigidTransform& t) {
  w.key("rotation");
  write_rotation(w, t.rotation);
  w.key("translation");
  write_vec3(w, t.translation);
}

void write_joint(JsonWriter& w, const JointParams& j) {
  w.begin_object();
  w.key("type");
  w.string(j.joint_type == JointType::revolute ? "revolute" : "prismatic");
  w.key("axis_direction");
  write_vec3(w, j.axis_direction);
  w.key("axis_position");
  if (j.axis_position.has_value()) {
    write_vec3(w, *j.axis_position);
  } else {
    w.null();
  }
  w.key("angle_rad");
  w.number(j.angle);
  w.key("distance");
  w.number(j.distance);
  w.end_object();
}

void write_int_vector(JsonWriter& w, const std::vector<int>& v) {
  w.inline_ints(v.data(), v.size());
}

void write_double_vector(JsonWriter& w, const std::vector<double>& v) {
  w.inline_numbers(v.data(), v.size());
}

// ---------------------------------------------------------------------------
// File primitives.
// ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path.string() + ": cannot open file");
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw ParseError(path.string() + ": read failed");
  }
  return text;
}

void spill(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error(path.string() + ": cannot open file for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw std::runtime_error(path.string() + ": write failed");
  }
}

// ---------------------------------------------------------------------------
// Trajectory container format.
// ---------------------------------------------------------------------------

std::string clip(std::string_view s) {
  constexpr std::size_t k_max = 60;
  std::string out(s.substr(0, k_max));
  if (s.size() > k_max) out += "...";
  return out;
}

struct LineCursor {
  std::string_view text;
  std::string path;
  std::size_t pos = 0;
  int line = 0;  // 1-based number of the line most recently returned

  bool at_end() const { return pos >= text.size(); }

  std::string_view next_line() {
    ++line;
    std::size_t start = pos;
    std::size_t nl = text.find('\n', pos);
    std::string_view out;
    if (nl == std::string_view::npos) {
      out = text.substr(start);
      pos = text.size();
    } else {
      out = text.substr(start, nl - start);
      pos = nl + 1;
    }
    if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(path + ":" + std::to_string(line) + ": " + msg);
  }
};

std::string_view skip_spaces(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

// Parses exactly `count` whitespace-separated finite doubles and requires the
// rest of the line to be blank.
void parse_doubles_on_line(std::string_view rest, double* out, int count, const LineCursor& cur,
                           const char* what) {
  for (int k = 0; k < count; ++k) {
    rest = skip_spaces(rest);
    if (rest.empty()) {
      cur.fail(std::string("expected ") + std::to_string(count) + " values on the " + what +
               " line, got " + std::to_string(k));
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
    if (ec != std::errc()) {
      cur.fail(std::string("malformed number in the ") + what + " line: '" +
               clip(rest.substr(0, rest.find_first_of(" \t"))) + "'");
    }
    if (!std::isfinite(v)) {
      cur.fail(std::string("non-finite value in the ") + what + " line");
    }
    out[k] = v;
    rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  }
  if (!skip_spaces(rest).empty()) {
    cur.fail(std::string("trailing content on the ") + what + " line: '" +
             clip(skip_spaces(rest)) + "'");
  }
}

long long parse_count_line(LineCursor& cur, std::string_view keyword) {
  std::string_view line = cur.next_line();
  std::string_view rest = line;
  if (rest.substr(0, keyword.size()) != keyword || rest.size() <= keyword.size() ||
      (rest[keyword.size()] != ' ' && rest[keyword.size()] != '\t')) {
    cur.fail("expected '" + std::string(keyword) + " <count>', got '" + clip(line) + "'");
  }
  rest = skip_spaces(rest.substr(keyword.size()));
  long long v = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (ec != std::errc() || v < 1) {
    cur.fail("expected a positive integer after '" + std::string(keyword) + "', got '" +
             clip(rest) + "'");
  }
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  if (!skip_spaces(rest).empty()) {
    cur.fail("trailing content after the '" + std::string(keyword) + "' count");
  }
  return v;
}

void byteswap_doubles(std::vector<double>& values) {
  for (double& d : values) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    bits = __builtin_bswap64(bits);
    std::memcpy(&d, &bits, 8);
  }
}

}  // namespace

TrajectorySet read_trajectories(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  LineCursor cur{text, path.string()};

  std::string_view magic = cur.next_line();
  if (magic != "AIMT 1") {
    cur.fail("expected 'AIMT 1', got '" + clip(magic) + "'");
  }

  std::string_view enc_line = cur.next_line();
  bool binary = false;
  if (enc_line == "encoding binary") {
    binary = true;
  } else if (enc_line != "encoding text") {
    cur.fail("expected 'encoding text' or 'encoding binary', got '" + clip(enc_line) + "'");
  }

  const long long n_points = parse_count_line(cur, "points");
  const long long n_frames = parse_count_line(cur, "timestamps");
  if (n_frames > (std::numeric_limits<long long>::max() / 24) / n_points) {
    cur.fail("point/timestamp counts overflow the payload size");
  }

  std::string_view times_line = cur.next_line();
  if (times_line.substr(0, 6) != "times " && times_line != "times") {
    cur.fail("expected 'times <t0> ... <tn>', got '" + clip(times_line) + "'");
  }
  std::vector<double> timestamps(static_cast<std::size_t>(n_frames));
  parse_doubles_on_line(times_line.substr(5), timestamps.data(), static_cast<int>(n_frames), cur,
                        "times");

  std::string_view data_line = cur.next_line();
  if (data_line != "data") {
    cur.fail("expected 'data', got '" + clip(data_line) + "'");
  }

  const std::size_t total = static_cast<std::size_t>(n_points * n_frames * 3);
  std::vector<double> values(total);

  if (binary) {
    const std::size_t expected = total * 8;
    const std::size_t available = text.size() - cur.pos;
    if (available < expected) {
      throw ParseError(path.string() + ": binary payload truncated: expected " +
                       std::to_string(expected) + " bytes, got " + std::to_string(available));
    }
    if (available > expected) {
      throw ParseError(path.string() + ": " + std::to_string(available - expected) +
                       " trailing bytes after the binary payload");
    }
    std::memcpy(values.data(), text.data() + cur.pos, expected);
    if constexpr (std::endian::native != std::endian::little) {
      byteswap_doubles(values);
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (!std::isfinite(values[idx])) {
        throw ParseError(path.string() + ": non-finite coordinate for point " +
                         std::to_string(idx / 3 / static_cast<std::size_t>(n_frames)) +
                         " at frame " +
                         std::to_string(idx / 3 % static_cast<std::size_t>(n_frames)));
      }
    }
  } else {
    std::size_t idx = 0;
    for (long long i = 0; i < n_points; ++i) {
      for (long long f = 0; f < n_frames; ++f) {
        if (cur.at_end()) {
          cur.fail("unexpected end of file: expected " + std::to_string(n_points * n_frames) +
                   " data lines, got " + std::to_string(i * n_frames + f));
        }
        parse_doubles_on_line(cur.next_line(), values.data() + idx, 3, cur, "data");
        idx += 3;
      }
    }
    while (!cur.at_end()) {
      std::string_view tail = cur.next_line();
      if (!skip_spaces(tail).empty()) {
        cur.fail("trailing content after the data block: '" + clip(tail) + "'");
      }
    }
  }

  TrajectorySet out;
  out.timestamps = std::move(timestamps);
  out.frames.assign(static_cast<std::size_t>(n_frames),
                    Eigen::Matrix3Xd(3, static_cast<Eigen::Index>(n_points)));
  for (long long i = 0; i < n_points; ++i) {
    for (long long f = 0; f < n_frames; ++f) {
      const double* p = values.data() + (i * n_frames + f) * 3;
      out.frames[static_cast<std::size_t>(f)].col(static_cast<Eigen::Index>(i)) =
          Vec3(p[0], p[1], p[2]);
    }
  }
  try {
    out.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return out;
}

void write_trajectories(const TrajectorySet& trajectories, const std::filesystem::path& path,
                        bool binary) {
  trajectories.validate();
  const long long n_points = trajectories.point_count();
  const long long n_frames = static_cast<long long>(trajectories.frame_count());
  if (n_points < 1) {
    throw std::invalid_argument("write_trajectories: empty trajectory set");
  }

  std::string out;
  out.reserve(static_cast<std::size_t>(n_points * n_frames) * (binary ? 24 : 60) + 256);
  out += "AIMT 1\n";
  out += binary ? "encoding binary\n" : "encoding text\n";
  out += "points " + std::to_string(n_points) + "\n";
  out += "timestamps " + std::to_string(n_frames) + "\n";
  out += "times";
  for (double t : trajectories.timestamps) {
    out += ' ';
    out += fmt_double(t);
  }
  out += "\ndata\n";

  if (binary) {
    for (long long i = 0; i < n_points; ++i) {
      for (long long f = 0; f < n_frames; ++f) {
        double v[3];
        Eigen::Map<Vec3>{v} = trajectories.frames[static_cast<std::size_t>(f)].col(
            static_cast<Eigen::Index>(i));
        if constexpr (std::endian::native != std::endian::little) {
          for (double& d : v) {
            std::uint64_t bits;
            std::memcpy(&bits, &d, 8);
            bits = __builtin_bswap64(bits);
            std::memcpy(&d, &bits, 8);
          }
        }
        out.append(reinterpret_cast<const char*>(v), 24);
      }
    }
  } else {
    for (long long i = 0; i < n_points; ++i) {
      for (long long f = 0; f < n_frames; ++f) {
        const Vec3 p = trajectories.position(static_cast<Eigen::Index>(i),
                                             static_cast<std::size_t>(f));
        out += fmt_double(p.x());
        out += ' ';
        out += fmt_double(p.y());
        out += ' ';
        out += fmt_double(p.z());
        out += '\n';
      }
    }
  }
  spill(path, out);
}

// ---------------------------------------------------------------------------
// JSON reading helpers (parsing uses nlohmann; writing stays canonical).
// ---------------------------------------------------------------------------

namespace {

json parse_json_file(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

const json& field(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) {
    throw ParseError(ctx + ": expected an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(ctx + ": missing field '" + key + "'");
  }
  return *it;
}

const json* optional_field(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) {
    throw ParseError(ctx + ": expected an object");
  }
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& ctx) {
  if (!j.is_number()) {
    throw ParseError(ctx + ": expected a number");
  }
  return j.get<double>();
}

int as_int(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) {
    throw ParseError(ctx + ": expected an integer");
  }
  auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ParseError(ctx + ": integer out of range");
  }
  return static_cast<int>(v);
}

std::uint64_t as_uint64(const json& j, const std::string& ctx) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(j.get<long long>());
  }
  throw ParseError(ctx + ": expected a non-negative integer");
}

bool as_bool(const json& j, const std::string& ctx) {
  if (!j.is_boolean()) {
    throw ParseError(ctx + ": expected a boolean");
  }
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) {
    throw ParseError(ctx + ": expected a string");
  }
  return j.get<std::string>();
}

Vec3 as_vec3(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError(ctx + ": expected an array of 3 numbers");
  }
  return Vec3(as_number(j[0], ctx), as_number(j[1], ctx), as_number(j[2], ctx));
}

Mat3 as_mat3(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError(ctx + ": expected an array of 3 rows");
  }
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    m.row(r) = as_vec3(j[r], ctx + " row " + std::to_string(r)).transpose();
  }
  return m;
}

std::vector<double> as_double_vector(const json& j, const std::string& ctx) {
  if (!j.is_array()) {
    throw ParseError(ctx + ": expected an array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(as_number(e, ctx));
  return out;
}

std::vector<int> as_int_vector(const json& j, const std::string& ctx) {
  if (!j.is_array()) {
    throw ParseError(ctx + ": expected an array of integers");
  }
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(as_int(e, ctx));
  return out;
}

RigidTransform as_transform(const json& j, const std::string& ctx) {
  RigidTransform t;
  t.rotation = as_mat3(field(j, "rotation", ctx), ctx + ".rotation");
  t.translation = as_vec3(field(j, "translation", ctx), ctx + ".translation");
  return t;
}

JointParams as_joint(const json& j, const std::string& ctx) {
  JointParams out;
  const std::string type = as_string(field(j, "type", ctx), ctx + ".type");
  if (type == "revolute") {
    out.joint_type = JointType::revolute;
  } else if (type == "prismatic") {
    out.joint_type = JointType::prismatic;
  } else {
    throw ParseError(ctx + ".type: expected 'revolute' or 'prismatic', got '" + type + "'");
  }
  out.axis_direction = as_vec3(field(j, "axis_direction", ctx), ctx + ".axis_direction");
  const json& pos = field(j, "axis_position", ctx);
  if (!pos.is_null()) {
    out.axis_position = as_vec3(pos, ctx + ".axis_position");
  }
  out.angle = as_number(field(j, "angle_rad", ctx), ctx + ".angle_rad");
  out.distance = as_number(field(j, "distance", ctx), ctx + ".distance");
  return out;
}

void write_ransac_config(JsonWriter& w, const RansacConfig& c) {
  w.begin_object();
  w.key("inlier_threshold");
  w.number(c.inlier_threshold);
  w.key("samples_per_model");
  w.integer(c.samples_per_model);
  w.key("max_models");
  w.integer(c.max_models);
  w.key("min_support");
  w.integer(c.min_support);
  w.key("min_support_fraction");
  w.number(c.min_support_fraction);
  w.key("rng_seed");
  w.uinteger(c.rng_seed);
  w.key("windows");
  w.begin_array();
  for (const Window& win : c.windows) {
    double pair[2] = {win.t_a, win.t_b};
    w.inline_numbers(pair, 2);
  }
  w.end_array();
  w.end_object();
}

RansacConfig as_ransac_config(const json& j, const std::string& ctx) {
  RansacConfig c;
  c.inlier_threshold = as_number(field(j, "inlier_threshold", ctx), ctx + ".inlier_threshold");
  c.samples_per_model = as_int(field(j, "samples_per_model", ctx), ctx + ".samples_per_model");
  c.max_models = as_int(field(j, "max_models", ctx), ctx + ".max_models");
  c.min_support = as_int(field(j, "min_support", ctx), ctx + ".min_support");
  c.min_support_fraction =
      as_number(field(j, "min_support_fraction", ctx), ctx + ".min_support_fraction");
  c.rng_seed = as_uint64(field(j, "rng_seed", ctx), ctx + ".rng_seed");
  const json& wins = field(j, "windows", ctx);
  if (!wins.is_array() || wins.empty()) {
    throw ParseError(ctx + ".windows: expected a non-empty array");
  }
  c.windows.clear();
  for (std::size_t k = 0; k < wins.size(); ++k) {
    const std::string wctx = ctx + ".windows[" + std::to_string(k) + "]";
    if (!wins[k].is_array() || wins[k].size() != 2) {
      throw ParseError(wctx + ": expected [t_a, t_b]");
    }
    c.windows.push_back({as_number(wins[k][0], wctx), as_number(wins[k][1], wctx)});
  }
  return c;
}

void write_sdmd_config(JsonWriter& w, const SdmdConfig& c) {
  w.begin_object();
  w.key("sample_times");
  w.inline_numbers(c.sample_times.data(), c.sample_times.size());
  w.key("inlier_threshold");
  w.number(c.inlier_threshold);
  w.key("static_angle_max");
  w.number(c.static_angle_max);
  w.key("static_translation_max");
  w.number(c.static_translation_max);
  w.key("samples_per_model");
  w.integer(c.samples_per_model);
  w.key("max_models");
  w.integer(c.max_models);
  w.key("min_support");
  w.integer(c.min_support);
  w.key("min_support_fraction");
  w.number(c.min_support_fraction);
  w.key("rng_seed");
  w.uinteger(c.rng_seed);
  w.end_object();
}

SdmdConfig as_sdmd_config(const json& j, const std::string& ctx) {
  SdmdConfig c;
  c.sample_times = as_double_vector(field(j, "sample_times", ctx), ctx + ".sample_times");
  c.inlier_threshold = as_number(field(j, "inlier_threshold", ctx), ctx + ".inlier_threshold");
  c.static_angle_max = as_number(field(j, "static_angle_max", ctx), ctx + ".static_angle_max");
  c.static_translation_max =
      as_number(field(j, "static_translation_max", ctx), ctx + ".static_translation_max");
  c.samples_per_model = as_int(field(j, "samples_per_model", ctx), ctx + ".samples_per_model");
  c.max_models = as_int(field(j, "max_models", ctx), ctx + ".max_models");
  c.min_support = as_int(field(j, "min_support", ctx), ctx + ".min_support");
  c.min_support_fraction =
      as_number(field(j, "min_support_fraction", ctx), ctx + ".min_support_fraction");
  c.rng_seed = as_uint64(field(j, "rng_seed", ctx), ctx + ".rng_seed");
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Analysis results.
// ---------------------------------------------------------------------------

void write_result(const PartMobilityResult& result, const std::filesystem::path& path) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version");
  w.integer(1);

  w.key("config");
  w.begin_object();
  w.key("ransac");
  write_ransac_config(w, result.ransac_config);
  w.key("sdmd");
  if (result.sdmd_config.has_value()) {
    write_sdmd_config(w, *result.sdmd_config);
  } else {
    w.null();
  }
  w.key("revolute_threshold_rad");
  w.number(result.revolute_threshold);
  w.key("normalization");
  w.begin_object();
  w.key("enabled");
  w.boolean(result.normalization.enabled);
  w.key("origin");
  write_vec3(w, result.normalization.origin);
  w.key("scale");
  w.number(result.normalization.scale);
  w.end_object();
  w.end_object();

  w.key("parts");
  w.begin_array();
  for (const PartResult& part : result.parts) {
    w.begin_object();
    w.key("part_id");
    w.integer(part.part_id);
    w.key("member_count");
    w.integer(static_cast<long long>(part.member_ids.size()));
    w.key("member_ids");
    write_int_vector(w, part.member_ids);
    w.key("mean_residual");
    w.number(part.mean_residual);
    w.key("windows");
    w.begin_array();
    for (std::size_t k = 0; k < part.window_transforms.size(); ++k) {
      w.begin_object();
      if (k < result.ransac_config.windows.size()) {
        w.key("t_a");
        w.number(result.ransac_config.windows[k].t_a);
        w.key("t_b");
        w.number(result.ransac_config.windows[k].t_b);
      }
      write_transform_fields(w, part.window_transforms[k]);
      w.end_object();
    }
    w.end_array();
    w.key("joint");
    write_joint(w, part.joint);
    w.end_object();
  }
  w.end_array();

  w.key("static_ids");
  write_int_vector(w, result.static_ids);
  w.key("unassigned_ids");
  write_int_vector(w, result.unassigned_ids);
  w.key("diagnostic");
  w.string(result.diagnostic);
  w.end_object();

  spill(path, std::move(w).take());
}

PartMobilityResult read_result(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  const std::string c = path.string();

  if (as_int(field(j, "schema_version", c), c + ".schema_version") != 1) {
    throw ParseError(c + ": unsupported schema_version");
  }

  PartMobilityResult r;
  const json& cfg = field(j, "config", c);
  r.ransac_config = as_ransac_config(field(cfg, "ransac", c + ".config"), c + ".config.ransac");
  const json& sdmd = field(cfg, "sdmd", c + ".config");
  if (sdmd.is_null()) {
    r.sdmd_config.reset();
  } else {
    r.sdmd_config = as_sdmd_config(sdmd, c + ".config.sdmd");
  }
  r.revolute_threshold = as_number(field(cfg, "revolute_threshold_rad", c + ".config"),
                                   c + ".config.revolute_threshold_rad");
  const json& norm = field(cfg, "normalization", c + ".config");
  r.normalization.enabled =
      as_bool(field(norm, "enabled", c + ".config.normalization"), c + ".config.normalization.enabled");
  r.normalization.origin = as_vec3(field(norm, "origin", c + ".config.normalization"),
                                   c + ".config.normalization.origin");
  r.normalization.scale = as_number(field(norm, "scale", c + ".config.normalization"),
                                    c + ".config.normalization.scale");

  const json& parts = field(j, "parts", c);
  if (!parts.is_array()) {
    throw ParseError(c + ".parts: expected an array");
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::string pctx = c + ".parts[" + std::to_string(k) + "]";
    const json& pj = parts[k];
    PartResult part;
    part.part_id = as_int(field(pj, "part_id", pctx), pctx + ".part_id");
    part.member_ids = as_int_vector(field(pj, "member_ids", pctx), pctx + ".member_ids");
    const int count = as_int(field(pj, "member_count", pctx), pctx + ".member_count");
    if (count != static_cast<int>(part.member_ids.size())) {
      throw ParseError(pctx + ": member_count does not match member_ids");
    }
    part.mean_residual = as_number(field(pj, "mean_residual", pctx), pctx + ".mean_residual");
    const json& wins = field(pj, "windows", pctx);
    if (!wins.is_array()) {
      throw ParseError(pctx + ".windows: expected an array");
    }
    for (std::size_t t = 0; t < wins.size(); ++t) {
      part.window_transforms.push_back(
          as_transform(wins[t], pctx + ".windows[" + std::to_string(t) + "]"));
    }
    part.joint = as_joint(field(pj, "joint", pctx), pctx + ".joint");
    r.parts.push_back(std::move(part));
  }

  r.static_ids = as_int_vector(field(j, "static_ids", c), c + ".static_ids");
  r.unassigned_ids = as_int_vector(field(j, "unassigned_ids", c), c + ".unassigned_ids");
  r.diagnostic = as_string(field(j, "diagnostic", c), c + ".diagnostic");
  return r;
}

// ---------------------------------------------------------------------------
// Ground truth.
// ---------------------------------------------------------------------------

void write_ground_truth(const synth::GroundTruth& truth, const std::filesystem::path& path) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version");
  w.integer(1);
  w.key("scene");
  w.string(truth.scene);
  w.key("noise_sigma");
  w.number(truth.noise_sigma);
  w.key("outlier_fraction");
  w.number(truth.outlier_fraction);
  w.key("rng_seed");
  w.uinteger(truth.rng_seed);
  w.key("timestamps");
  write_double_vector(w, truth.timestamps);
  w.key("labels");
  write_int_vector(w, truth.labels);
  w.key("parts");
  w.begin_array();
  for (const synth::GroundTruthPart& part : truth.parts) {
    w.begin_object();
    w.key("part_id");
    w.integer(part.part_id);
    w.key("joint");
    write_joint(w, part.joint);
    w.key("axis");
    w.begin_object();
    w.key("point");
    write_vec3(w, part.axis.point);
    w.key("direction");
    write_vec3(w, part.axis.direction);
    w.end_object();
    w.key("delta_0_to_1");
    w.begin_object();
    write_transform_fields(w, part.delta_0_to_1);
    w.end_object();
    w.key("transforms");
    w.begin_array();
    for (const RigidTransform& t : part.transforms) {
      w.begin_object();
      write_transform_fields(w, t);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();

  spill(path, std::move(w).take());
}

synth::GroundTruth read_ground_truth(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  const std::string c = path.string();

  if (as_int(field(j, "schema_version", c), c + ".schema_version") != 1) {
    throw ParseError(c + ": unsupported schema_version");
  }

  synth::GroundTruth truth;
  truth.scene = as_string(field(j, "scene", c), c + ".scene");
  truth.noise_sigma = as_number(field(j, "noise_sigma", c), c + ".noise_sigma");
  truth.outlier_fraction = as_number(field(j, "outlier_fraction", c), c + ".outlier_fraction");
  truth.rng_seed = as_uint64(field(j, "rng_seed", c), c + ".rng_seed");
  truth.timestamps = as_double_vector(field(j, "timestamps", c), c + ".timestamps");
  truth.labels = as_int_vector(field(j, "labels", c), c + ".labels");

  const json& parts = field(j, "parts", c);
  if (!parts.is_array()) {
    throw ParseError(c + ".parts: expected an array");
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::string pctx = c + ".parts[" + std::to_string(k) + "]";
    const json& pj = parts[k];
    synth::GroundTruthPart part;
    part.part_id = as_int(field(pj, "part_id", pctx), pctx + ".part_id");
    part.joint = as_joint(field(pj, "joint", pctx), pctx + ".joint");
    const json& axis = field(pj, "axis", pctx);
    part.axis.point = as_vec3(field(axis, "point", pctx + ".axis"), pctx + ".axis.point");
    part.axis.direction =
        as_vec3(field(axis, "direction", pctx + ".axis"), pctx + ".axis.direction");
    part.delta_0_to_1 = as_transform(field(pj, "delta_0_to_1", pctx), pctx + ".delta_0_to_1");
    const json& transforms = field(pj, "transforms", pctx);
    if (!transforms.is_array()) {
      throw ParseError(pctx + ".transforms: expected an array");
    }
    for (std::size_t t = 0; t < transforms.size(); ++t) {
      part.transforms.push_back(
          as_transform(transforms[t], pctx + ".transforms[" + std::to_string(t) + "]"));
    }
    truth.parts.push_back(std::move(part));
  }
  return truth;
}

// ---------------------------------------------------------------------------
// Scene specs.
// ---------------------------------------------------------------------------

namespace {

synth::PrimitiveSpec as_primitive(const json& j, const std::string& ctx) {
  synth::PrimitiveSpec prim;
  const std::string kind = as_string(field(j, "kind", ctx), ctx + ".kind");
  if (kind == "box") {
    prim.kind = synth::PrimitiveKind::box;
    prim.center = as_vec3(field(j, "center", ctx), ctx + ".center");
    prim.extent = as_vec3(field(j, "extent", ctx), ctx + ".extent");
  } else if (kind == "cylinder") {
    prim.kind = synth::PrimitiveKind::cylinder;
    prim.center = as_vec3(field(j, "center", ctx), ctx + ".center");
    prim.axis = as_vec3(field(j, "axis", ctx), ctx + ".axis");
    const double radius = as_number(field(j, "radius", ctx), ctx + ".radius");
    const double height = as_number(field(j, "height", ctx), ctx + ".height");
    prim.extent = Vec3(radius, radius, height);
  } else {
    throw ParseError(ctx + ".kind: expected 'box' or 'cylinder', got '" + kind + "'");
  }
  return prim;
}

synth::GeometrySpec as_geometry(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(ctx + ": expected a non-empty array of primitives");
  }
  synth::GeometrySpec geo;
  for (std::size_t k = 0; k < j.size(); ++k) {
    geo.primitives.push_back(as_primitive(j[k], ctx + "[" + std::to_string(k) + "]"));
  }
  return geo;
}

}  // namespace

synth::SceneSpec read_scene_spec(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  const std::string c = path.string();

  synth::SceneSpec spec;
  spec.name = as_string(field(j, "name", c), c + ".name");

  const json& base = field(j, "base", c);
  spec.base_point_count = as_int(field(base, "point_count", c + ".base"), c + ".base.point_count");
  spec.base_geometry = as_geometry(field(base, "geometry", c + ".base"), c + ".base.geometry");

  const json& parts = field(j, "parts", c);
  if (!parts.is_array()) {
    throw ParseError(c + ".parts: expected an array");
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::string pctx = c + ".parts[" + std::to_string(k) + "]";
    const json& pj = parts[k];
    synth::PartSpec part;
    part.point_count = as_int(field(pj, "point_count", pctx), pctx + ".point_count");
    part.geometry = as_geometry(field(pj, "geometry", pctx), pctx + ".geometry");
    const std::string type = as_string(field(pj, "joint_type", pctx), pctx + ".joint_type");
    if (type == "revolute") {
      part.joint_type = JointType::revolute;
    } else if (type == "prismatic") {
      part.joint_type = JointType::prismatic;
    } else {
      throw ParseError(pctx + ".joint_type: expected 'revolute' or 'prismatic', got '" + type +
                       "'");
    }
    const json& axis = field(pj, "axis", pctx);
    part.axis.point = as_vec3(field(axis, "point", pctx + ".axis"), pctx + ".axis.point");
    part.axis.direction =
        as_vec3(field(axis, "direction", pctx + ".axis"), pctx + ".axis.direction");
    const json& range = field(pj, "motion_range", pctx);
    if (!range.is_array() || range.size() != 2) {
      throw ParseError(pctx + ".motion_range: expected [start, end]");
    }
    part.motion_start = as_number(range[0], pctx + ".motion_range");
    part.motion_end = as_number(range[1], pctx + ".motion_range");
    if (const json* profile = optional_field(pj, "motion_profile", pctx)) {
      const std::string p = as_string(*profile, pctx + ".motion_profile");
      if (p == "linear") {
        part.motion_profile = synth::MotionProfile::linear;
      } else if (p == "ease") {
        part.motion_profile = synth::MotionProfile::ease;
      } else {
        throw ParseError(pctx + ".motion_profile: expected 'linear' or 'ease', got '" + p + "'");
      }
    }
    spec.parts.push_back(std::move(part));
  }

  const json* frames = optional_field(j, "frames", c);
  const json* timestamps = optional_field(j, "timestamps", c);
  if (frames != nullptr && timestamps != nullptr) {
    throw ParseError(c + ": give either 'frames' or 'timestamps', not both");
  }
  if (frames != nullptr) {
    const int n = as_int(*frames, c + ".frames");
    if (n < 2) {
      throw ParseError(c + ".frames: expected at least 2");
    }
    spec.timestamps = uniform_timestamps(static_cast<std::size_t>(n));
  } else if (timestamps != nullptr) {
    spec.timestamps = as_double_vector(*timestamps, c + ".timestamps");
  }

  if (const json* v = optional_field(j, "noise_sigma", c)) {
    spec.noise_sigma = as_number(*v, c + ".noise_sigma");
  }
  if (const json* v = optional_field(j, "outlier_fraction", c)) {
    spec.outlier_fraction = as_number(*v, c + ".outlier_fraction");
  }
  if (const json* v = optional_field(j, "rng_seed", c)) {
    spec.rng_seed = as_uint64(*v, c + ".rng_seed");
  }

  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(c + ": " + e.what());
  }
  return spec;
}

}  // namespace aim::io
