// Plain-text scene description files: [sensor], [shape], [motion] and
// [timing] sections of key=value lines, '#' comments. Consumed by the
// CLI and echoed back verbatim-equivalent by serialize_scene.
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "acts/io.hpp"
#include "acts/simulator.hpp"
#include "acts/types.hpp"

namespace acts {

struct SceneSpec {
  int rows = 32;
  int cols = 32;
  Phantom phantom;
  MotionProfile motion;
  std::uint64_t duration_us = 0;  // 0 = derive from motion
  double noise = 0.0;
  std::uint64_t noise_seed = 0;
  std::string mask_file;  // shape=mask only

  std::shared_ptr<SceneSource> make_source() const {
    return scene_source(phantom, motion, rows, cols, duration_us, noise, noise_seed);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline std::map<std::string, std::string> parse_kv_sections(std::istream& is,
                                                            const std::string& what) {
  std::map<std::string, std::string> kv;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw validation_error(what + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    kv[section.empty() ? key : section + "." + key] = value;
  }
  return kv;
}

}  // namespace detail

inline Phantom::Shape shape_from_name(const std::string& name) {
  if (name == "disk") return Phantom::Shape::Disk;
  if (name == "square") return Phantom::Shape::Square;
  if (name == "cross" || name == "x") return Phantom::Shape::Cross;
  if (name == "line") return Phantom::Shape::Line;
  if (name == "ring") return Phantom::Shape::Ring;
  if (name == "twodisks") return Phantom::Shape::TwoDisks;
  if (name == "mask") return Phantom::Shape::Mask;
  throw validation_error("unknown shape: " + name);
}

inline const char* shape_name(Phantom::Shape s) {
  switch (s) {
    case Phantom::Shape::Disk: return "disk";
    case Phantom::Shape::Square: return "square";
    case Phantom::Shape::Cross: return "cross";
    case Phantom::Shape::Line: return "line";
    case Phantom::Shape::Ring: return "ring";
    case Phantom::Shape::TwoDisks: return "twodisks";
    case Phantom::Shape::Mask: return "mask";
  }
  return "disk";
}

inline MotionProfile::Kind motion_from_name(const std::string& name) {
  if (name == "static") return MotionProfile::Kind::StaticIndent;
  if (name == "bounce") return MotionProfile::Kind::Bounce;
  if (name == "ricochet") return MotionProfile::Kind::Ricochet;
  throw validation_error("unknown motion kind: " + name);
}

inline const char* motion_name(MotionProfile::Kind k) {
  switch (k) {
    case MotionProfile::Kind::StaticIndent: return "static";
    case MotionProfile::Kind::Bounce: return "bounce";
    case MotionProfile::Kind::Ricochet: return "ricochet";
  }
  return "static";
}

inline SceneSpec parse_scene(std::istream& is, const std::string& what) {
  auto kv = detail::parse_kv_sections(is, what);
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };
  auto getd = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
  };
  auto getu = [&](const std::string& key, std::uint64_t fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::uint64_t(std::stoull(it->second));
  };

  SceneSpec spec;
  spec.rows = int(getu("sensor.rows", 32));
  spec.cols = int(getu("sensor.cols", 32));
  spec.phantom.shape = shape_from_name(get("shape.kind", "disk"));
  spec.phantom.center_row = getd("shape.center_row", (spec.rows - 1) / 2.0);
  spec.phantom.center_col = getd("shape.center_col", (spec.cols - 1) / 2.0);
  spec.phantom.scale = getd("shape.scale", 3.0);
  spec.phantom.peak_pressure = getd("shape.peak", 1000.0);
  spec.phantom.edge_softness = getd("shape.softness", 0.0);
  spec.mask_file = get("shape.mask_file", "");
  if (spec.phantom.shape == Phantom::Shape::Mask) {
    if (spec.mask_file.empty())
      throw validation_error(what + ": shape=mask requires mask_file");
    std::vector<TactileFrame> frames = read_frame_stream(spec.mask_file);
    if (frames.empty()) throw validation_error(what + ": mask file has no frames");
    const TactileFrame& f = frames.front();
    spec.phantom.mask_rows = f.rows;
    spec.phantom.mask_cols = f.cols;
    float peak = f.max_value();
    spec.phantom.mask.resize(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i)
      spec.phantom.mask[i] = peak > 0 ? f.values[i] / peak : 0.0f;
  }
  spec.motion.kind = motion_from_name(get("motion.kind", "static"));
  spec.motion.t0_us = getu("motion.t0_us", 0);
  spec.motion.contact_us = getu("motion.contact_us", 10000);
  spec.motion.angle_deg = getd("motion.angle_deg", 0.0);
  spec.motion.speed_px_per_ms = getd("motion.speed_px_per_ms", 0.0);
  spec.duration_us = getu("timing.duration_us", 0);
  spec.noise = getd("timing.noise", 0.0);
  spec.noise_seed = getu("timing.noise_seed", 0);
  return spec;
}

inline SceneSpec read_scene_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open scene file " + path);
  return parse_scene(is, path);
}

inline std::string serialize_scene(const SceneSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << "[sensor]\n"
     << "rows=" << spec.rows << "\ncols=" << spec.cols << "\n\n[shape]\n"
     << "kind=" << shape_name(spec.phantom.shape) << "\n"
     << "center_row=" << spec.phantom.center_row << "\n"
     << "center_col=" << spec.phantom.center_col << "\n"
     << "scale=" << spec.phantom.scale << "\n"
     << "peak=" << spec.phantom.peak_pressure << "\n"
     << "softness=" << spec.phantom.edge_softness << "\n";
  if (!spec.mask_file.empty()) os << "mask_file=" << spec.mask_file << "\n";
  os << "\n[motion]\n"
     << "kind=" << motion_name(spec.motion.kind) << "\n"
     << "t0_us=" << spec.motion.t0_us << "\n"
     << "contact_us=" << spec.motion.contact_us << "\n";
  if (spec.motion.kind == MotionProfile::Kind::Ricochet)
    os << "angle_deg=" << spec.motion.angle_deg << "\n"
       << "speed_px_per_ms=" << spec.motion.speed_px_per_ms << "\n";
  os << "\n[timing]\n"
     << "duration_us=" << spec.duration_us << "\n"
     << "noise=" << spec.noise << "\n"
     << "noise_seed=" << spec.noise_seed << "\n";
  return os.str();
}

}  // namespace acts
