// Deterministic synthetic tactile scenes: analytic phantom shapes with
// sub-pixel centers, indentation/bounce/ricochet motion, exposed as
// FrameSources so adaptive samplers experience intra-frame motion.
//
// Screen convention (used by all angle metrics): the row axis grows
// downward and angles are measured counter-clockwise from the +col axis,
// so direction (angle) = (-sin, +cos) in (row, col) components.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "acts/rng.hpp"
#include "acts/types.hpp"

namespace acts {

struct Phantom {
  enum class Shape { Disk, Square, Cross, Line, Ring, TwoDisks, Mask };

  Shape shape = Shape::Disk;
  double center_row = 0.0;
  double center_col = 0.0;
  double scale = 1.0;  // radius for disks, side for squares, half-length for bars
  double peak_pressure = 1.0;
  double edge_softness = 0.0;  // linear falloff width in pixels
  // Mask shapes: per-pixel weights in [0,1], row-major, mask_rows x mask_cols,
  // centered on (center_row, center_col).
  int mask_rows = 0;
  int mask_cols = 0;
  std::vector<float> mask;

  void validate() const {
    if (scale < 0.0) throw validation_error("Phantom: scale must be >= 0");
    if (peak_pressure < 0.0) throw validation_error("Phantom: peak must be >= 0");
    if (edge_softness < 0.0) throw validation_error("Phantom: softness must be >= 0");
    if (shape == Shape::Mask &&
        (mask_rows < 1 || mask_cols < 1 ||
         mask.size() != std::size_t(mask_rows) * mask_cols))
      throw validation_error("Phantom: mask dimensions do not match data");
  }
};

namespace detail {

inline double segment_distance(double pr, double pc, double ar, double ac, double br,
                               double bc) {
  double dr = br - ar, dc = bc - ac;
  double len2 = dr * dr + dc * dc;
  double t = len2 > 0 ? ((pr - ar) * dr + (pc - ac) * dc) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  double er = ar + t * dr - pr, ec = ac + t * dc - pc;
  return std::hypot(er, ec);
}

inline double bar_half_width(double scale) { return std::max(0.6, 0.15 * scale); }

// Signed distance to the phantom boundary (<= 0 inside) at a point given
// relative to the phantom center.
inline double phantom_distance(const Phantom& ph, double dr, double dc) {
  switch (ph.shape) {
    case Phantom::Shape::Disk:
      return std::hypot(dr, dc) - ph.scale;
    case Phantom::Shape::Square:
      return std::max(std::abs(dr), std::abs(dc)) - ph.scale / 2.0;
    case Phantom::Shape::Cross: {
      double half = ph.scale;
      double w = bar_half_width(ph.scale);
      double d1 = segment_distance(dr, dc, -half, -half, half, half);
      double d2 = segment_distance(dr, dc, -half, half, half, -half);
      return std::min(d1, d2) - w;
    }
    case Phantom::Shape::Line:
      return segment_distance(dr, dc, 0.0, -ph.scale, 0.0, ph.scale) -
             bar_half_width(ph.scale);
    case Phantom::Shape::Ring:
      return std::abs(std::hypot(dr, dc) - ph.scale) - bar_half_width(ph.scale);
    case Phantom::Shape::TwoDisks: {
      double off = 1.25 * ph.scale;
      double d1 = std::hypot(dr, dc - off) - ph.scale / 2.0;
      double d2 = std::hypot(dr, dc + off) - ph.scale / 2.0;
      return std::min(d1, d2);
    }
    case Phantom::Shape::Mask:
      return 1.0;  // handled separately
  }
  return 1.0;
}

}  // namespace detail

// Pressure of the phantom at integer pixel (r, c) when its center sits at
// (center_row, center_col). Peak inside the shape, linear falloff over
// edge_softness, zero outside.
inline double phantom_pressure_at(const Phantom& ph, double center_row, double center_col,
                                  int r, int c) {
  if (ph.shape == Phantom::Shape::Mask) {
    int mr = int(std::lround(double(r) - center_row + (ph.mask_rows - 1) / 2.0));
    int mc = int(std::lround(double(c) - center_col + (ph.mask_cols - 1) / 2.0));
    if (mr < 0 || mr >= ph.mask_rows || mc < 0 || mc >= ph.mask_cols) return 0.0;
    return ph.peak_pressure * double(ph.mask[std::size_t(mr) * ph.mask_cols + mc]);
  }
  // A zero-radius disk with no softness degenerates to a point indenter
  // on the nearest pixel.
  if (ph.shape == Phantom::Shape::Disk && ph.scale == 0.0 && ph.edge_softness == 0.0) {
    return (r == std::lround(center_row) && c == std::lround(center_col))
               ? ph.peak_pressure
               : 0.0;
  }
  double d = detail::phantom_distance(ph, double(r) - center_row, double(c) - center_col);
  if (d <= 0.0) return ph.peak_pressure;
  if (ph.edge_softness > 0.0 && d < ph.edge_softness)
    return ph.peak_pressure * (1.0 - d / ph.edge_softness);
  return 0.0;
}

inline TactileFrame render_phantom(const Phantom& ph, int rows, int cols,
                                   std::uint64_t timestamp_us = 0) {
  ph.validate();
  TactileFrame f(rows, cols, timestamp_us);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      f.at(r, c) = float(phantom_pressure_at(ph, ph.center_row, ph.center_col, r, c));
  return f;
}

struct MotionProfile {
  enum class Kind { StaticIndent, Bounce, Ricochet };

  Kind kind = Kind::StaticIndent;
  std::uint64_t t0_us = 0;       // contact onset
  std::uint64_t contact_us = 0;  // contact (or plateau) duration
  double angle_deg = 0.0;        // Ricochet travel direction
  double speed_px_per_ms = 0.0;  // Ricochet speed

  void validate() const {
    if (contact_us == 0) throw validation_error("MotionProfile: contact_us must be > 0");
  }

  // Amplitude scale in [0, 1]. StaticIndent holds a plateau; Bounce and
  // Ricochet follow a raised cosine over the contact window.
  double amplitude(std::uint64_t t_us) const {
    if (t_us < t0_us || t_us > t0_us + contact_us) return 0.0;
    if (kind == Kind::StaticIndent) return 1.0;
    double phase = double(t_us - t0_us) / double(contact_us);
    return 0.5 * (1.0 - std::cos(2.0 * M_PI * phase));
  }

  // Center displacement (drow, dcol) at time t.
  std::pair<double, double> displacement(std::uint64_t t_us) const {
    if (kind != Kind::Ricochet) return {0.0, 0.0};
    double dt_ms =
        double(std::clamp<std::uint64_t>(t_us, t0_us, t0_us + contact_us) - t0_us) / 1000.0;
    double theta = angle_deg * M_PI / 180.0;
    return {-std::sin(theta) * speed_px_per_ms * dt_ms,
            std::cos(theta) * speed_px_per_ms * dt_ms};
  }
};

class SceneSource final : public FrameSource {
 public:
  SceneSource(Phantom phantom, MotionProfile motion, int rows, int cols,
              std::uint64_t duration_us = 0, double noise_amplitude = 0.0,
              std::uint64_t noise_seed = 0)
      : phantom_(std::move(phantom)), motion_(motion), rows_(rows), cols_(cols),
        noise_amplitude_(noise_amplitude), noise_seed_(noise_seed) {
    phantom_.validate();
    motion_.validate();
    if (rows_ < 1 || cols_ < 1) throw validation_error("SceneSource: bad dims");
    duration_us_ = duration_us > 0
                       ? duration_us
                       : motion_.t0_us + motion_.contact_us + 1000;
  }

  int rows() const override { return rows_; }
  int cols() const override { return cols_; }
  std::uint64_t duration_us() const override { return duration_us_; }

  float read(PixelIndex p, std::uint64_t t_us) const override {
    double amp = motion_.amplitude(t_us);
    double v = 0.0;
    if (amp > 0.0) {
      auto [drow, dcol] = motion_.displacement(t_us);
      v = amp * phantom_pressure_at(phantom_, phantom_.center_row + drow,
                                    phantom_.center_col + dcol, p.row, p.col);
    }
    if (noise_amplitude_ > 0.0) {
      // Hash-based noise keeps read() a pure function of (pixel, t).
      std::uint64_t h = mix64(noise_seed_ ^ mix64((std::uint64_t(p.row) << 40) ^
                                                  (std::uint64_t(p.col) << 20) ^ t_us));
      double u = double(h >> 11) * 0x1.0p-53;
      v = std::max(0.0, v + noise_amplitude_ * (2.0 * u - 1.0));
    }
    return float(v);
  }

  const Phantom& phantom() const { return phantom_; }
  const MotionProfile& motion() const { return motion_; }

 private:
  Phantom phantom_;
  MotionProfile motion_;
  int rows_, cols_;
  std::uint64_t duration_us_;
  double noise_amplitude_;
  std::uint64_t noise_seed_;
};

inline std::shared_ptr<SceneSource> scene_source(Phantom phantom, MotionProfile motion,
                                                 int rows, int cols,
                                                 std::uint64_t duration_us = 0,
                                                 double noise_amplitude = 0.0,
                                                 std::uint64_t noise_seed = 0) {
  return std::make_shared<SceneSource>(std::move(phantom), motion, rows, cols,
                                       duration_us, noise_amplitude, noise_seed);
}

// Expected number of frame windows overlapping a contact of the given
// length: contact_us / (M / sample_rate * 1e6).
inline double expected_contact_frames(double contact_us, int m, double sample_rate_hz) {
  if (!(contact_us > 0.0) || m < 1 || !(sample_rate_hz > 0.0))
    throw validation_error("expected_contact_frames: all arguments must be positive");
  return contact_us * sample_rate_hz / (double(m) * 1e6);
}

}  // namespace acts
