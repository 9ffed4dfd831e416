// Shared benchmark fixtures: the built-in phantom object set, pose
// libraries for classification runs, and synthetic sparse-code frames for
// reconstruction sweeps. Used by the bench CLI command and the
// acceptance suite so both exercise identical data.
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "acts/classify.hpp"
#include "acts/dictionary.hpp"
#include "acts/reconstruction.hpp"
#include "acts/replay.hpp"
#include "acts/rng.hpp"
#include "acts/sampling.hpp"
#include "acts/simulator.hpp"

namespace acts {

inline Phantom make_phantom(Phantom::Shape shape, double scale, double row, double col,
                            double peak = 100.0, double softness = 1.0) {
  Phantom ph;
  ph.shape = shape;
  ph.scale = scale;
  ph.center_row = row;
  ph.center_col = col;
  ph.peak_pressure = peak;
  ph.edge_softness = softness;
  return ph;
}

// Ten distinct synthetic objects, centered on a 32x32 sensor.
inline std::vector<std::pair<std::string, Phantom>> default_phantom_classes() {
  return {
      {"disk3", make_phantom(Phantom::Shape::Disk, 3, 15.5, 15.5)},
      {"disk6", make_phantom(Phantom::Shape::Disk, 6, 15.5, 15.5)},
      {"square5", make_phantom(Phantom::Shape::Square, 5, 15.5, 15.5)},
      {"square10", make_phantom(Phantom::Shape::Square, 10, 15.5, 15.5)},
      {"cross8", make_phantom(Phantom::Shape::Cross, 8, 15.5, 15.5)},
      {"ring6", make_phantom(Phantom::Shape::Ring, 6, 15.5, 15.5)},
      {"twodisks4", make_phantom(Phantom::Shape::TwoDisks, 4, 15.5, 15.5)},
      {"line10", make_phantom(Phantom::Shape::Line, 10, 15.5, 15.5)},
      {"ring3", make_phantom(Phantom::Shape::Ring, 3, 15.5, 15.5)},
      {"cross4", make_phantom(Phantom::Shape::Cross, 4, 15.5, 15.5)},
  };
}

// Library with exemplars on the full +-jitter pose lattice per class.
inline SrcLibrary phantom_pose_library(
    const std::vector<std::pair<std::string, Phantom>>& classes, int rows, int cols,
    int jitter = 1) {
  std::vector<std::pair<std::string, std::vector<TactileFrame>>> streams;
  for (const auto& [name, ph] : classes) {
    std::vector<TactileFrame> frames;
    std::uint64_t t = 0;
    for (int dr = -jitter; dr <= jitter; ++dr)
      for (int dc = -jitter; dc <= jitter; ++dc) {
        Phantom moved = ph;
        moved.center_row += dr;
        moved.center_col += dc;
        frames.push_back(render_phantom(moved, rows, cols, t++));
      }
    streams.push_back({name, std::move(frames)});
  }
  int poses = (2 * jitter + 1) * (2 * jitter + 1);
  return build_src_library(streams, poses);
}

// One static frame sampled under the measurement clock.
inline MeasurementSet sample_static_frame(const TactileFrame& frame, Scheme scheme, int m,
                                          std::uint64_t seed = 1,
                                          double sample_rate_hz = 55936.0,
                                          double ns_thr_frac = 0.02,
                                          std::uint32_t frame_index = 0) {
  TactileFrame f = frame;
  f.timestamp_us = 0;
  auto src = replay_source({f});
  SamplingConfig cfg;
  cfg.scheme = scheme;
  cfg.measurements_per_frame = m;
  cfg.ns_thr = ns_thr_frac * double(frame.max_value());
  cfg.seed = seed;
  MeasurementClock clock(sample_rate_hz);
  return sample_frame(*src, cfg, frame_index, clock);
}

// Frames synthesized as dictionary expansions: a few non-overlapping
// patch blocks receive a sparse positive code, the rest stay empty.
// Negative lobes of the atoms are clamped away so the result is a valid
// pressure field.
inline std::vector<TactileFrame> sparse_code_frames(const Dictionary& dict, int rows,
                                                    int cols, int count, int code_sparsity,
                                                    std::uint64_t seed,
                                                    double active_block_fraction = 0.2,
                                                    double peak = 100.0) {
  const int pr = dict.patch_rows;
  const int pc = dict.patch_cols;
  std::vector<TactileFrame> frames;
  frames.reserve(std::size_t(count));
  SplitMix64 rng(seed, 0x62656e63ull);  // "benc"
  for (int f = 0; f < count; ++f) {
    TactileFrame frame(rows, cols, std::uint64_t(f) * 1000);
    bool any = false;
    for (int br = 0; br + pr <= rows; br += pr)
      for (int bc = 0; bc + pc <= cols; bc += pc) {
        if (rng.uniform() >= active_block_fraction) continue;
        any = true;
        Eigen::VectorXd patch = Eigen::VectorXd::Zero(dict.patch_len());
        for (int s = 0; s < code_sparsity; ++s) {
          int atom = int(rng.below(std::uint64_t(dict.atom_count)));
          double coef = rng.uniform(0.2, 1.0);
          for (int i = 0; i < dict.patch_len(); ++i) patch[i] += coef * dict.atom(atom)[i];
        }
        double mx = patch.maxCoeff();
        if (mx <= 0.0) continue;
        for (int r = 0; r < pr; ++r)
          for (int c = 0; c < pc; ++c) {
            double v = peak * patch[r * pc + c] / mx;
            frame.at(br + r, bc + c) = float(std::max(0.0, v));
          }
      }
    if (!any) {
      // Guarantee at least one active block per frame.
      Eigen::VectorXd patch = Eigen::VectorXd::Zero(dict.patch_len());
      for (int s = 0; s < code_sparsity; ++s) {
        int atom = int(rng.below(std::uint64_t(dict.atom_count)));
        for (int i = 0; i < dict.patch_len(); ++i)
          patch[i] += rng.uniform(0.2, 1.0) * dict.atom(atom)[i];
      }
      double mx = std::max(1e-9, patch.maxCoeff());
      int br = pr * int(rng.below(std::uint64_t(rows / pr)));
      int bc = pc * int(rng.below(std::uint64_t(cols / pc)));
      for (int r = 0; r < pr; ++r)
        for (int c = 0; c < pc; ++c)
          frame.at(br + r, bc + c) = float(std::max(0.0, peak * patch[r * pc + c] / mx));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

// Random blob scenes for dictionary training.
inline std::vector<TactileFrame> blob_training_frames(int count, int rows, int cols,
                                                      std::uint64_t seed) {
  SplitMix64 rng(seed, 0x626c6f62ull);  // "blob"
  std::vector<TactileFrame> frames;
  frames.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) {
    TactileFrame frame(rows, cols, std::uint64_t(i) * 1000);
    int blobs = 1 + int(rng.below(3));
    for (int b = 0; b < blobs; ++b) {
      Phantom::Shape shape =
          std::array<Phantom::Shape, 4>{Phantom::Shape::Disk, Phantom::Shape::Square,
                                        Phantom::Shape::Ring,
                                        Phantom::Shape::Cross}[rng.below(4)];
      Phantom ph = make_phantom(shape, rng.uniform(1.5, 5.0), rng.uniform(4.0, rows - 5.0),
                                rng.uniform(4.0, cols - 5.0), rng.uniform(40.0, 100.0),
                                rng.uniform(0.5, 2.0));
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
          frame.at(r, c) += float(phantom_pressure_at(ph, ph.center_row, ph.center_col, r, c));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace acts
