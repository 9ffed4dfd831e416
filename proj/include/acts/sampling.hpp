// Per-frame subsampling: the adaptive binary scheme (recursive spatial
// bisection with neighbor expansion around detected pressure), plus the
// rotating-uniform and seeded-random baselines. All schemes read a
// FrameSource one pixel at a time under the measurement clock, so a
// moving contact is seen mid-frame exactly as a real ADC would see it.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "acts/clock.hpp"
#include "acts/rng.hpp"
#include "acts/types.hpp"

namespace acts {

struct SamplingConfig {
  Scheme scheme = Scheme::Binary;
  int measurements_per_frame = 0;                  // M
  double ns_thr = 0.0;                             // Binary: neighbor-search trigger
  std::uint64_t seed = 0;                          // Random only
  std::uint32_t uniform_phase = 0;                 // Uniform: frame counter offset
  // Neighbor visit order around a hot pixel, as (drow, dcol). The default
  // is E, S, W, N, SE, SW, NW, NE in screen coordinates (row grows down).
  std::vector<std::pair<int, int>> neighbor_order = default_neighbor_order();

  static std::vector<std::pair<int, int>> default_neighbor_order() {
    return {{0, 1}, {1, 0}, {0, -1}, {-1, 0}, {1, 1}, {1, -1}, {-1, -1}, {-1, 1}};
  }
};

// ------------------------------------------------------------------
// Binary order
// ------------------------------------------------------------------

// Deterministic bisection order over a square grid. Starts at the grid
// center, then alternates column-wise and row-wise splits, halving the
// division distance before each column split. Candidate centers falling
// outside the grid are skipped; candidates already emitted still seed the
// next wave so the pattern keeps spreading. Output is a permutation of
// all rows*cols pixels.
inline std::vector<PixelIndex> build_binary_order(int rows, int cols) {
  if (rows != cols) throw validation_error("build_binary_order: grid must be square");
  if (rows < 1) throw validation_error("build_binary_order: side must be >= 1");

  const int side = rows;
  const std::size_t total = std::size_t(side) * side;
  std::vector<PixelIndex> order;
  order.reserve(total);
  std::vector<char> emitted(total, 0);

  auto emit = [&](int r, int c) {
    char& flag = emitted[std::size_t(r) * side + c];
    if (flag) return;
    flag = 1;
    order.push_back({r, c});
  };

  // 0-based center of the 1-based ceil(side/2) convention.
  const int center = (side + 1) / 2 - 1;
  emit(center, center);

  std::vector<PixelIndex> last_centers{{center, center}};
  std::vector<PixelIndex> next_centers;
  std::vector<char> in_next(total, 0);
  int distance = (side + 1) / 2;
  bool row_split = false;  // start with the column-wise split
  int stall_guard = 0;

  while (order.size() < total) {
    next_centers.clear();
    std::fill(in_next.begin(), in_next.end(), 0);
    std::size_t before = order.size();

    if (!row_split) distance = (distance + 1) / 2;
    for (const PixelIndex& p : last_centers) {
      const std::array<PixelIndex, 2> candidates =
          row_split ? std::array<PixelIndex, 2>{{{p.row - distance, p.col},
                                                 {p.row + distance, p.col}}}
                    : std::array<PixelIndex, 2>{{{p.row, p.col - distance},
                                                 {p.row, p.col + distance}}};
      for (const PixelIndex& q : candidates) {
        if (q.row < 0 || q.row >= side || q.col < 0 || q.col >= side) continue;
        char& flag = in_next[std::size_t(q.row) * side + q.col];
        if (!flag) {
          flag = 1;
          next_centers.push_back(q);
        }
        emit(q.row, q.col);
      }
    }

    last_centers.swap(next_centers);
    row_split = !row_split;

    if (order.size() == before) {
      // Emitted-but-revisited centers keep the wave moving; with distance
      // pinned at 1 it must reach every pixel well within this bound.
      if (++stall_guard > 4 * side + 16)
        throw numeric_error("build_binary_order: pattern stalled before covering the grid");
    } else {
      stall_guard = 0;
    }
  }
  return order;
}

// ------------------------------------------------------------------
// Plans for the non-adaptive schemes
// ------------------------------------------------------------------

// Rotating lattice. Stride ~ sqrt(N/M) per axis; the phase offset cycles
// with frame_index so that consecutive frames cover the whole array
// (4 frames for a 4x4 grid at M=4). When the lattice does not fit M
// exactly, it is truncated row-major to exactly M points.
inline std::vector<PixelIndex> uniform_plan(int rows, int cols, int m,
                                            std::uint32_t frame_index) {
  if (rows < 1 || cols < 1) throw validation_error("uniform_plan: bad dims");
  const std::int64_t n = std::int64_t(rows) * cols;
  if (m < 1 || m > n) throw validation_error("uniform_plan: M out of range");

  auto min_phase_count = [&](int s) -> std::int64_t {
    // Fewest lattice points over all phase offsets (worst offset is s-1).
    std::int64_t rmin = rows > s - 1 ? (rows - 1 - (s - 1)) / s + 1 : 0;
    std::int64_t cmin = cols > s - 1 ? (cols - 1 - (s - 1)) / s + 1 : 0;
    return rmin * cmin;
  };

  int stride = int(std::ceil(std::sqrt(double(n) / double(m))));
  if (stride < 1) stride = 1;
  while (stride > 1 && min_phase_count(stride) < m) --stride;

  const std::uint32_t phases = std::uint32_t(stride) * std::uint32_t(stride);
  const std::uint32_t phase = frame_index % phases;
  const int dr = int(phase / std::uint32_t(stride));
  const int dc = int(phase % std::uint32_t(stride));

  std::vector<PixelIndex> plan;
  plan.reserve(std::size_t(m));
  for (int r = dr; r < rows && int(plan.size()) < m; r += stride)
    for (int c = dc; c < cols && int(plan.size()) < m; c += stride)
      plan.push_back({r, c});
  return plan;
}

// M distinct pixels without replacement from a counter-based generator
// keyed by (seed, frame_index): any frame's plan is reproducible without
// generating its predecessors.
inline std::vector<PixelIndex> random_plan(int rows, int cols, int m,
                                           std::uint64_t seed,
                                           std::uint32_t frame_index) {
  if (rows < 1 || cols < 1) throw validation_error("random_plan: bad dims");
  const std::int64_t n = std::int64_t(rows) * cols;
  if (m < 1 || m > n) throw validation_error("random_plan: M out of range");

  SplitMix64 rng(seed, frame_index);
  std::vector<std::uint32_t> pool(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) pool[std::size_t(i)] = std::uint32_t(i);
  std::vector<PixelIndex> plan;
  plan.reserve(std::size_t(m));
  for (int i = 0; i < m; ++i) {
    std::uint64_t j = std::uint64_t(i) + rng.below(std::uint64_t(n - i));
    std::swap(pool[std::size_t(i)], pool[std::size_t(j)]);
    plan.push_back({int(pool[std::size_t(i)] / std::uint32_t(cols)),
                    int(pool[std::size_t(i)] % std::uint32_t(cols))});
  }
  return plan;
}

inline std::vector<PixelIndex> full_raster_plan(int rows, int cols) {
  std::vector<PixelIndex> plan;
  plan.reserve(std::size_t(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) plan.push_back({r, c});
  return plan;
}

// ------------------------------------------------------------------
// Execution against a source
// ------------------------------------------------------------------

// Reads a fixed plan in order, one clock period per read.
inline MeasurementSet execute_plan(const FrameSource& source,
                                   const std::vector<PixelIndex>& plan,
                                   MeasurementClock& clock) {
  MeasurementSet set;
  set.rows = source.rows();
  set.cols = source.cols();
  std::vector<char> seen(std::size_t(set.rows) * set.cols, 0);
  set.measurements.reserve(plan.size());
  for (const PixelIndex& p : plan) {
    if (p.row < 0 || p.row >= set.rows || p.col < 0 || p.col >= set.cols)
      throw validation_error("execute_plan: pixel out of bounds");
    char& flag = seen[std::size_t(p.row) * set.cols + p.col];
    if (flag) throw validation_error("execute_plan: duplicate pixel in plan");
    flag = 1;
    std::uint64_t t = clock.tick();
    set.measurements.push_back({p, source.read(p, t), t});
  }
  return set;
}

// Adaptive binary sampling of one frame (the paper's primary scheme).
// Walks the bisection order; any read above ns_thr triggers a depth-first
// neighbor expansion in neighbor_order, so contact regions are flooded
// before the coarse search resumes. Exactly min(M, rows*cols) reads, no
// pixel read twice.
inline MeasurementSet binary_sample(const FrameSource& source,
                                    const SamplingConfig& cfg,
                                    MeasurementClock& clock) {
  if (cfg.scheme != Scheme::Binary)
    throw validation_error("binary_sample: config scheme must be Binary");
  if (source.rows() != source.cols())
    throw validation_error("binary_sample: grid must be square");
  if (!(cfg.ns_thr >= 0.0)) throw validation_error("binary_sample: ns_thr must be >= 0");
  const int side = source.rows();
  const std::int64_t n = std::int64_t(side) * side;
  if (cfg.measurements_per_frame < 1 || cfg.measurements_per_frame > n)
    throw validation_error("binary_sample: M out of range");

  const std::vector<PixelIndex> order = build_binary_order(side, side);
  const std::size_t budget = std::size_t(cfg.measurements_per_frame);

  MeasurementSet set;
  set.rows = side;
  set.cols = side;
  set.scheme = Scheme::Binary;
  set.measurements.reserve(budget);
  std::vector<char> measured(static_cast<std::size_t>(n), 0);

  auto read_pixel = [&](PixelIndex p) -> float {
    measured[std::size_t(p.row) * side + p.col] = 1;
    std::uint64_t t = clock.tick();
    float v = source.read(p, t);
    set.measurements.push_back({p, v, t});
    return v;
  };

  // Depth-first flood through pixels above the neighbor-search threshold.
  auto expand = [&](auto&& self, PixelIndex p) -> void {
    for (const auto& [drow, dcol] : cfg.neighbor_order) {
      if (set.measurements.size() >= budget) return;
      PixelIndex q{p.row + drow, p.col + dcol};
      if (q.row < 0 || q.row >= side || q.col < 0 || q.col >= side) continue;
      if (measured[std::size_t(q.row) * side + q.col]) continue;
      float v = read_pixel(q);
      if (v > cfg.ns_thr) self(self, q);
    }
  };

  for (const PixelIndex& p : order) {
    if (set.measurements.size() >= budget) break;
    if (measured[std::size_t(p.row) * side + p.col]) continue;
    float v = read_pixel(p);
    if (v > cfg.ns_thr) expand(expand, p);
  }
  return set;
}

// Samples one frame with whatever scheme the config selects.
inline MeasurementSet sample_frame(const FrameSource& source,
                                   const SamplingConfig& cfg,
                                   std::uint32_t frame_index,
                                   MeasurementClock& clock) {
  MeasurementSet set;
  switch (cfg.scheme) {
    case Scheme::Binary:
      set = binary_sample(source, cfg, clock);
      break;
    case Scheme::Uniform:
      set = execute_plan(source,
                         uniform_plan(source.rows(), source.cols(),
                                      cfg.measurements_per_frame,
                                      frame_index + cfg.uniform_phase),
                         clock);
      set.scheme = Scheme::Uniform;
      break;
    case Scheme::Random:
      set = execute_plan(source,
                         random_plan(source.rows(), source.cols(),
                                     cfg.measurements_per_frame, cfg.seed, frame_index),
                         clock);
      set.scheme = Scheme::Random;
      set.seed = cfg.seed;
      break;
    case Scheme::FullRaster:
      set = execute_plan(source, full_raster_plan(source.rows(), source.cols()), clock);
      set.scheme = Scheme::FullRaster;
      break;
  }
  set.frame_index = frame_index;
  return set;
}

}  // namespace acts
