// Full-frame reconstruction from a MeasurementSet: per-patch sparse
// recovery against the dictionary restricted to measured in-patch
// offsets, averaged over overlapping patches; plus the piecewise-linear
// scattered interpolation control.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "acts/dictionary.hpp"
#include "acts/omp.hpp"
#include "acts/parallel.hpp"
#include "acts/types.hpp"

namespace acts {

struct ReconstructionParams {
  int patch_rows = 8;
  int patch_cols = 8;
  int overlap = 4;
  double sparsity_fraction = 0.25;  // S_p = ceil(fraction * measurements in patch)
  int min_patch_measurements = 1;
  bool nonneg_clamp = true;
  double residual_tol = -1.0;  // forwarded to omp; negative = default

  void validate() const {
    if (patch_rows < 1 || patch_cols < 1)
      throw validation_error("ReconstructionParams: bad patch dims");
    if (overlap < 1 || overlap >= std::min(patch_rows, patch_cols))
      throw validation_error("ReconstructionParams: overlap must be in (0, patch side)");
    if (!(sparsity_fraction > 0.0 && sparsity_fraction <= 1.0))
      throw validation_error("ReconstructionParams: sparsity_fraction must be in (0, 1]");
    if (min_patch_measurements < 0)
      throw validation_error("ReconstructionParams: min_patch_measurements must be >= 0");
  }
};

// Patch origins at stride (patch - overlap) per axis, with the final
// origin clamped so the last patch abuts the border. Every pixel is
// covered by at least one patch.
inline std::vector<PixelIndex> patch_grid(int rows, int cols,
                                          const ReconstructionParams& params) {
  params.validate();
  if (rows < params.patch_rows || cols < params.patch_cols)
    throw validation_error("patch_grid: patch larger than sensor");

  auto axis_origins = [](int extent, int patch, int overlap) {
    std::vector<int> origins;
    int stride = patch - overlap;
    int last = extent - patch;
    for (int r = 0;; r += stride) {
      int o = std::min(r, last);
      origins.push_back(o);
      if (o == last) break;
    }
    return origins;
  };

  std::vector<int> row_origins = axis_origins(rows, params.patch_rows, params.overlap);
  std::vector<int> col_origins = axis_origins(cols, params.patch_cols, params.overlap);
  std::vector<PixelIndex> grid;
  grid.reserve(row_origins.size() * col_origins.size());
  for (int r : row_origins)
    for (int c : col_origins) grid.push_back({r, c});
  return grid;
}

// Patchwise OMP reconstruction. Patches with fewer measurements than
// min_patch_measurements contribute zeros (with weight 1) to the overlap
// average; per-patch sparsity is ceil(sparsity_fraction * m_p) with floor
// 1, capped by the solvable range. Patch solves are independent and may
// run on several threads; accumulation happens in grid order afterwards,
// so the output is identical for any thread count.
inline TactileFrame reconstruct_frame(const MeasurementSet& meas, const Dictionary& dict,
                                      const ReconstructionParams& params,
                                      int threads = 1) {
  params.validate();
  dict.validate();
  meas.validate();
  if (dict.patch_rows != params.patch_rows || dict.patch_cols != params.patch_cols)
    throw validation_error("reconstruct_frame: dictionary patch dims != params");
  if (meas.measurements.empty())
    throw validation_error("reconstruct_frame: empty measurement set");

  const int rows = meas.rows;
  const int cols = meas.cols;
  const int plen = dict.patch_len();

  // Measured values on the grid, NaN elsewhere.
  std::vector<float> value(std::size_t(rows) * cols,
                           std::numeric_limits<float>::quiet_NaN());
  for (const Measurement& m : meas.measurements)
    value[std::size_t(m.pixel.row) * cols + m.pixel.col] = m.value;

  Eigen::Map<const Eigen::MatrixXd> atoms(dict.atoms.data(), plen, dict.atom_count);

  const std::vector<PixelIndex> grid = patch_grid(rows, cols, params);
  std::vector<Eigen::VectorXd> estimates(grid.size());

  parallel_for(int(grid.size()), threads, [&](int g) {
    const PixelIndex& origin = grid[std::size_t(g)];
    std::vector<int> offsets;
    std::vector<double> values;
    for (int r = 0; r < params.patch_rows; ++r)
      for (int c = 0; c < params.patch_cols; ++c) {
        float v = value[std::size_t(origin.row + r) * cols + (origin.col + c)];
        if (!std::isnan(v)) {
          offsets.push_back(r * params.patch_cols + c);
          values.push_back(double(v));
        }
      }

    const int m_p = int(offsets.size());
    Eigen::VectorXd patch = Eigen::VectorXd::Zero(plen);
    if (m_p >= std::max(1, params.min_patch_measurements)) {
      Eigen::MatrixXd restricted(m_p, dict.atom_count);
      for (int i = 0; i < m_p; ++i)
        restricted.row(i) = atoms.row(offsets[std::size_t(i)]);
      Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(values.data(), m_p);

      int sparsity = std::max(1, int(std::ceil(params.sparsity_fraction * m_p)));
      sparsity = std::min<int>(sparsity, std::min<int>(m_p, dict.atom_count));

      SparseCode code = omp(LinearOperator(std::move(restricted)), y,
                            OmpOptions{sparsity, params.residual_tol});
      for (const SparseCode::Entry& e : code.entries)
        patch += e.coefficient * atoms.col(e.atom_index);
    }
    // else: zero contribution, weight still counts.
    estimates[std::size_t(g)] = std::move(patch);
  });

  std::vector<double> accum(std::size_t(rows) * cols, 0.0);
  std::vector<std::uint32_t> weight(std::size_t(rows) * cols, 0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const PixelIndex& origin = grid[g];
    const Eigen::VectorXd& patch = estimates[g];
    for (int r = 0; r < params.patch_rows; ++r)
      for (int c = 0; c < params.patch_cols; ++c) {
        std::size_t at = std::size_t(origin.row + r) * cols + (origin.col + c);
        accum[at] += patch[r * params.patch_cols + c];
        weight[at] += 1;
      }
  }

  TactileFrame out(rows, cols);
  out.timestamp_us = meas.measurements.front().t_us;
  for (std::size_t i = 0; i < accum.size(); ++i) {
    double v = accum[i] / double(weight[i]);
    if (params.nonneg_clamp && v < 0.0) v = 0.0;
    out.values[i] = float(v);
  }
  return out;
}

// ------------------------------------------------------------------
// Linear interpolation baseline
// ------------------------------------------------------------------

namespace detail {

// Bowyer-Watson Delaunay triangulation over integer pixel coordinates.
// All orientation/in-circle predicates are evaluated in integer
// arithmetic (128-bit intermediates), so the mesh is exact and
// deterministic; no epsilon tuning.
class ScatteredInterpolator {
 public:
  ScatteredInterpolator(const MeasurementSet& meas) {
    for (const Measurement& m : meas.measurements) {
      px_.push_back(m.pixel.row);
      py_.push_back(m.pixel.col);
      pv_.push_back(double(m.value));
    }
    const std::size_t n = px_.size();
    if (n == 0) throw validation_error("interpolate_baseline: empty measurement set");

    degenerate_ = n < 3 || all_collinear();
    if (!degenerate_) triangulate();
  }

  double at(int qr, int qc) const {
    if (degenerate_) return nearest_value(qr, qc);

    for (const Tri& t : tris_) {
      // Inclusive point-in-triangle via three orientation tests.
      long long o1 = orient(px_[t.a], py_[t.a], px_[t.b], py_[t.b], qr, qc);
      long long o2 = orient(px_[t.b], py_[t.b], px_[t.c], py_[t.c], qr, qc);
      long long o3 = orient(px_[t.c], py_[t.c], px_[t.a], py_[t.a], qr, qc);
      if (o1 >= 0 && o2 >= 0 && o3 >= 0) return plane_eval(t, qr, qc);
    }
    // Outside the convex hull: extend the plane of the triangle behind
    // the nearest hull edge.
    double best_d = std::numeric_limits<double>::infinity();
    const Tri* best_tri = nullptr;
    for (const HullEdge& e : hull_) {
      double d = segment_dist2(qr, qc, e.a, e.b);
      if (d < best_d) {
        best_d = d;
        best_tri = &tris_[e.tri];
      }
    }
    return plane_eval(*best_tri, qr, qc);
  }

 private:
  struct Tri {
    int a, b, c;
  };
  struct HullEdge {
    int a, b;
    std::size_t tri;
  };

  std::vector<long long> px_, py_;
  std::vector<double> pv_;
  std::vector<Tri> tris_;
  std::vector<HullEdge> hull_;
  bool degenerate_ = false;

  static long long orient(long long ax, long long ay, long long bx, long long by,
                          long long cx, long long cy) {
    __int128 v = __int128(bx - ax) * (cy - ay) - __int128(by - ay) * (cx - ax);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }

  // Strictly-inside-circumcircle test for CCW triangle (a, b, c).
  static bool in_circle(long long ax, long long ay, long long bx, long long by,
                        long long cx, long long cy, long long dx, long long dy) {
    __int128 adx = ax - dx, ady = ay - dy;
    __int128 bdx = bx - dx, bdy = by - dy;
    __int128 cdx = cx - dx, cdy = cy - dy;
    __int128 ad = adx * adx + ady * ady;
    __int128 bd = bdx * bdx + bdy * bdy;
    __int128 cd = cdx * cdx + cdy * cdy;
    __int128 det = adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
                   ad * (bdx * cdy - bdy * cdx);
    return det > 0;
  }

  bool all_collinear() const {
    std::size_t j = 1;
    while (j < px_.size() && px_[j] == px_[0] && py_[j] == py_[0]) ++j;
    if (j >= px_.size()) return true;
    for (std::size_t i = j + 1; i < px_.size(); ++i)
      if (orient(px_[0], py_[0], px_[j], py_[j], px_[i], py_[i]) != 0) return false;
    return true;
  }

  double nearest_value(long long qr, long long qc) const {
    double best = std::numeric_limits<double>::infinity();
    double val = pv_[0];
    for (std::size_t i = 0; i < px_.size(); ++i) {
      double d = double((px_[i] - qr) * (px_[i] - qr) + (py_[i] - qc) * (py_[i] - qc));
      if (d < best) {
        best = d;
        val = pv_[i];
      }
    }
    return val;
  }

  double segment_dist2(double qx, double qy, int ia, int ib) const {
    double ax = double(px_[ia]), ay = double(py_[ia]);
    double bx = double(px_[ib]), by = double(py_[ib]);
    double dx = bx - ax, dy = by - ay;
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((qx - ax) * dx + (qy - ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double ex = ax + t * dx - qx, ey = ay + t * dy - qy;
    return ex * ex + ey * ey;
  }

  double plane_eval(const Tri& t, double qx, double qy) const {
    double ax = double(px_[t.a]), ay = double(py_[t.a]);
    double bx = double(px_[t.b]), by = double(py_[t.b]);
    double cx = double(px_[t.c]), cy = double(py_[t.c]);
    double det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    double l1 = ((bx - qx) * (cy - qy) - (by - qy) * (cx - qx)) / det;
    double l2 = ((cx - qx) * (ay - qy) - (cy - qy) * (ax - qx)) / det;
    double l3 = 1.0 - l1 - l2;
    return l1 * pv_[t.a] + l2 * pv_[t.b] + l3 * pv_[t.c];
  }

  void triangulate() {
    const int n = int(px_.size());
    // Integer super-triangle comfortably containing any sensor grid.
    long long lo_x = *std::min_element(px_.begin(), px_.end());
    long long hi_x = *std::max_element(px_.begin(), px_.end());
    long long lo_y = *std::min_element(py_.begin(), py_.end());
    long long hi_y = *std::max_element(py_.begin(), py_.end());
    long long span = std::max<long long>({hi_x - lo_x, hi_y - lo_y, 1});
    px_.push_back(lo_x - 4 * span);
    py_.push_back(lo_y - 4 * span);
    px_.push_back(lo_x + 8 * span);
    py_.push_back(lo_y - 4 * span);
    px_.push_back(lo_x - 4 * span);
    py_.push_back(lo_y + 8 * span);
    pv_.resize(pv_.size() + 3, 0.0);

    std::vector<Tri> live;
    live.push_back(make_ccw({n, n + 1, n + 2}));

    for (int p = 0; p < n; ++p) {
      std::vector<Tri> bad, good;
      for (const Tri& t : live) {
        if (in_circle(px_[t.a], py_[t.a], px_[t.b], py_[t.b], px_[t.c], py_[t.c],
                      px_[p], py_[p]))
          bad.push_back(t);
        else
          good.push_back(t);
      }
      // Cavity boundary: edges used by exactly one bad triangle.
      std::vector<std::pair<int, int>> edges;
      auto toggle = [&](int a, int b) {
        for (std::size_t i = 0; i < edges.size(); ++i)
          if ((edges[i].first == a && edges[i].second == b) ||
              (edges[i].first == b && edges[i].second == a)) {
            edges.erase(edges.begin() + long(i));
            return;
          }
        edges.emplace_back(a, b);
      };
      for (const Tri& t : bad) {
        toggle(t.a, t.b);
        toggle(t.b, t.c);
        toggle(t.c, t.a);
      }
      live.swap(good);
      for (const auto& [a, b] : edges) live.push_back(make_ccw({a, b, p}));
    }

    for (const Tri& t : live)
      if (t.a < n && t.b < n && t.c < n) tris_.push_back(t);
    if (tris_.empty())
      throw numeric_error("interpolate_baseline: triangulation failed");

    // Hull edges appear in exactly one kept triangle.
    std::vector<std::pair<std::pair<int, int>, std::size_t>> edge_owner;
    std::vector<char> shared;
    for (std::size_t ti = 0; ti < tris_.size(); ++ti) {
      const Tri& t = tris_[ti];
      const std::pair<int, int> es[3] = {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
      for (const auto& e : es) {
        bool found = false;
        for (std::size_t i = 0; i < edge_owner.size(); ++i) {
          auto [a, b] = edge_owner[i].first;
          if ((a == e.first && b == e.second) || (a == e.second && b == e.first)) {
            shared[i] = 1;
            found = true;
            break;
          }
        }
        if (!found) {
          edge_owner.push_back({e, ti});
          shared.push_back(0);
        }
      }
    }
    for (std::size_t i = 0; i < edge_owner.size(); ++i)
      if (!shared[i])
        hull_.push_back({edge_owner[i].first.first, edge_owner[i].first.second,
                         edge_owner[i].second});
  }

  Tri make_ccw(Tri t) const {
    if (orient(px_[t.a], py_[t.a], px_[t.b], py_[t.b], px_[t.c], py_[t.c]) < 0)
      std::swap(t.b, t.c);
    return t;
  }
};

}  // namespace detail

// Piecewise-linear interpolation over a triangulation of the measured
// pixels, linear extrapolation outside the convex hull; with fewer than
// three (or collinear) points, nearest-measured-value fill.
inline TactileFrame interpolate_baseline(const MeasurementSet& meas, int rows, int cols) {
  meas.validate();
  if (meas.measurements.empty())
    throw validation_error("interpolate_baseline: empty measurement set");
  detail::ScatteredInterpolator interp(meas);
  TactileFrame out(rows, cols);
  out.timestamp_us = meas.measurements.front().t_us;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out.at(r, c) = float(interp.at(r, c));
  return out;
}

}  // namespace acts
