// Quantitative metrics over frames and frame streams: support accuracy,
// center of pressure, ricochet angle, contact-frame counts, force
// smoothness, and outline extraction.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "acts/types.hpp"

namespace acts {

// Pixel-wise binary agreement after thresholding both frames at thr:
// (true positives + true negatives) / N.
inline double support_accuracy(const TactileFrame& recon, const TactileFrame& truth,
                               double thr) {
  if (recon.rows != truth.rows || recon.cols != truth.cols)
    throw validation_error("support_accuracy: dimension mismatch");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < recon.values.size(); ++i) {
    bool a = recon.values[i] > thr;
    bool b = truth.values[i] > thr;
    if (a == b) ++agree;
  }
  return double(agree) / double(recon.values.size());
}

// Intersection-over-union of the thresholded supports; reported alongside
// support accuracy in metric CSVs. Both supports empty counts as 1.
inline double support_iou(const TactileFrame& recon, const TactileFrame& truth,
                          double thr) {
  if (recon.rows != truth.rows || recon.cols != truth.cols)
    throw validation_error("support_iou: dimension mismatch");
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < recon.values.size(); ++i) {
    bool a = recon.values[i] > thr;
    bool b = truth.values[i] > thr;
    inter += (a && b) ? 1 : 0;
    uni += (a || b) ? 1 : 0;
  }
  return uni == 0 ? 1.0 : double(inter) / double(uni);
}

struct CopSample {
  std::uint64_t t_us = 0;
  double row = 0.0;
  double col = 0.0;
  double total_force = 0.0;
};

// Force-weighted mean pixel coordinate. Undefined (nullopt) at zero total
// force rather than zero-filled.
inline std::optional<CopSample> center_of_pressure(const TactileFrame& frame) {
  double total = 0.0, row_acc = 0.0, col_acc = 0.0;
  for (int r = 0; r < frame.rows; ++r)
    for (int c = 0; c < frame.cols; ++c) {
      double v = frame.at(r, c);
      total += v;
      row_acc += v * r;
      col_acc += v * c;
    }
  if (!(total > 0.0)) return std::nullopt;
  return CopSample{frame.timestamp_us, row_acc / total, col_acc / total, total};
}

// Angle of the total COP displacement (last minus first sample), in
// degrees within (-180, 180], measured counter-clockwise from +col with
// the row axis pointing down.
inline double ricochet_angle(const std::vector<CopSample>& cops) {
  if (cops.size() < 2) throw validation_error("ricochet_angle: needs >= 2 COP samples");
  double drow = cops.back().row - cops.front().row;
  double dcol = cops.back().col - cops.front().col;
  if (drow == 0.0 && dcol == 0.0)
    throw validation_error("ricochet_angle: zero COP displacement");
  double up = drow == 0.0 ? 0.0 : -drow;  // avoid atan2(-0, x<0) = -pi
  return std::atan2(up, dcol) * 180.0 / M_PI;
}

inline int contact_frame_count(const std::vector<TactileFrame>& frames, double thr) {
  int n = 0;
  for (const TactileFrame& f : frames)
    if (f.max_value() > thr) ++n;
  return n;
}

// Mean absolute change of total force between consecutive frames; smaller
// means smoother pressure tracking.
inline double force_smoothness(const std::vector<TactileFrame>& frames) {
  if (frames.size() < 2) throw validation_error("force_smoothness: needs >= 2 frames");
  double acc = 0.0;
  for (std::size_t i = 1; i < frames.size(); ++i)
    acc += std::abs(frames[i].total() - frames[i - 1].total());
  return acc / double(frames.size() - 1);
}

// Boundary pixels of the thresholded support: above thr with at least one
// 4-neighbor at or below thr, or on the sensor border.
inline std::vector<PixelIndex> outline(const TactileFrame& frame, double thr) {
  std::vector<PixelIndex> out;
  for (int r = 0; r < frame.rows; ++r)
    for (int c = 0; c < frame.cols; ++c) {
      if (!(frame.at(r, c) > thr)) continue;
      bool boundary = r == 0 || r == frame.rows - 1 || c == 0 || c == frame.cols - 1;
      if (!boundary) {
        boundary = !(frame.at(r - 1, c) > thr) || !(frame.at(r + 1, c) > thr) ||
                   !(frame.at(r, c - 1) > thr) || !(frame.at(r, c + 1) > thr);
      }
      if (boundary) out.push_back({r, c});
    }
  return out;
}

}  // namespace acts
