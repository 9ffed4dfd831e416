// Sparse-representation classification: sparse-code the subsampled
// measurement against a library of labeled exemplar frames restricted to
// the measured pixels, then pick the class whose entries explain the
// measurement with the smallest residual. Includes the
// rapid-classification-after-first-contact protocol.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "acts/clock.hpp"
#include "acts/io.hpp"
#include "acts/omp.hpp"
#include "acts/sampling.hpp"
#include "acts/types.hpp"

namespace acts {

struct SrcLibrary {
  int rows = 0;
  int cols = 0;
  std::vector<std::string> class_labels;
  std::vector<std::uint32_t> entry_class;  // class id per column
  Eigen::MatrixXd entries;                 // N x E, unit-norm exemplar columns

  int class_count() const { return int(class_labels.size()); }
  int entry_count() const { return int(entry_class.size()); }

  SrcLibraryFile to_file() const {
    SrcLibraryFile f;
    f.rows = rows;
    f.cols = cols;
    f.class_labels = class_labels;
    f.entry_class = entry_class;
    f.entry_values.resize(std::size_t(entry_count()));
    for (int e = 0; e < entry_count(); ++e) {
      f.entry_values[std::size_t(e)].resize(std::size_t(rows) * cols);
      for (Eigen::Index i = 0; i < entries.rows(); ++i)
        f.entry_values[std::size_t(e)][std::size_t(i)] = float(entries(i, e));
    }
    return f;
  }

  static SrcLibrary from_file(const SrcLibraryFile& f) {
    SrcLibrary lib;
    lib.rows = f.rows;
    lib.cols = f.cols;
    lib.class_labels = f.class_labels;
    lib.entry_class = f.entry_class;
    lib.entries.resize(std::size_t(f.rows) * f.cols, Eigen::Index(f.entry_class.size()));
    for (std::size_t e = 0; e < f.entry_values.size(); ++e)
      for (std::size_t i = 0; i < f.entry_values[e].size(); ++i)
        lib.entries(Eigen::Index(i), Eigen::Index(e)) = double(f.entry_values[e][i]);
    return lib;
  }
};

// Selects, per class, the frames_per_class frames with the highest total
// pressure among those at or above the class's pressure quantile, stored
// unit-normalized.
inline SrcLibrary build_src_library(
    const std::vector<std::pair<std::string, std::vector<TactileFrame>>>& labeled_streams,
    int frames_per_class, double pressure_quantile = 0.0) {
  if (frames_per_class < 1)
    throw validation_error("build_src_library: frames_per_class must be >= 1");
  if (!(pressure_quantile >= 0.0 && pressure_quantile < 1.0))
    throw validation_error("build_src_library: quantile must be in [0, 1)");
  if (labeled_streams.empty())
    throw validation_error("build_src_library: no classes given");

  SrcLibrary lib;
  lib.rows = labeled_streams.front().second.empty()
                 ? 0
                 : labeled_streams.front().second.front().rows;
  lib.cols = labeled_streams.front().second.empty()
                 ? 0
                 : labeled_streams.front().second.front().cols;

  std::vector<Eigen::VectorXd> columns;
  for (std::size_t c = 0; c < labeled_streams.size(); ++c) {
    const auto& [label, frames] = labeled_streams[c];
    lib.class_labels.push_back(label);

    std::vector<double> totals(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (frames[i].rows != lib.rows || frames[i].cols != lib.cols)
        throw validation_error("build_src_library: mixed frame dimensions");
      totals[i] = frames[i].total();
    }

    // Nearest-rank quantile over frame totals gates eligibility.
    std::vector<double> sorted = totals;
    std::sort(sorted.begin(), sorted.end());
    double gate = sorted.empty()
                      ? 0.0
                      : sorted[std::size_t(std::max<std::ptrdiff_t>(
                            0, std::ptrdiff_t(std::ceil(pressure_quantile * double(sorted.size()))) - 1))];
    if (pressure_quantile == 0.0) gate = -1.0;

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < frames.size(); ++i)
      if (totals[i] >= gate) eligible.push_back(i);
    if (int(eligible.size()) < frames_per_class)
      throw validation_error("build_src_library: class '" + label +
                             "' has insufficient frames above the quantile");

    std::stable_sort(eligible.begin(), eligible.end(),
                     [&](std::size_t a, std::size_t b) { return totals[a] > totals[b]; });
    for (int pick = 0; pick < frames_per_class; ++pick) {
      const TactileFrame& f = frames[eligible[std::size_t(pick)]];
      Eigen::VectorXd v(std::size_t(lib.rows) * lib.cols);
      for (std::size_t i = 0; i < f.values.size(); ++i) v[Eigen::Index(i)] = double(f.values[i]);
      double norm = v.norm();
      if (norm <= 0.0)
        throw validation_error("build_src_library: class '" + label + "' selected a zero frame");
      columns.push_back(v / norm);
      lib.entry_class.push_back(std::uint32_t(c));
    }
  }

  lib.entries.resize(std::size_t(lib.rows) * lib.cols, Eigen::Index(columns.size()));
  for (std::size_t e = 0; e < columns.size(); ++e) lib.entries.col(Eigen::Index(e)) = columns[e];
  return lib;
}

struct SrcResult {
  int class_id = -1;  // -1 means no contact
  std::vector<double> class_residuals;
  bool no_contact = false;
};

inline int src_default_sparsity(int m) { return std::max(1, int(std::ceil(0.25 * m))); }

// Classic SRC: one global sparse code over all exemplars, per-class
// residual from the code restricted to that class's columns.
inline SrcResult src_classify(const MeasurementSet& meas, const SrcLibrary& lib,
                              int sparsity = -1, double contact_thr = 0.0) {
  meas.validate();
  if (meas.measurements.empty()) throw validation_error("src_classify: empty measurements");
  if (meas.rows != lib.rows || meas.cols != lib.cols)
    throw validation_error("src_classify: measurement/library dimension mismatch");
  if (lib.entry_count() < 1) throw validation_error("src_classify: empty library");

  const int m = int(meas.measurements.size());
  Eigen::VectorXd y(m);
  Eigen::MatrixXd a(m, lib.entry_count());
  for (int i = 0; i < m; ++i) {
    const Measurement& mm = meas.measurements[std::size_t(i)];
    Eigen::Index at = Eigen::Index(mm.pixel.row) * lib.cols + mm.pixel.col;
    y[i] = double(mm.value);
    a.row(i) = lib.entries.row(at);
  }

  SrcResult result;
  result.class_residuals.assign(std::size_t(lib.class_count()), 0.0);

  if (y.norm() < contact_thr * std::sqrt(double(m))) {
    result.no_contact = true;
    for (int c = 0; c < lib.class_count(); ++c)
      result.class_residuals[std::size_t(c)] = y.norm();
    return result;
  }

  int s = sparsity > 0 ? sparsity : src_default_sparsity(m);
  s = std::min<int>(s, std::min<int>(m, lib.entry_count()));
  SparseCode code = omp(LinearOperator(a), y, s);

  int best = 0;
  double best_res = std::numeric_limits<double>::infinity();
  for (int c = 0; c < lib.class_count(); ++c) {
    Eigen::VectorXd approx = Eigen::VectorXd::Zero(m);
    for (const SparseCode::Entry& e : code.entries)
      if (int(lib.entry_class[std::size_t(e.atom_index)]) == c)
        approx += e.coefficient * a.col(e.atom_index);
    double res = (y - approx).norm();
    result.class_residuals[std::size_t(c)] = res;
    if (res < best_res) {  // ties keep the lowest class index
      best_res = res;
      best = c;
    }
  }
  result.class_id = best;
  return result;
}

struct RapidClassifyResult {
  SrcResult src;
  std::uint64_t first_contact_us = 0;
  std::uint32_t classified_frame = 0;  // frame index whose set was classified
  int complete_frames_in_window = 0;   // frames fully inside [contact, contact+window]
};

// Samples frames continuously under the measurement clock; after the
// first above-threshold read, classifies the last frame fully acquired
// within window_ms of that contact (falling back to the frame containing
// the contact when the window is shorter than one frame).
inline RapidClassifyResult rapid_classify(const FrameSource& source, const SrcLibrary& lib,
                                          const SamplingConfig& cfg, double window_ms,
                                          double contact_thr,
                                          double sample_rate_hz = 55936.0,
                                          int sparsity = -1) {
  if (!(window_ms > 0.0)) throw validation_error("rapid_classify: window must be > 0");
  MeasurementClock clock(sample_rate_hz);
  const std::uint64_t window_us = std::uint64_t(std::llround(window_ms * 1000.0));

  struct FrameRecord {
    MeasurementSet set;
    std::uint64_t start_us, finish_us;
  };
  std::vector<FrameRecord> records;

  bool contact = false;
  std::uint64_t t_contact = 0;
  std::uint32_t frame_index = 0;
  while (true) {
    std::uint64_t start = clock.now_us();
    if (!contact && start > source.duration_us())
      throw validation_error("rapid_classify: no contact within stream duration");
    MeasurementSet set = sample_frame(source, cfg, frame_index, clock);
    std::uint64_t finish = clock.now_us();
    if (!contact) {
      for (const Measurement& m : set.measurements)
        if (m.value > contact_thr) {
          contact = true;
          t_contact = m.t_us;
          break;
        }
    }
    records.push_back({std::move(set), start, finish});
    ++frame_index;
    if (contact && finish > t_contact + window_us) break;
  }

  // Last frame fully inside the window.
  const FrameRecord* chosen = nullptr;
  int in_window = 0;
  for (const FrameRecord& r : records)
    if (r.start_us >= t_contact && r.finish_us <= t_contact + window_us) {
      chosen = &r;
      ++in_window;
    }
  if (!chosen) {
    for (const FrameRecord& r : records)
      if (r.start_us <= t_contact && t_contact < r.finish_us) chosen = &r;
    if (!chosen) chosen = &records.back();
  }

  RapidClassifyResult result;
  result.src = src_classify(chosen->set, lib, sparsity, 0.0);
  result.first_contact_us = t_contact;
  result.classified_frame = chosen->set.frame_index;
  result.complete_frames_in_window = in_window;
  return result;
}

}  // namespace acts
