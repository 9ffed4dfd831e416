// Core domain types for adaptive compressive tactile subsampling:
// frames, pixel measurements, dictionaries, sparse codes, and the
// pixel-query source abstraction everything else is built on.
#pragma once

#include <cstdint>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace acts {

// Thrown on malformed or unreadable files. Maps to CLI exit code 2.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when inputs violate a documented precondition. Exit code 2.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a numerical routine cannot proceed (non-finite input,
// rank collapse, ...). Exit code 3.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PixelIndex {
  int row = 0;
  int col = 0;

  friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
};

// Dense 2-D pressure grid, row-major, with a stream timestamp.
// Values are ADC counts or normalized pressure; always >= 0.
struct TactileFrame {
  int rows = 0;
  int cols = 0;
  std::vector<float> values;
  std::uint64_t timestamp_us = 0;

  TactileFrame() = default;
  TactileFrame(int r, int c, std::uint64_t t_us = 0)
      : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, 0.0f),
        timestamp_us(t_us) {
    if (r < 1 || c < 1) throw validation_error("TactileFrame: rows/cols must be >= 1");
  }

  std::size_t pixel_count() const { return values.size(); }

  float at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
  float& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
  float at(PixelIndex p) const { return at(p.row, p.col); }
  float& at(PixelIndex p) { return at(p.row, p.col); }

  bool in_bounds(PixelIndex p) const {
    return p.row >= 0 && p.row < rows && p.col >= 0 && p.col < cols;
  }

  float max_value() const {
    float m = 0.0f;
    for (float v : values) m = std::max(m, v);
    return m;
  }

  double total() const {
    double s = 0.0;
    for (float v : values) s += v;
    return s;
  }

  void validate() const {
    if (rows < 1 || cols < 1)
      throw validation_error("TactileFrame: rows/cols must be >= 1");
    if (values.size() != static_cast<std::size_t>(rows) * cols)
      throw validation_error("TactileFrame: value count does not match rows*cols");
    for (float v : values)
      if (!(v >= 0.0f) || !std::isfinite(v))
        throw validation_error("TactileFrame: values must be finite and >= 0");
  }
};

// One single-pixel read: where, what, when.
struct Measurement {
  PixelIndex pixel;
  float value = 0.0f;
  std::uint64_t t_us = 0;
};

enum class Scheme : std::uint8_t {
  Uniform = 0,
  Random = 1,
  Binary = 2,
  FullRaster = 3,
};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Ordered subsampled readings of one tactile frame. Pixel positions are
// the implicit one-hot sensing rows; values are the measurement vector y.
struct MeasurementSet {
  int rows = 0;
  int cols = 0;
  Scheme scheme = Scheme::FullRaster;
  std::uint32_t frame_index = 0;
  std::uint64_t seed = 0;  // meaningful for Random only
  std::vector<Measurement> measurements;

  std::size_t size() const { return measurements.size(); }

  // No duplicate pixel within one set, positions in bounds, time monotone.
  void validate() const {
    if (rows < 1 || cols < 1)
      throw validation_error("MeasurementSet: rows/cols must be >= 1");
    if (measurements.size() > static_cast<std::size_t>(rows) * cols)
      throw validation_error("MeasurementSet: more measurements than pixels");
    std::vector<char> seen(static_cast<std::size_t>(rows) * cols, 0);
    std::uint64_t last_t = 0;
    bool first = true;
    for (const Measurement& m : measurements) {
      if (m.pixel.row < 0 || m.pixel.row >= rows || m.pixel.col < 0 || m.pixel.col >= cols)
        throw validation_error("MeasurementSet: pixel out of bounds");
      char& flag = seen[static_cast<std::size_t>(m.pixel.row) * cols + m.pixel.col];
      if (flag) throw validation_error("MeasurementSet: duplicate pixel");
      flag = 1;
      if (!first && m.t_us < last_t)
        throw validation_error("MeasurementSet: timestamps must be non-decreasing");
      last_t = m.t_us;
      first = false;
    }
  }
};

// K unit-norm patch atoms, column-major in `atoms`: atom k occupies
// atoms[k * patch_len() .. (k+1) * patch_len()), each patch row-major.
// Held in double precision in memory; the .tdl file format stores f32.
struct Dictionary {
  int patch_rows = 0;
  int patch_cols = 0;
  int atom_count = 0;
  std::vector<double> atoms;

  int patch_len() const { return patch_rows * patch_cols; }

  const double* atom(int k) const { return atoms.data() + static_cast<std::size_t>(k) * patch_len(); }
  double* atom(int k) { return atoms.data() + static_cast<std::size_t>(k) * patch_len(); }

  void validate() const {
    if (patch_rows < 1 || patch_cols < 1 || atom_count < 1)
      throw validation_error("Dictionary: empty dims");
    if (atoms.size() != static_cast<std::size_t>(atom_count) * patch_len())
      throw validation_error("Dictionary: atom storage size mismatch");
    for (int k = 0; k < atom_count; ++k) {
      double n2 = 0.0;
      const double* a = atom(k);
      for (int i = 0; i < patch_len(); ++i) n2 += a[i] * a[i];
      if (std::abs(std::sqrt(n2) - 1.0) > 1e-6)
        throw validation_error("Dictionary: atom " + std::to_string(k) + " is not unit norm");
    }
  }
};

// Compact sparse vector: (atom index, coefficient) in selection order.
struct SparseCode {
  struct Entry {
    int atom_index = 0;
    double coefficient = 0.0;
  };
  std::vector<Entry> entries;
  int ambient_dim = 0;

  std::size_t size() const { return entries.size(); }
};

// Time-varying pressure field queried one pixel at a time. read() must be
// a pure function of (pixel, t_us); implementations are shared read-only
// across threads.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual int rows() const = 0;
  virtual int cols() const = 0;
  virtual std::uint64_t duration_us() const = 0;
  virtual float read(PixelIndex p, std::uint64_t t_us) const = 0;
};

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Uniform: return "uniform";
    case Scheme::Random: return "random";
    case Scheme::Binary: return "binary";
    case Scheme::FullRaster: return "raster";
  }
  return "unknown";
}

inline Scheme scheme_from_name(const std::string& name) {
  if (name == "uniform") return Scheme::Uniform;
  if (name == "random") return Scheme::Random;
  if (name == "binary") return Scheme::Binary;
  if (name == "raster" || name == "full" || name == "fullraster") return Scheme::FullRaster;
  throw validation_error("unknown sampling scheme: " + name);
}

}  // namespace acts
