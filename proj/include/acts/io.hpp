// Bit-exact binary file formats, little-endian throughout.
//
//   .tfr  frame stream   "TFRM" | u16 version=1 | u16 rows | u16 cols |
//                        u32 frame_count | u8 dtype (0=u16, 1=f32) |
//                        per frame: u64 timestamp_us + rows*cols values
//   .tdl  dictionary     "TDIC" | u16 version=1 | u16 patch_rows |
//                        u16 patch_cols | u32 atom_count |
//                        atoms as f32, row-major per atom
//   .tms  measurements   per frame: "TMSR" | u16 version=1 | u16 rows |
//                        u16 cols | u8 scheme | u32 frame_index |
//                        u64 seed | u32 M | M x (u16 row, u16 col,
//                        f32 value, u64 t_us); blocks concatenated
//   .tsrc SRC library    "TSRC" | u16 version=1 | u16 rows | u16 cols |
//                        u32 class_count | u32 entry_count |
//                        class labels (u16 len + bytes) |
//                        entries: u32 class_id + rows*cols f32
#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "acts/types.hpp"

namespace acts {

namespace detail {

inline void put_bytes(std::ostream& os, const void* p, std::size_t n) {
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

inline void put_u8(std::ostream& os, std::uint8_t v) { put_bytes(os, &v, 1); }

inline void put_u16(std::ostream& os, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>(v >> 8)};
  put_bytes(os, b, 2);
}

inline void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  put_bytes(os, b, 4);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  put_bytes(os, b, 8);
}

inline void put_f32(std::ostream& os, float v) {
  std::uint32_t u;
  std::memcpy(&u, &v, 4);
  put_u32(os, u);
}

inline bool get_bytes(std::istream& is, void* p, std::size_t n) {
  is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(is.gcount()) == n;
}

inline std::uint8_t get_u8(std::istream& is, const char* what) {
  std::uint8_t v;
  if (!get_bytes(is, &v, 1)) throw io_error(std::string("truncated file reading ") + what);
  return v;
}

inline std::uint16_t get_u16(std::istream& is, const char* what) {
  unsigned char b[2];
  if (!get_bytes(is, b, 2)) throw io_error(std::string("truncated file reading ") + what);
  return std::uint16_t(b[0]) | (std::uint16_t(b[1]) << 8);
}

inline std::uint32_t get_u32(std::istream& is, const char* what) {
  unsigned char b[4];
  if (!get_bytes(is, b, 4)) throw io_error(std::string("truncated file reading ") + what);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

inline std::uint64_t get_u64(std::istream& is, const char* what) {
  unsigned char b[8];
  if (!get_bytes(is, b, 8)) throw io_error(std::string("truncated file reading ") + what);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

inline float get_f32(std::istream& is, const char* what) {
  std::uint32_t u = get_u32(is, what);
  float v;
  std::memcpy(&v, &u, 4);
  return v;
}

inline void expect_magic(std::istream& is, const char* magic, const char* path) {
  char got[4];
  if (!get_bytes(is, got, 4) || std::memcmp(got, magic, 4) != 0)
    throw io_error(std::string(path) + ": bad magic, expected " + magic);
}

}  // namespace detail

// -----------------------------------------------------------------------
// .tfr frame streams
// -----------------------------------------------------------------------

// ADC count data (integral values within u16 range) is stored losslessly
// as u16; anything else as f32.
inline std::uint8_t tfr_auto_dtype(const std::vector<TactileFrame>& frames) {
  for (const TactileFrame& f : frames)
    for (float v : f.values)
      if (!(v >= 0.0f && v <= 65535.0f && std::floor(v) == v)) return 1;
  return 0;
}

inline void write_frame_stream(const std::string& path,
                               const std::vector<TactileFrame>& frames,
                               int forced_dtype = -1) {
  int rows = frames.empty() ? 1 : frames.front().rows;
  int cols = frames.empty() ? 1 : frames.front().cols;
  for (const TactileFrame& f : frames) {
    f.validate();
    if (f.rows != rows || f.cols != cols)
      throw validation_error("write_frame_stream: frames must share dimensions");
  }
  if (rows > 0xffff || cols > 0xffff)
    throw validation_error("write_frame_stream: dimensions exceed u16");
  std::uint8_t dtype = forced_dtype >= 0 ? std::uint8_t(forced_dtype) : tfr_auto_dtype(frames);
  if (dtype > 1) throw validation_error("write_frame_stream: dtype must be 0 or 1");

  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open " + path + " for writing");
  detail::put_bytes(os, "TFRM", 4);
  detail::put_u16(os, 1);
  detail::put_u16(os, std::uint16_t(rows));
  detail::put_u16(os, std::uint16_t(cols));
  detail::put_u32(os, std::uint32_t(frames.size()));
  detail::put_u8(os, dtype);
  for (const TactileFrame& f : frames) {
    detail::put_u64(os, f.timestamp_us);
    if (dtype == 0) {
      for (float v : f.values) detail::put_u16(os, std::uint16_t(v));
    } else {
      for (float v : f.values) detail::put_f32(os, v);
    }
  }
  if (!os) throw io_error("write failed: " + path);
}

inline std::vector<TactileFrame> read_frame_stream(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open " + path);
  detail::expect_magic(is, "TFRM", path.c_str());
  std::uint16_t version = detail::get_u16(is, "version");
  if (version != 1) throw io_error(path + ": unsupported version");
  int rows = detail::get_u16(is, "rows");
  int cols = detail::get_u16(is, "cols");
  std::uint32_t count = detail::get_u32(is, "frame_count");
  std::uint8_t dtype = detail::get_u8(is, "dtype");
  if (dtype > 1) throw io_error(path + ": unknown dtype");
  if (count > 0 && (rows < 1 || cols < 1)) throw io_error(path + ": bad dimensions");

  std::vector<TactileFrame> frames;
  frames.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    TactileFrame f(rows, cols);
    f.timestamp_us = detail::get_u64(is, "timestamp");
    for (float& v : f.values)
      v = (dtype == 0) ? float(detail::get_u16(is, "value")) : detail::get_f32(is, "value");
    frames.push_back(std::move(f));
  }
  return frames;
}

// -----------------------------------------------------------------------
// .tdl dictionaries
// -----------------------------------------------------------------------

inline void write_dictionary(const std::string& path, const Dictionary& dict) {
  dict.validate();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open " + path + " for writing");
  detail::put_bytes(os, "TDIC", 4);
  detail::put_u16(os, 1);
  detail::put_u16(os, std::uint16_t(dict.patch_rows));
  detail::put_u16(os, std::uint16_t(dict.patch_cols));
  detail::put_u32(os, std::uint32_t(dict.atom_count));
  for (double v : dict.atoms) detail::put_f32(os, float(v));
  if (!os) throw io_error("write failed: " + path);
}

inline Dictionary read_dictionary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open " + path);
  detail::expect_magic(is, "TDIC", path.c_str());
  if (detail::get_u16(is, "version") != 1) throw io_error(path + ": unsupported version");
  Dictionary d;
  d.patch_rows = detail::get_u16(is, "patch_rows");
  d.patch_cols = detail::get_u16(is, "patch_cols");
  d.atom_count = int(detail::get_u32(is, "atom_count"));
  d.atoms.resize(std::size_t(d.atom_count) * d.patch_len());
  for (double& v : d.atoms) v = double(detail::get_f32(is, "atom"));
  d.validate();
  return d;
}

// -----------------------------------------------------------------------
// .tms measurement streams (concatenated per-frame blocks)
// -----------------------------------------------------------------------

inline void write_measurement_block(std::ostream& os, const MeasurementSet& set) {
  set.validate();
  detail::put_bytes(os, "TMSR", 4);
  detail::put_u16(os, 1);
  detail::put_u16(os, std::uint16_t(set.rows));
  detail::put_u16(os, std::uint16_t(set.cols));
  detail::put_u8(os, std::uint8_t(set.scheme));
  detail::put_u32(os, set.frame_index);
  detail::put_u64(os, set.seed);
  detail::put_u32(os, std::uint32_t(set.measurements.size()));
  for (const Measurement& m : set.measurements) {
    detail::put_u16(os, std::uint16_t(m.pixel.row));
    detail::put_u16(os, std::uint16_t(m.pixel.col));
    detail::put_f32(os, m.value);
    detail::put_u64(os, m.t_us);
  }
}

inline void write_measurement_stream(const std::string& path,
                                     const std::vector<MeasurementSet>& sets) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open " + path + " for writing");
  for (const MeasurementSet& s : sets) write_measurement_block(os, s);
  if (!os) throw io_error("write failed: " + path);
}

inline std::vector<MeasurementSet> read_measurement_stream(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open " + path);
  std::vector<MeasurementSet> sets;
  while (true) {
    char magic[4];
    if (!detail::get_bytes(is, magic, 4)) break;  // clean EOF
    if (std::memcmp(magic, "TMSR", 4) != 0) throw io_error(path + ": bad magic");
    if (detail::get_u16(is, "version") != 1) throw io_error(path + ": unsupported version");
    MeasurementSet s;
    s.rows = detail::get_u16(is, "rows");
    s.cols = detail::get_u16(is, "cols");
    std::uint8_t scheme = detail::get_u8(is, "scheme");
    if (scheme > 3) throw io_error(path + ": unknown scheme");
    s.scheme = Scheme(scheme);
    s.frame_index = detail::get_u32(is, "frame_index");
    s.seed = detail::get_u64(is, "seed");
    std::uint32_t m = detail::get_u32(is, "M");
    s.measurements.resize(m);
    for (Measurement& meas : s.measurements) {
      meas.pixel.row = detail::get_u16(is, "row");
      meas.pixel.col = detail::get_u16(is, "col");
      meas.value = detail::get_f32(is, "value");
      meas.t_us = detail::get_u64(is, "t_us");
    }
    s.validate();
    sets.push_back(std::move(s));
  }
  return sets;
}

// -----------------------------------------------------------------------
// .tsrc classification libraries
// -----------------------------------------------------------------------

struct SrcLibraryFile {
  int rows = 0;
  int cols = 0;
  std::vector<std::string> class_labels;
  std::vector<std::uint32_t> entry_class;        // class id per exemplar
  std::vector<std::vector<float>> entry_values;  // unit-norm, length rows*cols
};

inline void write_src_library(const std::string& path, const SrcLibraryFile& lib) {
  if (lib.entry_class.size() != lib.entry_values.size())
    throw validation_error("src library: entry table size mismatch");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open " + path + " for writing");
  detail::put_bytes(os, "TSRC", 4);
  detail::put_u16(os, 1);
  detail::put_u16(os, std::uint16_t(lib.rows));
  detail::put_u16(os, std::uint16_t(lib.cols));
  detail::put_u32(os, std::uint32_t(lib.class_labels.size()));
  detail::put_u32(os, std::uint32_t(lib.entry_class.size()));
  for (const std::string& label : lib.class_labels) {
    detail::put_u16(os, std::uint16_t(label.size()));
    detail::put_bytes(os, label.data(), label.size());
  }
  for (std::size_t i = 0; i < lib.entry_class.size(); ++i) {
    detail::put_u32(os, lib.entry_class[i]);
    for (float v : lib.entry_values[i]) detail::put_f32(os, v);
  }
  if (!os) throw io_error("write failed: " + path);
}

inline SrcLibraryFile read_src_library(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open " + path);
  detail::expect_magic(is, "TSRC", path.c_str());
  if (detail::get_u16(is, "version") != 1) throw io_error(path + ": unsupported version");
  SrcLibraryFile lib;
  lib.rows = detail::get_u16(is, "rows");
  lib.cols = detail::get_u16(is, "cols");
  std::uint32_t classes = detail::get_u32(is, "class_count");
  std::uint32_t entries = detail::get_u32(is, "entry_count");
  lib.class_labels.resize(classes);
  for (std::string& label : lib.class_labels) {
    std::uint16_t len = detail::get_u16(is, "label length");
    label.resize(len);
    if (!detail::get_bytes(is, label.data(), len)) throw io_error(path + ": truncated label");
  }
  lib.entry_class.resize(entries);
  lib.entry_values.resize(entries);
  std::size_t n = std::size_t(lib.rows) * lib.cols;
  for (std::uint32_t i = 0; i < entries; ++i) {
    lib.entry_class[i] = detail::get_u32(is, "entry class");
    if (lib.entry_class[i] >= classes) throw io_error(path + ": entry class out of range");
    lib.entry_values[i].resize(n);
    for (float& v : lib.entry_values[i]) v = detail::get_f32(is, "entry value");
  }
  return lib;
}

}  // namespace acts
