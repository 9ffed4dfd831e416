// Minimal CSV emitter for metric tables. Numbers are written at full
// decimal precision so downstream tolerances stay meaningful.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "acts/types.hpp"

namespace acts {

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : os_(path) {
    if (!os_) throw io_error("cannot open " + path + " for writing");
    os_.precision(17);
    write_row_strings(header);
  }

  template <typename... Ts>
  void row(const Ts&... fields) {
    bool first = true;
    ((write_field(fields, first), first = false), ...);
    os_ << '\n';
    if (!os_) throw io_error("CSV write failed");
  }

  void row_vec(const std::vector<std::string>& fields) { write_row_strings(fields); }

 private:
  std::ofstream os_;

  void write_row_strings(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os_ << ',';
      os_ << escape(fields[i]);
    }
    os_ << '\n';
  }

  template <typename T>
  void write_field(const T& v, bool first) {
    if (!first) os_ << ',';
    if constexpr (std::is_convertible_v<T, std::string>) {
      os_ << escape(std::string(v));
    } else {
      os_ << v;
    }
  }

  static std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
    return out;
  }
};

}  // namespace acts
