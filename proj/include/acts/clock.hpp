// Measurement clock: one single-pixel ADC read per tick. Timestamps are
// exact-rational microseconds, so the k-th read of a stream lands at
// t_start + floor(k * 1e6 / sample_rate) with no cumulative drift, and a
// frame of M reads spans M/sample_rate seconds, matching the frame-rate
// law FPS = sample_rate / M.
#pragma once

#include <cmath>
#include <cstdint>

#include "acts/types.hpp"

namespace acts {

class MeasurementClock {
 public:
  explicit MeasurementClock(double sample_rate_hz, std::uint64_t t_start_us = 0)
      : rate_(sample_rate_hz), t_start_us_(t_start_us) {
    if (!(sample_rate_hz > 0.0))
      throw validation_error("MeasurementClock: sample rate must be > 0");
    rate_int_ = static_cast<std::uint64_t>(sample_rate_hz);
    rate_is_integral_ = (double(rate_int_) == sample_rate_hz) && rate_int_ > 0;
  }

  double sample_rate_hz() const { return rate_; }
  std::uint64_t ticks() const { return ticks_; }

  // Time of the next read, i.e. now.
  std::uint64_t now_us() const { return t_start_us_ + elapsed_us(ticks_); }

  // Records one read: returns its timestamp and advances one period.
  std::uint64_t tick() {
    std::uint64_t t = now_us();
    ++ticks_;
    return t;
  }

  // Elapsed microseconds after k reads, floor(k * 1e6 / rate).
  std::uint64_t elapsed_us(std::uint64_t k) const {
    if (rate_is_integral_) {
      unsigned __int128 num = static_cast<unsigned __int128>(k) * 1000000u;
      return static_cast<std::uint64_t>(num / rate_int_);
    }
    return static_cast<std::uint64_t>(
        std::floor(static_cast<long double>(k) * 1000000.0L / static_cast<long double>(rate_)));
  }

 private:
  double rate_;
  std::uint64_t rate_int_ = 0;
  bool rate_is_integral_ = false;
  std::uint64_t t_start_us_ = 0;
  std::uint64_t ticks_ = 0;
};

// frames per second = sample_rate_hz / M, exactly.
inline double frame_rate(int measurements_per_frame, double sample_rate_hz) {
  if (measurements_per_frame < 1)
    throw validation_error("frame_rate: M must be >= 1");
  if (!(sample_rate_hz > 0.0))
    throw validation_error("frame_rate: sample rate must be > 0");
  return sample_rate_hz / double(measurements_per_frame);
}

}  // namespace acts
