// Replays a recorded frame stream as a FrameSource with zero-order hold:
// a resistive taxel keeps its value between updates, so read(p, t) returns
// the value of p in the last frame whose timestamp is <= t.
#pragma once

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#include "acts/types.hpp"

namespace acts {

class ReplaySource final : public FrameSource {
 public:
  explicit ReplaySource(std::vector<TactileFrame> frames)
      : frames_(std::move(frames)) {
    if (frames_.empty())
      throw validation_error("replay_source: needs at least one frame");
    const TactileFrame& first = frames_.front();
    for (std::size_t i = 0; i < frames_.size(); ++i) {
      frames_[i].validate();
      if (frames_[i].rows != first.rows || frames_[i].cols != first.cols)
        throw validation_error("replay_source: frames must share dimensions");
      if (i > 0 && frames_[i].timestamp_us <= frames_[i - 1].timestamp_us)
        throw validation_error("replay_source: timestamps must be strictly increasing");
    }
  }

  int rows() const override { return frames_.front().rows; }
  int cols() const override { return frames_.front().cols; }
  std::uint64_t duration_us() const override { return frames_.back().timestamp_us; }

  float read(PixelIndex p, std::uint64_t t_us) const override {
    // Last frame with timestamp <= t; before the first timestamp the
    // first frame applies, after the last the last one holds.
    auto it = std::upper_bound(
        frames_.begin(), frames_.end(), t_us,
        [](std::uint64_t t, const TactileFrame& f) { return t < f.timestamp_us; });
    const TactileFrame& f = (it == frames_.begin()) ? *it : *(it - 1);
    return f.at(p);
  }

  const std::vector<TactileFrame>& frames() const { return frames_; }

 private:
  std::vector<TactileFrame> frames_;
};

enum class Hold { ZeroOrder };

inline std::shared_ptr<FrameSource> replay_source(std::vector<TactileFrame> frames,
                                                  Hold hold = Hold::ZeroOrder) {
  (void)hold;  // ZeroOrder is the only policy
  return std::make_shared<ReplaySource>(std::move(frames));
}

}  // namespace acts
