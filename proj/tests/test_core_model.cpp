#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "acts/io.hpp"
#include "acts/replay.hpp"
#include "acts/rng.hpp"
#include "acts/types.hpp"

using namespace acts;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "acts_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TactileFrame random_frame(int rows, int cols, SplitMix64& rng, std::uint64_t t_us) {
  TactileFrame f(rows, cols, t_us);
  for (float& v : f.values) v = float(rng.uniform(0.0, 1000.0));
  return f;
}

}  // namespace

TEST_CASE("tfr round-trip: single 2x2 zero frame stored as u16") {
  auto path = temp_file("zeros.tfr");
  TactileFrame zero(2, 2, 77);
  write_frame_stream(path.string(), {zero});

  // header (15 bytes) + timestamp (8) + 4 u16 zero values (8)
  REQUIRE(std::filesystem::file_size(path) == 15 + 8 + 8);

  auto frames = read_frame_stream(path.string());
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].rows == 2);
  CHECK(frames[0].cols == 2);
  CHECK(frames[0].timestamp_us == 77);
  CHECK(frames[0].values == zero.values);
}

TEST_CASE("tfr round-trip: 100 random 32x32 frames bit-identical") {
  auto path = temp_file("random100.tfr");
  SplitMix64 rng(42);
  std::vector<TactileFrame> frames;
  for (int i = 0; i < 100; ++i) frames.push_back(random_frame(32, 32, rng, 1000ull * i));
  write_frame_stream(path.string(), frames);
  auto back = read_frame_stream(path.string());
  REQUIRE(back.size() == frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    REQUIRE(back[i].values == frames[i].values);  // exact f32 storage
    REQUIRE(back[i].timestamp_us == frames[i].timestamp_us);
  }
}

TEST_CASE("tfr writer rejects mixed dimensions") {
  auto path = temp_file("mixed.tfr");
  std::vector<TactileFrame> frames{TactileFrame(32, 32), TactileFrame(16, 16)};
  CHECK_THROWS_AS(write_frame_stream(path.string(), frames), validation_error);
}

TEST_CASE("tfr reader rejects bad magic and truncation") {
  auto path = temp_file("corrupt.tfr");
  {
    std::ofstream os(path, std::ios::binary);
    os << "XXXXjunkjunkjunk";
  }
  CHECK_THROWS_AS(read_frame_stream(path.string()), io_error);

  // valid header claiming one frame, but payload missing
  {
    TactileFrame f(4, 4);
    write_frame_stream(path.string(), {f});
    auto size = std::filesystem::file_size(path);
    std::filesystem::resize_file(path, size - 5);
  }
  CHECK_THROWS_AS(read_frame_stream(path.string()), io_error);
}

TEST_CASE("tfr empty stream reads back empty") {
  auto path = temp_file("empty.tfr");
  write_frame_stream(path.string(), {});
  CHECK(read_frame_stream(path.string()).empty());
}

TEST_CASE("tdl round-trip") {
  auto path = temp_file("dict.tdl");
  Dictionary d;
  d.patch_rows = 2;
  d.patch_cols = 2;
  d.atom_count = 2;
  d.atoms = {1, 0, 0, 0, 0.5f, 0.5f, 0.5f, 0.5f};
  write_dictionary(path.string(), d);
  Dictionary back = read_dictionary(path.string());
  CHECK(back.patch_rows == 2);
  CHECK(back.atom_count == 2);
  CHECK(back.atoms == d.atoms);
}

TEST_CASE("tms round-trip preserves records") {
  auto path = temp_file("meas.tms");
  MeasurementSet set;
  set.rows = 4;
  set.cols = 4;
  set.scheme = Scheme::Binary;
  set.frame_index = 3;
  set.seed = 99;
  set.measurements = {{{1, 1}, 5.5f, 10}, {{0, 3}, 0.0f, 27}};
  write_measurement_stream(path.string(), {set, set});
  auto back = read_measurement_stream(path.string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].scheme == Scheme::Binary);
  CHECK(back[0].frame_index == 3);
  CHECK(back[0].seed == 99);
  REQUIRE(back[0].measurements.size() == 2);
  CHECK(back[0].measurements[1].pixel == PixelIndex{0, 3});
  CHECK(back[0].measurements[1].t_us == 27);
}

TEST_CASE("measurement set validation") {
  MeasurementSet set;
  set.rows = 2;
  set.cols = 2;
  set.measurements = {{{0, 0}, 1.0f, 5}, {{0, 0}, 2.0f, 6}};
  CHECK_THROWS_AS(set.validate(), validation_error);

  set.measurements = {{{0, 0}, 1.0f, 5}, {{1, 1}, 2.0f, 4}};
  CHECK_THROWS_AS(set.validate(), validation_error);  // time goes backwards
}

TEST_CASE("replay source: zero-order hold semantics") {
  TactileFrame f0(2, 2, 0);
  f0.at(0, 0) = 1.0f;
  TactileFrame f1(2, 2, 1000);
  f1.at(0, 0) = 2.0f;
  auto src = replay_source({f0, f1});

  CHECK(src->read({0, 0}, 0) == 1.0f);
  CHECK(src->read({0, 0}, 999) == 1.0f);   // hold until the next timestamp
  CHECK(src->read({0, 0}, 1000) == 2.0f);  // boundary belongs to the new frame
  CHECK(src->read({0, 0}, 50000) == 2.0f);
  CHECK(src->duration_us() == 1000);
}

TEST_CASE("replay source: single frame covers all t") {
  TactileFrame f(2, 2, 500);
  f.at(1, 1) = 3.0f;
  auto src = replay_source({f});
  CHECK(src->read({1, 1}, 0) == 3.0f);  // before the first timestamp
  CHECK(src->read({1, 1}, 500) == 3.0f);
  CHECK(src->read({1, 1}, 100000) == 3.0f);
}

TEST_CASE("replay source rejects non-monotone timestamps") {
  TactileFrame f0(2, 2, 10);
  TactileFrame f1(2, 2, 10);
  CHECK_THROWS_AS(replay_source({f0, f1}), validation_error);
}

TEST_CASE("frame source determinism: repeated reads agree") {
  SplitMix64 rng(7);
  TactileFrame f0 = random_frame(8, 8, rng, 0);
  TactileFrame f1 = random_frame(8, 8, rng, 777);
  auto src = replay_source({f0, f1});
  float first = src->read({3, 5}, 776);
  for (int i = 0; i < 1000; ++i) REQUIRE(src->read({3, 5}, 776) == first);
}
