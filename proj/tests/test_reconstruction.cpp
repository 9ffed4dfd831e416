#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "acts/dictionary.hpp"
#include "acts/reconstruction.hpp"
#include "acts/replay.hpp"
#include "acts/rng.hpp"
#include "acts/sampling.hpp"

using namespace acts;

namespace {

MeasurementSet full_raster_of(const TactileFrame& f) {
  auto src = replay_source({f});
  MeasurementClock clock(55936.0);
  MeasurementSet set = execute_plan(*src, full_raster_plan(f.rows, f.cols), clock);
  set.scheme = Scheme::FullRaster;
  return set;
}

double rms(const TactileFrame& a, const TactileFrame& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    double d = double(a.values[i]) - double(b.values[i]);
    acc += d * d;
  }
  return std::sqrt(acc / double(a.values.size()));
}

}  // namespace

TEST_CASE("patch_grid: 32x32 with 8x8 patches, overlap 4 -> 49 origins") {
  ReconstructionParams params;
  auto grid = patch_grid(32, 32, params);
  REQUIRE(grid.size() == 49);
  std::set<int> rows, cols;
  for (const PixelIndex& p : grid) {
    rows.insert(p.row);
    cols.insert(p.col);
  }
  CHECK(rows == std::set<int>{0, 4, 8, 12, 16, 20, 24});
  CHECK(cols == std::set<int>{0, 4, 8, 12, 16, 20, 24});
}

TEST_CASE("patch_grid: sensor equal to patch yields one origin") {
  ReconstructionParams params;
  auto grid = patch_grid(8, 8, params);
  REQUIRE(grid.size() == 1);
  CHECK(grid[0] == PixelIndex{0, 0});
}

TEST_CASE("patch_grid: 9x9 clamps the final origin") {
  ReconstructionParams params;
  auto grid = patch_grid(9, 9, params);
  REQUIRE(grid.size() == 4);
  std::set<std::pair<int, int>> got;
  for (const PixelIndex& p : grid) got.insert({p.row, p.col});
  CHECK(got == std::set<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  // full coverage
  std::vector<char> covered(81, 0);
  for (const PixelIndex& p : grid)
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) covered[std::size_t(p.row + r) * 9 + (p.col + c)] = 1;
  CHECK(std::count(covered.begin(), covered.end(), 1) == 81);
}

TEST_CASE("reconstruct_frame: complete basis + full raster is near-exact") {
  Dictionary dct = overcomplete_dct(8, 8, 64);
  ReconstructionParams params;
  params.sparsity_fraction = 1.0;

  SplitMix64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    TactileFrame f(32, 32);
    for (float& v : f.values) v = float(rng.uniform(0.0, 1.0));
    TactileFrame recon = reconstruct_frame(full_raster_of(f), dct, params);
    CHECK(rms(recon, f) <= 1e-6);
  }
}

TEST_CASE("reconstruct_frame: zero pressure reconstructs to zero") {
  Dictionary dct = overcomplete_dct(8, 8, 64);
  TactileFrame zero(32, 32);
  ReconstructionParams params;
  TactileFrame recon = reconstruct_frame(full_raster_of(zero), dct, params);
  for (float v : recon.values) CHECK(v == 0.0f);
}

TEST_CASE("reconstruct_frame: locality of empty regions") {
  // Measurements only in the top-left quadrant; patches fully inside the
  // untouched bottom-right region must come out exactly zero.
  Dictionary dct = overcomplete_dct(8, 8, 64);
  TactileFrame f(32, 32);
  f.at(4, 4) = 10.0f;
  f.at(5, 5) = 12.0f;

  MeasurementSet sparse;
  sparse.rows = 32;
  sparse.cols = 32;
  sparse.scheme = Scheme::Random;
  int t = 0;
  for (int r = 0; r < 12; ++r)
    for (int c = 0; c < 12; c += 3)
      sparse.measurements.push_back({{r, c}, f.at(r, c), std::uint64_t(t++)});

  ReconstructionParams params;
  TactileFrame recon = reconstruct_frame(sparse, dct, params);
  for (int r = 20; r < 32; ++r)
    for (int c = 20; c < 32; ++c) CHECK(recon.at(r, c) == 0.0f);
}

TEST_CASE("reconstruct_frame: measured-pixel fidelity with complete basis") {
  Dictionary dct = overcomplete_dct(8, 8, 64);
  ReconstructionParams params;
  params.sparsity_fraction = 1.0;
  params.nonneg_clamp = false;

  SplitMix64 rng(77);
  TactileFrame f(16, 16);
  for (float& v : f.values) v = float(rng.uniform(0.0, 1.0));

  auto src = replay_source({f});
  MeasurementClock clock(55936.0);
  MeasurementSet set = execute_plan(*src, random_plan(16, 16, 64, 5, 0), clock);

  TactileFrame recon = reconstruct_frame(set, dct, params);
  for (const Measurement& m : set.measurements)
    CHECK(std::abs(recon.at(m.pixel) - m.value) < 2e-5);
}

TEST_CASE("reconstruct_frame: deterministic, validates inputs") {
  Dictionary dct = overcomplete_dct(8, 8, 64);
  ReconstructionParams params;
  SplitMix64 rng(3);
  TactileFrame f(16, 16);
  for (float& v : f.values) v = float(rng.uniform(0.0, 100.0));
  MeasurementSet set = full_raster_of(f);

  TactileFrame r1 = reconstruct_frame(set, dct, params);
  TactileFrame r2 = reconstruct_frame(set, dct, params);
  CHECK(r1.values == r2.values);

  MeasurementSet empty;
  empty.rows = 16;
  empty.cols = 16;
  CHECK_THROWS_AS(reconstruct_frame(empty, dct, params), validation_error);

  ReconstructionParams bad;
  bad.patch_rows = 4;  // mismatch with the 8x8 dictionary
  bad.patch_cols = 4;
  bad.overlap = 2;
  CHECK_THROWS_AS(reconstruct_frame(set, dct, bad), validation_error);
}

TEST_CASE("interpolate_baseline: constant measurements give a constant frame") {
  MeasurementSet set;
  set.rows = 8;
  set.cols = 8;
  set.measurements = {{{1, 1}, 4.0f, 0}, {{2, 6}, 4.0f, 1}, {{6, 3}, 4.0f, 2}, {{5, 5}, 4.0f, 3}};
  TactileFrame out = interpolate_baseline(set, 8, 8);
  for (float v : out.values) CHECK(v == Catch::Approx(4.0).margin(1e-9));
}

TEST_CASE("interpolate_baseline: reproduces a plane, including extrapolation") {
  auto plane = [](int r, int c) { return 2.0 * r + 3.0 * c + 7.0; };
  MeasurementSet set;
  set.rows = 16;
  set.cols = 16;
  int t = 0;
  for (auto [r, c] : {std::pair<int, int>{3, 4}, {3, 11}, {10, 4}, {12, 12}, {7, 8}})
    set.measurements.push_back({{r, c}, float(plane(r, c)), std::uint64_t(t++)});

  TactileFrame out = interpolate_baseline(set, 16, 16);
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c)
      CHECK(out.at(r, c) == Catch::Approx(plane(r, c)).margin(1e-6));
}

TEST_CASE("interpolate_baseline: degenerate cases use nearest fill") {
  MeasurementSet one;
  one.rows = 4;
  one.cols = 4;
  one.measurements = {{{2, 2}, 7.0f, 0}};
  TactileFrame out = interpolate_baseline(one, 4, 4);
  for (float v : out.values) CHECK(v == 7.0f);

  // collinear points: nearest fill, not a plane
  MeasurementSet line;
  line.rows = 4;
  line.cols = 4;
  line.measurements = {{{0, 0}, 1.0f, 0}, {{1, 1}, 2.0f, 1}, {{3, 3}, 3.0f, 2}};
  TactileFrame fill = interpolate_baseline(line, 4, 4);
  CHECK(fill.at(0, 0) == 1.0f);
  CHECK(fill.at(3, 3) == 3.0f);
  CHECK(fill.at(1, 0) == 1.0f);  // nearest is (0,0) or (1,1); ties go to first

  MeasurementSet empty;
  empty.rows = 4;
  empty.cols = 4;
  CHECK_THROWS_AS(interpolate_baseline(empty, 4, 4), validation_error);
}

TEST_CASE("interpolate_baseline: exact at measured pixels") {
  SplitMix64 rng(123);
  TactileFrame f(16, 16);
  for (float& v : f.values) v = float(rng.uniform(0.0, 50.0));
  auto src = replay_source({f});
  MeasurementClock clock(55936.0);
  MeasurementSet set = execute_plan(*src, random_plan(16, 16, 40, 9, 0), clock);

  TactileFrame out = interpolate_baseline(set, 16, 16);
  for (const Measurement& m : set.measurements)
    CHECK(out.at(m.pixel) == Catch::Approx(m.value).margin(1e-9));
}
