#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "acts/analytics.hpp"
#include "acts/simulator.hpp"

using namespace acts;

TEST_CASE("support_accuracy: identity, complement, counted example") {
  TactileFrame truth(32, 32);
  for (int i = 0; i < 64; ++i) truth.values[std::size_t(i) * 7 % 1024] = 10.0f;
  CHECK(support_accuracy(truth, truth, 1.0) == 1.0);

  TactileFrame complement(32, 32);
  for (std::size_t i = 0; i < 1024; ++i)
    complement.values[i] = truth.values[i] > 1.0f ? 0.0f : 10.0f;
  CHECK(support_accuracy(complement, truth, 1.0) == 0.0);

  // 60 of 64 true actives matched, 4 false positives
  TactileFrame recon(32, 32);
  int actives = 0;
  for (std::size_t i = 0; i < 1024 && actives < 60; ++i)
    if (truth.values[i] > 1.0f) {
      recon.values[i] = 10.0f;
      ++actives;
    }
  int fp = 0;
  for (std::size_t i = 0; i < 1024 && fp < 4; ++i)
    if (!(truth.values[i] > 1.0f)) {
      recon.values[i] = 10.0f;
      ++fp;
    }
  CHECK(support_accuracy(recon, truth, 1.0) == Catch::Approx((60 + 956) / 1024.0).margin(1e-12));

  TactileFrame small(4, 4);
  CHECK_THROWS_AS(support_accuracy(small, truth, 1.0), validation_error);
}

TEST_CASE("support_accuracy: symmetric and scale-invariant with scaled thr") {
  Phantom ph;
  ph.shape = Phantom::Shape::Cross;
  ph.scale = 6.0;
  ph.center_row = 16.0;
  ph.center_col = 14.0;
  ph.peak_pressure = 5.0;
  ph.edge_softness = 2.0;
  TactileFrame a = render_phantom(ph, 32, 32);
  ph.center_col = 18.0;
  TactileFrame b = render_phantom(ph, 32, 32);

  CHECK(support_accuracy(a, b, 0.5) == support_accuracy(b, a, 0.5));

  TactileFrame a10 = a, b10 = b;
  for (float& v : a10.values) v *= 10.0f;
  for (float& v : b10.values) v *= 10.0f;
  CHECK(support_accuracy(a10, b10, 5.0) == support_accuracy(a, b, 0.5));
}

TEST_CASE("center_of_pressure: point, pair, uniform, undefined") {
  TactileFrame f(8, 8);
  CHECK_FALSE(center_of_pressure(f).has_value());

  f.at(3, 5) = 2.0f;
  auto cop = center_of_pressure(f);
  REQUIRE(cop.has_value());
  CHECK(cop->row == 3.0);
  CHECK(cop->col == 5.0);
  CHECK(cop->total_force == 2.0);

  TactileFrame pair(4, 4);
  pair.at(0, 0) = 1.0f;
  pair.at(0, 2) = 1.0f;
  auto mid = center_of_pressure(pair);
  CHECK(mid->row == 0.0);
  CHECK(mid->col == 1.0);

  TactileFrame uniform(5, 9);
  for (float& v : uniform.values) v = 1.0f;
  auto center = center_of_pressure(uniform);
  CHECK(center->row == Catch::Approx(2.0));
  CHECK(center->col == Catch::Approx(4.0));
}

TEST_CASE("center_of_pressure stays inside the active bounding box") {
  Phantom ph;
  ph.shape = Phantom::Shape::TwoDisks;
  ph.scale = 3.0;
  ph.center_row = 12.0;
  ph.center_col = 16.0;
  ph.peak_pressure = 9.0;
  TactileFrame f = render_phantom(ph, 32, 32);
  auto cop = center_of_pressure(f);
  REQUIRE(cop.has_value());
  int rmin = 32, rmax = -1, cmin = 32, cmax = -1;
  for (int r = 0; r < 32; ++r)
    for (int c = 0; c < 32; ++c)
      if (f.at(r, c) > 0) {
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
      }
  CHECK(cop->row >= rmin);
  CHECK(cop->row <= rmax);
  CHECK(cop->col >= cmin);
  CHECK(cop->col <= cmax);
}

TEST_CASE("ricochet_angle: axis conventions") {
  auto make = [](double r0, double c0, double r1, double c1) {
    return std::vector<CopSample>{{0, r0, c0, 1.0}, {1000, r1, c1, 1.0}};
  };
  CHECK(ricochet_angle(make(5, 2, 5, 9)) == Catch::Approx(0.0).margin(1e-12));
  CHECK(ricochet_angle(make(5, 5, 4, 6)) == Catch::Approx(45.0).margin(1e-12));
  CHECK(ricochet_angle(make(5, 5, 6, 6)) == Catch::Approx(-45.0).margin(1e-12));
  CHECK(ricochet_angle(make(5, 5, 4, 5)) == Catch::Approx(90.0).margin(1e-12));
  CHECK(ricochet_angle(make(5, 9, 5, 2)) == Catch::Approx(180.0).margin(1e-12));

  CHECK_THROWS_AS(ricochet_angle(make(5, 5, 5, 5)), validation_error);
  CHECK_THROWS_AS(ricochet_angle({{0, 1, 1, 1}}), validation_error);
}

TEST_CASE("ricochet_angle: invariant to uniform force scaling") {
  std::vector<CopSample> cops{{0, 10, 10, 5}, {500, 9, 11, 7}, {1000, 8, 13, 3}};
  double base = ricochet_angle(cops);
  for (CopSample& s : cops) s.total_force *= 12.5;
  CHECK(ricochet_angle(cops) == base);
}

TEST_CASE("contact_frame_count and force_smoothness basics") {
  std::vector<TactileFrame> zeros(5, TactileFrame(4, 4));
  CHECK(contact_frame_count(zeros, 0.5) == 0);

  std::vector<TactileFrame> active(3, TactileFrame(4, 4));
  for (TactileFrame& f : active) f.at(1, 1) = 2.0f;
  CHECK(contact_frame_count(active, 0.5) == 3);

  // alternating totals {0, 10, 0, 10} -> mean |delta| = 10
  std::vector<TactileFrame> alt(4, TactileFrame(2, 2));
  alt[1].at(0, 0) = 10.0f;
  alt[3].at(0, 0) = 10.0f;
  CHECK(force_smoothness(alt) == Catch::Approx(10.0));

  std::vector<TactileFrame> constant(6, TactileFrame(2, 2));
  for (TactileFrame& f : constant) f.at(0, 1) = 3.0f;
  CHECK(force_smoothness(constant) == 0.0);

  CHECK_THROWS_AS(force_smoothness({TactileFrame(2, 2)}), validation_error);
}

TEST_CASE("outline: point, block, disk perimeter") {
  TactileFrame point(8, 8);
  point.at(4, 4) = 5.0f;
  auto o = outline(point, 1.0);
  REQUIRE(o.size() == 1);
  CHECK(o[0] == PixelIndex{4, 4});

  // filled 3x3 block: all except the center are boundary; center is interior
  TactileFrame block(8, 8);
  for (int r = 2; r <= 4; ++r)
    for (int c = 2; c <= 4; ++c) block.at(r, c) = 2.0f;
  auto ob = outline(block, 1.0);
  CHECK(ob.size() == 8);
  for (const PixelIndex& p : ob) CHECK(!(p.row == 3 && p.col == 3));

  Phantom ph;
  ph.shape = Phantom::Shape::Disk;
  ph.scale = 5.0;
  ph.center_row = 16.0;
  ph.center_col = 16.0;
  ph.peak_pressure = 4.0;
  TactileFrame disk = render_phantom(ph, 32, 32);
  auto od = outline(disk, 0.5);
  double per = 2.0 * M_PI * 5.0;
  CHECK(double(od.size()) > per * 0.8);
  CHECK(double(od.size()) < per * 1.2);

  // outline is a subset of the active set
  for (const PixelIndex& p : od) CHECK(disk.at(p) > 0.5f);
}
