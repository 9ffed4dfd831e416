#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "acts/dictionary.hpp"
#include "acts/rng.hpp"
#include "acts/simulator.hpp"

using namespace acts;

namespace {

Eigen::Map<const Eigen::MatrixXd> as_matrix(const Dictionary& d) {
  return Eigen::Map<const Eigen::MatrixXd>(d.atoms.data(), d.patch_len(), d.atom_count);
}

// Small blob frames for patch harvesting.
std::vector<TactileFrame> blob_frames(int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<TactileFrame> frames;
  for (int i = 0; i < count; ++i) {
    Phantom ph;
    ph.shape = Phantom::Shape::Disk;
    ph.scale = rng.uniform(2.0, 5.0);
    ph.center_row = rng.uniform(6.0, 26.0);
    ph.center_col = rng.uniform(6.0, 26.0);
    ph.peak_pressure = rng.uniform(50.0, 100.0);
    ph.edge_softness = 2.0;
    frames.push_back(render_phantom(ph, 32, 32, std::uint64_t(i) * 1000));
  }
  return frames;
}

}  // namespace

TEST_CASE("extract_patches: all-zero frames yield nothing, flagged") {
  std::vector<TactileFrame> zeros(3, TactileFrame(16, 16));
  PatchSet set = extract_patches(zeros, 8, 8, 10, 15, 0.5, 1);
  CHECK(set.patches.empty());
  CHECK(set.exhausted);
}

TEST_CASE("extract_patches: fully active frame accepts all candidates") {
  TactileFrame f(16, 16);
  for (float& v : f.values) v = 10.0f;
  PatchSet set = extract_patches({f}, 8, 8, 50, 15, 0.5, 2);
  CHECK(set.patches.size() == 50);
  CHECK_FALSE(set.exhausted);
  for (const auto& prov : set.provenance) {
    CHECK(prov.frame_id == 0);
    CHECK(prov.origin.row <= 8);
    CHECK(prov.origin.col <= 8);
  }
}

TEST_CASE("extract_patches: respects the active-pixel filter") {
  // One tight blob; patches far from it must be rejected.
  std::vector<TactileFrame> frames = blob_frames(20, 7);
  PatchSet set = extract_patches(frames, 8, 8, 200, 15, 1.0, 3);
  for (const auto& patch : set.patches) {
    int active = 0;
    for (float v : patch) active += v > 1.0f ? 1 : 0;
    CHECK(active > 15);
  }
  CHECK_THROWS_AS(extract_patches(frames, 40, 40, 5, 0, 0.0, 1), validation_error);
}

TEST_CASE("coherence: analytic cases") {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(2), e2 = Eigen::VectorXd::Zero(2);
  e1[0] = 1.0;
  e2[1] = 1.0;
  CHECK(coherence({e1, e2}) == 0.0);
  CHECK(coherence({e1, e1}) == 1.0);

  Eigen::VectorXd diag(2);
  diag << 1.0, 1.0;  // normalized internally
  CHECK(coherence({e1, diag}) == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(coherence({e1, zero}), validation_error);
  CHECK_THROWS_AS(coherence({e1}), validation_error);
}

TEST_CASE("prune_coherent: analytic cases") {
  auto make_set = [](std::vector<std::vector<float>> patches) {
    PatchSet s;
    s.patch_rows = 1;
    s.patch_cols = 2;
    s.patches = std::move(patches);
    return s;
  };

  // mu_max = 1.0 removes exact duplicates only
  PatchSet dup = make_set({{1, 0}, {1, 0}, {0, 1}});
  PatchSet pruned = prune_coherent(dup, 1.0);
  REQUIRE(pruned.patches.size() == 2);
  CHECK(pruned.patches[0] == std::vector<float>{1, 0});
  CHECK(pruned.patches[1] == std::vector<float>{0, 1});

  // second identical patch removed for any mu_max < 1
  CHECK(prune_coherent(make_set({{2, 0}, {4, 0}}), 0.9).patches.size() == 1);

  // {e1, e2, (e1+e2)/sqrt2} at mu_max = 0.5: third removed (0.7071 > 0.5)
  float inv = float(1.0 / std::sqrt(2.0));
  PatchSet three = make_set({{1, 0}, {0, 1}, {inv, inv}});
  PatchSet kept = prune_coherent(three, 0.5);
  REQUIRE(kept.patches.size() == 2);

  // pairwise coherence of the survivors stays within mu_max
  PatchSet big;
  big.patch_rows = 2;
  big.patch_cols = 2;
  SplitMix64 rng(17);
  for (int i = 0; i < 60; ++i) {
    std::vector<float> p(4);
    for (float& v : p) v = float(rng.uniform(0.0, 1.0));
    big.patches.push_back(p);
  }
  PatchSet filtered = prune_coherent(big, 0.95);
  for (std::size_t i = 0; i < filtered.patches.size(); ++i)
    for (std::size_t j = i + 1; j < filtered.patches.size(); ++j) {
      Eigen::Vector4d a, b;
      for (int t = 0; t < 4; ++t) {
        a[t] = filtered.patches[i][std::size_t(t)];
        b[t] = filtered.patches[j][std::size_t(t)];
      }
      CHECK(std::abs(a.normalized().dot(b.normalized())) <= 0.95 + 1e-9);
    }
}

TEST_CASE("ksvd: constant patch set learns that atom") {
  PatchSet set;
  set.patch_rows = 2;
  set.patch_cols = 2;
  for (int i = 0; i < 10; ++i) set.patches.push_back({0.5f, 0.5f, 0.5f, 0.5f});

  KsvdOptions opts;
  opts.atom_count = 1;
  opts.sparsity = 1;
  opts.iterations = 3;
  std::vector<KsvdLogEntry> log;
  Dictionary d = ksvd_train(set, opts, &log);
  d.validate();
  REQUIRE(d.atom_count == 1);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(d.atoms[std::size_t(i)]) == Catch::Approx(0.5).margin(1e-7));
  CHECK(log.back().mean_squared_residual <= 1e-8);
}

TEST_CASE("ksvd: recovers orthonormal generating atoms from 1-sparse data") {
  // 5 orthonormal atoms in R^16, 400 1-sparse patches.
  const int n = 16, k = 5;
  SplitMix64 rng(99);
  Eigen::MatrixXd gen(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) gen(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gen);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);

  PatchSet set;
  set.patch_rows = 4;
  set.patch_cols = 4;
  for (int i = 0; i < 400; ++i) {
    int atom = int(rng.below(k));
    double coef = rng.uniform(0.5, 3.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    std::vector<float> p(n);
    for (int t = 0; t < n; ++t) p[std::size_t(t)] = float(coef * q(t, atom));
    set.patches.push_back(std::move(p));
  }

  KsvdOptions opts;
  opts.atom_count = k;
  opts.sparsity = 1;
  opts.iterations = 10;
  opts.seed = 5;
  Dictionary d = ksvd_train(set, opts);
  d.validate();

  // Each generating atom matches some learned atom up to sign.
  Eigen::MatrixXd learned(n, k);
  for (int a = 0; a < k; ++a)
    for (int t = 0; t < n; ++t) learned(t, a) = double(d.atom(a)[t]);
  for (int j = 0; j < k; ++j) {
    double best = 0.0;
    for (int a = 0; a < k; ++a)
      best = std::max(best, std::abs(learned.col(a).dot(q.col(j))));
    CHECK(best > 0.99);
  }
}

TEST_CASE("ksvd: training error non-increasing, deterministic") {
  std::vector<TactileFrame> frames = blob_frames(30, 2024);
  PatchSet set = extract_patches(frames, 8, 8, 400, 10, 1.0, 11);
  REQUIRE(set.patches.size() == 400);

  KsvdOptions opts;
  opts.atom_count = 32;
  opts.sparsity = 4;
  opts.iterations = 8;
  opts.seed = 3;

  std::vector<KsvdLogEntry> log;
  Dictionary d1 = ksvd_train(set, opts, &log);
  REQUIRE(log.size() == 8);
  for (std::size_t i = 1; i < log.size(); ++i)
    CHECK(log[i].mean_squared_residual <= log[i - 1].mean_squared_residual + 1e-9);

  Dictionary d2 = ksvd_train(set, opts);
  CHECK(d1.atoms == d2.atoms);  // bit-identical rerun
}

TEST_CASE("ksvd: input validation") {
  PatchSet empty;
  empty.patch_rows = 2;
  empty.patch_cols = 2;
  KsvdOptions opts;
  opts.atom_count = 4;
  opts.sparsity = 1;
  CHECK_THROWS_AS(ksvd_train(empty, opts), validation_error);

  PatchSet one;
  one.patch_rows = 2;
  one.patch_cols = 2;
  one.patches.push_back({1, 0, 0, 0});
  opts.atom_count = 0;
  CHECK_THROWS_AS(ksvd_train(one, opts), validation_error);
}

TEST_CASE("overcomplete_dct: k = side gives the orthonormal DCT basis") {
  Dictionary d = overcomplete_dct(8, 8, 64);
  d.validate();
  auto m = as_matrix(d);
  Eigen::MatrixXd gram = m.transpose() * m;
  CHECK((gram - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-8);

  // first atom is the constant (DC) patch
  for (int i = 0; i < 64; ++i)
    CHECK(d.atoms[std::size_t(i)] == Catch::Approx(1.0 / 8.0).margin(1e-7));
}

TEST_CASE("overcomplete_dct: 8x8 K=100 shape, unit norms, zero-mean atoms") {
  Dictionary d = overcomplete_dct(8, 8, 100);
  d.validate();  // checks unit norms
  CHECK(d.atom_count == 100);
  CHECK(d.patch_len() == 64);
  for (int a = 1; a < d.atom_count; ++a) {
    double sum = 0.0;
    for (int i = 0; i < 64; ++i) sum += double(d.atom(a)[i]);
    CHECK(std::abs(sum) < 1e-5);
  }
  CHECK_THROWS_AS(overcomplete_dct(8, 8, 99), validation_error);
  CHECK_THROWS_AS(overcomplete_dct(8, 8, 36), validation_error);  // k < side
}

TEST_CASE("overcomplete_haar: orthonormal basis at full depth, no shifts") {
  Dictionary d = overcomplete_haar(8, 8, 8, 3);
  d.validate();
  REQUIRE(d.atom_count == 64);
  auto m = as_matrix(d);
  Eigen::MatrixXd gram = m.transpose() * m;
  CHECK((gram - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("overcomplete_haar: shift_step 4 is overcomplete, wavelets zero-sum") {
  Dictionary d = overcomplete_haar(8, 8, 4, 3);
  d.validate();
  CHECK(d.atom_count > 64);

  int dc_count = 0;
  for (int a = 0; a < d.atom_count; ++a) {
    double sum = 0.0;
    bool constant = true;
    for (int i = 0; i < 64; ++i) {
      sum += double(d.atom(a)[i]);
      if (std::abs(double(d.atom(a)[i]) - double(d.atom(a)[0])) > 1e-12) constant = false;
    }
    if (constant)
      ++dc_count;
    else
      CHECK(std::abs(sum) < 1e-9);
  }
  CHECK(dc_count == 1);  // the DC atom survives dedup exactly once
}

TEST_CASE("overcomplete_haar: validation") {
  CHECK_THROWS_AS(overcomplete_haar(6, 6, 2, 1), validation_error);   // not pow2
  CHECK_THROWS_AS(overcomplete_haar(8, 4, 2, 1), validation_error);   // not square
  CHECK_THROWS_AS(overcomplete_haar(8, 8, 2, 4), validation_error);   // level too deep
  CHECK_THROWS_AS(overcomplete_haar(8, 8, 0, 2), validation_error);   // bad shift
}
