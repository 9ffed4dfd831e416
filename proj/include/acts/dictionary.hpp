// Tactile patch dictionary learning: patch harvesting from recorded
// streams, coherence-based pruning, K-SVD training, and the analytic
// overcomplete DCT / Haar baselines.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "acts/omp.hpp"
#include "acts/parallel.hpp"
#include "acts/rng.hpp"
#include "acts/types.hpp"

namespace acts {

struct PatchSet {
  struct Provenance {
    int frame_id = 0;
    PixelIndex origin;
  };

  int patch_rows = 0;
  int patch_cols = 0;
  std::vector<std::vector<float>> patches;  // row-major within the patch
  std::vector<Provenance> provenance;
  bool exhausted = false;  // fewer accepted than requested

  std::size_t size() const { return patches.size(); }
  int patch_len() const { return patch_rows * patch_cols; }
};

// Seeded random patch positions from frames whose peak exceeds
// active_thr; a candidate must have strictly more than min_active pixels
// above active_thr to be accepted.
inline PatchSet extract_patches(const std::vector<TactileFrame>& frames,
                                int patch_rows, int patch_cols, int count,
                                int min_active, double active_thr,
                                std::uint64_t seed) {
  if (patch_rows < 1 || patch_cols < 1 || count < 1)
    throw validation_error("extract_patches: bad patch dims or count");
  PatchSet out;
  out.patch_rows = patch_rows;
  out.patch_cols = patch_cols;

  std::vector<int> eligible;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    frames[i].validate();
    if (frames[i].rows < patch_rows || frames[i].cols < patch_cols)
      throw validation_error("extract_patches: patch larger than frame");
    if (frames[i].max_value() > active_thr) eligible.push_back(int(i));
  }
  if (eligible.empty()) {
    out.exhausted = true;
    return out;
  }

  SplitMix64 rng(seed, 0x70617463ull);  // "patc"
  const std::uint64_t max_attempts =
      std::max<std::uint64_t>(10000, 64ull * std::uint64_t(count));
  for (std::uint64_t attempt = 0;
       attempt < max_attempts && int(out.patches.size()) < count; ++attempt) {
    int fi = eligible[std::size_t(rng.below(eligible.size()))];
    const TactileFrame& f = frames[std::size_t(fi)];
    int r0 = int(rng.below(std::uint64_t(f.rows - patch_rows + 1)));
    int c0 = int(rng.below(std::uint64_t(f.cols - patch_cols + 1)));

    std::vector<float> patch(std::size_t(patch_rows) * patch_cols);
    int active = 0;
    for (int r = 0; r < patch_rows; ++r)
      for (int c = 0; c < patch_cols; ++c) {
        float v = f.at(r0 + r, c0 + c);
        patch[std::size_t(r) * patch_cols + c] = v;
        if (v > active_thr) ++active;
      }
    if (active <= min_active) continue;
    out.patches.push_back(std::move(patch));
    out.provenance.push_back({fi, {r0, c0}});
  }
  out.exhausted = int(out.patches.size()) < count;
  return out;
}

// ------------------------------------------------------------------
// Coherence
// ------------------------------------------------------------------

// mu = max |<a_i/|a_i|, a_j/|a_j|>| over distinct pairs.
inline double coherence(const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.size() < 2) throw validation_error("coherence: needs >= 2 vectors");
  std::vector<Eigen::VectorXd> unit;
  unit.reserve(vectors.size());
  for (const Eigen::VectorXd& v : vectors) {
    double n = v.norm();
    if (n <= 0.0) throw validation_error("coherence: zero vector cannot be normalized");
    unit.push_back(v / n);
  }
  double mu = 0.0;
  for (std::size_t i = 0; i < unit.size(); ++i)
    for (std::size_t j = i + 1; j < unit.size(); ++j)
      mu = std::max(mu, std::abs(unit[i].dot(unit[j])));
  return std::min(mu, 1.0);
}

// Greedy pruning in input order: a patch survives iff its normalized
// inner product with every previously kept patch stays <= mu_max.
// Near-exact duplicates (inner product within 1e-9 of 1) are always
// dropped, even at mu_max = 1. Zero patches carry no direction and are
// kept as-is.
inline PatchSet prune_coherent(const PatchSet& in, double mu_max) {
  if (!(mu_max > 0.0 && mu_max <= 1.0))
    throw validation_error("prune_coherent: mu_max must be in (0, 1]");
  PatchSet out;
  out.patch_rows = in.patch_rows;
  out.patch_cols = in.patch_cols;
  out.exhausted = in.exhausted;

  std::vector<Eigen::VectorXd> kept_unit;
  for (std::size_t i = 0; i < in.patches.size(); ++i) {
    Eigen::VectorXd v(in.patch_len());
    for (int j = 0; j < in.patch_len(); ++j) v[j] = in.patches[i][std::size_t(j)];
    double n = v.norm();
    bool keep = true;
    if (n > 0.0) {
      v /= n;
      for (const Eigen::VectorXd& u : kept_unit) {
        double ip = std::abs(u.dot(v));
        if (ip > mu_max || ip >= 1.0 - 1e-9) {
          keep = false;
          break;
        }
      }
    }
    if (keep) {
      if (n > 0.0) kept_unit.push_back(v);
      out.patches.push_back(in.patches[i]);
      if (i < in.provenance.size()) out.provenance.push_back(in.provenance[i]);
    }
  }
  return out;
}

// ------------------------------------------------------------------
// K-SVD
// ------------------------------------------------------------------

struct KsvdOptions {
  int atom_count = 0;   // K
  int sparsity = 1;     // S
  int iterations = 10;
  std::uint64_t seed = 0;
  int threads = 1;      // sparse-coding stage only; result is thread-count invariant
};

struct KsvdLogEntry {
  int iteration = 0;
  double mean_squared_residual = 0.0;
  int atoms_replaced = 0;
};

namespace detail {

// Leading singular triple of E via the small-side Gram eigenproblem.
inline void rank1_svd(const Eigen::MatrixXd& e, Eigen::VectorXd& u, double& sigma,
                      Eigen::VectorXd& v) {
  if (e.cols() == 1) {
    double n = e.col(0).norm();
    sigma = n;
    u = n > 0 ? Eigen::VectorXd(e.col(0) / n) : Eigen::VectorXd::Zero(e.rows());
    v = Eigen::VectorXd::Ones(1);
    return;
  }
  Eigen::MatrixXd gram = e * e.transpose();  // rows x rows, rows = patch length
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  Eigen::Index last = gram.rows() - 1;  // eigenvalues ascending
  double lambda = std::max(0.0, eig.eigenvalues()[last]);
  sigma = std::sqrt(lambda);
  u = eig.eigenvectors().col(last);
  v = sigma > 0 ? Eigen::VectorXd(e.transpose() * u / sigma)
                : Eigen::VectorXd::Zero(e.cols());
}

// Deterministic sign: largest-magnitude component of u is positive.
inline void canonicalize_sign(Eigen::VectorXd& u, Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  u.cwiseAbs().maxCoeff(&imax);
  if (u[imax] < 0.0) {
    u = -u;
    v = -v;
  }
}

}  // namespace detail

// K-SVD training (alternating OMP sparse coding and rank-1 atom updates).
// The coding stage keeps a patch's previous code when it beats the fresh
// OMP solve, so the recorded training error never increases. Unused or
// degenerate atoms are re-seeded from the worst-represented patches.
// Deterministic for fixed inputs and seed.
inline Dictionary ksvd_train(const PatchSet& patches, const KsvdOptions& opts,
                             std::vector<KsvdLogEntry>* log = nullptr) {
  const int n = patches.patch_len();
  const int p = int(patches.size());
  const int k = opts.atom_count;
  if (p < 1) throw validation_error("ksvd_train: empty patch set");
  if (k < 1) throw validation_error("ksvd_train: atom count must be >= 1");
  if (opts.sparsity < 1 || opts.sparsity > n)
    throw validation_error("ksvd_train: sparsity out of range");
  if (opts.iterations < 1) throw validation_error("ksvd_train: iterations must be >= 1");

  Eigen::MatrixXd y(n, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) y(j, i) = patches.patches[std::size_t(i)][std::size_t(j)];

  SplitMix64 rng(opts.seed, 0x6b737664ull);  // "ksvd"

  auto random_unit = [&]() {
    Eigen::VectorXd v(n);
    for (int j = 0; j < n; ++j) v[j] = rng.normal();
    double norm = v.norm();
    if (norm <= 0.0) {
      v.setZero();
      v[0] = 1.0;
      norm = 1.0;
    }
    return Eigen::VectorXd(v / norm);
  };

  // Init: distinct random patches (falling back to random directions for
  // zero patches or when K exceeds the patch count).
  Eigen::MatrixXd dict(n, k);
  {
    std::vector<int> perm(static_cast<std::size_t>(p));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i < p - 1; ++i) {
      int j = i + int(rng.below(std::uint64_t(p - i)));
      std::swap(perm[std::size_t(i)], perm[std::size_t(j)]);
    }
    for (int a = 0; a < k; ++a) {
      if (a < p) {
        Eigen::VectorXd cand = y.col(perm[std::size_t(a)]);
        double norm = cand.norm();
        dict.col(a) = norm > 1e-12 ? Eigen::VectorXd(cand / norm) : random_unit();
      } else {
        dict.col(a) = random_unit();
      }
    }
  }

  std::vector<SparseCode> codes(static_cast<std::size_t>(p));
  Eigen::VectorXd residual_norm2(p);

  auto recompute_residuals = [&]() {
    for (int i = 0; i < p; ++i) {
      Eigen::VectorXd r = y.col(i);
      for (const SparseCode::Entry& e : codes[std::size_t(i)].entries)
        r -= e.coefficient * dict.col(e.atom_index);
      residual_norm2[i] = r.squaredNorm();
    }
  };

  for (int iter = 0; iter < opts.iterations; ++iter) {
    // --- sparse coding (parallel over patches, disjoint writes) ---
    LinearOperator op(dict);
    parallel_for(p, opts.threads, [&](int i) {
      SparseCode fresh = omp(op, y.col(i), opts.sparsity);
      Eigen::VectorXd r = y.col(i);
      for (const SparseCode::Entry& e : fresh.entries)
        r -= e.coefficient * dict.col(e.atom_index);
      double fresh_norm2 = r.squaredNorm();
      bool had_code = codes[std::size_t(i)].ambient_dim == k;
      if (!had_code || fresh_norm2 <= residual_norm2[i]) {
        codes[std::size_t(i)] = std::move(fresh);
        residual_norm2[i] = fresh_norm2;
      }
    });

    // --- atom updates ---
    int replaced = 0;
    std::vector<char> needs_reseed(static_cast<std::size_t>(k), 0);
    for (int a = 0; a < k; ++a) {
      std::vector<int> users;
      std::vector<int> entry_pos;
      for (int i = 0; i < p; ++i) {
        const auto& entries = codes[std::size_t(i)].entries;
        for (std::size_t e = 0; e < entries.size(); ++e)
          if (entries[e].atom_index == a) {
            users.push_back(i);
            entry_pos.push_back(int(e));
            break;
          }
      }
      if (users.empty()) {
        needs_reseed[std::size_t(a)] = 1;
        continue;
      }

      // Residual excluding this atom's contribution, restricted to users.
      Eigen::MatrixXd e(n, Eigen::Index(users.size()));
      for (std::size_t u = 0; u < users.size(); ++u) {
        int i = users[u];
        Eigen::VectorXd r = y.col(i);
        for (const SparseCode::Entry& entry : codes[std::size_t(i)].entries)
          if (entry.atom_index != a) r -= entry.coefficient * dict.col(entry.atom_index);
        e.col(Eigen::Index(u)) = r;
      }

      Eigen::VectorXd u_vec, v_vec;
      double sigma = 0.0;
      detail::rank1_svd(e, u_vec, sigma, v_vec);
      if (sigma <= 1e-12) {
        needs_reseed[std::size_t(a)] = 1;
        continue;
      }
      detail::canonicalize_sign(u_vec, v_vec);
      dict.col(a) = u_vec;
      for (std::size_t u = 0; u < users.size(); ++u) {
        int i = users[u];
        codes[std::size_t(i)].entries[std::size_t(entry_pos[u])].coefficient =
            sigma * v_vec[Eigen::Index(u)];
      }
    }

    recompute_residuals();

    // --- re-seed dead atoms from the worst-represented patches ---
    std::vector<int> dead;
    for (int a = 0; a < k; ++a)
      if (needs_reseed[std::size_t(a)]) dead.push_back(a);
    if (!dead.empty()) {
      std::vector<int> by_residual(static_cast<std::size_t>(p));
      std::iota(by_residual.begin(), by_residual.end(), 0);
      std::stable_sort(by_residual.begin(), by_residual.end(), [&](int lhs, int rhs) {
        return residual_norm2[lhs] > residual_norm2[rhs];
      });
      std::size_t next = 0;
      for (int a : dead) {
        Eigen::VectorXd seed_vec;
        while (next < by_residual.size()) {
          Eigen::VectorXd cand = y.col(by_residual[next]);
          ++next;
          if (cand.norm() > 1e-12) {
            seed_vec = cand / cand.norm();
            break;
          }
        }
        dict.col(a) = seed_vec.size() > 0 ? seed_vec : random_unit();
        ++replaced;
      }
    }

    if (log) {
      double mse = residual_norm2.sum() / double(p);
      log->push_back({iter + 1, mse, replaced});
    }
  }

  Dictionary out;
  out.patch_rows = patches.patch_rows;
  out.patch_cols = patches.patch_cols;
  out.atom_count = k;
  out.atoms.resize(std::size_t(k) * n);
  for (int a = 0; a < k; ++a) {
    Eigen::VectorXd col = dict.col(a);
    double norm = col.norm();
    col /= norm;  // enforce unit norm against accumulated drift
    for (int j = 0; j < n; ++j) out.atoms[std::size_t(a) * n + std::size_t(j)] = col[j];
  }
  return out;
}

// ------------------------------------------------------------------
// Analytic baseline dictionaries
// ------------------------------------------------------------------

// Separable overcomplete DCT: K = k*k atoms built as outer products of k
// oversampled cosine vectors per axis (mean-removed except the constant
// one). k = patch side gives the orthonormal 2-D DCT basis.
inline Dictionary overcomplete_dct(int patch_rows, int patch_cols, int atom_count) {
  if (patch_rows < 1 || patch_cols < 1)
    throw validation_error("overcomplete_dct: bad patch dims");
  int k = int(std::lround(std::sqrt(double(atom_count))));
  if (k * k != atom_count)
    throw validation_error("overcomplete_dct: atom count must be a perfect square");
  if (k < std::max(patch_rows, patch_cols))
    throw validation_error("overcomplete_dct: need sqrt(K) >= patch side");

  auto bank = [&](int n) {
    Eigen::MatrixXd b(n, k);
    b.col(0).setConstant(1.0 / std::sqrt(double(n)));
    for (int j = 1; j < k; ++j) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i)
        v[i] = std::cos(M_PI * (double(i) + 0.5) * double(j) / double(k));
      v.array() -= v.mean();
      b.col(j) = v / v.norm();
    }
    return b;
  };

  Eigen::MatrixXd row_bank = bank(patch_rows);
  Eigen::MatrixXd col_bank = bank(patch_cols);

  Dictionary d;
  d.patch_rows = patch_rows;
  d.patch_cols = patch_cols;
  d.atom_count = atom_count;
  d.atoms.resize(std::size_t(atom_count) * patch_rows * patch_cols);
  int idx = 0;
  for (int jr = 0; jr < k; ++jr)
    for (int jc = 0; jc < k; ++jc, ++idx) {
      Eigen::MatrixXd atom = row_bank.col(jr) * col_bank.col(jc).transpose();
      double norm = atom.norm();
      double* dst = d.atom(idx);
      for (int r = 0; r < patch_rows; ++r)
        for (int c = 0; c < patch_cols; ++c)
          dst[r * patch_cols + c] = atom(r, c) / norm;
    }
  return d;
}

// Overcomplete 2-D Haar: the orthonormal Haar basis plus its cyclic
// translates on a shift_step lattice, deduplicated up to sign.
inline Dictionary overcomplete_haar(int patch_rows, int patch_cols, int shift_step,
                                    int max_level) {
  if (patch_rows != patch_cols)
    throw validation_error("overcomplete_haar: patch must be square");
  const int n = patch_rows;
  if (n < 1 || (n & (n - 1)) != 0)
    throw validation_error("overcomplete_haar: patch side must be a power of two");
  int full_level = 0;
  while ((1 << full_level) < n) ++full_level;
  if (max_level < 1 || max_level > full_level)
    throw validation_error("overcomplete_haar: max_level out of range");
  if (shift_step < 1 || shift_step > n)
    throw validation_error("overcomplete_haar: shift_step out of range");

  // 1-D factors at block size b, supported on [pos, pos+b).
  auto scaling_1d = [&](int b, int pos) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < b; ++i) v[pos + i] = 1.0 / std::sqrt(double(b));
    return v;
  };
  auto wavelet_1d = [&](int b, int pos) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < b / 2; ++i) v[pos + i] = 1.0 / std::sqrt(double(b));
    for (int i = b / 2; i < b; ++i) v[pos + i] = -1.0 / std::sqrt(double(b));
    return v;
  };

  std::vector<Eigen::VectorXd> base;  // flattened row-major atoms
  auto add_base = [&](const Eigen::VectorXd& row_f, const Eigen::VectorXd& col_f) {
    Eigen::VectorXd atom(n * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) atom[r * n + c] = row_f[r] * col_f[c];
    base.push_back(std::move(atom));
  };

  const int bmax = 1 << max_level;
  for (int pr = 0; pr < n; pr += bmax)
    for (int pc = 0; pc < n; pc += bmax)
      add_base(scaling_1d(bmax, pr), scaling_1d(bmax, pc));
  for (int level = max_level; level >= 1; --level) {
    const int b = 1 << level;
    for (int pr = 0; pr < n; pr += b)
      for (int pc = 0; pc < n; pc += b) {
        add_base(scaling_1d(b, pr), wavelet_1d(b, pc));
        add_base(wavelet_1d(b, pr), scaling_1d(b, pc));
        add_base(wavelet_1d(b, pr), wavelet_1d(b, pc));
      }
  }

  // Cyclic shifts, deduplicated by exact value (dyadic entries compare
  // exactly). Shift values that map a level onto itself only reproduce
  // basis atoms and fall out here.
  std::map<std::vector<double>, int> seen;
  std::vector<Eigen::VectorXd> atoms;
  for (int sr = 0; sr < n; sr += shift_step)
    for (int sc = 0; sc < n; sc += shift_step)
      for (const Eigen::VectorXd& b0 : base) {
        Eigen::VectorXd shifted(n * n);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            shifted[((r + sr) % n) * n + ((c + sc) % n)] = b0[r * n + c];
        std::vector<double> key(shifted.data(), shifted.data() + shifted.size());
        if (seen.emplace(std::move(key), int(atoms.size())).second)
          atoms.push_back(std::move(shifted));
      }

  Dictionary d;
  d.patch_rows = n;
  d.patch_cols = n;
  d.atom_count = int(atoms.size());
  d.atoms.resize(atoms.size() * std::size_t(n) * n);
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    double norm = atoms[a].norm();
    for (int j = 0; j < n * n; ++j)
      d.atoms[a * std::size_t(n) * n + std::size_t(j)] = atoms[a][j] / norm;
  }
  return d;
}

}  // namespace acts
