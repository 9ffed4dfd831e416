// Orthogonal matching pursuit with an incrementally grown QR
// factorization of the selected columns: one modified-Gram-Schmidt
// orthogonalization per selected atom, coefficients by back substitution.
// Atom selection normalizes by column norm; reported coefficients stay in
// the original column scale.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "acts/types.hpp"

namespace acts {

// Dense M x K operator with cached column norms. For subsampled patch
// problems this is the dictionary restricted to measured pixel offsets.
class LinearOperator {
 public:
  explicit LinearOperator(Eigen::MatrixXd a) : a_(std::move(a)) {
    if (a_.rows() < 1 || a_.cols() < 1)
      throw validation_error("LinearOperator: empty matrix");
    if (!a_.allFinite()) throw numeric_error("LinearOperator: non-finite entries");
    col_norms_ = a_.colwise().norm();
  }

  Eigen::Index rows() const { return a_.rows(); }
  Eigen::Index cols() const { return a_.cols(); }
  const Eigen::MatrixXd& matrix() const { return a_; }
  double col_norm(Eigen::Index j) const { return col_norms_[j]; }

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd col_norms_;
};

struct OmpOptions {
  int sparsity = 1;
  // Negative means the default 1e-6 * ||y||.
  double residual_tol = -1.0;
};

inline SparseCode omp(const LinearOperator& op, const Eigen::VectorXd& y,
                      const OmpOptions& opts) {
  const Eigen::Index m = op.rows();
  const Eigen::Index k = op.cols();
  if (y.size() != m) throw validation_error("omp: y length != operator rows");
  if (!y.allFinite()) throw numeric_error("omp: non-finite measurement vector");
  if (opts.sparsity < 1 || opts.sparsity > std::min(m, k))
    throw validation_error("omp: sparsity out of range [1, min(M,K)]");
  const double y_norm = y.norm();
  const double tol = opts.residual_tol >= 0.0 ? opts.residual_tol : 1e-6 * y_norm;

  const Eigen::MatrixXd& a = op.matrix();
  const int s_max = opts.sparsity;

  SparseCode code;
  code.ambient_dim = int(k);
  if (y_norm <= tol) return code;

  Eigen::MatrixXd q(m, s_max);       // orthonormal basis of the selected span
  Eigen::MatrixXd r(s_max, s_max);   // upper triangular factor
  Eigen::VectorXd z(s_max);          // q^T y
  Eigen::VectorXd residual = y;
  std::vector<char> selected(static_cast<std::size_t>(k), 0);
  int n_sel = 0;

  while (n_sel < s_max) {
    // Pick the unselected column with the largest normalized correlation;
    // ties go to the lowest index.
    int best = -1;
    double best_corr = 0.0;
    Eigen::VectorXd corr = a.transpose() * residual;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (selected[std::size_t(j)]) continue;
      double nj = op.col_norm(j);
      if (nj <= 0.0) continue;  // zero column can never reduce the residual
      double c = std::abs(corr[j]) / nj;
      if (c > best_corr) {
        best_corr = c;
        best = int(j);
      }
    }
    if (best < 0 || best_corr <= 1e-14 * (y_norm > 0 ? y_norm : 1.0)) break;

    // Orthogonalize the new column against the current basis (twice, to
    // keep q numerically orthonormal).
    Eigen::VectorXd v = a.col(best);
    Eigen::VectorXd rcol = Eigen::VectorXd::Zero(s_max);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < n_sel; ++i) {
        double proj = q.col(i).dot(v);
        rcol[i] += proj;
        v -= proj * q.col(i);
      }
    }
    double diag = v.norm();
    if (diag <= 1e-12 * std::max(1.0, op.col_norm(best))) {
      // New column is numerically dependent on the span; stop early.
      break;
    }
    selected[std::size_t(best)] = 1;
    q.col(n_sel) = v / diag;
    rcol[n_sel] = diag;
    r.col(n_sel).head(n_sel + 1) = rcol.head(n_sel + 1);
    z[n_sel] = q.col(n_sel).dot(y);
    code.entries.push_back({best, 0.0});
    ++n_sel;

    residual = y - q.leftCols(n_sel) * z.head(n_sel);
    if (residual.norm() <= tol) break;
  }

  // Back-substitute R x = z for the least-squares coefficients on the
  // selected support, in original column scale.
  for (int i = n_sel - 1; i >= 0; --i) {
    double acc = z[i];
    for (int j = i + 1; j < n_sel; ++j) acc -= r(i, j) * code.entries[std::size_t(j)].coefficient;
    code.entries[std::size_t(i)].coefficient = acc / r(i, i);
  }
  return code;
}

inline SparseCode omp(const LinearOperator& op, const Eigen::VectorXd& y,
                      int sparsity, double residual_tol = -1.0) {
  return omp(op, y, OmpOptions{sparsity, residual_tol});
}

inline Eigen::VectorXd sparse_to_dense(const SparseCode& code) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(code.ambient_dim);
  for (const SparseCode::Entry& e : code.entries) {
    if (e.atom_index < 0 || e.atom_index >= code.ambient_dim)
      throw validation_error("sparse_to_dense: atom index out of range");
    x[e.atom_index] = e.coefficient;
  }
  return x;
}

inline SparseCode dense_to_sparse(const Eigen::VectorXd& x) {
  SparseCode code;
  code.ambient_dim = int(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) code.entries.push_back({int(i), x[i]});
  return code;
}

}  // namespace acts
