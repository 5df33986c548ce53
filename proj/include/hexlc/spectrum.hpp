#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "hexlc/rng.hpp"

// Block eigensolver for the smallest eigenpairs of a symmetric operator given
// only through matrix-vector products (LOBPCG-type subspace iteration with
// full reorthogonalization and Rayleigh-Ritz restarts).  Used to certify
// Morse indices and to refresh saddle-search direction blocks.

namespace hexlc {

using PrecondFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct EigenOptions {
  int max_iter = 600;
  double tol = 1e-6;            // residual tolerance ||Av - t v|| <= tol*max(1,|t|)
  std::uint64_t seed = 0x5eed5eed5eedull;
  const PrecondFn* precond = nullptr;
  const Eigen::MatrixXd* warm = nullptr;  // optional warm-start block
};

struct Spectrum {
  Eigen::VectorXd values;     // ascending
  Eigen::MatrixXd vectors;    // corresponding columns
  Eigen::VectorXd residuals;  // ||Av - t v||
  bool converged = false;
  int iterations = 0;
};

namespace detail {

// modified Gram-Schmidt against Q (two passes), then internal; drops columns
// whose norm collapses relative to their initial size
inline Eigen::MatrixXd mgs_ortho(const Eigen::MatrixXd& Qfixed, Eigen::MatrixXd W,
                                 double droptol = 1e-8) {
  std::vector<int> keep;
  for (int j = 0; j < W.cols(); ++j) {
    double n0 = W.col(j).norm();
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      if (Qfixed.cols() > 0) W.col(j) -= Qfixed * (Qfixed.transpose() * W.col(j));
      for (int i : keep) W.col(j) -= W.col(i) * (W.col(i).dot(W.col(j)));
    }
    double n1 = W.col(j).norm();
    if (n1 > droptol * n0 && n1 > 1e-14) {
      W.col(j) /= n1;
      keep.push_back(j);
    }
  }
  Eigen::MatrixXd R(W.rows(), static_cast<int>(keep.size()));
  for (int c = 0; c < R.cols(); ++c) R.col(c) = W.col(keep[c]);
  return R;
}

}  // namespace detail

// m smallest eigenpairs of A (interface: dim(), apply(v, out)).
template <class Op>
Spectrum smallest_eigenpairs(const Op& A, int m, const EigenOptions& opt = {}) {
  const int n = A.dim();
  m = std::min(m, n);
  Spectrum out;
  if (m <= 0) { out.converged = true; return out; }

  auto apply_block = [&](const Eigen::MatrixXd& B) {
    Eigen::MatrixXd R(n, B.cols());
    Eigen::VectorXd t(n);
    for (int j = 0; j < B.cols(); ++j) {
      A.apply(B.col(j), t);
      R.col(j) = t;
    }
    return R;
  };

  Eigen::MatrixXd X;
  if (opt.warm && opt.warm->rows() == n && opt.warm->cols() > 0) {
    X = opt.warm->cols() > m ? opt.warm->leftCols(m).eval() : *opt.warm;
  } else {
    X = gaussian_matrix(n, m, opt.seed);
  }
  X = detail::mgs_ortho(Eigen::MatrixXd(n, 0), X);
  int salt = 0;
  while (X.cols() < m) {  // top up after rank loss or a short warm block
    Eigen::MatrixXd extra = gaussian_matrix(n, m - static_cast<int>(X.cols()),
                                            mix_seed(opt.seed, 101 + salt++));
    Eigen::MatrixXd fresh = detail::mgs_ortho(X, extra);
    Eigen::MatrixXd joined(n, X.cols() + fresh.cols());
    joined << X, fresh;
    X = joined;
  }

  Eigen::MatrixXd AX = apply_block(X);
  Eigen::MatrixXd P(n, 0), AP(n, 0);
  Eigen::VectorXd theta;

  // Rayleigh-Ritz in the current X
  auto ritz_x = [&]() {
    Eigen::MatrixXd T = X.transpose() * AX;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()));
    theta = es.eigenvalues();
    X = (X * es.eigenvectors()).eval();
    AX = (AX * es.eigenvectors()).eval();
  };
  ritz_x();

  for (int it = 1; it <= opt.max_iter; ++it) {
    out.iterations = it;
    Eigen::MatrixXd W = AX - X * theta.asDiagonal();
    out.residuals = W.colwise().norm();
    bool done = true;
    for (int j = 0; j < theta.size(); ++j)
      if (out.residuals[j] > opt.tol * std::max(1.0, std::abs(theta[j]))) { done = false; break; }
    if (done || static_cast<int>(X.cols()) == n) {
      out.values = theta;
      out.vectors = X;
      out.converged = done;
      return out;
    }

    if (opt.precond && *opt.precond) {
      Eigen::VectorXd z(n);
      for (int j = 0; j < W.cols(); ++j) {
        (*opt.precond)(W.col(j), z);
        W.col(j) = z;
      }
    }

    W = detail::mgs_ortho(X, W);
    Eigen::MatrixXd XW(n, X.cols() + W.cols());
    XW << X, W;
    Eigen::MatrixXd Pn = detail::mgs_ortho(XW, P);
    Eigen::MatrixXd AW = apply_block(W);
    Eigen::MatrixXd APn = apply_block(Pn);

    const int sx = static_cast<int>(X.cols());
    const int sw = static_cast<int>(W.cols());
    const int sp = static_cast<int>(Pn.cols());
    Eigen::MatrixXd S(n, sx + sw + sp), AS(n, sx + sw + sp);
    S << X, W, Pn;
    AS << AX, AW, APn;
    Eigen::MatrixXd T = S.transpose() * AS;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()));
    Eigen::MatrixXd Y = es.eigenvectors().leftCols(std::min<int>(m, sx + sw + sp));
    theta = es.eigenvalues().head(Y.cols());

    // non-X part of the update carries over as the next history block
    Eigen::MatrixXd Ytail = Y.bottomRows(sw + sp);
    Eigen::MatrixXd WP(n, sw + sp), AWP(n, sw + sp);
    WP << W, Pn;
    AWP << AW, APn;
    P = WP * Ytail;
    AP = AWP * Ytail;
    X = S * Y;
    AX = AS * Y;
  }
  out.values = theta;
  out.vectors = X;
  out.residuals = (AX - X * theta.asDiagonal()).colwise().norm();
  out.converged = false;
  return out;
}

// scale of the operator diagonal, estimated from Rayleigh quotients of seeded
// probe vectors; the zero band for index counting defaults to 1e-6 times this
template <class Op>
double diagonal_scale(const Op& A, std::uint64_t seed = 0xd1a6ull) {
  const int n = A.dim();
  double acc = 0.0;
  Eigen::VectorXd t(n);
  const int probes = 4;
  for (int p = 0; p < probes; ++p) {
    Eigen::VectorXd v = gaussian_vector(n, mix_seed(seed, p));
    v /= v.norm();
    A.apply(v, t);
    acc += std::abs(v.dot(t));
  }
  return acc / probes;
}

struct MorseResult {
  int index = -1;
  double zero_band = 0.0;
  Spectrum spec;  // smallest eigenpairs computed during certification
  bool reliable = false;
  bool near_degenerate = false;  // some eigenvalue fell inside the zero band
};

// Counts eigenvalues below -zero_band, solving for blocks of m0, 2*m0, ...
// smallest pairs until the largest computed eigenvalue clears +zero_band.
template <class Op>
MorseResult morse_index(const Op& A, EigenOptions opt = {}, int m0 = 6,
                        double band_override = -1.0) {
  MorseResult r;
  r.zero_band = band_override >= 0.0
                    ? band_override
                    : 1e-6 * std::max(1.0, diagonal_scale(A, mix_seed(opt.seed, 77)));
  int m = std::min(std::max(m0, 1), A.dim());
  while (true) {
    r.spec = smallest_eigenpairs(A, m, opt);
    const bool covers = r.spec.values.size() > 0 &&
                        r.spec.values[r.spec.values.size() - 1] > r.zero_band;
    if (covers || m >= A.dim()) {
      int idx = 0;
      for (int i = 0; i < r.spec.values.size(); ++i) {
        if (r.spec.values[i] < -r.zero_band) ++idx;
        if (std::abs(r.spec.values[i]) <= r.zero_band) r.near_degenerate = true;
      }
      r.index = idx;
      r.reliable = r.spec.converged && !r.near_degenerate;
      return r;
    }
    m = std::min(2 * m, A.dim());
    opt.warm = nullptr;  // restart fresh with the larger block
  }
}

}  // namespace hexlc
