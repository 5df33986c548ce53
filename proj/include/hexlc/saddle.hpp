#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hexlc/rng.hpp"
#include "hexlc/solvers.hpp"
#include "hexlc/spectrum.hpp"

// Index-k saddle dynamics: the state moves against the gradient reflected
// across the span of k tracked directions,
//   dx/dt = -(I - 2 V V^T) grad E,
// while each direction relaxes toward the small end of the Hessian spectrum,
//   v_i <- v_i - g*(I - v_i v_i^T - 2 sum_{j<i} v_j v_j^T) H v_i,
// re-orthonormalized after every step.  k = 0 degenerates to gradient
// descent.  Step sizes are Barzilai-Borwein with hard clamps; the direction
// block is re-diagonalized periodically and a Newton polish finishes the run.
//
// The system type provides dim(), energy(x), gradient(x, g),
// residual_norm(g), hessian_at(x) -> operator with apply(v, out), and
// dimer_hessian_vec(x, v, l, out).

namespace hexlc {

struct SearchConfig {
  int k = 0;                   // target Morse index
  double tol = 1e-8;           // residual_norm at the solution
  long max_iter = 200000;
  double dt0 = 1e-2;           // first step for both x and v dynamics
  double step_min = 1e-6;
  double step_max = 1e2;
  double max_move = 0.5;       // cap on the per-iteration displacement max-norm
  int ritz_every = 200;        // direction-block eigensolver refresh period
  bool use_dimer = false;      // central differences instead of the analytic H
  double dimer_l = 1e-3;
  bool newton_polish = true;
  double newton_trigger = 1e-5;
  int newton_max = 40;
  bool final_refresh = true;   // re-diagonalize V at the converged point
  double eig_tol = 1e-6;
  double blowup = 1e8;         // abort threshold on the state max-norm
  std::uint64_t seed = 0x5add1eull;
};

struct HiosdState {
  Eigen::VectorXd x;
  Eigen::MatrixXd V;           // tracked directions, one column per index
  long iteration = 0;
  long grad_evals = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool finite = true;

  // one-step history for the Barzilai-Borwein quotients
  Eigen::VectorXd xprev, Fprev;
  Eigen::MatrixXd Vprev, Dprev;
  bool have_prev = false;
};

struct SaddleResult {
  Eigen::VectorXd x;
  Eigen::MatrixXd V;
  bool converged = false;
  long iterations = 0;
  long grad_evals = 0;
  double residual = std::numeric_limits<double>::infinity();
  double energy = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline double bb_step(double ss, double sy, double fallback, double lo, double hi) {
  double dt = (sy != 0.0 && std::isfinite(sy)) ? std::abs(ss / sy) : fallback;
  if (!std::isfinite(dt) || dt == 0.0) dt = fallback;
  return std::clamp(dt, lo, hi);
}

// orthonormalize the columns of V in place; rank-deficient columns are
// replaced by seeded random fill so the block keeps its width
inline void reorthonormalize(Eigen::MatrixXd& V, std::uint64_t seed) {
  const int n = static_cast<int>(V.rows());
  int salt = 0;
  for (int j = 0; j < V.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) V.col(j) -= V.col(i) * (V.col(i).dot(V.col(j)));
    double nrm = V.col(j).norm();
    while (nrm < 1e-12) {
      V.col(j) = gaussian_vector(n, mix_seed(seed, 900 + salt++));
      for (int i = 0; i < j; ++i) V.col(j) -= V.col(i) * (V.col(i).dot(V.col(j)));
      nrm = V.col(j).norm();
    }
    V.col(j) /= nrm;
  }
}

}  // namespace detail

template <class System>
HiosdState make_hiosd_state(const System& sys, const Eigen::VectorXd& x0, int k,
                            const Eigen::MatrixXd* V0, std::uint64_t seed) {
  HiosdState st;
  st.x = x0;
  const int n = sys.dim();
  st.V.resize(n, std::max(0, k));
  int have = 0;
  if (V0 && V0->rows() == n) {
    have = std::min<int>(k, static_cast<int>(V0->cols()));
    st.V.leftCols(have) = V0->leftCols(have);
  }
  for (int j = have; j < k; ++j) st.V.col(j) = gaussian_vector(n, mix_seed(seed, j));
  if (k > 0) detail::reorthonormalize(st.V, seed);
  return st;
}

// One iteration of the index-k dynamics.  Measures the residual at the
// current state first and leaves the state untouched when already converged
// (stationary inputs are exact fixed points).
template <class System>
void hiosd_step(const System& sys, HiosdState& st, const SearchConfig& cfg) {
  const int n = sys.dim();
  const int k = static_cast<int>(st.V.cols());
  Eigen::VectorXd g(n);
  sys.gradient(st.x, g);
  ++st.grad_evals;
  st.residual = sys.residual_norm(g);
  st.finite = std::isfinite(st.residual) && st.x.cwiseAbs().maxCoeff() < cfg.blowup;
  if (!st.finite || st.residual <= cfg.tol) return;

  ++st.iteration;
  Eigen::VectorXd F = k > 0 ? (g - 2.0 * (st.V * (st.V.transpose() * g))).eval() : g;

  Eigen::MatrixXd D(n, k);
  if (k > 0) {
    Eigen::VectorXd hv(n);
    if (cfg.use_dimer) {
      for (int i = 0; i < k; ++i) {
        sys.dimer_hessian_vec(st.x, st.V.col(i), cfg.dimer_l, hv);
        st.grad_evals += 2;
        D.col(i) = hv - st.V.col(i) * (st.V.col(i).dot(hv));
        for (int j = 0; j < i; ++j) D.col(i) -= 2.0 * st.V.col(j) * (st.V.col(j).dot(hv));
      }
    } else {
      const auto H = sys.hessian_at(st.x);
      for (int i = 0; i < k; ++i) {
        H.apply(st.V.col(i), hv);
        D.col(i) = hv - st.V.col(i) * (st.V.col(i).dot(hv));
        for (int j = 0; j < i; ++j) D.col(i) -= 2.0 * st.V.col(j) * (st.V.col(j).dot(hv));
      }
    }
  }

  double dt = cfg.dt0, gma = cfg.dt0;
  if (st.have_prev) {
    const Eigen::VectorXd dx = st.x - st.xprev;
    const Eigen::VectorXd dF = F - st.Fprev;
    dt = detail::bb_step(dx.squaredNorm(), dx.dot(dF), cfg.dt0, cfg.step_min, cfg.step_max);
    if (k > 0) {
      const Eigen::MatrixXd dV = st.V - st.Vprev;
      const Eigen::MatrixXd dD = D - st.Dprev;
      gma = detail::bb_step(dV.squaredNorm(), (dV.array() * dD.array()).sum(), cfg.dt0,
                            cfg.step_min, cfg.step_max);
    }
  }
  // quotient steps can be wild far from stationarity; a displacement cap
  // keeps single iterations from leaving the basin entirely
  if (cfg.max_move > 0.0) {
    const double fn = F.lpNorm<Eigen::Infinity>();
    if (dt * fn > cfg.max_move) dt = cfg.max_move / fn;
    if (k > 0) {
      const double dn = D.cwiseAbs().maxCoeff();
      if (dn > 0.0 && gma * dn > cfg.max_move) gma = cfg.max_move / dn;
    }
  }

  st.xprev = st.x;
  st.Fprev = F;
  st.x -= dt * F;
  if (k > 0) {
    st.Vprev = st.V;
    st.Dprev = D;
    st.V -= gma * D;
    detail::reorthonormalize(st.V, mix_seed(cfg.seed, static_cast<std::uint64_t>(st.iteration)));
  }
  st.have_prev = true;

  if (k > 0 && cfg.ritz_every > 0 && st.iteration % cfg.ritz_every == 0) {
    EigenOptions eo;
    eo.max_iter = 60;
    eo.tol = 1e-4;
    eo.seed = mix_seed(cfg.seed, 0xf1full + static_cast<std::uint64_t>(st.iteration));
    eo.warm = &st.V;
    Spectrum sp = smallest_eigenpairs(sys.hessian_at(st.x), k, eo);
    if (sp.vectors.cols() == k && sp.vectors.allFinite()) {
      st.V = sp.vectors;
      st.have_prev = false;  // step history is stale after the jump
    }
  }
}

// Runs the index-k dynamics from x0.  V0, when given, seeds the direction
// block (extra columns are ignored, missing ones filled at random).
template <class System>
SaddleResult find_saddle(const System& sys, const Eigen::VectorXd& x0,
                         const SearchConfig& cfg, const Eigen::MatrixXd* V0 = nullptr) {
  const int k = std::max(0, cfg.k);
  HiosdState st = make_hiosd_state(sys, x0, k, V0, cfg.seed);
  SaddleResult res;
  double newton_trigger = cfg.newton_trigger;

  while (st.iteration < cfg.max_iter) {
    hiosd_step(sys, st, cfg);
    if (!st.finite) break;
    if (st.residual <= cfg.tol) {
      res.converged = true;
      break;
    }
    if (cfg.newton_polish && st.residual <= newton_trigger) {
      Eigen::VectorXd xn = st.x;
      NewtonResult nr = newton_refine(sys, xn, cfg.tol, cfg.newton_max);
      st.grad_evals += nr.grad_evals;
      if (nr.converged) {
        st.x = xn;
        st.residual = nr.residual;
        res.converged = true;
        break;
      }
      newton_trigger *= 0.1;  // polish failed here; retry only much closer in
    }
  }

  res.x = st.x;
  res.V = st.V;
  res.iterations = st.iteration;
  res.residual = st.residual;

  if (res.converged && k > 0 && cfg.final_refresh) {
    EigenOptions eo;
    eo.tol = cfg.eig_tol;
    eo.seed = mix_seed(cfg.seed, 0xfeedull);
    eo.warm = &st.V;
    Spectrum sp = smallest_eigenpairs(sys.hessian_at(res.x), k, eo);
    if (sp.vectors.cols() == k && sp.vectors.allFinite()) res.V = sp.vectors;
  }
  res.grad_evals = st.grad_evals;
  res.energy = sys.energy(res.x);
  return res;
}

}  // namespace hexlc
