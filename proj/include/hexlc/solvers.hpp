#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

// Krylov linear algebra for the Newton polish: MINRES on the (symmetric,
// possibly indefinite) Hessian, then damped Newton steps on the gradient.

namespace hexlc {

struct MinresResult {
  Eigen::VectorXd x;
  double relres = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// Solves A x = b for symmetric A via the Lanczos/Givens recurrence.
// A only needs dim() and apply(v, out).
template <class Op>
MinresResult minres(const Op& A, const Eigen::VectorXd& b, double rtol = 1e-10,
                    int maxit = 0) {
  const int n = static_cast<int>(b.size());
  if (maxit <= 0) maxit = std::min(5 * n, 2000);
  MinresResult out;
  out.x = Eigen::VectorXd::Zero(n);

  const double beta1 = b.norm();
  if (beta1 == 0.0) {
    out.relres = 0.0;
    out.converged = true;
    return out;
  }

  Eigen::VectorXd r1 = b, r2 = b, y = b, v(n);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n), w2 = Eigen::VectorXd::Zero(n), w1(n);

  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
  double phibar = beta1, cs = -1.0, sn = 0.0;
  const double tiny = std::numeric_limits<double>::epsilon();

  for (int itn = 1; itn <= maxit; ++itn) {
    out.iterations = itn;
    v = y / beta;
    A.apply(v, y);
    if (itn >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1 = r2;
    r2 = y;
    oldb = beta;
    beta = r2.norm();

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;

    double gamma = std::sqrt(gbar * gbar + beta * beta);
    gamma = std::max(gamma, tiny);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    out.x += phi * w;

    out.relres = phibar / beta1;
    if (out.relres <= rtol) {
      out.converged = true;
      return out;
    }
    if (beta <= tiny * beta1) {  // exact Krylov breakdown: solution reached
      out.converged = out.relres <= std::sqrt(rtol);
      return out;
    }
    y = r2;
  }
  return out;
}

struct NewtonResult {
  bool converged = false;
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();  // area-scaled
  long grad_evals = 0;
};

// Damped Newton on the stationarity equation grad E = 0, converging to the
// nearby critical point of any index.  Steps that fail to reduce the gradient
// max-norm are halved; persistent failure aborts the polish.
template <class System>
NewtonResult newton_refine(const System& sys, Eigen::VectorXd& x, double tol = 1e-8,
                           int max_iter = 30, double minres_rtol = 1e-10,
                           int minres_maxit = 600) {
  NewtonResult res;
  Eigen::VectorXd g(sys.dim()), dx;
  sys.gradient(x, g);
  ++res.grad_evals;
  double rn = sys.residual_norm(g);
  res.residual = rn;

  for (int it = 1; it <= max_iter; ++it) {
    res.iterations = it;
    if (rn <= tol) {
      res.converged = true;
      return res;
    }
    const auto H = sys.hessian_at(x);
    MinresResult lin = minres(H, Eigen::VectorXd(-g), minres_rtol, minres_maxit);
    dx = lin.x;
    if (!dx.allFinite()) return res;

    double scale = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 8; ++bt) {
      Eigen::VectorXd xt = x + scale * dx;
      Eigen::VectorXd gt(sys.dim());
      sys.gradient(xt, gt);
      ++res.grad_evals;
      const double rt = sys.residual_norm(gt);
      if (std::isfinite(rt) && (rt < rn || rt <= tol)) {
        x = xt;
        g = gt;
        rn = rt;
        res.residual = rn;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) return res;  // stuck: leave x at the last improving point
  }
  res.converged = rn <= tol;
  return res;
}

}  // namespace hexlc
