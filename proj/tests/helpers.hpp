#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "hexlc/mesh.hpp"
#include "hexlc/model.hpp"

// Shared fixtures for the unit tests: small generic operators and energies
// with known spectra, plus helpers to push DOF vectors through group actions.

namespace testutil {

// dense symmetric operator
struct DenseOp {
  Eigen::MatrixXd A;
  int dim() const { return static_cast<int>(A.rows()); }
  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const { out = A * v; }
};

// quadratic energy E = x^T A x / 2 for saddle-dynamics tests
struct QuadSystem {
  Eigen::MatrixXd A;
  int dim() const { return static_cast<int>(A.rows()); }
  double energy(const Eigen::VectorXd& x) const { return 0.5 * x.dot(A * x); }
  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& g) const { g = A * x; }
  double residual_norm(const Eigen::VectorXd& g) const { return g.lpNorm<Eigen::Infinity>(); }
  DenseOp hessian_at(const Eigen::VectorXd&) const { return DenseOp{A}; }
  void dimer_hessian_vec(const Eigen::VectorXd& x, const Eigen::VectorXd& v, double l,
                         Eigen::VectorXd& out) const {
    Eigen::VectorXd gp, gm;
    gradient(x + l * v, gp);
    gradient(x - l * v, gm);
    out = (gp - gm) / (2.0 * l);
  }
};

// interior DOF vector transformed by a D6 action
inline Eigen::VectorXd transform_dofs(const hexlc::LdgSystem& sys,
                                      const hexlc::SymmetryAction& act,
                                      const Eigen::VectorXd& x) {
  hexlc::PField f = sys.field(x);
  hexlc::PField g = hexlc::apply_group(f, act);
  return sys.dofs(g);
}

// largest principal angle between span(U) and span(W), both orthonormal
inline double principal_angle(const Eigen::MatrixXd& U, const Eigen::MatrixXd& W) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(U.transpose() * W);
  double smin = svd.singularValues().minCoeff();
  smin = std::min(1.0, std::max(-1.0, smin));
  return std::acos(smin);
}

}  // namespace testutil
