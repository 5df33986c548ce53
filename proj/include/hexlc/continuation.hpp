#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hexlc/model.hpp"
#include "hexlc/solvers.hpp"
#include "hexlc/spectrum.hpp"

namespace hexlc {

// Parameter continuation of a stationary branch in the penalty strength.
// Each step re-solves the stationarity condition by Newton from the previous
// point and re-counts the Morse index, so index changes land between two
// consecutive grid values.

struct BranchPoint {
  double lambda2 = 0.0;
  Eigen::VectorXd x;
  double energy = 0.0;
  double residual = 0.0;
  int index = 0;
  bool index_reliable = true;
  Eigen::VectorXd spec_head;  // leading eigenvalues at this point
};

struct IndexEvent {
  double lambda2_before = 0.0;
  double lambda2_after = 0.0;
  int index_before = 0;
  int index_after = 0;
};

struct Branch {
  std::vector<BranchPoint> points;
  std::vector<IndexEvent> events;
  bool complete = false;   // false when Newton lost the branch mid-way
  double lost_at = 0.0;    // parameter value of the failed step
};

struct ContinuationConfig {
  int steps = 30;          // grid intervals between the two parameter values
  double tol = 1e-8;       // stationarity tolerance at every point
  int newton_max = 60;
  EigenOptions eig;
};

inline Branch continue_branch(const HexMesh& m, const ModelParams& base,
                              const Eigen::VectorXd& x_start, double lambda2_from,
                              double lambda2_to, const ContinuationConfig& cfg = {}) {
  if (cfg.steps < 0) throw std::invalid_argument("continuation needs steps >= 0");
  Branch br;
  Eigen::VectorXd x = x_start;
  Eigen::MatrixXd warm;
  for (int i = 0; i <= cfg.steps; ++i) {
    const double t = cfg.steps == 0 ? 0.0 : static_cast<double>(i) / cfg.steps;
    ModelParams prm = base;
    prm.lambda2 = lambda2_from + (lambda2_to - lambda2_from) * t;
    LdgSystem sys(m, prm);
    NewtonResult nr = newton_refine(sys, x, cfg.tol, cfg.newton_max);
    if (!nr.converged) {
      br.lost_at = prm.lambda2;
      return br;
    }
    BranchPoint pt;
    pt.lambda2 = prm.lambda2;
    pt.x = x;
    pt.energy = sys.energy(x);
    pt.residual = nr.residual;
    EigenOptions eopt = cfg.eig;
    if (warm.size() > 0) eopt.warm = &warm;
    auto hess = sys.hessian_at(x);
    MorseResult mr = morse_index(hess, eopt);
    pt.index = mr.index;
    pt.index_reliable = mr.reliable;
    pt.spec_head = mr.spec.values;
    warm = mr.spec.vectors;
    if (!br.points.empty() && br.points.back().index != pt.index) {
      IndexEvent ev;
      ev.lambda2_before = br.points.back().lambda2;
      ev.lambda2_after = pt.lambda2;
      ev.index_before = br.points.back().index;
      ev.index_after = pt.index;
      br.events.push_back(ev);
    }
    br.points.push_back(std::move(pt));
  }
  br.complete = true;
  return br;
}

}  // namespace hexlc
