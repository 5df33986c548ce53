#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "hexlc/mesh.hpp"

// Reduced Landau-de Gennes model on the hexagon.  The order tensor is
// parameterized by two degrees of freedom per vertex,
//   P = [[P11, P12], [P12, -P11]],
// and the discrete energy is
//   E_h = (1/sqrt(3)) sum_edges [(dP11)^2 + (dP12)^2]
//       + sum_v area(v) * (lambda2/2) * (P11^2 + P12^2 - c0^2)^2,
// with c0 = B/(2C).  lambda2 denotes the rescaled squared domain size
// 2*C*lambda^2/L.  The edge sum runs over every lattice edge once; on
// interior vertices it coincides with the per-vertex stencil weighted by
// area(v).  Dirichlet data: on edge C_k the director is tangent with order
// c0, i.e. (P11,P12) = -c0 (cos((2k-1)pi/3), sin((2k-1)pi/3)); corners carry
// the average of the two adjacent edges and a mismatch zone of width eps is
// bridged by linear interpolation in the components along the boundary.

namespace hexlc {

struct ModelParams {
  double B = 0.64e4;       // N/m^2
  double C = 0.35e4;       // N/m^2
  double lambda2 = 70.0;   // rescaled squared edge length
  double eps = 0.0;        // corner mismatch width; 0 selects the default 3h

  double c0() const { return B / (2.0 * C); }
  double A() const { return -B * B / (3.0 * C); }  // pinned temperature coefficient
};

inline void validate(const ModelParams& p, const HexMesh& m) {
  if (!(p.B > 0.0) || !(p.C > 0.0)) throw std::invalid_argument("B and C must be positive");
  if (!(p.lambda2 > 0.0)) throw std::invalid_argument("lambda2 must be positive");
  if (p.eps != 0.0 && p.eps < m.h) throw std::invalid_argument("eps must be >= h");
  if (p.eps >= 0.5) throw std::invalid_argument("eps must be smaller than half an edge");
}

inline double default_eps(const HexMesh& m) { return 3.0 * m.h; }

// Dirichlet values for boundary vertex v.  Edge value on C_k, corner average
// at w_k, linear interpolation over the mismatch zone (distance < eps from
// the nearest corner).
inline void boundary_value(const HexMesh& m, const ModelParams& p, int v, double& p11, double& p12) {
  const double c0 = p.c0();
  const double eps = p.eps > 0.0 ? p.eps : default_eps(m);
  auto edge_val = [&](int k, double& a, double& b) {
    a = -c0 * std::cos((2 * k - 1) * kPi / 3.0);
    b = -c0 * std::sin((2 * k - 1) * kPi / 3.0);
  };
  auto corner_val = [&](int k, double& a, double& b) {
    // corner w_k joins C_{k-1} and C_k
    double a1, b1, a2, b2;
    edge_val(k == 1 ? 6 : k - 1, a1, b1);
    edge_val(k, a2, b2);
    a = 0.5 * (a1 + a2);
    b = 0.5 * (b1 + b2);
  };
  if (m.type[v] == VertexType::Corner) {
    corner_val(m.tag[v], p11, p12);
    return;
  }
  if (m.type[v] != VertexType::Edge) throw std::invalid_argument("boundary_value needs a boundary vertex");
  const int k = m.tag[v];
  double ea, eb;
  edge_val(k, ea, eb);
  const double d = m.corner_distance(v);
  if (d >= eps) { p11 = ea; p12 = eb; return; }
  // nearest corner of edge C_k: endpoints are w_k and w_{k+1}
  const int k2 = (k % 6) + 1;
  double dx1 = m.xs[v] - std::cos((k - 1) * kPi / 3.0);
  double dy1 = m.ys[v] - std::sin((k - 1) * kPi / 3.0);
  double dx2 = m.xs[v] - std::cos((k2 - 1) * kPi / 3.0);
  double dy2 = m.ys[v] - std::sin((k2 - 1) * kPi / 3.0);
  const int kc = std::hypot(dx1, dy1) <= std::hypot(dx2, dy2) ? k : k2;
  double ca, cb;
  corner_val(kc, ca, cb);
  const double t = d / eps;
  p11 = t * ea + (1.0 - t) * ca;
  p12 = t * eb + (1.0 - t) * cb;
}

// Field of (P11,P12) over all vertices.  Boundary entries always carry the
// Dirichlet data; solvers only touch the interior through the DOF vector.
struct PField {
  const HexMesh* mesh = nullptr;
  ModelParams prm;
  Eigen::ArrayXd p11, p12;

  int size() const { return mesh ? mesh->vertex_count() : 0; }
};

inline void apply_boundary(PField& f) {
  const HexMesh& m = *f.mesh;
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (m.type[v] == VertexType::Interior) continue;
    double a, b;
    boundary_value(m, f.prm, v, a, b);
    f.p11[v] = a;
    f.p12[v] = b;
  }
}

inline PField make_field(const HexMesh& m, ModelParams p) {
  if (p.eps == 0.0) p.eps = default_eps(m);
  validate(p, m);
  PField f;
  f.mesh = &m;
  f.prm = p;
  f.p11 = Eigen::ArrayXd::Zero(m.vertex_count());
  f.p12 = Eigen::ArrayXd::Zero(m.vertex_count());
  apply_boundary(f);
  return f;
}

// g acting on a field: out[perm[v]] = M_g * p[v].
inline PField apply_group(const PField& f, const SymmetryAction& act) {
  PField out = f;
  const int nv = f.size();
  for (int v = 0; v < nv; ++v) {
    double q1, q2;
    act.apply_components(f.p11[v], f.p12[v], q1, q2);
    out.p11[act.perm[v]] = q1;
    out.p12[act.perm[v]] = q2;
  }
  return out;
}

// Discrete energy of an arbitrary field, boundary data as stored.  The DOF
// path below reuses scratch buffers; this one allocates and is meant for
// diagnostics and tests.
inline double energy_of(const PField& f) {
  const HexMesh& m = *f.mesh;
  const double c0sq = f.prm.c0() * f.prm.c0();
  double eel = 0.0, ebulk = 0.0;
  for (int v = 0; v < m.vertex_count(); ++v) {
    for (int d = 0; d < 3; ++d) {
      const int u = m.nbr[v][d];
      if (u < 0) continue;
      const double d1 = f.p11[v] - f.p11[u], d2 = f.p12[v] - f.p12[u];
      eel += d1 * d1 + d2 * d2;
    }
    const double rho = f.p11[v] * f.p11[v] + f.p12[v] * f.p12[v] - c0sq;
    ebulk += m.area[v] * rho * rho;
  }
  return eel / kSqrt3 + 0.5 * f.prm.lambda2 * ebulk;
}

// Hessian of E_h at a fixed base point, applied matrix-free to interior
// perturbations (homogeneous Dirichlet).  Bulk blocks are
//   area(v) * 2*lambda2 * [(rho^2 - c0^2) I + 2 p p^T].
class HessOp {
 public:
  HessOp(const HexMesh& m, Eigen::ArrayXd b11, Eigen::ArrayXd b12, Eigen::ArrayXd b22)
      : m_(&m), b11_(std::move(b11)), b12_(std::move(b12)), b22_(std::move(b22)),
        w1_(Eigen::ArrayXd::Zero(m.vertex_count())), w2_(Eigen::ArrayXd::Zero(m.vertex_count())) {}

  int dim() const { return 2 * m_->interior_count(); }

  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
    const HexMesh& m = *m_;
    const int ni = m.interior_count();
    out.resize(2 * ni);
    for (int i = 0; i < ni; ++i) {
      const int vx = m.interior_ids[i];
      w1_[vx] = v[i];
      w2_[vx] = v[ni + i];
    }
    const double ce = 2.0 / kSqrt3;
    for (int i = 0; i < ni; ++i) {
      const int vx = m.interior_ids[i];
      const auto& nb = m.nbr[vx];
      double s1 = 0.0, s2 = 0.0;
      for (int d = 0; d < 6; ++d) { s1 += w1_[nb[d]]; s2 += w2_[nb[d]]; }
      const double a1 = w1_[vx], a2 = w2_[vx];
      out[i]      = ce * (6.0 * a1 - s1) + b11_[i] * a1 + b12_[i] * a2;
      out[ni + i] = ce * (6.0 * a2 - s2) + b12_[i] * a1 + b22_[i] * a2;
    }
    for (int i = 0; i < ni; ++i) {
      const int vx = m.interior_ids[i];
      w1_[vx] = 0.0;
      w2_[vx] = 0.0;
    }
  }

 private:
  const HexMesh* m_;
  Eigen::ArrayXd b11_, b12_, b22_;
  mutable Eigen::ArrayXd w1_, w2_;  // scratch scattered to full vertex set
};

// Energy, gradient and Hessian of the discrete model over the interior DOF
// vector x = [P11_interior; P12_interior].  Instances hold scratch buffers;
// use one instance per thread.
class LdgSystem {
 public:
  LdgSystem() = default;
  LdgSystem(const HexMesh& m, ModelParams p) : m_(&m), prm_(p) {
    if (prm_.eps == 0.0) prm_.eps = default_eps(m);
    validate(prm_, m);
    PField f = make_field(m, prm_);
    f11_ = f.p11;
    f12_ = f.p12;
  }

  const HexMesh& mesh() const { return *m_; }
  const ModelParams& params() const { return prm_; }
  int dim() const { return 2 * m_->interior_count(); }
  // per-DOF area weight of an interior vertex (constant on the interior)
  double area_unit() const { return (kSqrt3 / 2.0) * m_->h * m_->h; }
  // convergence is measured on the area-rescaled gradient
  double residual_norm(const Eigen::VectorXd& g) const {
    return g.lpNorm<Eigen::Infinity>() / area_unit();
  }

  Eigen::VectorXd dofs(const PField& f) const {
    const int ni = m_->interior_count();
    Eigen::VectorXd x(2 * ni);
    for (int i = 0; i < ni; ++i) {
      x[i] = f.p11[m_->interior_ids[i]];
      x[ni + i] = f.p12[m_->interior_ids[i]];
    }
    return x;
  }
  PField field(const Eigen::VectorXd& x) const {
    PField f;
    f.mesh = m_;
    f.prm = prm_;
    f.p11 = f11_;
    f.p12 = f12_;
    const int ni = m_->interior_count();
    for (int i = 0; i < ni; ++i) {
      f.p11[m_->interior_ids[i]] = x[i];
      f.p12[m_->interior_ids[i]] = x[ni + i];
    }
    return f;
  }

  double energy(const Eigen::VectorXd& x) const {
    scatter(x);
    const HexMesh& m = *m_;
    const double c0sq = prm_.c0() * prm_.c0();
    double eel = 0.0, ebulk = 0.0;
    for (int v = 0; v < m.vertex_count(); ++v) {
      const auto& nb = m.nbr[v];
      for (int d = 0; d < 3; ++d) {  // +r1,+r2,+r3 cover each edge once
        const int u = nb[d];
        if (u < 0) continue;
        const double d1 = s1_[v] - s1_[u], d2 = s2_[v] - s2_[u];
        eel += d1 * d1 + d2 * d2;
      }
      const double rho = s1_[v] * s1_[v] + s2_[v] * s2_[v] - c0sq;
      ebulk += m.area[v] * rho * rho;
    }
    return eel / kSqrt3 + 0.5 * prm_.lambda2 * ebulk;
  }

  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& g) const {
    scatter(x);
    const HexMesh& m = *m_;
    const int ni = m.interior_count();
    g.resize(2 * ni);
    const double c0sq = prm_.c0() * prm_.c0();
    const double ce = 2.0 / kSqrt3;
    const double cb = 2.0 * prm_.lambda2;
    for (int i = 0; i < ni; ++i) {
      const int v = m.interior_ids[i];
      const auto& nb = m.nbr[v];
      double a1 = s1_[v], a2 = s2_[v], t1 = 0.0, t2 = 0.0;
      for (int d = 0; d < 6; ++d) { t1 += s1_[nb[d]]; t2 += s2_[nb[d]]; }
      const double w = m.area[v] * cb * (a1 * a1 + a2 * a2 - c0sq);
      g[i] = ce * (6.0 * a1 - t1) + w * a1;
      g[ni + i] = ce * (6.0 * a2 - t2) + w * a2;
    }
  }

  HessOp hessian_at(const Eigen::VectorXd& x) const {
    scatter(x);
    const HexMesh& m = *m_;
    const int ni = m.interior_count();
    Eigen::ArrayXd b11(ni), b12(ni), b22(ni);
    const double c0sq = prm_.c0() * prm_.c0();
    const double cb = 2.0 * prm_.lambda2;
    for (int i = 0; i < ni; ++i) {
      const int v = m.interior_ids[i];
      const double p1 = s1_[v], p2 = s2_[v];
      const double base = m.area[v] * cb * (p1 * p1 + p2 * p2 - c0sq);
      const double q = m.area[v] * cb * 2.0;
      b11[i] = base + q * p1 * p1;
      b12[i] = q * p1 * p2;
      b22[i] = base + q * p2 * p2;
    }
    return HessOp(m, std::move(b11), std::move(b12), std::move(b22));
  }

  // central-difference directional Hessian (dimer approximation)
  void dimer_hessian_vec(const Eigen::VectorXd& x, const Eigen::VectorXd& v, double l,
                         Eigen::VectorXd& out) const {
    Eigen::VectorXd gp, gm;
    gradient(x + l * v, gp);
    gradient(x - l * v, gm);
    out = (gp - gm) / (2.0 * l);
  }

  // SPD elastic part plus a constant shift, used as an eigensolver preconditioner
  void elastic_shift_apply(double shift, const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
    const HexMesh& m = *m_;
    const int ni = m.interior_count();
    s1_ = Eigen::ArrayXd::Zero(m.vertex_count());
    s2_ = Eigen::ArrayXd::Zero(m.vertex_count());
    for (int i = 0; i < ni; ++i) {
      const int vx = m.interior_ids[i];
      s1_[vx] = v[i];
      s2_[vx] = v[ni + i];
    }
    out.resize(2 * ni);
    const double ce = 2.0 / kSqrt3;
    for (int i = 0; i < ni; ++i) {
      const int vx = m.interior_ids[i];
      const auto& nb = m.nbr[vx];
      double t1 = 0.0, t2 = 0.0;
      for (int d = 0; d < 6; ++d) { t1 += s1_[nb[d]]; t2 += s2_[nb[d]]; }
      out[i] = ce * (6.0 * s1_[vx] - t1) + shift * s1_[vx];
      out[ni + i] = ce * (6.0 * s2_[vx] - t2) + shift * s2_[vx];
    }
  }

 private:
  void scatter(const Eigen::VectorXd& x) const {
    const int ni = m_->interior_count();
    s1_ = f11_;
    s2_ = f12_;
    for (int i = 0; i < ni; ++i) {
      s1_[m_->interior_ids[i]] = x[i];
      s2_[m_->interior_ids[i]] = x[ni + i];
    }
  }

  const HexMesh* m_ = nullptr;
  ModelParams prm_;
  Eigen::ArrayXd f11_, f12_;          // Dirichlet data, interior zero
  mutable Eigen::ArrayXd s1_, s2_;    // scratch full-field buffers
};

// relative L2 distance between interior DOF vectors
inline double rel_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double den = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / den;
}

// group action transported to interior DOF vectors; exactly linear because
// boundary slots never feed interior ones
inline Eigen::VectorXd transform_dofs(const LdgSystem& sys, const SymmetryAction& act,
                                      const Eigen::VectorXd& x) {
  PField f = sys.field(x);
  return sys.dofs(apply_group(f, act));
}

}  // namespace hexlc
