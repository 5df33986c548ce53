#pragma once

#include <cmath>
#include <vector>

#include "hexlc/mesh.hpp"
#include "hexlc/model.hpp"
#include "hexlc/rng.hpp"

// Seed configurations for searches and synthetic inputs for reading tests.

namespace hexlc {

struct Singularity {
  double x = 0.0, y = 0.0;
  double deg = 0.5;  // director degree: the P-phase winds by 4 pi deg
};

// field with prescribed interior singularities: the director angle is the
// superposition of point-defect azimuths plus a constant, the order rises
// from zero at each core over the length scale xi
inline PField planted_field(const HexMesh& m, const ModelParams& prm,
                            const std::vector<Singularity>& sing, double xi,
                            double phase0 = 0.0, bool dirichlet = false) {
  PField f = make_field(m, prm);
  const double c0 = f.prm.c0();
  for (int v = 0; v < m.vertex_count(); ++v) {
    double phi = phase0;
    double s = c0;
    for (const Singularity& d : sing) {
      const double dx = m.xs[v] - d.x, dy = m.ys[v] - d.y;
      phi += 2.0 * d.deg * std::atan2(dy, dx);
      s *= std::tanh(std::hypot(dx, dy) / xi);
    }
    f.p11[v] = s * std::cos(phi);
    f.p12[v] = s * std::sin(phi);
  }
  if (dirichlet) apply_boundary(f);
  return f;
}

// boundary data extended inward as a uniform-magnitude field whose phase
// interpolates radially toward a central value; a cheap generic seed
inline PField boundary_seed(const HexMesh& m, const ModelParams& prm) {
  PField f = make_field(m, prm);
  apply_boundary(f);
  const double c0 = f.prm.c0();
  for (int v : m.interior_ids) {
    const double r = std::hypot(m.xs[v], m.ys[v]);
    // phase pattern of the side data continued inward, order fading at 0
    const double ang = std::atan2(m.ys[v], m.xs[v]);
    const double phi = 2.0 * ang + kPi;
    const double s = c0 * std::tanh(r / 0.3);
    f.p11[v] = s * std::cos(phi);
    f.p12[v] = s * std::sin(phi);
  }
  return f;
}

// independent gaussian perturbation of every interior degree of freedom
inline void jitter(PField& f, double amp, unsigned long long seed) {
  const HexMesh& m = *f.mesh;
  Eigen::VectorXd g = gaussian_vector(2 * m.interior_count(), seed);
  int i = 0;
  for (int v : m.interior_ids) {
    f.p11[v] += amp * g[2 * i];
    f.p12[v] += amp * g[2 * i + 1];
    ++i;
  }
}

}  // namespace hexlc
