#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "hexlc/mesh.hpp"
#include "hexlc/model.hpp"
#include "hexlc/rng.hpp"

using namespace hexlc;

namespace {

// nearest boundary vertex to a target point
int nearest_vertex(const HexMesh& m, double x, double y) {
  int best = -1;
  double bd = 1e300;
  for (int v = 0; v < m.vertex_count(); ++v) {
    double d = std::hypot(m.xs[v] - x, m.ys[v] - y);
    if (d < bd) { bd = d; best = v; }
  }
  return best;
}

double wrap_pi(double d) {
  while (d > kPi) d -= 2.0 * kPi;
  while (d < -kPi) d += 2.0 * kPi;
  return d;
}

}  // namespace

TEST_CASE("material constants") {
  ModelParams p;
  REQUIRE(p.c0() == Catch::Approx(0.64e4 / (2.0 * 0.35e4)).epsilon(1e-15));
  REQUIRE(p.c0() == Catch::Approx(0.914285714).margin(1e-9));
  REQUIRE(p.A() == Catch::Approx(-0.64e4 * 0.64e4 / (3.0 * 0.35e4)).epsilon(1e-15));
}

TEST_CASE("side one carries the pinned tangential value") {
  HexMesh m = build_mesh(8);
  ModelParams p;
  PField f = make_field(m, p);
  // midpoint of the side from (1,0) to (1/2, sqrt(3)/2); distance 1/2 to the
  // corners keeps it clear of the default mismatch zone 3h = 3/8
  int v = nearest_vertex(m, 0.75, kSqrt3 / 4.0);
  REQUIRE(m.type[v] == VertexType::Edge);
  REQUIRE(f.p11[v] == Catch::Approx(-0.457143).margin(1e-6));
  REQUIRE(f.p12[v] == Catch::Approx(-0.791788).margin(1e-6));
}

TEST_CASE("side values are tangential with order c0 outside the mismatch zone") {
  HexMesh m = build_mesh(12);
  ModelParams p;
  PField f = make_field(m, p);
  const double c0 = p.c0();
  const double eps = default_eps(m);
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (m.type[v] != VertexType::Edge) continue;
    if (m.corner_distance(v) < eps) continue;
    double s = std::hypot(f.p11[v], f.p12[v]);
    REQUIRE(s == Catch::Approx(c0).epsilon(1e-12));
    // director angle = phase/2 must be parallel to the side direction
    int k = m.tag[v];
    double gamma = 0.5 * std::atan2(f.p12[v], f.p11[v]);
    double side_angle = (k + 1) * kPi / 3.0;
    REQUIRE(std::abs(std::sin(gamma - side_angle)) < 1e-12);
  }
}

TEST_CASE("corner values average the adjacent sides") {
  HexMesh m = build_mesh(8);
  ModelParams p;
  PField f = make_field(m, p);
  const double c0 = p.c0();
  for (int k = 1; k <= 6; ++k) {
    int v = m.corner_id[k - 1];
    int km = k == 1 ? 6 : k - 1;
    double a = -0.5 * c0 * (std::cos((2 * km - 1) * kPi / 3.0) + std::cos((2 * k - 1) * kPi / 3.0));
    double b = -0.5 * c0 * (std::sin((2 * km - 1) * kPi / 3.0) + std::sin((2 * k - 1) * kPi / 3.0));
    REQUIRE(f.p11[v] == Catch::Approx(a).margin(1e-14));
    REQUIRE(f.p12[v] == Catch::Approx(b).margin(1e-14));
    // adjacent side phases differ by 2pi/3, so the average has length c0/2
    REQUIRE(std::hypot(f.p11[v], f.p12[v]) == Catch::Approx(0.5 * c0).epsilon(1e-12));
  }
}

TEST_CASE("mismatch zone interpolates linearly between corner and side value") {
  HexMesh m = build_mesh(8);
  ModelParams p;  // default eps = 3h
  PField f = make_field(m, p);
  const double c0 = p.c0();
  // vertices one lattice step from corner w1 = (1,0) along its two sides
  int v = m.idx(m.n, -1);      // on the side a = n
  int u = m.idx(m.n - 1, 1);   // on the side a + b = n
  REQUIRE(m.type[v] == VertexType::Edge);
  REQUIRE(m.type[u] == VertexType::Edge);
  double e6a = -c0 * std::cos(11.0 * kPi / 3.0), e6b = -c0 * std::sin(11.0 * kPi / 3.0);
  double e1a = -c0 * std::cos(kPi / 3.0), e1b = -c0 * std::sin(kPi / 3.0);
  double ca = 0.5 * (e6a + e1a), cb = 0.5 * (e6b + e1b);
  const double t = 1.0 / 3.0;  // distance h into a zone of width 3h
  REQUIRE(f.p11[v] == Catch::Approx(t * e6a + (1 - t) * ca).margin(1e-14));
  REQUIRE(f.p12[v] == Catch::Approx(t * e6b + (1 - t) * cb).margin(1e-14));
  REQUIRE(f.p11[u] == Catch::Approx(t * e1a + (1 - t) * ca).margin(1e-14));
  REQUIRE(f.p12[u] == Catch::Approx(t * e1b + (1 - t) * cb).margin(1e-14));
}

TEST_CASE("parameter validation") {
  HexMesh m4 = build_mesh(4);
  ModelParams p;
  p.lambda2 = -1.0;
  REQUIRE_THROWS_AS(make_field(m4, p), std::invalid_argument);
  p = ModelParams{};
  p.eps = 0.1;  // below h = 0.25
  REQUIRE_THROWS_AS(make_field(m4, p), std::invalid_argument);
  p.eps = 0.6;
  REQUIRE_THROWS_AS(make_field(m4, p), std::invalid_argument);
  p.eps = 0.0;  // default 3h = 0.75 exceeds half a side
  REQUIRE_THROWS_AS(make_field(m4, p), std::invalid_argument);
  p.eps = 0.25;
  REQUIRE_NOTHROW(make_field(m4, p));
  // n = 2 leaves no admissible width at all
  HexMesh m2 = build_mesh(2);
  ModelParams q;
  q.eps = 0.49;
  REQUIRE_THROWS_AS(make_field(m2, q), std::invalid_argument);
}

TEST_CASE("boundary phase winds by four pi around the hexagon") {
  HexMesh m = build_mesh(10);
  PField f = make_field(m, ModelParams{});
  // walk the boundary counterclockwise, one lattice step at a time
  const int n = m.n;
  const int starts[6][2] = {{n, 0}, {0, n}, {-n, n}, {-n, 0}, {0, -n}, {n, -n}};
  const int steps[6][2] = {{-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}, {0, 1}};
  std::vector<int> loop;
  for (int e = 0; e < 6; ++e)
    for (int t = 0; t < n; ++t)
      loop.push_back(m.idx(starts[e][0] + t * steps[e][0], starts[e][1] + t * steps[e][1]));
  REQUIRE(static_cast<int>(loop.size()) == m.boundary_count());
  double total = 0.0;
  double prev = std::atan2(f.p12[loop[0]], f.p11[loop[0]]);
  for (size_t i = 1; i <= loop.size(); ++i) {
    int v = loop[i % loop.size()];
    double cur = std::atan2(f.p12[v], f.p11[v]);
    total += wrap_pi(cur - prev);
    prev = cur;
  }
  REQUIRE(total == Catch::Approx(4.0 * kPi).margin(1e-9));
}

TEST_CASE("energy vanishes on a uniform ordered field and matches the flat-field value") {
  HexMesh m = build_mesh(8);
  ModelParams p;
  p.eps = default_eps(m);
  PField f;
  f.mesh = &m;
  f.prm = p;
  const double c0 = p.c0();
  f.p11 = Eigen::ArrayXd::Constant(m.vertex_count(), c0 * std::cos(1.1));
  f.p12 = Eigen::ArrayXd::Constant(m.vertex_count(), c0 * std::sin(1.1));
  REQUIRE(energy_of(f) == Catch::Approx(0.0).margin(1e-12));

  f.p11.setZero();
  f.p12.setZero();
  const double area_total = 3.0 * kSqrt3 / 2.0;
  REQUIRE(energy_of(f) ==
          Catch::Approx(0.5 * p.lambda2 * c0 * c0 * c0 * c0 * area_total).epsilon(1e-12));
}

TEST_CASE("optimized energy path agrees with the direct field evaluation") {
  HexMesh m = build_mesh(8);
  LdgSystem sys(m, ModelParams{});
  Eigen::VectorXd x = 0.9 * gaussian_vector(sys.dim(), 71);
  PField f = sys.field(x);
  REQUIRE(sys.energy(x) == Catch::Approx(energy_of(f)).epsilon(1e-13));
  // round trip through the field representation
  Eigen::VectorXd back = sys.dofs(f);
  REQUIRE((back - x).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("difference stencil is exact on quadratics") {
  HexMesh m = build_mesh(6);
  std::vector<double> u(m.vertex_count());
  for (int v = 0; v < m.vertex_count(); ++v) u[v] = m.xs[v] * m.xs[v] + m.ys[v] * m.ys[v];
  const double ce = 2.0 / kSqrt3;
  const double area_unit = kSqrt3 / 2.0 * m.h * m.h;
  for (int i = 0; i < m.interior_count(); ++i) {
    int v = m.interior_ids[i];
    double s = 0.0;
    for (int k = 0; k < 6; ++k) s += u[m.nbr[v][k]];
    // (2/sqrt(3)) (6u - sum) = -2 area_unit * laplacian, laplacian = 4 here
    REQUIRE(ce * (6.0 * u[v] - s) == Catch::Approx(-8.0 * area_unit).margin(1e-13));
  }
}

TEST_CASE("gradient matches central differences of the energy") {
  HexMesh m = build_mesh(8);
  for (double l2 : {5.0, 70.0, 600.0}) {
    ModelParams p;
    p.lambda2 = l2;
    LdgSystem sys(m, p);
    Eigen::VectorXd x = 0.7 * gaussian_vector(sys.dim(), 1234 + static_cast<uint64_t>(l2));
    Eigen::VectorXd g;
    sys.gradient(x, g);
    const double delta = 1e-6;
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd u = gaussian_vector(sys.dim(), 99 + trial);
      u.normalize();
      double fd = (sys.energy(x + delta * u) - sys.energy(x - delta * u)) / (2.0 * delta);
      double an = g.dot(u);
      CAPTURE(l2, trial);
      REQUIRE(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
    }
  }
}

TEST_CASE("hessian operator is symmetric and matches the dimer quotient") {
  HexMesh m = build_mesh(8);
  LdgSystem sys(m, ModelParams{});
  Eigen::VectorXd x = 0.8 * gaussian_vector(sys.dim(), 5150);
  HessOp H = sys.hessian_at(x);
  Eigen::VectorXd u = gaussian_vector(sys.dim(), 1);
  Eigen::VectorXd w = gaussian_vector(sys.dim(), 2);
  Eigen::VectorXd Hu, Hw;
  H.apply(u, Hu);
  H.apply(w, Hw);
  double a = Hu.dot(w), b = u.dot(Hw);
  REQUIRE(std::abs(a - b) <= 1e-10 * std::max(std::abs(a), std::abs(b)));

  // dimer error is quadratic in the spacing: halving it divides the error by 4
  Eigen::VectorXd d1, d2;
  sys.dimer_hessian_vec(x, u, 1e-3, d1);
  sys.dimer_hessian_vec(x, u, 5e-4, d2);
  double e1 = (d1 - Hu).norm();
  double e2 = (d2 - Hu).norm();
  REQUIRE(e2 > 0.0);
  REQUIRE(e1 / e2 == Catch::Approx(4.0).margin(0.5));
  REQUIRE((d1 - Hu).norm() / Hu.norm() < 1e-5);
}

TEST_CASE("energy and gradient are equivariant under the dihedral group") {
  HexMesh m = build_mesh(8);
  ModelParams p;
  p.lambda2 = 70.0;
  LdgSystem sys(m, p);
  Eigen::VectorXd x = 0.8 * gaussian_vector(sys.dim(), 4242);
  Eigen::VectorXd g;
  sys.gradient(x, g);
  const double e0 = sys.energy(x);
  for (const D6Element& el : D6Element::all()) {
    SymmetryAction act = symmetry_permutation(m, el);
    // Dirichlet data itself is invariant
    PField f0 = make_field(m, p);
    PField fg = apply_group(f0, act);
    for (int v = 0; v < m.vertex_count(); ++v) {
      if (m.type[v] == VertexType::Interior) continue;
      REQUIRE(fg.p11[v] == Catch::Approx(f0.p11[v]).margin(1e-13));
      REQUIRE(fg.p12[v] == Catch::Approx(f0.p12[v]).margin(1e-13));
    }
    Eigen::VectorXd xg = testutil::transform_dofs(sys, act, x);
    REQUIRE(sys.energy(xg) == Catch::Approx(e0).epsilon(1e-10));
    Eigen::VectorXd gg, want;
    sys.gradient(xg, gg);
    // interior slots transform independently of the boundary, so the same
    // transport works for gradients
    want = testutil::transform_dofs(sys, act, g);
    REQUIRE(rel_distance(gg, want) < 1e-10);
  }
}

TEST_CASE("elastic shift operator matches a direct stencil evaluation") {
  HexMesh m = build_mesh(4);
  ModelParams p;
  p.eps = m.h;
  LdgSystem sys(m, p);
  const int ni = m.interior_count();
  Eigen::VectorXd v = gaussian_vector(2 * ni, 7);
  Eigen::VectorXd out;
  sys.elastic_shift_apply(0.37, v, out);
  std::vector<double> w1(m.vertex_count(), 0.0), w2(m.vertex_count(), 0.0);
  for (int i = 0; i < ni; ++i) {
    w1[m.interior_ids[i]] = v[i];
    w2[m.interior_ids[i]] = v[ni + i];
  }
  const double ce = 2.0 / kSqrt3;
  for (int i = 0; i < ni; ++i) {
    int vx = m.interior_ids[i];
    double s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < 6; ++k) {
      s1 += w1[m.nbr[vx][k]];
      s2 += w2[m.nbr[vx][k]];
    }
    REQUIRE(out[i] == Catch::Approx(ce * (6.0 * w1[vx] - s1) + 0.37 * w1[vx]).margin(1e-12));
    REQUIRE(out[ni + i] == Catch::Approx(ce * (6.0 * w2[vx] - s2) + 0.37 * w2[vx]).margin(1e-12));
  }
}
