#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "hexlc/mesh.hpp"

using namespace hexlc;

namespace {

// independent enumeration of the triangulated hexagon lattice
struct BruteLattice {
  int n;
  std::vector<std::pair<int, int>> pts;
  explicit BruteLattice(int n_) : n(n_) {
    for (int a = -n; a <= n; ++a)
      for (int b = -n; b <= n; ++b)
        if (std::abs(a + b) <= n) pts.emplace_back(a, b);
  }
  bool contains(int a, int b) const {
    return std::abs(a) <= n && std::abs(b) <= n && std::abs(a + b) <= n;
  }
  // number of the six axial directions that stay inside the domain
  int degree(int a, int b) const {
    static const int da[6] = {1, 0, -1, -1, 0, 1};
    static const int db[6] = {0, 1, 1, 0, -1, -1};
    int d = 0;
    for (int k = 0; k < 6; ++k)
      if (contains(a + da[k], b + db[k])) ++d;
    return d;
  }
};

}  // namespace

TEST_CASE("vertex counts match closed form and brute enumeration") {
  for (int n : {2, 4, 6, 10, 50}) {
    BruteLattice brute(n);
    HexMesh m = build_mesh(n);
    CAPTURE(n);
    REQUIRE(m.vertex_count() == static_cast<int>(brute.pts.size()));
    REQUIRE(m.vertex_count() == 1 + 3 * n * (n + 1));
    REQUIRE(m.boundary_count() == 6 * n);
    REQUIRE(m.interior_count() == m.vertex_count() - 6 * n);
  }
  HexMesh m = build_mesh(50);
  REQUIRE(m.vertex_count() == 7651);
  REQUIRE(m.boundary_count() == 300);
  REQUIRE(m.interior_count() == 7351);
}

TEST_CASE("subdivision count must be even and at least two") {
  REQUIRE_THROWS_AS(build_mesh(0), std::invalid_argument);
  REQUIRE_THROWS_AS(build_mesh(1), std::invalid_argument);
  REQUIRE_THROWS_AS(build_mesh(3), std::invalid_argument);
  REQUIRE_THROWS_AS(build_mesh(-2), std::invalid_argument);
  REQUIRE_NOTHROW(build_mesh(2));
}

TEST_CASE("vertex types and neighbor degrees") {
  HexMesh m = build_mesh(6);
  BruteLattice brute(6);
  int corners = 0, edges = 0, interior = 0;
  for (int v = 0; v < m.vertex_count(); ++v) {
    int deg = 0;
    for (int k = 0; k < 6; ++k)
      if (m.nbr[v][k] >= 0) ++deg;
    REQUIRE(deg == brute.degree(m.la[v], m.lb[v]));
    switch (m.type[v]) {
      case VertexType::Corner:
        ++corners;
        REQUIRE(deg == 3);
        break;
      case VertexType::Edge:
        ++edges;
        REQUIRE(deg == 4);
        break;
      case VertexType::Interior:
        ++interior;
        REQUIRE(deg == 6);
        break;
    }
  }
  REQUIRE(corners == 6);
  REQUIRE(edges == 6 * 6 - 6);
  REQUIRE(interior == m.interior_count());
}

TEST_CASE("neighbor table is symmetric and geometrically consistent") {
  HexMesh m = build_mesh(4);
  for (int v = 0; v < m.vertex_count(); ++v) {
    for (int k = 0; k < 6; ++k) {
      int u = m.nbr[v][k];
      if (u < 0) continue;
      // opposite direction points back
      REQUIRE(m.nbr[u][(k + 3) % 6] == v);
      double dx = m.xs[u] - m.xs[v];
      double dy = m.ys[u] - m.ys[v];
      REQUIRE(std::hypot(dx, dy) == Catch::Approx(m.h).epsilon(1e-12));
    }
  }
}

TEST_CASE("vertex weights match incident triangle counts and tile the hexagon") {
  for (int n : {2, 4, 10}) {
    HexMesh m = build_mesh(n);
    double h2 = m.h * m.h;
    double total = 0.0;
    for (int v = 0; v < m.vertex_count(); ++v) {
      total += m.area[v];
      double expect = 0.0;
      switch (m.type[v]) {
        case VertexType::Interior: expect = kSqrt3 / 2.0 * h2; break;
        case VertexType::Edge: expect = kSqrt3 / 4.0 * h2; break;
        case VertexType::Corner: expect = kSqrt3 / 6.0 * h2; break;
      }
      REQUIRE(m.area[v] == Catch::Approx(expect).epsilon(1e-13));
    }
    REQUIRE(total == Catch::Approx(3.0 * kSqrt3 / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("boundary vertices lie on the unit-edge hexagon") {
  HexMesh m = build_mesh(10);
  const double apothem = kSqrt3 / 2.0;
  for (int v = 0; v < m.vertex_count(); ++v) {
    double support = -1e300;
    for (int k = 0; k < 6; ++k) {
      double th = kPi / 6.0 + k * kPi / 3.0;
      support = std::max(support, m.xs[v] * std::cos(th) + m.ys[v] * std::sin(th));
    }
    if (m.type[v] == VertexType::Interior) {
      REQUIRE(support < apothem - 1e-12);
    } else {
      REQUIRE(support == Catch::Approx(apothem).margin(1e-12));
    }
  }
}

TEST_CASE("corner ids sit at the hexagon vertices in order") {
  HexMesh m = build_mesh(8);
  for (int k = 0; k < 6; ++k) {
    int v = m.corner_id[k];
    REQUIRE(m.type[v] == VertexType::Corner);
    double th = k * kPi / 3.0;
    REQUIRE(m.xs[v] == Catch::Approx(std::cos(th)).margin(1e-14));
    REQUIRE(m.ys[v] == Catch::Approx(std::sin(th)).margin(1e-14));
    REQUIRE(m.corner_distance(v) == Catch::Approx(0.0).margin(1e-14));
  }
}

namespace {

// oracle: permutation recovered by nearest-coordinate matching
std::vector<int> match_permutation(const HexMesh& m, const D6Element& g) {
  std::vector<int> perm(m.vertex_count(), -1);
  double alpha = g.rot * kPi / 3.0;
  double c = std::cos(alpha), s = std::sin(alpha);
  for (int v = 0; v < m.vertex_count(); ++v) {
    double x = m.xs[v], y = m.ys[v];
    if (g.refl) y = -y;  // reflect about the x axis first
    double xr = c * x - s * y;
    double yr = s * x + c * y;
    int best = -1;
    double bd = 1e300;
    for (int u = 0; u < m.vertex_count(); ++u) {
      double d = std::hypot(m.xs[u] - xr, m.ys[u] - yr);
      if (d < bd) {
        bd = d;
        best = u;
      }
    }
    REQUIRE(bd < 1e-9);
    perm[v] = best;
  }
  return perm;
}

}  // namespace

TEST_CASE("group permutations match coordinate transport") {
  HexMesh m = build_mesh(2);
  for (const D6Element& g : D6Element::all()) {
    SymmetryAction act = symmetry_permutation(m, g);
    std::vector<int> oracle = match_permutation(m, g);
    for (int v = 0; v < m.vertex_count(); ++v) REQUIRE(act.perm[v] == oracle[v]);
  }
}

TEST_CASE("group permutations preserve type, weight and adjacency") {
  HexMesh m = build_mesh(6);
  for (const D6Element& g : D6Element::all()) {
    SymmetryAction act = symmetry_permutation(m, g);
    std::vector<int> seen(m.vertex_count(), 0);
    for (int v = 0; v < m.vertex_count(); ++v) {
      int u = act.perm[v];
      REQUIRE(u >= 0);
      REQUIRE(u < m.vertex_count());
      ++seen[u];
      REQUIRE(m.type[u] == m.type[v]);
      REQUIRE(m.area[u] == Catch::Approx(m.area[v]).epsilon(1e-14));
    }
    for (int v = 0; v < m.vertex_count(); ++v) REQUIRE(seen[v] == 1);
    // adjacency transport: images of neighbors are neighbors of the image
    for (int v = 0; v < m.vertex_count(); ++v) {
      std::set<int> nb_img, img_nb;
      for (int k = 0; k < 6; ++k) {
        if (m.nbr[v][k] >= 0) nb_img.insert(act.perm[m.nbr[v][k]]);
        if (m.nbr[act.perm[v]][k] >= 0) img_nb.insert(m.nbr[act.perm[v]][k]);
      }
      REQUIRE(nb_img == img_nb);
    }
  }
}

TEST_CASE("group algebra relations hold on the permutations") {
  HexMesh m = build_mesh(4);
  int N = m.vertex_count();
  auto perm_of = [&](const D6Element& g) { return symmetry_permutation(m, g).perm; };
  auto compose = [&](const std::vector<int>& f, const std::vector<int>& g) {
    // apply g, then f
    std::vector<int> r(N);
    for (int v = 0; v < N; ++v) r[v] = f[g[v]];
    return r;
  };
  std::vector<int> id(N);
  for (int v = 0; v < N; ++v) id[v] = v;

  std::vector<int> rho = perm_of(D6Element::rotation(1));
  std::vector<int> sig = perm_of(D6Element::reflection(0));

  std::vector<int> r6 = rho;
  for (int i = 1; i < 6; ++i) r6 = compose(rho, r6);
  REQUIRE(r6 == id);
  REQUIRE(compose(sig, sig) == id);

  // sigma rho sigma = rho^-1
  std::vector<int> rho_inv = perm_of(D6Element::rotation(5));
  REQUIRE(compose(sig, compose(rho, sig)) == rho_inv);

  // rotation(k) equals rho^k
  std::vector<int> acc = id;
  for (int k = 1; k < 6; ++k) {
    acc = compose(rho, acc);
    REQUIRE(perm_of(D6Element::rotation(k)) == acc);
  }
}

TEST_CASE("reflection axes fix the expected vertices") {
  HexMesh m = build_mesh(6);
  // reflection(0) is about the x axis: fixes lattice points with b == 0
  SymmetryAction act = symmetry_permutation(m, D6Element::reflection(0));
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (m.lb[v] == 0)
      REQUIRE(act.perm[v] == v);
    else
      REQUIRE(act.perm[v] != v);
  }
}

TEST_CASE("element constructors reject out-of-range arguments") {
  REQUIRE_THROWS_AS(D6Element::rotation(6), std::invalid_argument);
  REQUIRE_THROWS_AS(D6Element::rotation(-1), std::invalid_argument);
  REQUIRE_THROWS_AS(D6Element::reflection(6), std::invalid_argument);
  REQUIRE(D6Element::all().size() == 12);
}
