#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Triangular-lattice discretization of the regular hexagon with unit edge
// length, vertices w_k = (cos((k-1)pi/3), sin((k-1)pi/3)), k = 1..6.
//
// Lattice points are integer combinations a*r1 + b*r2 of the basis
// r1 = (1,0), r2 = (1/2, sqrt(3)/2) scaled by h = 1/n.  A point (a,b) lies in
// the closed hexagon iff |a| <= n, |b| <= n, |a+b| <= n, so membership,
// boundary tags and the D6 action are all exact integer tests.

namespace hexlc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt3 = 1.7320508075688772;

enum class VertexType : std::uint8_t { Interior, Edge, Corner };

// Element of the dihedral group D6: rot * pi/3 rotation, optionally preceded
// by the reflection about the x-axis.  refl=true with rot=k is the reflection
// about the axis at angle k*pi/6.
struct D6Element {
  int rot = 0;     // 0..5
  bool refl = false;

  static D6Element rotation(int k) {
    if (k < 0 || k > 5) throw std::invalid_argument("D6 rotation index must be in 0..5");
    return {k, false};
  }
  static D6Element reflection(int k) {
    if (k < 0 || k > 5) throw std::invalid_argument("D6 reflection axis index must be in 0..5");
    return {k, true};
  }
  static std::array<D6Element, 12> all() {
    std::array<D6Element, 12> g{};
    for (int k = 0; k < 6; ++k) { g[k] = {k, false}; g[6 + k] = {k, true}; }
    return g;
  }
  bool identity() const { return rot == 0 && !refl; }
};

// Vertex permutation realizing a D6 element together with the component map
// for (P11,P12).  A rotation by alpha rotates the components by 2*alpha; a
// reflection about the axis at angle k*pi/6 maps
//   (P11,P12) -> (cos(2a) P11 + sin(2a) P12, sin(2a) P11 - cos(2a) P12)
// with a = k*pi/3.
struct SymmetryAction {
  std::vector<int> perm;   // vertex v maps to perm[v]
  double c = 1.0, s = 0.0; // cos/sin of the component angle 2*alpha
  bool refl = false;

  void apply_components(double p11, double p12, double& q11, double& q12) const {
    if (refl) {
      q11 = c * p11 + s * p12;
      q12 = s * p11 - c * p12;
    } else {
      q11 = c * p11 - s * p12;
      q12 = s * p11 + c * p12;
    }
  }
};

struct HexMesh {
  int n = 0;       // subdivisions per hexagon edge
  double h = 0.0;  // lattice spacing 1/n

  std::vector<double> xs, ys;            // vertex coordinates
  std::vector<int> la, lb;               // lattice coordinates (a,b)
  std::vector<VertexType> type;
  std::vector<int> tag;                  // edge id 1..6, corner id 1..6, 0 for interior
  std::vector<std::array<int, 6>> nbr;   // +r1,+r2,+r3,-r1,-r2,-r3; -1 if absent
  std::vector<double> area;              // lumped vertex area
  std::vector<int> interior_ids;         // interior vertices in index order
  std::vector<int> dof_of;               // vertex -> interior slot, -1 on boundary

  std::vector<int> lut;                  // (a,b) -> vertex index lookup
  std::array<int, 6> corner_id{};        // vertex index of corner w_k (slot k-1)

  int vertex_count() const { return static_cast<int>(xs.size()); }
  int boundary_count() const { return 6 * n; }
  int interior_count() const { return static_cast<int>(interior_ids.size()); }

  bool in_domain(int a, int b) const {
    return std::abs(a) <= n && std::abs(b) <= n && std::abs(a + b) <= n;
  }
  int idx(int a, int b) const {
    if (!in_domain(a, b)) return -1;
    return lut[static_cast<std::size_t>(b + n) * (2 * n + 1) + (a + n)];
  }
  // distance along the boundary to the nearest hexagon corner (boundary vertices)
  double corner_distance(int v) const {
    double best = 1e300;
    for (int k = 0; k < 6; ++k) {
      double dx = xs[v] - std::cos(k * kPi / 3.0);
      double dy = ys[v] - std::sin(k * kPi / 3.0);
      best = std::min(best, std::hypot(dx, dy));
    }
    return best;
  }
};

namespace detail {
// neighbor offsets in lattice coordinates, ordered by angle 0,60,...,300 deg
inline constexpr int kDirA[6] = {1, 0, -1, -1, 0, 1};
inline constexpr int kDirB[6] = {0, 1, 1, 0, -1, -1};

// corner w_k at lattice coordinates; slot k-1
inline void corner_coords(int n, int k, int& a, int& b) {
  static constexpr int ca[6] = {1, 0, -1, -1, 0, 1};
  static constexpr int cb[6] = {0, 1, 1, 0, -1, -1};
  a = n * ca[k - 1];
  b = n * cb[k - 1];
}
}  // namespace detail

// Builds the mesh for subdivision count n.  Vertex count is 1+3n(n+1).
// n must be even (edge midpoints are then lattice vertices, so the mismatch
// zones sit symmetrically around each corner) and at least 2.
inline HexMesh build_mesh(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("mesh subdivision count must be even and >= 2");
  HexMesh m;
  m.n = n;
  m.h = 1.0 / n;
  const int w = 2 * n + 1;
  m.lut.assign(static_cast<std::size_t>(w) * w, -1);

  for (int b = -n; b <= n; ++b) {
    const int alo = std::max(-n, -n - b), ahi = std::min(n, n - b);
    for (int a = alo; a <= ahi; ++a) {
      const int v = static_cast<int>(m.xs.size());
      m.lut[static_cast<std::size_t>(b + n) * w + (a + n)] = v;
      m.la.push_back(a);
      m.lb.push_back(b);
      m.xs.push_back(m.h * (a + 0.5 * b));
      m.ys.push_back(m.h * b * (kSqrt3 / 2.0));
    }
  }
  const int nv = m.vertex_count();
  m.type.assign(nv, VertexType::Interior);
  m.tag.assign(nv, 0);
  m.nbr.assign(nv, {-1, -1, -1, -1, -1, -1});
  m.area.assign(nv, 0.0);
  m.dof_of.assign(nv, -1);

  for (int k = 1; k <= 6; ++k) {
    int a, b;
    detail::corner_coords(n, k, a, b);
    m.corner_id[k - 1] = m.idx(a, b);
  }

  for (int v = 0; v < nv; ++v) {
    const int a = m.la[v], b = m.lb[v];
    for (int d = 0; d < 6; ++d)
      m.nbr[v][d] = m.idx(a + detail::kDirA[d], b + detail::kDirB[d]);

    // boundary tags: C1: a+b=n, C2: b=n, C3: a=-n, C4: a+b=-n, C5: b=-n, C6: a=n
    const bool on[6] = {a + b == n, b == n, a == -n, a + b == -n, b == -n, a == n};
    int hits = 0, last = 0;
    for (int e = 0; e < 6; ++e)
      if (on[e]) { ++hits; last = e + 1; }
    if (hits >= 2) {
      m.type[v] = VertexType::Corner;
      for (int k = 1; k <= 6; ++k)
        if (m.corner_id[k - 1] == v) m.tag[v] = k;
    } else if (hits == 1) {
      m.type[v] = VertexType::Edge;
      m.tag[v] = last;
    } else {
      m.dof_of[v] = static_cast<int>(m.interior_ids.size());
      m.interior_ids.push_back(v);
    }

    // area(v) = (incident triangle count) * (sqrt(3)/4) h^2 / 3
    int tris = 0;
    for (int d = 0; d < 6; ++d)
      if (m.nbr[v][d] >= 0 && m.nbr[v][(d + 1) % 6] >= 0) ++tris;
    m.area[v] = tris * (kSqrt3 / 4.0) * m.h * m.h / 3.0;
  }
  return m;
}

// Vertex permutation and component map for g in D6.  The lattice maps are
// exact: rotation by pi/3 sends (a,b) -> (-b, a+b), the x-axis reflection
// sends (a,b) -> (a+b, -b).
inline SymmetryAction symmetry_permutation(const HexMesh& m, D6Element g) {
  if (g.rot < 0 || g.rot > 5) throw std::invalid_argument("D6 element out of range");
  SymmetryAction act;
  act.refl = g.refl;
  const double two_alpha = 2.0 * g.rot * kPi / 3.0;
  act.c = std::cos(two_alpha);
  act.s = std::sin(two_alpha);
  act.perm.resize(m.vertex_count());
  for (int v = 0; v < m.vertex_count(); ++v) {
    int a = m.la[v], b = m.lb[v];
    if (g.refl) { int t = a + b; b = -b; a = t; }
    for (int r = 0; r < g.rot; ++r) { int t = -b; b = a + b; a = t; }
    const int img = m.idx(a, b);
    if (img < 0) throw std::runtime_error("symmetry image left the domain");
    act.perm[v] = img;
  }
  return act;
}

}  // namespace hexlc
