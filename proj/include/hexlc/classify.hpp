#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hexlc/mesh.hpp"
#include "hexlc/model.hpp"

// Topological bookkeeping for computed configurations.
//
// Interior defects are connected clusters of low-order vertices; each gets a
// director degree from the P-phase winding along a surrounding lattice loop,
//   degree = (total phase change) / (4 pi),
// quantized to half integers.  Every corner gets a wedge-arc reading: the
// unwrapped P-phase change along the lattice arc of radius r about the
// corner, traversed from the C_{k-1} side to the C_k side.  Tangential
// Dirichlet data pins the arc endpoints, so the total is a multiple of
// 2 pi/3; u = +1 is a bend-like corner (degree -1/6), u = -2 a splay-like
// corner (degree +1/3).  The corner degrees and interior degrees always sum
// to zero on valid readings.

namespace hexlc {

struct ClassifyConfig {
  double s_frac = 0.4;          // defect threshold as a fraction of c0
  int arc_radius = 4;           // corner reading radius in lattice units
  int loop_radius = 3;          // interior winding loop radius
  int min_samples = 24;         // phase samples per reading, lower bound
  double assoc_radius = 0.25;   // near-corner reporting distance
  double disp_thresh = 0.05;    // central defect displacement threshold
  double attach_radius = 0.55;  // corner-complex capture distance
  double attach_angle = 0.32;   // angular gate about the corner ray, radians
  double neck_frac = 0.7;       // order recovery marking a split (bend) complex
};

struct OrderDirector {
  Eigen::ArrayXd s;      // scalar order sqrt(P11^2 + P12^2)
  Eigen::ArrayXd gamma;  // director angle in [0, pi)
};

inline OrderDirector order_and_director(const PField& f) {
  const int nv = f.size();
  OrderDirector od;
  od.s.resize(nv);
  od.gamma.resize(nv);
  for (int v = 0; v < nv; ++v) {
    od.s[v] = std::hypot(f.p11[v], f.p12[v]);
    double g = 0.5 * std::atan2(f.p12[v], f.p11[v]);
    if (g < 0.0) g += kPi;
    if (g >= kPi) g = 0.0;  // tiny negatives round back to pi
    od.gamma[v] = g;
  }
  return od;
}

// embedding of the reduced tensor into a traceless 3x3 Q-tensor
inline Eigen::Matrix3d lift_to_Q(const PField& f, int v) {
  const double off = f.prm.B / (6.0 * f.prm.C);
  Eigen::Matrix3d Q;
  Q << f.p11[v] + off, f.p12[v], 0.0,
       f.p12[v], -f.p11[v] + off, 0.0,
       0.0, 0.0, -f.prm.B / (3.0 * f.prm.C);
  return Q;
}

namespace detail {

inline double wrap_pi(double d) {
  while (d > kPi) d -= 2.0 * kPi;
  while (d < -kPi) d += 2.0 * kPi;
  return d;
}

// closed lattice ring of radius r about (a0, b0): 6r vertices, consecutive
// ones adjacent; empty when any part leaves the domain
inline std::vector<int> hex_ring(const HexMesh& m, int a0, int b0, int r) {
  std::vector<int> out;
  out.reserve(6 * r);
  int a = a0 + r, b = b0;
  const int order[6] = {2, 3, 4, 5, 0, 1};
  for (int side : order) {
    for (int j = 0; j < r; ++j) {
      if (!m.in_domain(a, b)) return {};
      out.push_back(m.idx(a, b));
      a += kDirA[side];
      b += kDirB[side];
    }
  }
  return out;
}

struct PathReading {
  double total = 0.0;     // unwrapped phase change
  double s_min = 0.0;     // minimum interpolated order
  double max_step = 0.0;  // largest single phase step seen
};

// unwrapped phase change along a vertex path, with subdiv interpolation
// points per segment
inline PathReading unwrap_path(const PField& f, const std::vector<int>& path, int subdiv) {
  PathReading r;
  r.s_min = std::hypot(f.p11[path[0]], f.p12[path[0]]);
  double prev = std::atan2(f.p12[path[0]], f.p11[path[0]]);
  for (size_t i = 1; i < path.size(); ++i) {
    const int u = path[i - 1], v = path[i];
    for (int j = 1; j <= subdiv; ++j) {
      const double t = static_cast<double>(j) / subdiv;
      const double p1 = (1.0 - t) * f.p11[u] + t * f.p11[v];
      const double p2 = (1.0 - t) * f.p12[u] + t * f.p12[v];
      r.s_min = std::min(r.s_min, std::hypot(p1, p2));
      const double cur = std::atan2(p2, p1);
      const double step = wrap_pi(cur - prev);
      r.max_step = std::max(r.max_step, std::abs(step));
      r.total += step;
      prev = cur;
    }
  }
  return r;
}

// unwrap with the subdivision doubled until every step is resolved; a path
// that cannot be resolved (a zero on the path) comes back with max_step > pi/2
inline PathReading unwrap_path_adaptive(const PField& f, const std::vector<int>& path,
                                        int subdiv0) {
  int subdiv = subdiv0;
  PathReading r = unwrap_path(f, path, subdiv);
  while (r.max_step > kPi / 2.0 && subdiv < 256) {
    subdiv *= 2;
    r = unwrap_path(f, path, subdiv);
  }
  return r;
}

inline int circ_dist(int a, int b) {
  int d = std::abs(a - b) % 6;
  return std::min(d, 6 - d);
}

}  // namespace detail

struct DefectCluster {
  std::vector<int> verts;  // member vertices, ascending
  int rep = -1;            // lowest-order member
  double x = 0.0, y = 0.0; // weighted cluster position
  double s_min = 0.0;
  double winding = 0.0;    // raw loop total / (2 pi)
  double degree = 0.0;     // director degree, half-integer when quantized
  int loop_radius = 0;
  bool quantized = false;
  bool merged = false;     // loop encloses more than this cluster
  int near_corner = 0;     // 1..6 when within assoc_radius of a corner
  double corner_dist = 0.0;
};

// connected clusters of interior vertices with s below the threshold
inline std::vector<DefectCluster> find_defects(const PField& f, const ClassifyConfig& cfg = {}) {
  const HexMesh& m = *f.mesh;
  const double thr = cfg.s_frac * f.prm.c0();
  const int nv = m.vertex_count();
  std::vector<char> low(nv, 0), seen(nv, 0);
  for (int v = 0; v < nv; ++v)
    low[v] = m.type[v] == VertexType::Interior &&
             std::hypot(f.p11[v], f.p12[v]) < thr;

  std::vector<DefectCluster> out;
  std::vector<int> stack;
  for (int v0 = 0; v0 < nv; ++v0) {
    if (!low[v0] || seen[v0]) continue;
    DefectCluster c;
    stack.assign(1, v0);
    seen[v0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      c.verts.push_back(v);
      for (int k = 0; k < 6; ++k) {
        int u = m.nbr[v][k];
        if (u >= 0 && low[u] && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    std::sort(c.verts.begin(), c.verts.end());
    c.s_min = 1e300;
    double wsum = 0.0;
    for (int v : c.verts) {
      double s = std::hypot(f.p11[v], f.p12[v]);
      if (s < c.s_min) {
        c.s_min = s;
        c.rep = v;
      }
      double w = std::max(1e-12, thr - s);
      wsum += w;
      c.x += w * m.xs[v];
      c.y += w * m.ys[v];
    }
    c.x /= wsum;
    c.y /= wsum;
    double best = 1e300;
    for (int k = 1; k <= 6; ++k) {
      int cv = m.corner_id[k - 1];
      double d = std::hypot(c.x - m.xs[cv], c.y - m.ys[cv]);
      if (d < best) {
        best = d;
        c.corner_dist = d;
        c.near_corner = d <= cfg.assoc_radius ? k : 0;
      }
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const DefectCluster& a, const DefectCluster& b) { return a.rep < b.rep; });
  return out;
}

// winding loops around each cluster.  A valid loop encloses every member of
// its own cluster and nothing of any other; the interpolated phase must be
// resolvable (no zero crossings on the loop itself).  When every admissible
// radius also encloses a neighbour, the combined reading is reported with
// merged = true rather than dropped.
inline void measure_degrees(const PField& f, std::vector<DefectCluster>& cs,
                            const ClassifyConfig& cfg = {}) {
  const HexMesh& m = *f.mesh;
  auto axial = [&](int v, int u) {
    const int da = m.la[v] - m.la[u], db = m.lb[v] - m.lb[u];
    return (std::abs(da) + std::abs(db) + std::abs(da + db)) / 2;
  };
  for (size_t ci = 0; ci < cs.size(); ++ci) {
    DefectCluster& c = cs[ci];
    int extent = 0;
    for (int v : c.verts) extent = std::max(extent, axial(v, c.rep));
    const int L = std::max(cfg.loop_radius, extent + 1);
    const int ladder[6] = {L, L + 1, L + 2, L + 3, cfg.loop_radius - 1, cfg.loop_radius - 2};
    int fallback = 0;
    double fb_total = 0.0;
    for (int r : ladder) {
      if (r < extent + 1 || r < 1) continue;
      std::vector<int> ring = detail::hex_ring(m, m.la[c.rep], m.lb[c.rep], r);
      if (ring.empty()) continue;  // clipped by the boundary
      ring.push_back(ring.front());
      const int subdiv = std::max(2, (cfg.min_samples + 6 * r - 1) / (6 * r));
      const detail::PathReading pr = detail::unwrap_path_adaptive(f, ring, subdiv);
      if (pr.s_min < 1e-12 || pr.max_step > kPi / 2.0) continue;  // zero on the loop
      bool foreign = false;
      for (size_t cj = 0; cj < cs.size() && !foreign; ++cj) {
        if (cj == ci) continue;
        for (int v : cs[cj].verts)
          if (axial(v, c.rep) <= r) { foreign = true; break; }
      }
      if (foreign) {
        if (fallback == 0) { fallback = r; fb_total = pr.total; }
        continue;
      }
      c.loop_radius = r;
      c.winding = pr.total / (2.0 * kPi);
      break;
    }
    if (c.loop_radius == 0 && fallback > 0) {
      c.loop_radius = fallback;
      c.winding = fb_total / (2.0 * kPi);
      c.merged = true;
    }
    if (c.loop_radius > 0) {
      const double w = std::round(c.winding);
      c.quantized = std::abs(c.winding - w) <= 0.15;
      c.degree = 0.5 * w;
    }
  }
}

struct CornerReading {
  int corner = 0;          // 1..6
  double arc_total = 0.0;  // unwrapped phase change along the wedge arc
  int u = 0;               // arc_total / (2 pi / 3), rounded
  int kind = 0;            // +1 bend, -1 splay, 0 otherwise
  double degree = 0.0;     // -u / 6
  bool determined = false;
  int radius = 0;
};

// wedge-arc reading at corner k (1..6)
inline CornerReading vertex_character(const PField& f, int corner_k,
                                      const ClassifyConfig& cfg = {}) {
  const HexMesh& m = *f.mesh;
  CornerReading cr;
  cr.corner = corner_k;
  const int cv = m.corner_id[corner_k - 1];
  const double cx = m.xs[cv], cy = m.ys[cv];
  const double bisector = (corner_k - 1) * kPi / 3.0 + kPi;  // inward direction
  const double thr = cfg.s_frac * f.prm.c0();

  // radii below the mismatch width have interpolated anchors; skip them
  const int r_anchor = static_cast<int>(std::floor(f.prm.eps / m.h)) + 1;
  const int base = std::max(cfg.arc_radius, r_anchor);
  const int ladder[5] = {base, base - 1, base + 1, base - 2, base + 2};

  for (int r : ladder) {
    if (r < 2 || r < r_anchor) continue;
    // in-domain slice of the lattice ring about the corner
    std::vector<std::pair<double, int>> pts;  // (relative angle, vertex)
    for (int da = -r; da <= r; ++da) {
      for (int db = -r; db <= r; ++db) {
        if ((std::abs(da) + std::abs(db) + std::abs(da + db)) / 2 != r) continue;
        const int a = m.la[cv] + da, b = m.lb[cv] + db;
        if (!m.in_domain(a, b)) continue;
        const int v = m.idx(a, b);
        const double ang = std::atan2(m.ys[v] - cy, m.xs[v] - cx);
        pts.emplace_back(detail::wrap_pi(ang - bisector), v);
      }
    }
    if (pts.size() < 3) continue;
    // traverse from the C_{k-1} side (+60 degrees) to the C_k side (-60)
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<int> path;
    path.reserve(pts.size());
    for (auto& p : pts) path.push_back(p.second);
    if (m.type[path.front()] == VertexType::Interior ||
        m.type[path.back()] == VertexType::Interior)
      continue;  // endpoints must be pinned boundary vertices
    const int segs = static_cast<int>(path.size()) - 1;
    const int subdiv = std::max(2, (cfg.min_samples + segs - 1) / segs);
    const detail::PathReading pr = detail::unwrap_path_adaptive(f, path, subdiv);
    if (pr.s_min < thr || pr.max_step > kPi / 2.0)
      continue;  // defect on or near the arc: try another radius

    cr.arc_total = pr.total;
    cr.radius = r;
    const double u_real = pr.total / (2.0 * kPi / 3.0);
    cr.u = static_cast<int>(std::lround(u_real));
    // readings are only meaningful when pinned to the 2 pi / 3 lattice
    if (std::abs(pr.total - cr.u * 2.0 * kPi / 3.0) <= kPi / 6.0) {
      cr.determined = true;
      cr.degree = -cr.u / 6.0;
      if (cr.u == 1) cr.kind = 1;
      else if (cr.u == -2) cr.kind = -1;
      else cr.kind = 0;
    }
    return cr;
  }
  return cr;  // undetermined
}

struct Classification {
  std::string family;  // structural class, e.g. "Ring", "M1", "T0", "H12*"
  std::string label;   // family plus concrete anchors, e.g. "M1_62"
  std::vector<int> anchors;
  std::vector<CornerReading> corners;      // readings for corners 1..6
  std::vector<DefectCluster> defects;      // all interior clusters
  std::vector<int> companion_of;           // corner k -> captured defect or -1
  int bend_count = 0;                      // split (bend-like) corner complexes
  double degree_sum = 0.0;                 // corners plus interior
  bool degree_sum_ok = false;
  bool determined = false;                 // all readings usable
  std::string feature;                     // diagnostic summary
};

namespace detail {

// canonical form of a corner-index set under the dihedral action: smallest
// sorted image over all 12 rotations/reflections
inline std::vector<int> canonical_corner_set(std::vector<int> s) {
  std::sort(s.begin(), s.end());
  std::vector<int> best;
  for (int refl = 0; refl < 2; ++refl) {
    for (int rot = 0; rot < 6; ++rot) {
      std::vector<int> img;
      img.reserve(s.size());
      for (int k : s) {
        int t = refl ? ((1 - k) % 6 + 6) % 6 + 1 : k;
        t = (t - 1 + rot) % 6 + 1;
        img.push_back(t);
      }
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = img;
    }
  }
  return best;
}

inline std::string digits(const std::vector<int>& v) {
  std::string s;
  for (int k : v) s += static_cast<char>('0' + k);
  return s;
}

inline int nearest_corner(const HexMesh& m, double x, double y) {
  int best = 1;
  double bd = 1e300;
  for (int k = 1; k <= 6; ++k) {
    int cv = m.corner_id[k - 1];
    double d = std::hypot(x - m.xs[cv], y - m.ys[cv]);
    if (d < bd) { bd = d; best = k; }
  }
  return best;
}

inline int nearest_side(double x, double y) {
  // side C_k subtends boundary angles around (k - 1) 60 + 30 degrees
  double ang = std::atan2(y, x);
  int k = static_cast<int>(std::lround((ang - kPi / 6.0) / (kPi / 3.0)));
  return ((k % 6) + 6) % 6 + 1;
}

// largest order parameter on the open part of the segment between two points,
// sampled at the nearest lattice vertices
inline double max_order_between(const PField& f, double x0, double y0, double x1,
                                double y1) {
  const HexMesh& m = *f.mesh;
  double best = 0.0;
  const int N = 48;
  for (int i = 0; i <= N; ++i) {
    const double t = 0.2 + 0.65 * i / N;
    const double x = x0 + (x1 - x0) * t, y = y0 + (y1 - y0) * t;
    // cube rounding to the nearest axial lattice point
    const double bf = y / (m.h * std::sqrt(3.0) / 2.0);
    const double af = x / m.h - 0.5 * bf;
    const double cf = -af - bf;
    double ra = std::round(af), rb = std::round(bf), rc = std::round(cf);
    const double da = std::abs(ra - af), db = std::abs(rb - bf), dc = std::abs(rc - cf);
    if (da > db && da > dc) ra = -rb - rc;
    else if (db > dc) rb = -ra - rc;
    const int a = static_cast<int>(ra), b = static_cast<int>(rb);
    if (!m.in_domain(a, b)) continue;
    const int v = m.idx(a, b);
    best = std::max(best, std::hypot(f.p11[v], f.p12[v]));
  }
  return best;
}

}  // namespace detail

// full structural read of a configuration
inline Classification classify(const PField& f, const ClassifyConfig& cfg = {}) {
  const HexMesh& m = *f.mesh;
  Classification c;
  c.defects = find_defects(f, cfg);
  measure_degrees(f, c.defects, cfg);
  c.corners.resize(6);
  for (int k = 1; k <= 6; ++k) c.corners[k - 1] = vertex_character(f, k, cfg);

  c.determined = true;
  for (const CornerReading& cr : c.corners)
    if (!cr.determined) c.determined = false;
  for (const DefectCluster& d : c.defects)
    if (d.loop_radius == 0 || !d.quantized || d.merged) c.determined = false;

  // corner complexes: a corner carries the vertex defect structure when it
  // reads splay (pinned +1/3), or reads bend with a +1/2 cluster captured on
  // its corner ray.  A captured cluster separated from the corner by a
  // recovered-order neck is a split (bend-like) complex; one still joined to
  // the corner's low-order region is an unpinned complex on the same branch.
  c.companion_of.assign(7, -1);
  bool complex_at[7] = {}, bend_at[7] = {};
  std::vector<char> attached(c.defects.size(), 0);
  for (int k = 1; k <= 6; ++k) {
    const CornerReading& cr = c.corners[k - 1];
    if (!cr.determined) continue;
    if (cr.kind == -1) {
      complex_at[k] = true;
      continue;
    }
    if (cr.kind != 1) continue;
    const double ray = (k - 1) * kPi / 3.0;
    int best = -1;
    double best_d = cfg.attach_radius;
    for (size_t i = 0; i < c.defects.size(); ++i) {
      const DefectCluster& d = c.defects[i];
      if (d.degree != 0.5 || !d.quantized || d.merged) continue;
      if (detail::nearest_corner(m, d.x, d.y) != k) continue;
      if (std::abs(detail::wrap_pi(std::atan2(d.y, d.x) - ray)) > cfg.attach_angle)
        continue;
      if (d.corner_dist <= best_d) {
        best_d = d.corner_dist;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) continue;
    complex_at[k] = true;
    attached[best] = 1;
    c.companion_of[k] = best;
    const int cv = m.corner_id[k - 1];
    const double neck = detail::max_order_between(f, c.defects[best].x, c.defects[best].y,
                                                  m.xs[cv], m.ys[cv]);
    bend_at[k] = neck >= cfg.neck_frac * f.prm.c0();
  }

  std::vector<int> complexes, splays, paired_bends;
  for (int k = 1; k <= 6; ++k) {
    if (!complex_at[k]) continue;
    complexes.push_back(k);
    (bend_at[k] ? paired_bends : splays).push_back(k);
  }
  c.bend_count = static_cast<int>(paired_bends.size());

  // degree bookkeeping over all usable readings
  c.degree_sum = 0.0;
  for (const CornerReading& cr : c.corners) c.degree_sum += cr.degree;
  for (const DefectCluster& d : c.defects) c.degree_sum += d.degree;
  c.degree_sum_ok = c.determined && std::abs(c.degree_sum) < 1e-9;

  // free defects: clusters not captured into a corner complex
  std::vector<int> free_ids;
  for (size_t i = 0; i < c.defects.size(); ++i)
    if (!attached[i]) free_ids.push_back(static_cast<int>(i));
  std::vector<double> free_deg;
  for (int i : free_ids) free_deg.push_back(c.defects[i].degree);
  std::sort(free_deg.begin(), free_deg.end());

  {  // diagnostic feature string
    std::string s = "corners=";
    for (int k = 1; k <= 6; ++k) {
      const CornerReading& cr = c.corners[k - 1];
      s += !cr.determined ? '?' : (cr.kind == 1 ? 'B' : (cr.kind == -1 ? 'S' : 'O'));
    }
    s += ";complex=";
    for (int k : complexes) s += static_cast<char>('0' + k);
    s += ";split=" + detail::digits(paired_bends);
    s += ";free=";
    char buf[64];
    for (int i : free_ids) {
      std::snprintf(buf, sizeof buf, "%+.1f@(%.2f,%.2f) ", c.defects[i].degree,
                    c.defects[i].x, c.defects[i].y);
      s += buf;
    }
    c.feature = s;
  }

  c.family = "unknown";
  c.label = "unknown";
  if (!c.determined) return c;

  auto set_label = [&](std::string fam, std::vector<int> anchors) {
    c.family = std::move(fam);
    c.anchors = std::move(anchors);
    c.label = c.family;
    if (!c.anchors.empty()) c.label += "_" + detail::digits(c.anchors);
  };

  const int nf = static_cast<int>(free_deg.size());
  const int nc = static_cast<int>(complexes.size());
  const int nb = static_cast<int>(paired_bends.size());
  auto deg_is = [&](std::initializer_list<double> want) {
    if (nf != static_cast<int>(want.size())) return false;
    std::vector<double> w(want);
    std::sort(w.begin(), w.end());
    for (int i = 0; i < nf; ++i)
      if (free_deg[i] != w[i]) return false;
    return true;
  };
  auto alternating = [&](const std::vector<int>& s) {
    return s.size() == 3 && ((s[0] % 2 == 1 && s[1] % 2 == 1 && s[2] % 2 == 1) ||
                             (s[0] % 2 == 0 && s[1] % 2 == 0 && s[2] % 2 == 0));
  };
  auto side_directed = [&](const DefectCluster& d) {
    const int s = detail::nearest_side(d.x, d.y);
    const double ray = (2 * s - 1) * kPi / 6.0;
    return std::abs(detail::wrap_pi(std::atan2(d.y, d.x) - ray)) <= cfg.attach_angle;
  };

  if (nc == 0) {
    if (deg_is({1.0})) {
      const DefectCluster& d = c.defects[free_ids[0]];
      if (std::hypot(d.x, d.y) <= cfg.disp_thresh) {
        set_label("Ring", {});
        return c;
      }
    } else if (deg_is({0.5, 0.5})) {
      const DefectCluster &d1 = c.defects[free_ids[0]], &d2 = c.defects[free_ids[1]];
      const int s1 = detail::nearest_side(d1.x, d1.y);
      const int s2 = detail::nearest_side(d2.x, d2.y);
      if (side_directed(d1) && side_directed(d2) && detail::circ_dist(s1, s2) == 3) {
        set_label("BD", {std::min(s1, s2), std::max(s1, s2)});
        return c;
      }
    }
  } else if (nc == 2 && nf == 0) {
    const int d = detail::circ_dist(complexes[0], complexes[1]);
    if (nb == 0 && d == 3) { set_label("P", complexes); return c; }
    if (nb == 0 && d == 2) { set_label("M", complexes); return c; }
    if (nb == 1) {
      set_label("M1", {paired_bends[0], splays[0]});
      return c;
    }
  } else if (nc == 3 && alternating(complexes)) {
    if (deg_is({-0.5})) {
      const DefectCluster& d = c.defects[free_ids[0]];
      const bool displaced = std::hypot(d.x, d.y) > cfg.disp_thresh;
      std::string fam = "T";
      if (nb > 0) fam += detail::digits(detail::canonical_corner_set(paired_bends));
      if (displaced) fam += "0";
      std::vector<int> anchors;
      if (displaced) anchors.push_back(detail::nearest_corner(m, d.x, d.y));
      for (int b : paired_bends) anchors.push_back(b);
      if (!displaced && nb == 0) anchors = complexes;  // tell the two T forms apart
      set_label(fam, anchors);
      return c;
    }
    if (deg_is({-0.5, -0.5, 0.5})) {
      std::string fam = "TD";
      if (nb == 3) fam += "*";
      else if (nb > 0) fam += detail::digits(detail::canonical_corner_set(paired_bends));
      set_label(fam, paired_bends);
      return c;
    }
  } else if (nc == 6 && deg_is({1.0, -0.5, -0.5, -0.5, -0.5, -0.5, -0.5})) {
    if (nb <= 3) {
      std::string fam =
          nb ? "H" + detail::digits(detail::canonical_corner_set(paired_bends)) : "H";
      set_label(fam, paired_bends);
    } else {
      std::string fam =
          splays.empty() ? "H*"
                         : "H" + detail::digits(detail::canonical_corner_set(splays)) + "*";
      set_label(fam, splays);
    }
    return c;
  }
  return c;  // unknown, feature string carries the details
}

}  // namespace hexlc
