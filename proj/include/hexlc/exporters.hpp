#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hexlc/classify.hpp"
#include "hexlc/fieldio.hpp"
#include "hexlc/graphio.hpp"

// Text exporters.  All output is assembled with fixed key order, fixed vertex
// order, and locale-independent number formatting, so identical inputs give
// byte-identical files.

namespace hexlc {

// per-vertex x, y, P11, P12, s, gamma at full precision
inline std::string export_csv(const PField& f) {
  const HexMesh& m = *f.mesh;
  OrderDirector od = order_and_director(f);
  std::string out = "x,y,P11,P12,s,gamma\n";
  for (int v = 0; v < m.vertex_count(); ++v) {
    out += detail::fmt_double(m.xs[v]) + ',' + detail::fmt_double(m.ys[v]) + ',' +
           detail::fmt_double(f.p11[v]) + ',' + detail::fmt_double(f.p12[v]) + ',' +
           detail::fmt_double(od.s[v]) + ',' + detail::fmt_double(od.gamma[v]) + '\n';
  }
  return out;
}

namespace detail {

inline std::string dot_color(int index) {
  static const char* palette[] = {"#4daf4a", "#377eb8", "#ff7f00", "#e41a1c",
                                  "#984ea3", "#a65628", "#f781bf", "#999999",
                                  "#66c2a5", "#ffd92f"};
  if (index < 0) return "#cccccc";
  return palette[index % 10];
}

inline std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

// orbit-level landscape graph: one dot node per orbit class, colored by Morse
// index, tiers by index and members listed in descending energy as layout
// hints
inline std::string export_dot(const GraphDoc& g) {
  struct OrbitRow {
    int orbit, index, size;
    double energy;
    std::string label;
  };
  std::map<int, OrbitRow> rows;
  for (const GraphNodeDoc& nd : g.nodes) {
    auto it = rows.find(nd.orbit);
    if (it == rows.end())
      rows.emplace(nd.orbit, OrbitRow{nd.orbit, nd.index, 1, nd.energy, nd.label});
    else
      ++it->second.size;
  }
  std::vector<OrbitRow> order;
  for (auto& kv : rows) order.push_back(kv.second);
  std::stable_sort(order.begin(), order.end(), [](const OrbitRow& a, const OrbitRow& b) {
    return a.energy > b.energy || (a.energy == b.energy && a.orbit < b.orbit);
  });

  std::string out = "digraph landscape {\n  rankdir=TB;\n"
                    "  node [style=filled, fontname=\"Helvetica\"];\n";
  out += "  // energy ranking, highest first:";
  for (const OrbitRow& r : order) out += " orbit" + std::to_string(r.orbit);
  out += "\n";
  for (const OrbitRow& r : order) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "  orbit%d [label=\"%s\\nindex %d\\nE=%s\\nx%d\", fillcolor=\"%s\"];\n",
                  r.orbit, r.label.c_str(), r.index, detail::short_num(r.energy).c_str(),
                  r.size, detail::dot_color(r.index).c_str());
    out += buf;
  }
  // same-rank tiers by Morse index keep high saddles above minima
  std::set<int> tiers;
  for (const OrbitRow& r : order) tiers.insert(r.index);
  for (auto it = tiers.rbegin(); it != tiers.rend(); ++it) {
    out += "  { rank=same;";
    for (const OrbitRow& r : order)
      if (r.index == *it) out += " orbit" + std::to_string(r.orbit) + ";";
    out += " }\n";
  }
  std::set<std::pair<int, int>> seen;
  for (const LandEdge& e : g.edges) {
    const std::pair<int, int> key{g.nodes[e.parent].orbit, g.nodes[e.child].orbit};
    if (!seen.insert(key).second) continue;
    out += "  orbit" + std::to_string(key.first) + " -> orbit" + std::to_string(key.second) +
           ";\n";
  }
  out += "}\n";
  return out;
}

namespace detail {

// five-stop colormap over [0,1] for the squared order parameter
inline std::string order_color(double t) {
  static const double stops[5][3] = {{48, 18, 59},     // deep violet
                                     {62, 117, 207},   // blue
                                     {33, 191, 185},   // teal
                                     {138, 219, 82},   // green
                                     {249, 232, 51}};  // yellow
  t = std::min(1.0, std::max(0.0, t));
  const double pos = t * 4.0;
  const int lo = std::min(3, static_cast<int>(pos));
  const double w = pos - lo;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[lo][0] * (1 - w) + stops[lo + 1][0] * w)),
                static_cast<int>(std::lround(stops[lo][1] * (1 - w) + stops[lo + 1][1] * w)),
                static_cast<int>(std::lround(stops[lo][2] * (1 - w) + stops[lo + 1][2] * w)));
  return buf;
}

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

}  // namespace detail

// director segments over an s^2 colormap on the hexagon
inline std::string export_svg(const PField& f) {
  const HexMesh& m = *f.mesh;
  OrderDirector od = order_and_director(f);
  const double c0 = f.prm.c0();
  const double smax2 = c0 * c0;

  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
      "viewBox=\"-1.08 -1.08 2.16 2.16\">\n"
      "<g transform=\"scale(1,-1)\">\n";
  out += "<rect x=\"-1.08\" y=\"-1.08\" width=\"2.16\" height=\"2.16\" fill=\"#ffffff\"/>\n";

  // order parameter discs
  const double rad = 0.62 * m.h;
  for (int v = 0; v < m.vertex_count(); ++v) {
    const double t = od.s[v] * od.s[v] / smax2;
    out += "<circle cx=\"" + detail::svg_num(m.xs[v]) + "\" cy=\"" + detail::svg_num(m.ys[v]) +
           "\" r=\"" + detail::svg_num(rad) + "\" fill=\"" + detail::order_color(t) + "\"/>\n";
  }
  // hexagon outline
  out += "<polygon points=\"";
  for (int k = 0; k < 6; ++k) {
    const double ang = k * kPi / 3.0;
    if (k) out += ' ';
    out += detail::svg_num(std::cos(ang)) + ',' + detail::svg_num(std::sin(ang));
  }
  out += "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.008\"/>\n";
  // director segments
  const double seg = 0.42 * m.h;
  for (int v = 0; v < m.vertex_count(); ++v) {
    const double dx = seg * std::cos(od.gamma[v]);
    const double dy = seg * std::sin(od.gamma[v]);
    out += "<line x1=\"" + detail::svg_num(m.xs[v] - dx) + "\" y1=\"" +
           detail::svg_num(m.ys[v] - dy) + "\" x2=\"" + detail::svg_num(m.xs[v] + dx) +
           "\" y2=\"" + detail::svg_num(m.ys[v] + dy) +
           "\" stroke=\"#ffffff\" stroke-width=\"0.006\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

// legacy-style unstructured-grid text: triangles plus per-vertex data
inline std::string export_vtk(const PField& f) {
  const HexMesh& m = *f.mesh;
  OrderDirector od = order_and_director(f);
  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\n"
     << "hexagon lattice field\n"
     << "ASCII\n"
     << "DATASET UNSTRUCTURED_GRID\n";
  const int nv = m.vertex_count();
  os << "POINTS " << nv << " double\n";
  for (int v = 0; v < nv; ++v)
    os << detail::fmt_double(m.xs[v]) << ' ' << detail::fmt_double(m.ys[v]) << " 0\n";

  std::vector<std::array<int, 3>> tris;
  const int n = m.n;
  for (int a = -n; a <= n; ++a)
    for (int b = -n; b <= n; ++b) {
      if (!m.in_domain(a, b)) continue;
      const int v = m.idx(a, b);
      // upward triangle v, v+(1,0), v+(0,1)
      if (m.in_domain(a + 1, b) && m.in_domain(a, b + 1))
        tris.push_back({v, m.idx(a + 1, b), m.idx(a, b + 1)});
      // downward triangle v, v+(0,1), v+(-1,1)
      if (m.in_domain(a, b + 1) && m.in_domain(a - 1, b + 1))
        tris.push_back({v, m.idx(a, b + 1), m.idx(a - 1, b + 1)});
    }
  os << "CELLS " << tris.size() << ' ' << 4 * tris.size() << "\n";
  for (const auto& t : tris) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
  os << "CELL_TYPES " << tris.size() << "\n";
  for (size_t i = 0; i < tris.size(); ++i) os << "5\n";

  os << "POINT_DATA " << nv << "\n";
  os << "SCALARS s double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) os << detail::fmt_double(od.s[v]) << "\n";
  os << "SCALARS gamma double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) os << detail::fmt_double(od.gamma[v]) << "\n";
  os << "SCALARS P11 double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) os << detail::fmt_double(f.p11[v]) << "\n";
  os << "SCALARS P12 double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) os << detail::fmt_double(f.p12[v]) << "\n";
  os << "VECTORS director double\n";
  for (int v = 0; v < nv; ++v)
    os << detail::fmt_double(od.s[v] * std::cos(od.gamma[v])) << ' '
       << detail::fmt_double(od.s[v] * std::sin(od.gamma[v])) << " 0\n";
  return os.str();
}

}  // namespace hexlc
