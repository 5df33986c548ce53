#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include "hexlc/ansatz.hpp"
#include "hexlc/exporters.hpp"
#include "hexlc/saddle.hpp"

using namespace hexlc;

namespace {

size_t count_sub(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + 1))
    ++n;
  return n;
}

PField relaxed_ring(const HexMesh& m, const ModelParams& prm) {
  LdgSystem sys(m, prm);
  SearchConfig sc;
  sc.k = 0;
  SaddleResult res = find_saddle(sys, sys.dofs(boundary_seed(m, prm)), sc);
  REQUIRE(res.converged);
  return sys.field(res.x);
}

}  // namespace

TEST_CASE("csv export has one row per vertex at full precision") {
  const HexMesh m = build_mesh(12);
  ModelParams prm;
  prm.lambda2 = 10.0;
  PField f = relaxed_ring(m, prm);
  const std::string csv = export_csv(f);
  REQUIRE(export_csv(f) == csv);

  std::istringstream is(csv);
  std::string line;
  REQUIRE(std::getline(is, line));
  REQUIRE(line == "x,y,P11,P12,s,gamma");
  int rows = 0;
  double maxs = 0.0;
  while (std::getline(is, line)) {
    double x, y, p11, p12, s, gamma;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &x, &y, &p11, &p12, &s,
                        &gamma) == 6);
    if (rows == 0) {
      REQUIRE(x == m.xs[0]);
      REQUIRE(y == m.ys[0]);
      REQUIRE(p11 == f.p11[0]);
    }
    REQUIRE(s == Catch::Approx(std::hypot(p11, p12)).margin(1e-15));
    REQUIRE(gamma >= 0.0);
    REQUIRE(gamma < kPi);
    maxs = std::max(maxs, s);
    ++rows;
  }
  REQUIRE(rows == m.vertex_count());
  REQUIRE(maxs == Catch::Approx(prm.c0()).epsilon(1e-6));
}

TEST_CASE("the svg shows a low-order core inside a bright boundary") {
  const HexMesh m = build_mesh(12);
  ModelParams prm;
  prm.lambda2 = 10.0;
  PField f = relaxed_ring(m, prm);
  const std::string svg = export_svg(f);
  REQUIRE(export_svg(f) == svg);

  REQUIRE(count_sub(svg, "<circle") == static_cast<size_t>(m.vertex_count()));
  REQUIRE(count_sub(svg, "<line") == static_cast<size_t>(m.vertex_count()));

  const double c0 = prm.c0();
  const int center = m.idx(0, 0);
  const double t_center = (f.p11[center] * f.p11[center] + f.p12[center] * f.p12[center]) /
                          (c0 * c0);
  REQUIRE(t_center < 0.01);  // dark core disc
  // side midpoint, away from the corner-averaged region where |P| drops to c0/2
  const int edge = m.idx(6, 6);
  const double t_edge =
      (f.p11[edge] * f.p11[edge] + f.p12[edge] * f.p12[edge]) / (c0 * c0);
  REQUIRE(t_edge > 0.9);

  // the center vertex's disc takes the darkest stop of the colormap
  size_t pos = 0;
  for (int v = 0; v <= center; ++v) pos = svg.find("<circle", pos + 1);
  const std::string center_line = svg.substr(pos, svg.find('\n', pos) - pos);
  REQUIRE(center_line.find("#30123b") != std::string::npos);
}

TEST_CASE("the vtk text carries the full triangulation") {
  const HexMesh m = build_mesh(8);
  ModelParams prm;
  prm.lambda2 = 10.0;
  PField f = boundary_seed(m, prm);
  const std::string vtk = export_vtk(f);
  REQUIRE(export_vtk(f) == vtk);

  REQUIRE(vtk.find("POINTS " + std::to_string(m.vertex_count()) + " double") !=
          std::string::npos);
  // a hexagon of side n triangulates into 6 n^2 cells
  REQUIRE(vtk.find("CELLS 384 1536") != std::string::npos);
  REQUIRE(vtk.find("CELL_TYPES 384") != std::string::npos);
  REQUIRE(count_sub(vtk, "\n3 ") == 384);
  REQUIRE(vtk.find("SCALARS s double 1") != std::string::npos);
  REQUIRE(vtk.find("VECTORS director double") != std::string::npos);
}
