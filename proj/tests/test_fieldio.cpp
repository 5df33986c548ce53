#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "hexlc/ansatz.hpp"
#include "hexlc/fieldio.hpp"

using namespace hexlc;

namespace {

PField sample_field() {
  const HexMesh& m = mesh_for(8);
  ModelParams prm;
  prm.lambda2 = 37.5;
  PField f = make_field(m, prm);
  for (int v = 0; v < m.vertex_count(); ++v) {
    f.p11[v] = std::sin(3.0 * v + 0.1) / 3.0;
    f.p12[v] = std::cos(7.0 * v - 0.2) * 0.77;
  }
  return f;
}

}  // namespace

TEST_CASE("a written field reads back bit for bit") {
  PField f = sample_field();
  const std::string text = field_to_string(f);
  PField g = read_field_string(text);
  REQUIRE(g.mesh == f.mesh);
  REQUIRE(g.prm.lambda2 == f.prm.lambda2);
  REQUIRE(g.prm.eps == f.prm.eps);
  for (int v = 0; v < f.size(); ++v) {
    REQUIRE(g.p11[v] == f.p11[v]);
    REQUIRE(g.p12[v] == f.p12[v]);
  }
  REQUIRE(field_to_string(g) == text);
}

TEST_CASE("awkward doubles survive the round trip exactly") {
  PField f = sample_field();
  f.p11[0] = 1.0 / 3.0;
  f.p12[0] = 4.0 * std::atan(1.0);
  f.p11[1] = 0.1;
  f.p12[1] = 6.62607015e-34;
  f.p11[2] = -1e300;
  f.p12[2] = 2.2250738585072014e-308;
  f.p11[3] = 1e-300;
  f.p12[3] = -0.9142857142857143;
  PField g = read_field_string(field_to_string(f));
  for (int v = 0; v < 4; ++v) {
    REQUIRE(g.p11[v] == f.p11[v]);
    REQUIRE(g.p12[v] == f.p12[v]);
  }
}

TEST_CASE("the reader rejects tampered input") {
  const std::string good = field_to_string(sample_field());

  SECTION("unknown version") {
    std::string bad = good;
    bad.replace(bad.find("hexlc-field 1"), 13, "hexlc-field 2");
    REQUIRE_THROWS_AS(read_field_string(bad), io_error);
  }
  SECTION("wrong magic") {
    std::string bad = "lattice-field" + good.substr(11);
    REQUIRE_THROWS_AS(read_field_string(bad), io_error);
  }
  SECTION("mesh size out of range") {
    std::string bad = good;
    bad.replace(bad.find("\nn 8\n"), 5, "\nn 9999\n");
    REQUIRE_THROWS_AS(read_field_string(bad), io_error);
  }
  SECTION("invalid mismatch width is caught at the header") {
    std::string bad = good;
    const auto pos = bad.find("eps ");
    const auto end = bad.find('\n', pos);
    bad.replace(pos, end - pos, "eps 0.9");
    REQUIRE_THROWS_AS(read_field_string(bad), io_error);
  }
  SECTION("truncated record table") {
    const std::string bad = good.substr(0, good.size() / 2);
    REQUIRE_THROWS_AS(read_field_string(bad), io_error);
  }
  SECTION("row index mismatch") {
    std::string bad = good;
    const auto pos = bad.find("\n5 ");
    bad.replace(pos, 3, "\n6 ");
    REQUIRE_THROWS_AS(read_field_string(bad), io_error);
  }
  SECTION("coordinates must match the regenerated mesh") {
    std::string bad = good;
    const auto pos = bad.find("\n0 ");
    const auto end = bad.find(' ', pos + 3);
    bad.replace(pos, end - pos, "\n0 0.1234567");
    REQUIRE_THROWS_AS(read_field_string(bad), io_error);
  }
}

TEST_CASE("field files round trip through disk") {
  PField f = sample_field();
  const auto path = std::filesystem::temp_directory_path() / "hexlc_fieldio_test.field";
  {
    std::ofstream os(path);
    REQUIRE(os.good());
    write_field(f, os);
  }
  std::ifstream is(path);
  REQUIRE(is.good());
  PField g = read_field(is);
  REQUIRE(field_to_string(g) == field_to_string(f));
  std::filesystem::remove(path);
}
