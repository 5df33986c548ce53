#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hexlc/mesh.hpp"
#include "hexlc/model.hpp"

// Text container for fields.  All numbers are written with the shortest
// representation that parses back to the same value, so identical fields
// serialize to identical bytes on any locale.

namespace hexlc {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt_double(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw io_error("bad numeric token '" + s + "'");
  return x;
}

inline long parse_long(const std::string& s) {
  long x = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw io_error("bad integer token '" + s + "'");
  return x;
}

}  // namespace detail

// meshes keyed by size; stable addresses for the lifetime of the process
inline const HexMesh& mesh_for(int n) {
  static std::map<int, std::unique_ptr<HexMesh>> pool;
  auto it = pool.find(n);
  if (it == pool.end())
    it = pool.emplace(n, std::make_unique<HexMesh>(build_mesh(n))).first;
  return *it->second;
}

inline void write_field(const PField& f, std::ostream& os) {
  const HexMesh& m = *f.mesh;
  os << "hexlc-field 1\n";
  os << "n " << m.n << "\n";
  os << "lambda2 " << detail::fmt_double(f.prm.lambda2) << "\n";
  os << "B " << detail::fmt_double(f.prm.B) << "\n";
  os << "C " << detail::fmt_double(f.prm.C) << "\n";
  os << "eps " << detail::fmt_double(f.prm.eps) << "\n";
  for (int v = 0; v < m.vertex_count(); ++v) {
    os << v << ' ' << detail::fmt_double(m.xs[v]) << ' ' << detail::fmt_double(m.ys[v])
       << ' ' << detail::fmt_double(f.p11[v]) << ' ' << detail::fmt_double(f.p12[v])
       << '\n';
  }
}

inline std::string field_to_string(const PField& f) {
  std::ostringstream ss;
  write_field(f, ss);
  return ss.str();
}

inline PField read_field(std::istream& is) {
  std::string word;
  auto expect_key = [&](const char* key) {
    if (!(is >> word) || word != key) throw io_error(std::string("expected '") + key + "'");
  };
  expect_key("hexlc-field");
  if (!(is >> word)) throw io_error("missing format version");
  if (word != "1") throw io_error("unsupported field format version " + word);

  expect_key("n");
  is >> word;
  const long n = detail::parse_long(word);
  if (n < 2 || n > 4096) throw io_error("mesh size out of range");
  ModelParams prm;
  expect_key("lambda2");
  is >> word;
  prm.lambda2 = detail::parse_double(word);
  expect_key("B");
  is >> word;
  prm.B = detail::parse_double(word);
  expect_key("C");
  is >> word;
  prm.C = detail::parse_double(word);
  expect_key("eps");
  is >> word;
  prm.eps = detail::parse_double(word);

  const HexMesh& m = mesh_for(static_cast<int>(n));
  PField f;
  try {
    f = make_field(m, prm);
  } catch (const std::exception& e) {
    throw io_error(std::string("invalid header parameters: ") + e.what());
  }
  for (int v = 0; v < m.vertex_count(); ++v) {
    long idx;
    std::string sx, sy, s11, s12;
    if (!(is >> idx >> sx >> sy >> s11 >> s12))
      throw io_error("truncated record table at row " + std::to_string(v));
    if (idx != v) throw io_error("record index mismatch at row " + std::to_string(v));
    const double x = detail::parse_double(sx), y = detail::parse_double(sy);
    if (std::abs(x - m.xs[v]) > 1e-12 || std::abs(y - m.ys[v]) > 1e-12)
      throw io_error("vertex coordinates disagree with the mesh at row " + std::to_string(v));
    f.p11[v] = detail::parse_double(s11);
    f.p12[v] = detail::parse_double(s12);
  }
  return f;
}

inline PField read_field_string(const std::string& s) {
  std::istringstream ss(s);
  return read_field(ss);
}

}  // namespace hexlc
