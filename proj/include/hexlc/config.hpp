#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "hexlc/fieldio.hpp"

// Run configuration: one flat, human-editable key-value file with a schema
// version line.  The same visitor drives the writer, the parser, and the
// defaults, so the three cannot drift apart; unknown keys are an error, and
// write -> parse -> write is byte-identical.

namespace hexlc {

struct RunConfig {
  int n = 50;
  double lambda2 = 70.0;
  double eps = 0.0;  // 0 selects the mesh default 3h
  double B = 0.64e4;
  double C = 0.35e4;
  int k = 0;
  std::string init = "ring-like";
  std::uint64_t seed = 0x5add1e5eedull;
  double tol = 1e-8;
  long long max_iter = 200000;
  long long budget = 5000000;
  int up_max = 0;
  int max_nodes = 600;
  double dedup_tol = 1e-4;
  double defect_thresh = 0.4;  // fraction of c0
  double from_lambda2 = 5.0;
  double to_lambda2 = 70.0;
  int steps = 65;
  int threads = 1;
  std::string outdir = "out";
  std::string format = "csv";
};

namespace detail {

template <class F>
void visit_config(RunConfig& c, F&& f) {
  f("n", c.n);
  f("lambda2", c.lambda2);
  f("eps", c.eps);
  f("B", c.B);
  f("C", c.C);
  f("k", c.k);
  f("init", c.init);
  f("seed", c.seed);
  f("tol", c.tol);
  f("max_iter", c.max_iter);
  f("budget", c.budget);
  f("up_max", c.up_max);
  f("max_nodes", c.max_nodes);
  f("dedup_tol", c.dedup_tol);
  f("defect_thresh", c.defect_thresh);
  f("from_lambda2", c.from_lambda2);
  f("to_lambda2", c.to_lambda2);
  f("steps", c.steps);
  f("threads", c.threads);
  f("outdir", c.outdir);
  f("format", c.format);
}

inline std::string config_value_text(int v) { return std::to_string(v); }
inline std::string config_value_text(long long v) { return std::to_string(v); }
inline std::string config_value_text(std::uint64_t v) { return std::to_string(v); }
inline std::string config_value_text(double v) { return fmt_double(v); }
inline std::string config_value_text(const std::string& v) {
  const bool padded = !v.empty() && (v.front() == ' ' || v.front() == '\t' ||
                                     v.back() == ' ' || v.back() == '\t');
  if (padded || v.find_first_of("#\n") != std::string::npos)
    throw io_error("config string value '" + v + "' cannot round-trip");
  return v;
}

inline void config_assign(int& dst, const std::string& s) {
  dst = static_cast<int>(parse_long(s));
}
inline void config_assign(long long& dst, const std::string& s) {
  dst = parse_long(s);
}
inline void config_assign(std::uint64_t& dst, const std::string& s) {
  std::uint64_t v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw io_error("bad unsigned token '" + s + "'");
  dst = v;
}
inline void config_assign(double& dst, const std::string& s) { dst = parse_double(s); }
inline void config_assign(std::string& dst, const std::string& s) { dst = s; }

}  // namespace detail

inline void write_config(const RunConfig& cfg, std::ostream& os) {
  os << "hexlc-config 1\n";
  detail::visit_config(const_cast<RunConfig&>(cfg), [&](const char* key, auto& v) {
    os << key << " = " << detail::config_value_text(v) << "\n";
  });
}

inline std::string config_to_string(const RunConfig& cfg) {
  std::ostringstream ss;
  write_config(cfg, ss);
  return ss.str();
}

inline RunConfig read_config(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "hexlc-config 1")
    throw io_error("missing or unsupported config version line");
  RunConfig cfg;
  using Slot = std::variant<int*, long long*, std::uint64_t*, double*, std::string*>;
  std::map<std::string, Slot> slots;
  detail::visit_config(cfg, [&](const char* key, auto& v) { slots.emplace(key, &v); });
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw io_error("config line " + std::to_string(lineno) + " is not 'key = value'");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t");
      return s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = slots.find(key);
    if (it == slots.end()) throw io_error("unknown config key '" + key + "'");
    std::visit([&](auto* p) { detail::config_assign(*p, value); }, it->second);
  }
  return cfg;
}

inline RunConfig read_config_string(const std::string& s) {
  std::istringstream ss(s);
  return read_config(ss);
}

}  // namespace hexlc
