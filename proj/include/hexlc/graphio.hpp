#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hexlc/fieldio.hpp"
#include "hexlc/landscape.hpp"

// Landscape graph document: one JSON object holding the schema version, the
// model parameters, the node table with embedded defect and label data, the
// edge table, and the run metadata.  Key order is fixed and numbers print in
// shortest round-trip form, so identical runs serialize byte-identically.
// The graph is stamped "explored"; completeness is not claimed.

namespace hexlc {

using ordered_json = nlohmann::ordered_json;

inline std::string node_field_name(int id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "node_%04d.field", id);
  return buf;
}

// the per-record block shared by graph nodes and single-solve summaries
inline ordered_json record_to_json(const SolutionRecord& r) {
  ordered_json nj;
  nj["id"] = r.id;
  nj["orbit"] = r.orbit;
  nj["label"] = r.cls.label;
  nj["family"] = r.cls.family;
  nj["index"] = r.index;
  nj["index_reliable"] = r.index_reliable;
  nj["energy"] = r.energy;
  nj["residual"] = r.residual;
  nj["field"] = node_field_name(r.id);
  nj["bend_count"] = r.cls.bend_count;
  nj["degree_sum"] = r.cls.degree_sum;
  nj["determined"] = r.cls.determined;
  ordered_json defects = ordered_json::array();
  for (const DefectCluster& d : r.cls.defects) {
    defects.push_back({{"x", d.x},
                       {"y", d.y},
                       {"degree", d.degree},
                       {"winding", d.winding},
                       {"quantized", d.quantized},
                       {"merged", d.merged},
                       {"near_corner", d.near_corner}});
  }
  nj["defects"] = std::move(defects);
  ordered_json corners = ordered_json::array();
  for (const CornerReading& c : r.cls.corners) {
    corners.push_back({{"corner", c.corner},
                       {"kind", c.kind},
                       {"turns", c.u},
                       {"degree", c.degree},
                       {"arc_total", c.arc_total},
                       {"determined", c.determined}});
  }
  nj["corners"] = std::move(corners);
  nj["feature"] = r.cls.feature;
  nj["provenance"] = r.provenance;
  return nj;
}

inline ordered_json graph_to_json(const LandscapeGraph& g, const LdgSystem& sys,
                                  std::uint64_t seed, long long budget) {
  ordered_json doc;
  doc["schema"] = "hexlc-graph 1";
  const ModelParams& prm = sys.params();
  doc["model"] = {{"n", sys.mesh().n},
                  {"lambda2", prm.lambda2},
                  {"B", prm.B},
                  {"C", prm.C},
                  {"eps", prm.eps}};
  ordered_json nodes = ordered_json::array();
  for (const SolutionRecord& r : g.nodes) nodes.push_back(record_to_json(r));
  doc["nodes"] = std::move(nodes);
  ordered_json edges = ordered_json::array();
  for (const LandEdge& e : g.edges)
    edges.push_back(
        {{"parent", e.parent}, {"child", e.child}, {"rank", e.rank}, {"sign", e.sign}});
  doc["edges"] = std::move(edges);
  doc["meta"] = {{"seed", seed},
                 {"budget", budget},
                 {"budget_spent", g.budget_spent},
                 {"partial", g.partial},
                 {"status", "explored"},
                 {"searches_run", g.searches_run},
                 {"searches_failed", g.searches_failed},
                 {"annotations", g.annotations},
                 {"unexplored", g.unexplored}};
  return doc;
}

inline std::string graph_to_string(const LandscapeGraph& g, const LdgSystem& sys,
                                   std::uint64_t seed, long long budget) {
  return graph_to_json(g, sys, seed, budget).dump(2) + "\n";
}

// slim in-memory view of a parsed graph document
struct GraphNodeDoc {
  int id = -1, orbit = -1, index = -1;
  bool index_reliable = false;
  double energy = 0.0, residual = 0.0;
  std::string label, family, field_ref, provenance;
  int bend_count = 0;
};

struct GraphDoc {
  int n = 0;
  ModelParams prm;
  std::vector<GraphNodeDoc> nodes;
  std::vector<LandEdge> edges;
  std::uint64_t seed = 0;
  long long budget = 0, budget_spent = 0;
  bool partial = false;
  std::vector<std::string> annotations, unexplored;
};

inline GraphDoc parse_graph_json(const ordered_json& doc) {
  GraphDoc out;
  try {
    if (doc.at("schema").get<std::string>() != "hexlc-graph 1")
      throw io_error("unsupported graph schema");
    const auto& model = doc.at("model");
    out.n = model.at("n").get<int>();
    out.prm.lambda2 = model.at("lambda2").get<double>();
    out.prm.B = model.at("B").get<double>();
    out.prm.C = model.at("C").get<double>();
    out.prm.eps = model.at("eps").get<double>();
    for (const auto& nj : doc.at("nodes")) {
      GraphNodeDoc nd;
      nd.id = nj.at("id").get<int>();
      nd.orbit = nj.at("orbit").get<int>();
      nd.index = nj.at("index").get<int>();
      nd.index_reliable = nj.at("index_reliable").get<bool>();
      nd.energy = nj.at("energy").get<double>();
      nd.residual = nj.at("residual").get<double>();
      nd.label = nj.at("label").get<std::string>();
      nd.family = nj.at("family").get<std::string>();
      nd.field_ref = nj.at("field").get<std::string>();
      nd.provenance = nj.at("provenance").get<std::string>();
      nd.bend_count = nj.at("bend_count").get<int>();
      out.nodes.push_back(std::move(nd));
    }
    for (const auto& ej : doc.at("edges")) {
      LandEdge e;
      e.parent = ej.at("parent").get<int>();
      e.child = ej.at("child").get<int>();
      e.rank = ej.at("rank").get<int>();
      e.sign = ej.at("sign").get<int>();
      out.edges.push_back(e);
    }
    const auto& meta = doc.at("meta");
    out.seed = meta.at("seed").get<std::uint64_t>();
    out.budget = meta.at("budget").get<long long>();
    out.budget_spent = meta.at("budget_spent").get<long long>();
    out.partial = meta.at("partial").get<bool>();
    for (const auto& a : meta.at("annotations")) out.annotations.push_back(a.get<std::string>());
    for (const auto& u : meta.at("unexplored")) out.unexplored.push_back(u.get<std::string>());
  } catch (const ordered_json::exception& e) {
    throw io_error(std::string("graph document does not match the schema: ") + e.what());
  }
  // structural checks
  const int nn = static_cast<int>(out.nodes.size());
  for (int i = 0; i < nn; ++i)
    if (out.nodes[i].id != i) throw io_error("node ids must be contiguous from 0");
  for (const LandEdge& e : out.edges) {
    if (e.parent < 0 || e.parent >= nn || e.child < 0 || e.child >= nn)
      throw io_error("edge endpoint out of range");
    if (out.nodes[e.parent].index <= out.nodes[e.child].index)
      throw io_error("edge does not descend in index");
  }
  return out;
}

// reads and validates a graph file; with check_fields set, every referenced
// field file must exist next to the graph document
inline GraphDoc read_graph(const std::filesystem::path& path, bool check_fields = true) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open graph file " + path.string());
  ordered_json doc;
  try {
    is >> doc;
  } catch (const ordered_json::exception& e) {
    throw io_error(std::string("graph file is not valid JSON: ") + e.what());
  }
  GraphDoc g = parse_graph_json(doc);
  if (check_fields) {
    const auto dir = path.parent_path();
    for (const GraphNodeDoc& nd : g.nodes)
      if (!std::filesystem::exists(dir / nd.field_ref))
        throw io_error("referenced field file missing: " + nd.field_ref);
  }
  return g;
}

// pathway extraction wants the solver-side graph shape; rebuild the parts it
// reads (indices, energies, edges)
inline LandscapeGraph doc_to_graph(const GraphDoc& doc) {
  LandscapeGraph g;
  for (const GraphNodeDoc& nd : doc.nodes) {
    SolutionRecord r;
    r.id = nd.id;
    r.orbit = nd.orbit;
    r.index = nd.index;
    r.index_reliable = nd.index_reliable;
    r.energy = nd.energy;
    r.residual = nd.residual;
    r.cls.label = nd.label;
    r.cls.family = nd.family;
    r.provenance = nd.provenance;
    g.nodes.push_back(std::move(r));
  }
  g.edges = doc.edges;
  g.partial = doc.partial;
  g.budget_spent = doc.budget_spent;
  g.annotations = doc.annotations;
  g.unexplored = doc.unexplored;
  for (const SolutionRecord& r : g.nodes)
    if (r.orbit >= 0) {
      if (r.orbit >= static_cast<int>(g.orbit_rep.size())) g.orbit_rep.resize(r.orbit + 1, -1);
      if (g.orbit_rep[r.orbit] < 0) g.orbit_rep[r.orbit] = r.id;
    }
  return g;
}

}  // namespace hexlc
