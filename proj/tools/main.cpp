#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hexlc/ansatz.hpp"
#include "hexlc/config.hpp"
#include "hexlc/continuation.hpp"
#include "hexlc/exporters.hpp"
#include "hexlc/fieldio.hpp"
#include "hexlc/graphio.hpp"
#include "hexlc/landscape.hpp"

namespace fs = std::filesystem;
using namespace hexlc;

namespace {

// exit codes: 0 ok, 1 usage, 2 non-convergence, 3 io
constexpr int kOk = 0, kUsage = 1, kNoConverge = 2, kIo = 3;

fs::path ensure_outdir(const RunConfig& cfg) {
  fs::path dir(cfg.outdir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory " + dir.string());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw io_error("failed writing " + path.string());
}

PField read_field_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open field file " + path);
  return read_field(is);
}

// named ansatz or a field file path; the file's mesh must match the run
Eigen::VectorXd initial_guess(const LdgSystem& sys, const RunConfig& cfg,
                              const std::string& init) {
  const HexMesh& m = sys.mesh();
  const ModelParams& prm = sys.params();
  if (init == "uniform") {
    PField f = make_field(m, prm);
    for (int v = 0; v < m.vertex_count(); ++v)
      if (m.type[v] == VertexType::Interior) {
        f.p11[v] = prm.c0();
        f.p12[v] = 0.0;
      }
    return sys.dofs(f);
  }
  if (init == "ring-like") return sys.dofs(boundary_seed(m, prm));
  if (init == "random-perturbed" || init == "random") {
    PField f = boundary_seed(m, prm);
    jitter(f, 0.1 * prm.c0(), cfg.seed);
    return sys.dofs(f);
  }
  PField f = read_field_file(init);
  if (f.mesh->n != m.n)
    throw std::invalid_argument("field file has n=" + std::to_string(f.mesh->n) +
                                " but the run uses n=" + std::to_string(m.n));
  return sys.dofs(f);
}

SearchConfig search_config(const RunConfig& cfg) {
  SearchConfig sc;
  sc.tol = cfg.tol;
  sc.max_iter = cfg.max_iter;
  sc.seed = cfg.seed;
  return sc;
}

ordered_json run_header(const RunConfig& cfg, const LdgSystem& sys) {
  return {{"n", sys.mesh().n},
          {"lambda2", sys.params().lambda2},
          {"eps", sys.params().eps},
          {"seed", cfg.seed},
          {"threads", cfg.threads}};
}

int cmd_solve(const RunConfig& cfg, const std::string& out_name) {
  const HexMesh& m = mesh_for(cfg.n);
  ModelParams prm;
  prm.B = cfg.B;
  prm.C = cfg.C;
  prm.lambda2 = cfg.lambda2;
  prm.eps = cfg.eps;
  PField probe = make_field(m, prm);  // validates parameters up front
  prm = probe.prm;
  LdgSystem sys(m, prm);

  Eigen::VectorXd x0 = initial_guess(sys, cfg, cfg.init);
  SearchConfig sc = search_config(cfg);
  sc.k = cfg.k;
  SaddleResult res = find_saddle(sys, x0, sc);
  if (!res.converged) {
    std::cerr << "did not converge: index-" << cfg.k << " search from '" << cfg.init
              << "', residual " << res.residual << " after " << res.iterations
              << " iterations\n";
    return kNoConverge;
  }
  SolutionRecord rec =
      make_record(sys, res.x, "solve --init " + cfg.init + " --k " + std::to_string(cfg.k),
                  {}, &res.V);
  rec.id = 0;
  rec.orbit = 0;

  const fs::path dir = ensure_outdir(cfg);
  write_text(dir / (out_name + ".field"), field_to_string(sys.field(res.x)));
  ordered_json summary;
  summary["schema"] = "hexlc-solve 1";
  summary["run"] = run_header(cfg, sys);
  summary["iterations"] = res.iterations;
  summary["record"] = record_to_json(rec);
  summary["record"]["field"] = out_name + ".field";
  write_text(dir / (out_name + ".json"), summary.dump(2) + "\n");

  std::cout << "converged: index " << rec.index << ", family " << rec.cls.family
            << ", label " << rec.cls.label << ", energy " << rec.energy << ", residual "
            << rec.residual << "\n";
  std::cout << "wrote " << (dir / (out_name + ".field")).string() << "\n";
  return kOk;
}

int cmd_landscape(const RunConfig& cfg, const std::vector<std::string>& extra_seeds) {
  const HexMesh& m = mesh_for(cfg.n);
  ModelParams prm;
  prm.B = cfg.B;
  prm.C = cfg.C;
  prm.lambda2 = cfg.lambda2;
  prm.eps = cfg.eps;
  prm = make_field(m, prm).prm;
  LdgSystem sys(m, prm);

  std::vector<SeedSpec> seeds(1);
  seeds[0].x = initial_guess(sys, cfg, cfg.init);
  seeds[0].k = cfg.k;
  seeds[0].provenance = "seed --init " + cfg.init + " --k " + std::to_string(cfg.k);
  for (const std::string& spec : extra_seeds) {
    // "path" or "path:k"
    std::string path = spec;
    int k = 0;
    const auto colon = spec.rfind(':');
    if (colon != std::string::npos && colon + 1 < spec.size() &&
        std::isdigit(static_cast<unsigned char>(spec[colon + 1]))) {
      path = spec.substr(0, colon);
      k = static_cast<int>(detail::parse_long(spec.substr(colon + 1)));
    }
    SeedSpec s;
    s.x = initial_guess(sys, cfg, path);
    s.k = k;
    s.provenance = "seed " + spec;
    seeds.push_back(std::move(s));
  }

  LandscapeConfig lc;
  lc.search = search_config(cfg);
  lc.budget = cfg.budget;
  lc.up_max = cfg.up_max;
  lc.max_nodes = cfg.max_nodes;
  lc.dedup_tol = cfg.dedup_tol;
  LandscapeGraph g = build_landscape(sys, seeds, lc);

  const fs::path dir = ensure_outdir(cfg);
  for (const SolutionRecord& r : g.nodes)
    write_text(dir / node_field_name(r.id), field_to_string(sys.field(r.x)));
  write_text(dir / "graph.json", graph_to_string(g, sys, cfg.seed, cfg.budget));

  // orbit summary table, one row per orbit class
  std::string table = "orbit  family      label         index  size  energy\n";
  for (int orbit = 0; orbit < g.orbit_count(); ++orbit) {
    const SolutionRecord& rep = g.nodes[g.orbit_rep[orbit]];
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-6d %-11s %-13s %-6d %-5zu %.12g\n", orbit,
                  rep.cls.family.c_str(), rep.cls.label.c_str(), rep.index,
                  g.orbit_members(orbit).size(), rep.energy);
    table += buf;
  }
  write_text(dir / "orbits.txt", table);
  std::cout << table;
  std::cout << "nodes " << g.nodes.size() << ", orbits " << g.orbit_count() << ", edges "
            << g.edges.size() << ", budget spent " << g.budget_spent << "\n";
  std::cout << "wrote " << (dir / "graph.json").string() << "\n";
  if (g.partial)
    std::cerr << "warning: search budget exhausted; graph is partial (" << g.unexplored.size()
              << " searches unexplored)\n";
  return kOk;
}

int cmd_continue(const RunConfig& cfg, const std::string& out_name) {
  PField f0 = read_field_file(cfg.init);
  const HexMesh& m = *f0.mesh;
  ModelParams base = f0.prm;
  base.B = cfg.B;
  base.C = cfg.C;

  ContinuationConfig cc;
  cc.steps = cfg.steps;
  cc.tol = cfg.tol;
  LdgSystem sys0(m, base);
  Branch br = continue_branch(m, base, sys0.dofs(f0), cfg.from_lambda2, cfg.to_lambda2, cc);

  const fs::path dir = ensure_outdir(cfg);
  ordered_json doc;
  doc["schema"] = "hexlc-branch 1";
  doc["n"] = m.n;
  doc["from_lambda2"] = cfg.from_lambda2;
  doc["to_lambda2"] = cfg.to_lambda2;
  doc["steps"] = cfg.steps;
  doc["complete"] = br.complete;
  if (!br.complete) doc["lost_at"] = br.lost_at;
  ordered_json pts = ordered_json::array();
  for (const BranchPoint& pt : br.points) {
    ordered_json jp = {{"lambda2", pt.lambda2},
                       {"energy", pt.energy},
                       {"index", pt.index},
                       {"index_reliable", pt.index_reliable},
                       {"residual", pt.residual}};
    ordered_json head = ordered_json::array();
    for (int i = 0; i < pt.spec_head.size(); ++i) head.push_back(pt.spec_head[i]);
    jp["eigenvalues"] = std::move(head);
    pts.push_back(std::move(jp));
  }
  doc["points"] = std::move(pts);
  ordered_json evs = ordered_json::array();
  for (const IndexEvent& ev : br.events)
    evs.push_back({{"lambda2_before", ev.lambda2_before},
                   {"lambda2_after", ev.lambda2_after},
                   {"index_before", ev.index_before},
                   {"index_after", ev.index_after}});
  doc["events"] = std::move(evs);
  write_text(dir / (out_name + ".json"), doc.dump(2) + "\n");

  for (const IndexEvent& ev : br.events)
    std::cout << "index change " << ev.index_before << " -> " << ev.index_after
              << " between lambda2 " << ev.lambda2_before << " and " << ev.lambda2_after
              << "\n";
  if (!br.complete) {
    std::cerr << "branch lost at lambda2 " << br.lost_at << " ("
              << br.points.size() << " points tracked)\n";
    return kNoConverge;
  }
  ModelParams endp = base;
  endp.lambda2 = br.points.back().lambda2;
  LdgSystem sys_end(m, endp);
  write_text(dir / (out_name + "_end.field"),
             field_to_string(sys_end.field(br.points.back().x)));
  std::cout << "tracked " << br.points.size() << " points, " << br.events.size()
            << " index changes; wrote " << (dir / (out_name + ".json")).string() << "\n";
  return kOk;
}

int resolve_node(const GraphDoc& g, const std::string& token) {
  bool digits = !token.empty();
  for (char ch : token) digits = digits && std::isdigit(static_cast<unsigned char>(ch));
  if (digits) {
    const int id = static_cast<int>(detail::parse_long(token));
    if (id < 0 || id >= static_cast<int>(g.nodes.size()))
      throw std::invalid_argument("node id " + token + " out of range");
    return id;
  }
  std::vector<int> hits;
  for (const GraphNodeDoc& nd : g.nodes)
    if (nd.label == token) hits.push_back(nd.id);
  if (hits.empty()) throw std::invalid_argument("no node has label '" + token + "'");
  if (hits.size() > 1) {
    std::string msg = "label '" + token + "' is ambiguous; matching ids:";
    for (int id : hits) msg += " " + std::to_string(id);
    throw std::invalid_argument(msg);
  }
  return hits[0];
}

int cmd_pathway(const std::string& graph_path, const std::string& from_tok,
                const std::string& to_tok) {
  GraphDoc doc = read_graph(graph_path, false);
  const int from = resolve_node(doc, from_tok);
  const int to = resolve_node(doc, to_tok);
  LandscapeGraph g = doc_to_graph(doc);
  Pathway p = extract_pathway(g, from, to);

  auto show = [&](int id) {
    const GraphNodeDoc& nd = doc.nodes[id];
    return nd.label + "(" + std::to_string(id) + ", index " + std::to_string(nd.index) + ")";
  };
  if (p.found) {
    std::cout << "chain:";
    for (size_t i = 0; i < p.chain.size(); ++i)
      std::cout << (i ? " -- " : " ") << show(p.chain[i]);
    std::cout << "\nbarrier " << p.barrier << "\n";
  } else {
    std::cout << "disconnected at the transition-state level; run more searches\n";
  }
  if (p.mediator >= 0)
    std::cout << "mediated by " << show(p.mediator) << "\n";
  else
    std::cout << "no common-ancestor saddle recorded\n";
  return kOk;
}

int cmd_classify(const RunConfig& cfg, const std::string& field_path) {
  PField f = read_field_file(field_path);
  ClassifyConfig cc;
  cc.s_frac = cfg.defect_thresh;
  Classification cls = classify(f, cc);
  std::cout << "family " << cls.family << "\nlabel " << cls.label << "\nbend_count "
            << cls.bend_count << "\ndegree_sum " << cls.degree_sum << "\ndetermined "
            << (cls.determined ? "yes" : "no") << "\n";
  for (const DefectCluster& d : cls.defects) {
    std::cout << "defect at (" << d.x << ", " << d.y << ") degree " << d.degree
              << (d.quantized ? "" : " (not quantized)") << (d.merged ? " (merged)" : "")
              << "\n";
  }
  for (const CornerReading& c : cls.corners) {
    const char* kind = c.kind > 0 ? "bend-like" : (c.kind < 0 ? "splay-like" : "none");
    std::cout << "corner " << c.corner << " " << kind
              << (c.determined ? "" : " (undetermined)") << "\n";
  }
  std::cout << "feature " << cls.feature << "\n";
  return kOk;
}

int cmd_export(const RunConfig& cfg, const std::string& field_path,
               const std::string& graph_path, std::string out_name) {
  const fs::path dir = ensure_outdir(cfg);
  const std::string& fmt = cfg.format;
  std::string text, ext;
  if (fmt == "dot") {
    if (graph_path.empty()) throw std::invalid_argument("dot export needs --graph");
    text = export_dot(read_graph(graph_path, false));
    ext = ".dot";
  } else if (fmt == "csv" || fmt == "svg" || fmt == "vtk") {
    if (field_path.empty()) throw std::invalid_argument(fmt + " export needs --field");
    PField f = read_field_file(field_path);
    if (fmt == "csv") text = export_csv(f), ext = ".csv";
    if (fmt == "svg") text = export_svg(f), ext = ".svg";
    if (fmt == "vtk") text = export_vtk(f), ext = ".vtk";
  } else {
    throw std::invalid_argument("unknown export format '" + fmt +
                                "' (expected dot, csv, svg, or vtk)");
  }
  if (out_name.empty()) out_name = "export";
  write_text(dir / (out_name + ext), text);
  std::cout << "wrote " << (dir / (out_name + ext)).string() << "\n";
  return kOk;
}

std::string prescan_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

int run(int argc, char** argv) {
  RunConfig cfg;
  const std::string config_path = prescan_config(argc, argv);
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) throw io_error("cannot open config file " + config_path);
    cfg = read_config(is);
  }

  CLI::App app{"stationary points and solution landscapes of a reduced "
               "Landau-de Gennes model on a hexagon"};
  app.fallthrough();
  app.set_version_flag("--version", "hexlc 1.0");
  std::string config_opt;
  app.add_option("--config", config_opt, "run configuration file");
  app.add_option("--outdir", cfg.outdir, "output directory")->envname("HEXLC_OUTDIR");
  app.add_option("--seed", cfg.seed, "master 64-bit seed, recorded in outputs");
  app.add_option("--threads", cfg.threads, "worker thread budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--n", cfg.n, "lattice subdivisions per hexagon edge (even)");
  app.add_option("--lambda2", cfg.lambda2, "penalty strength (rescaled)");
  app.add_option("--eps", cfg.eps, "boundary mismatch width; 0 = default 3h");
  app.add_option("--B", cfg.B, "bulk coefficient B");
  app.add_option("--C", cfg.C, "bulk coefficient C");
  app.add_option("--tol", cfg.tol, "stationarity tolerance");
  app.add_option("--max-iter", cfg.max_iter, "iteration cap per search");

  auto* solve = app.add_subcommand("solve", "converge one stationary point");
  solve->add_option("--k", cfg.k, "target Morse index");
  solve->add_option("--init", cfg.init,
                    "uniform | ring-like | random-perturbed | field file");
  std::string solve_out = "solution";
  solve->add_option("--out", solve_out, "output name prefix");

  auto* land = app.add_subcommand("landscape", "systematic search from seeds");
  land->add_option("--k", cfg.k, "seed dynamics index");
  land->add_option("--init", cfg.init, "seed ansatz or field file");
  land->add_option("--budget", cfg.budget, "total search iteration budget");
  land->add_option("--up-max", cfg.up_max, "probe upward to this index");
  land->add_option("--max-nodes", cfg.max_nodes, "node cap");
  land->add_option("--dedup-tol", cfg.dedup_tol, "orbit identification distance");
  std::vector<std::string> extra_seeds;
  land->add_option("--seed-field", extra_seeds,
                   "additional seed 'path' or 'path:k' (repeatable)");

  auto* cont = app.add_subcommand("continue", "track a branch in lambda2");
  cont->add_option("--init", cfg.init, "field file of the branch start")->required();
  cont->add_option("--from", cfg.from_lambda2, "starting lambda2");
  cont->add_option("--to", cfg.to_lambda2, "final lambda2");
  cont->add_option("--steps", cfg.steps, "grid intervals");
  std::string cont_out = "branch";
  cont->add_option("--out", cont_out, "output name prefix");

  auto* path = app.add_subcommand("pathway", "transition pathways between minima");
  std::string graph_path, from_tok, to_tok;
  path->add_option("--graph", graph_path, "landscape graph file")->required();
  path->add_option("--from", from_tok, "node id or label")->required();
  path->add_option("--to", to_tok, "node id or label")->required();

  auto* clas = app.add_subcommand("classify", "label a stored field");
  std::string classify_field;
  clas->add_option("--field", classify_field, "field file")->required();
  clas->add_option("--thresh", cfg.defect_thresh, "defect threshold as a fraction of c0");

  auto* exp = app.add_subcommand("export", "render fields and graphs as text");
  std::string export_field, export_graph, export_out;
  exp->add_option("--format", cfg.format, "dot | csv | svg | vtk");
  exp->add_option("--field", export_field, "field file (csv, svg, vtk)");
  exp->add_option("--graph", export_graph, "graph file (dot)");
  exp->add_option("--out", export_out, "output name");

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (solve->parsed()) return cmd_solve(cfg, solve_out);
  if (land->parsed()) return cmd_landscape(cfg, extra_seeds);
  if (cont->parsed()) return cmd_continue(cfg, cont_out);
  if (path->parsed()) return cmd_pathway(graph_path, from_tok, to_tok);
  if (clas->parsed()) return cmd_classify(cfg, classify_field);
  if (exp->parsed()) return cmd_export(cfg, export_field, export_graph, export_out);
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
