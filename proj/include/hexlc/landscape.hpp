#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hexlc/classify.hpp"
#include "hexlc/model.hpp"
#include "hexlc/rng.hpp"
#include "hexlc/saddle.hpp"
#include "hexlc/spectrum.hpp"

// Landscape construction: systematic downward/upward searches from known
// stationary points, a registry that folds symmetry copies into orbits, and
// the connection graph.  Node tables carry every symmetry copy (each orbit is
// filled eagerly from its first representative), searches run only from
// representatives, and discovered edges are replicated across the group so
// the graph is exactly equivariant.  The worklist is processed in a fixed
// sorted order, which makes the whole build deterministic for a given seed.

namespace hexlc {

struct SolutionRecord {
  int id = -1;
  int orbit = -1;
  Eigen::VectorXd x;
  double energy = 0.0;
  double residual = 0.0;
  int index = -1;               // certified Morse index
  bool index_reliable = false;
  Spectrum spec;                // smallest eigenpairs (representatives only)
  Classification cls;
  std::string provenance;
};

struct LandEdge {
  int parent = -1, child = -1;  // index(parent) > index(child)
  int rank = 0;                 // eigendirection rank of the discovering search
  int sign = 0;                 // +1 / -1 perturbation branch
};

struct SeedSpec {
  Eigen::VectorXd x;
  int k = 0;  // index of the dynamics used to converge the seed
  std::string provenance = "seed";
};

struct LandscapeConfig {
  SearchConfig search;
  EigenOptions eig;
  double pert_factor = 0.05;    // perturbation: factor * c0 * sqrt(dim)
  long long budget = 5000000;   // total dynamics iterations
  int up_max = 0;               // probe upward to this index; 0 disables
  double dedup_tol = 1e-4;      // relative L2 identification distance
  int max_nodes = 600;
};

struct LandscapeGraph {
  std::vector<SolutionRecord> nodes;
  std::vector<LandEdge> edges;
  std::vector<int> orbit_rep;   // orbit id -> representative node id
  std::vector<std::string> annotations;
  std::vector<std::string> unexplored;
  long long budget_spent = 0;
  bool partial = false;
  long searches_run = 0;
  long searches_failed = 0;

  int orbit_count() const { return static_cast<int>(orbit_rep.size()); }
  std::vector<int> orbit_members(int orbit) const {
    std::vector<int> out;
    for (const SolutionRecord& r : nodes)
      if (r.orbit == orbit) out.push_back(r.id);
    return out;
  }
};

// stationary-point record: energy, certified index, leading spectrum, label
inline SolutionRecord make_record(const LdgSystem& sys, const Eigen::VectorXd& x,
                                  std::string provenance, const EigenOptions& eopt = {},
                                  const Eigen::MatrixXd* warm = nullptr) {
  SolutionRecord r;
  r.x = x;
  Eigen::VectorXd g(sys.dim());
  sys.gradient(x, g);
  r.residual = sys.residual_norm(g);
  r.energy = sys.energy(x);
  HessOp H = sys.hessian_at(x);
  EigenOptions opt = eopt;
  opt.warm = warm;
  MorseResult mr = morse_index(H, opt);
  r.index = mr.index;
  r.index_reliable = mr.reliable;
  r.spec = std::move(mr.spec);
  r.cls = classify(sys.field(x));
  r.provenance = std::move(provenance);
  return r;
}

namespace detail {

struct WorkItem {
  int parent = 0;
  int up = 0;      // 0 downward, 1 upward
  int target = 0;  // target index
  int rank = 0;    // perturbation eigendirection (1-based, ascending)
  int sign = 0;    // 0 -> +, 1 -> -
  std::tuple<int, int, int, int, int> key() const {
    // downward searches visit high targets first; upward low targets first
    return {parent, up, up ? target : -target, rank, sign};
  }
  bool operator<(const WorkItem& o) const { return key() < o.key(); }
};

class LandscapeBuilder {
 public:
  LandscapeBuilder(const LdgSystem& sys, const LandscapeConfig& cfg)
      : sys_(sys), cfg_(cfg) {
    for (D6Element g : D6Element::all())
      acts_.push_back(symmetry_permutation(sys.mesh(), g));
  }

  LandscapeGraph run(const std::vector<SeedSpec>& seeds) {
    for (const SeedSpec& s : seeds) {
      if (out_of_room()) {
        g_.partial = true;
        g_.unexplored.push_back("seed '" + s.provenance + "'");
        continue;
      }
      SearchConfig sc = cfg_.search;
      sc.k = s.k;
      sc.seed = mix_seed(cfg_.search.seed, 0x5eedull + g_.nodes.size());
      SaddleResult res = find_saddle(sys_, s.x, sc);
      g_.budget_spent += res.iterations;
      ++g_.searches_run;
      if (!res.converged) {
        ++g_.searches_failed;
        g_.annotations.push_back("seed '" + s.provenance + "' did not converge");
        continue;
      }
      commit(make_record(sys_, res.x, s.provenance, cfg_.eig, &res.V), -1, 0, 0);
    }
    while (!work_.empty()) {
      WorkItem it = *work_.begin();
      work_.erase(work_.begin());
      if (out_of_room()) {
        g_.partial = true;
        g_.unexplored.push_back(describe(it));
        for (const WorkItem& w : work_) g_.unexplored.push_back(describe(w));
        break;
      }
      run_item(it);
    }
    return std::move(g_);
  }

  // registry entry point for externally produced records (CLI imports, tests)
  int register_solution(SolutionRecord&& rec, int from_node = -1, int rank = 0,
                        int sign = 0) {
    return commit(std::move(rec), from_node, rank, sign);
  }

  const LandscapeGraph& graph() const { return g_; }

 private:
  bool out_of_room() const {
    return g_.budget_spent >= cfg_.budget ||
           static_cast<int>(g_.nodes.size()) >= cfg_.max_nodes;
  }

  std::string describe(const WorkItem& it) const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s from node %d target %d rank %d sign %c",
                  it.up ? "upward" : "downward", it.parent, it.target, it.rank,
                  it.sign ? '-' : '+');
    return buf;
  }

  int locate(const Eigen::VectorXd& x) const {
    for (const SolutionRecord& r : g_.nodes)
      if (rel_distance(x, r.x) <= cfg_.dedup_tol) return r.id;
    return -1;
  }

  // ensure a representative's spectrum has at least m pairs
  void ensure_pairs(SolutionRecord& r, int m) {
    if (static_cast<int>(r.spec.values.size()) >= m) return;
    HessOp H = sys_.hessian_at(r.x);
    EigenOptions opt = cfg_.eig;
    opt.warm = &r.spec.vectors;
    r.spec = smallest_eigenpairs(H, m, opt);
  }

  // registry insertion: duplicate, symmetry copy, or new orbit (eagerly
  // filled with all of its distinct images)
  int commit(SolutionRecord&& rec, int from_node, int rank, int sign) {
    int id = locate(rec.x);
    if (id >= 0) {
      note_edge(from_node, id, rank, sign);
      return id;
    }
    for (size_t gi = 1; gi < acts_.size(); ++gi) {
      Eigen::VectorXd y = transform_dofs(sys_, acts_[gi], rec.x);
      int hit = locate(y);
      if (hit >= 0) {  // late symmetry copy of a known orbit
        rec.id = static_cast<int>(g_.nodes.size());
        rec.orbit = g_.nodes[hit].orbit;
        int id2 = rec.id;
        g_.nodes.push_back(std::move(rec));
        note_edge(from_node, id2, rank, sign);
        return id2;
      }
    }
    const int orbit = g_.orbit_count();
    rec.id = static_cast<int>(g_.nodes.size());
    rec.orbit = orbit;
    const int rep = rec.id;
    g_.orbit_rep.push_back(rep);
    g_.nodes.push_back(std::move(rec));
    // eager orbit fill in fixed group order
    for (size_t gi = 1; gi < acts_.size(); ++gi) {
      Eigen::VectorXd y = transform_dofs(sys_, acts_[gi], g_.nodes[rep].x);
      if (locate(y) >= 0) continue;  // stabilizer image
      SolutionRecord copy;
      copy.id = static_cast<int>(g_.nodes.size());
      copy.orbit = orbit;
      copy.energy = sys_.energy(y);
      Eigen::VectorXd gr(sys_.dim());
      sys_.gradient(y, gr);
      copy.residual = sys_.residual_norm(gr);
      copy.index = g_.nodes[rep].index;
      copy.index_reliable = g_.nodes[rep].index_reliable;
      copy.cls = classify(sys_.field(y));
      char buf[64];
      std::snprintf(buf, sizeof buf, "image of node %d under group element %zu", rep, gi);
      copy.provenance = buf;
      copy.x = std::move(y);
      g_.nodes.push_back(std::move(copy));
      if (static_cast<int>(g_.nodes.size()) >= cfg_.max_nodes) break;
    }
    note_edge(from_node, rep, rank, sign);
    enqueue(rep);
    return rep;
  }

  void enqueue(int rep) {
    const SolutionRecord& r = g_.nodes[rep];
    if (r.index < 0) return;
    for (int target = r.index - 1; target >= 0; --target)
      for (int rank = target + 1; rank <= r.index; ++rank)
        for (int sign = 0; sign < 2; ++sign)
          work_.insert({rep, 0, target, rank, sign});
    for (int target = r.index + 1; target <= cfg_.up_max; ++target)
      for (int sign = 0; sign < 2; ++sign)
        work_.insert({rep, 1, target, target, sign});
  }

  // oriented edge with its symmetry images; annotates instead of recording
  // when the index order is not strictly decreasing
  void note_edge(int from, int to, int rank, int sign) {
    if (from < 0 || to < 0 || from == to) return;
    int p = from, c = to;
    if (g_.nodes[p].index == g_.nodes[c].index) {
      char buf[96];
      std::snprintf(buf, sizeof buf,
                    "connection between nodes %d and %d has equal index %d; edge dropped",
                    from, to, g_.nodes[p].index);
      g_.annotations.push_back(buf);
      return;
    }
    if (g_.nodes[p].index < g_.nodes[c].index) std::swap(p, c);
    add_edge_once(p, c, rank, sign);
    for (size_t gi = 1; gi < acts_.size(); ++gi) {
      const int pi = locate(transform_dofs(sys_, acts_[gi], g_.nodes[p].x));
      const int ci = locate(transform_dofs(sys_, acts_[gi], g_.nodes[c].x));
      if (pi >= 0 && ci >= 0) add_edge_once(pi, ci, rank, sign);
    }
  }

  void add_edge_once(int p, int c, int rank, int sign) {
    if (!edge_set_.insert({p, c}).second) return;
    g_.edges.push_back({p, c, rank, sign});
  }

  void run_item(const WorkItem& it) {
    ensure_pairs(g_.nodes[it.parent], it.up ? it.target : g_.nodes[it.parent].index);
    const SolutionRecord& parent = g_.nodes[it.parent];
    const int have = static_cast<int>(parent.spec.values.size());
    if (have < (it.up ? it.target : parent.index) || it.rank > have) {
      g_.annotations.push_back(describe(it) + ": spectrum unavailable");
      return;
    }
    const double c0 = sys_.params().c0();
    const double eps = cfg_.pert_factor * c0 * std::sqrt(static_cast<double>(sys_.dim()));
    Eigen::VectorXd u = parent.spec.vectors.col(it.rank - 1).normalized();
    Eigen::VectorXd x0 = parent.x + (it.sign ? -eps : eps) * u;
    Eigen::MatrixXd V0 = parent.spec.vectors.leftCols(it.target);

    SearchConfig sc = cfg_.search;
    sc.k = it.target;
    sc.seed = mix_seed(cfg_.search.seed,
                       (static_cast<std::uint64_t>(it.parent) << 24) ^
                           (static_cast<std::uint64_t>(it.up) << 20) ^
                           (static_cast<std::uint64_t>(it.target) << 12) ^
                           (static_cast<std::uint64_t>(it.rank) << 4) ^
                           static_cast<std::uint64_t>(it.sign));
    SaddleResult res = find_saddle(sys_, x0, sc, &V0);
    g_.budget_spent += res.iterations;
    ++g_.searches_run;
    if (!res.converged) {
      ++g_.searches_failed;
      g_.annotations.push_back(describe(it) + ": search did not converge");
      return;
    }
    SolutionRecord rec = make_record(sys_, res.x, describe(it), cfg_.eig, &res.V);
    const int found_index = rec.index;
    const int node = commit(std::move(rec), it.parent, it.rank, it.sign ? -1 : 1);
    if (found_index != it.target) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s converged to index %d (node %d)",
                    describe(it).c_str(), found_index, node);
      g_.annotations.push_back(buf);
    }
  }

  const LdgSystem& sys_;
  LandscapeConfig cfg_;
  LandscapeGraph g_;
  std::vector<SymmetryAction> acts_;
  std::set<WorkItem> work_;
  std::set<std::pair<int, int>> edge_set_;
};

}  // namespace detail

inline LandscapeGraph build_landscape(const LdgSystem& sys, const std::vector<SeedSpec>& seeds,
                                      const LandscapeConfig& cfg = {}) {
  detail::LandscapeBuilder b(sys, cfg);
  return b.run(seeds);
}

// single search steps, exposed for targeted exploration and tests

inline SaddleResult downward_search(const LdgSystem& sys, const SolutionRecord& parent,
                                    int target_k, int rank, int sign,
                                    const LandscapeConfig& cfg = {}) {
  const double eps = cfg.pert_factor * sys.params().c0() *
                     std::sqrt(static_cast<double>(sys.dim()));
  Eigen::VectorXd u = parent.spec.vectors.col(rank - 1).normalized();
  Eigen::VectorXd x0 = parent.x + sign * eps * u;
  Eigen::MatrixXd V0 = parent.spec.vectors.leftCols(target_k);
  SearchConfig sc = cfg.search;
  sc.k = target_k;
  return find_saddle(sys, x0, sc, &V0);
}

inline SaddleResult upward_search(const LdgSystem& sys, const SolutionRecord& start,
                                  int target_k, int sign, const LandscapeConfig& cfg = {}) {
  const double eps = cfg.pert_factor * sys.params().c0() *
                     std::sqrt(static_cast<double>(sys.dim()));
  Eigen::VectorXd u = start.spec.vectors.col(target_k - 1).normalized();
  Eigen::VectorXd x0 = start.x + sign * eps * u;
  Eigen::MatrixXd V0 = start.spec.vectors.leftCols(target_k);
  SearchConfig sc = cfg.search;
  sc.k = target_k;
  return find_saddle(sys, x0, sc, &V0);
}

// connections folded to orbit level; with reduce, drops any connection
// implied by a chain of others (the form in which landscape diagrams are
// usually drawn and counted)
inline std::vector<std::pair<int, int>> orbit_connections(const LandscapeGraph& g,
                                                          bool reduce = false) {
  std::set<std::pair<int, int>> all;
  for (const LandEdge& e : g.edges)
    if (g.nodes[e.parent].orbit != g.nodes[e.child].orbit)
      all.insert({g.nodes[e.parent].orbit, g.nodes[e.child].orbit});
  std::vector<std::pair<int, int>> out(all.begin(), all.end());
  if (!reduce) return out;
  auto reachable = [&](int from, int to, std::pair<int, int> skip) {
    std::vector<int> stack{from};
    std::set<int> seen{from};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (const auto& e : all) {
        if (e == skip || e.first != v) continue;
        if (seen.insert(e.second).second) stack.push_back(e.second);
      }
    }
    return false;
  };
  std::vector<std::pair<int, int>> kept;
  for (const auto& e : out)
    if (!reachable(e.first, e.second, e)) kept.push_back(e);
  return kept;
}

// Transition pathways between two minima: (a) the chain through index-1
// saddles minimizing the highest energy en route, and (b) the lowest-index
// saddle from which both minima are reachable by descending edges.
struct Pathway {
  bool found = false;
  std::vector<int> chain;   // from, saddle, min, saddle, ..., to
  double barrier = 0.0;     // max energy on the chain minus start energy
  int mediator = -1;        // common ancestor node id, -1 when none
};

inline Pathway extract_pathway(const LandscapeGraph& g, int from_id, int to_id) {
  const int nn = static_cast<int>(g.nodes.size());
  if (from_id < 0 || from_id >= nn || to_id < 0 || to_id >= nn)
    throw std::invalid_argument("pathway endpoints out of range");
  if (g.nodes[from_id].index != 0 || g.nodes[to_id].index != 0)
    throw std::invalid_argument("pathway endpoints must be minima");

  Pathway out;
  if (from_id == to_id) {
    out.found = true;
    out.chain = {from_id};
    out.barrier = 0.0;
  }

  // minima adjacency through index-1 saddles
  std::vector<std::vector<int>> below(nn);  // saddle id -> adjacent minima
  for (const LandEdge& e : g.edges)
    if (g.nodes[e.parent].index == 1 && g.nodes[e.child].index == 0)
      below[e.parent].push_back(e.child);

  if (!out.found) {
    // bottleneck search over minima; state keys (max saddle energy, hops)
    struct Key {
      double emax;
      int hops;
      bool operator<(const Key& o) const {
        return emax < o.emax || (emax == o.emax && hops < o.hops);
      }
    };
    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<Key> best(nn, {kInf, 0});
    std::vector<int> via_saddle(nn, -1), via_min(nn, -1);
    std::vector<char> done(nn, 0);
    best[from_id] = {-kInf, 0};
    for (;;) {
      int cur = -1;
      for (int v = 0; v < nn; ++v) {
        if (done[v] || g.nodes[v].index != 0) continue;
        if (cur < 0 || best[v] < best[cur]) cur = v;
      }
      if (cur < 0 || best[cur].emax == kInf) break;
      if (cur == to_id) break;
      done[cur] = 1;
      for (int s = 0; s < nn; ++s) {
        if (below[s].empty()) continue;
        bool touches = false;
        for (int mm : below[s]) touches |= mm == cur;
        if (!touches) continue;
        for (int mm : below[s]) {
          if (mm == cur || done[mm]) continue;
          const Key cand{std::max(best[cur].emax, g.nodes[s].energy), best[cur].hops + 1};
          const bool better =
              cand < best[mm] ||
              (!(best[mm] < cand) &&
               (via_saddle[mm] < 0 || s < via_saddle[mm] ||
                (s == via_saddle[mm] && cur < via_min[mm])));
          if (better) {
            best[mm] = cand;
            via_saddle[mm] = s;
            via_min[mm] = cur;
          }
        }
      }
    }
    if (best[to_id].emax < kInf) {
      out.found = true;
      std::vector<int> rev;
      int cur = to_id;
      while (cur != from_id) {
        rev.push_back(cur);
        rev.push_back(via_saddle[cur]);
        cur = via_min[cur];
      }
      rev.push_back(from_id);
      out.chain.assign(rev.rbegin(), rev.rend());
      double emax = g.nodes[from_id].energy;
      for (int v : out.chain) emax = std::max(emax, g.nodes[v].energy);
      out.barrier = emax - g.nodes[from_id].energy;
    }
  }

  // mediator: lowest (index, energy, id) node reaching both minima downward
  std::vector<std::vector<int>> kids(nn);
  for (const LandEdge& e : g.edges) kids[e.parent].push_back(e.child);
  auto reaches = [&](int s, int goal) {
    std::vector<char> seen(nn, 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == goal) return true;
      for (int c : kids[v])
        if (!seen[c]) {
          seen[c] = 1;
          stack.push_back(c);
        }
    }
    return false;
  };
  int med = -1;
  for (int v = 0; v < nn; ++v) {
    if (g.nodes[v].index < 1) continue;
    if (!reaches(v, from_id) || !reaches(v, to_id)) continue;
    if (med < 0 || g.nodes[v].index < g.nodes[med].index ||
        (g.nodes[v].index == g.nodes[med].index &&
         (g.nodes[v].energy < g.nodes[med].energy ||
          (g.nodes[v].energy == g.nodes[med].energy && v < med))))
      med = v;
  }
  out.mediator = med;
  return out;
}

}  // namespace hexlc
