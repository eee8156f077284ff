#include "xorsat/factor_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace xorsat {

FactorGraph build_graph(const Instance& inst) {
  FactorGraph g;
  g.n = inst.n;
  g.var_adj.assign(inst.n, {});
  g.eq_adj.reserve(inst.clauses.size());
  for (uint32_t ci = 0; ci < inst.m(); ++ci) {
    const Clause& c = inst.clauses[ci];
    g.eq_adj.push_back(c.vars);
    for (VarId v : c.vars) g.var_adj[v].push_back(ci);
  }
  return g;
}

DegreeProfile degree_profile(const FactorGraph& g) {
  DegreeProfile dp;
  size_t max_vd = 0, max_ed = 0;
  for (const auto& a : g.var_adj) max_vd = std::max(max_vd, a.size());
  for (const auto& a : g.eq_adj) max_ed = std::max(max_ed, a.size());
  dp.Lambda.assign(max_vd + 1, 0.0);
  dp.P.assign(max_ed + 1, 0.0);
  if (!g.var_adj.empty()) {
    for (const auto& a : g.var_adj) dp.Lambda[a.size()] += 1.0;
    for (double& x : dp.Lambda) x /= double(g.var_adj.size());
  } else {
    dp.Lambda.assign(1, 1.0);
  }
  if (!g.eq_adj.empty()) {
    for (const auto& a : g.eq_adj) dp.P[a.size()] += 1.0;
    for (double& x : dp.P) x /= double(g.eq_adj.size());
  }

  double edges_v = 0, edges_e = 0;
  for (size_t i = 0; i < dp.Lambda.size(); ++i) edges_v += double(i) * dp.Lambda[i];
  for (size_t i = 0; i < dp.P.size(); ++i) edges_e += double(i) * dp.P[i];
  if (edges_v > 0 && edges_e > 0) {
    dp.edge_defined = true;
    dp.lambda.assign(dp.Lambda.size(), 0.0);
    dp.rho.assign(dp.P.size(), 0.0);
    for (size_t i = 0; i < dp.Lambda.size(); ++i) dp.lambda[i] = double(i) * dp.Lambda[i] / edges_v;
    for (size_t i = 0; i < dp.P.size(); ++i) dp.rho[i] = double(i) * dp.P[i] / edges_e;
  }
  return dp;
}

Neighborhood neighborhood(const FactorGraph& g, const Instance& inst, VarId root, int R) {
  if (root >= g.n) throw std::invalid_argument("neighborhood: root out of range");
  if (R < 0 || (R % 2) != 0) throw std::invalid_argument("neighborhood: radius must be even, >= 0");
  Neighborhood nb;
  nb.root = root;
  nb.radius = R;

  std::vector<int> var_local(g.n, -1);
  std::vector<int> eq_local(g.eq_adj.size(), -1);
  std::vector<int> eq_depth;

  var_local[root] = 0;
  nb.vars.push_back(root);
  nb.var_depth.push_back(0);
  nb.root_local = 0;

  // alternating BFS; variable nodes live at even depths, clauses at odd
  size_t vq = 0;
  while (vq < nb.vars.size()) {
    const VarId v = nb.vars[vq];
    const int d = nb.var_depth[vq];
    ++vq;
    if (d + 1 > R) continue;
    for (uint32_t ci : g.var_adj[v]) {
      if (eq_local[ci] >= 0) continue;
      eq_local[ci] = static_cast<int>(nb.clauses.size());
      nb.clauses.push_back(ci);
      eq_depth.push_back(d + 1);
      if (d + 2 > R) continue;
      for (VarId w : g.eq_adj[ci]) {
        if (var_local[w] >= 0) continue;
        var_local[w] = static_cast<int>(nb.vars.size());
        nb.vars.push_back(w);
        nb.var_depth.push_back(d + 2);
      }
    }
  }

  nb.sub.n = static_cast<uint32_t>(nb.vars.size());
  nb.sub.rows.reserve(nb.clauses.size());
  nb.sub.rhs.reserve(nb.clauses.size());
  for (uint32_t ci : nb.clauses) {
    std::vector<VarId> row;
    for (VarId w : g.eq_adj[ci])
      if (var_local[w] >= 0) row.push_back(static_cast<VarId>(var_local[w]));
    nb.sub.rows.push_back(std::move(row));
    nb.sub.rhs.push_back(inst.clauses[ci].rhs);
  }
  return nb;
}

bool is_tree(const Neighborhood& nb) {
  size_t nodes = nb.vars.size() + nb.clauses.size();
  size_t edges = 0;
  for (const auto& row : nb.sub.rows) edges += row.size();
  return edges + 1 == nodes;  // ball is connected by construction
}

namespace {

// strict order on the (Z, -index) selection key: true if a is selected later
// than b, i.e. key(a) < key(b)
bool key_less(const std::vector<double>& Z, VarId a, VarId b) {
  if (Z[a] != Z[b]) return Z[a] < Z[b];
  return a > b;
}

}  // namespace

std::vector<VarId> influence_range(const FactorGraph& g, const std::vector<double>& Z, VarId i,
                                   int R) {
  if (Z.size() != g.n) throw std::invalid_argument("influence_range: |Z| != n");
  if (i >= g.n) throw std::invalid_argument("influence_range: variable out of range");
  std::vector<char> in_set(g.n, 0);
  std::vector<uint32_t> stack{i};
  in_set[i] = 1;

  // scratch for distance-bounded BFS in the co-occurrence graph
  std::vector<uint32_t> seen_ver(g.n, 0);
  uint32_t version = 0;
  std::vector<std::pair<VarId, int>> queue;

  while (!stack.empty()) {
    const VarId y = stack.back();
    stack.pop_back();
    ++version;
    queue.clear();
    queue.emplace_back(y, 0);
    seen_ver[y] = version;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const auto [w, d] = queue[qi];
      if (w != y && !in_set[w] && key_less(Z, w, y)) {
        in_set[w] = 1;
        stack.push_back(w);
      }
      if (d == R) continue;
      for (uint32_t ci : g.var_adj[w]) {
        for (VarId u : g.eq_adj[ci]) {
          if (seen_ver[u] == version) continue;
          seen_ver[u] = version;
          queue.emplace_back(u, d + 1);
        }
      }
    }
  }

  std::vector<VarId> out;
  for (VarId v = 0; v < g.n; ++v)
    if (in_set[v]) out.push_back(v);
  return out;
}

}  // namespace xorsat
