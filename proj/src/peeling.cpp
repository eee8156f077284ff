#include "xorsat/peeling.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "xorsat/rng.hpp"

namespace xorsat {

namespace {

struct PeelState {
  const Instance& inst;
  std::vector<std::vector<uint32_t>> var_clauses;
  std::vector<uint32_t> degree;
  std::vector<char> var_removed;
  std::vector<char> clause_alive;
  CoreResult out;

  explicit PeelState(const Instance& in) : inst(in) {
    var_clauses.assign(in.n, {});
    for (uint32_t ci = 0; ci < in.m(); ++ci)
      for (VarId v : in.clauses[ci].vars) var_clauses[v].push_back(ci);
    degree.assign(in.n, 0);
    for (VarId v = 0; v < in.n; ++v) degree[v] = static_cast<uint32_t>(var_clauses[v].size());
    var_removed.assign(in.n, 0);
    clause_alive.assign(in.m(), 1);
  }

  bool is_candidate(VarId v) const { return !var_removed[v] && degree[v] <= 1; }

  // removes v (and its only alive clause, if any); returns freed neighbors
  template <typename Push>
  void remove(VarId v, Push push) {
    var_removed[v] = 1;
    int64_t removed_clause = -1;
    if (degree[v] == 1) {
      for (uint32_t ci : var_clauses[v])
        if (clause_alive[ci]) {
          removed_clause = ci;
          break;
        }
      clause_alive[removed_clause] = 0;
      for (VarId w : inst.clauses[removed_clause].vars) {
        if (w == v || var_removed[w]) continue;
        if (--degree[w] <= 1) push(w);
      }
    }
    out.peel_order.emplace_back(v, removed_clause);
  }

  CoreResult finish() {
    std::vector<int64_t> local(inst.n, -1);
    for (VarId v = 0; v < inst.n; ++v)
      if (!var_removed[v]) {
        local[v] = static_cast<int64_t>(out.kept.size());
        out.kept.push_back(v);
      }
    out.core.n = static_cast<uint32_t>(out.kept.size());
    out.core.k = inst.k;
    for (uint32_t ci = 0; ci < inst.m(); ++ci) {
      if (!clause_alive[ci]) continue;
      Clause c;
      c.rhs = inst.clauses[ci].rhs;
      for (VarId v : inst.clauses[ci].vars) c.vars.push_back(static_cast<VarId>(local[v]));
      out.core.clauses.push_back(std::move(c));
    }
    return std::move(out);
  }
};

}  // namespace

CoreResult peel(const Instance& inst) {
  PeelState st(inst);
  // lowest-index-first among candidates, lazy deletions
  std::priority_queue<VarId, std::vector<VarId>, std::greater<VarId>> pq;
  for (VarId v = 0; v < inst.n; ++v)
    if (st.is_candidate(v)) pq.push(v);
  auto push = [&](VarId w) { pq.push(w); };
  while (!pq.empty()) {
    VarId v = pq.top();
    pq.pop();
    if (!st.is_candidate(v)) continue;
    st.remove(v, push);
  }
  return st.finish();
}

CoreResult peel_randomized(const Instance& inst, uint64_t seed) {
  PeelState st(inst);
  Rng rng(seed, streams::kShuffle);
  std::vector<VarId> pool;
  for (VarId v = 0; v < inst.n; ++v)
    if (st.is_candidate(v)) pool.push_back(v);
  auto push = [&](VarId w) { pool.push_back(w); };
  while (!pool.empty()) {
    size_t i = static_cast<size_t>(rng.next_below(pool.size()));
    VarId v = pool[i];
    pool[i] = pool.back();
    pool.pop_back();
    if (!st.is_candidate(v)) continue;
    st.remove(v, push);
  }
  return st.finish();
}

Assignment project(const Assignment& a, const CoreResult& cr) {
  if (a.size() < cr.core.n) throw std::invalid_argument("project: assignment too short");
  Assignment out(cr.core.n, 0);
  for (uint32_t i = 0; i < cr.core.n; ++i) out[i] = a[cr.kept[i]] & 1u;
  return out;
}

Assignment extend_core_solution(const Assignment& core_sol, const Instance& original,
                                const CoreResult& cr, uint64_t seed) {
  if (core_sol.size() != cr.core.n)
    throw std::invalid_argument("extend_core_solution: core assignment length mismatch");
  if (!evaluate(cr.core, core_sol).satisfied)
    throw std::invalid_argument("extend_core_solution: assignment does not solve the core");
  Rng rng(seed, streams::kExtension);
  Assignment out(original.n, 0);
  for (uint32_t i = 0; i < cr.core.n; ++i) out[cr.kept[i]] = core_sol[i] & 1u;
  for (auto it = cr.peel_order.rbegin(); it != cr.peel_order.rend(); ++it) {
    const auto [v, ci] = *it;
    if (ci < 0) {
      out[v] = rng.next_bit() ? 1 : 0;
      continue;
    }
    const Clause& c = original.clauses[static_cast<size_t>(ci)];
    uint8_t acc = c.rhs;
    for (VarId w : c.vars)
      if (w != v) acc ^= out[w];
    out[v] = acc & 1u;
  }
  return out;
}

CoreStats core_stats(const CoreResult& cr, uint32_t n, uint32_t m) {
  CoreStats st;
  if (n > 0) st.core_var_fraction = double(cr.core.n) / double(n);
  if (m > 0) st.core_clause_fraction = double(cr.core.m()) / double(m);
  if (cr.core.n == 0) return st;
  std::vector<uint32_t> deg(cr.core.n, 0);
  for (const Clause& c : cr.core.clauses)
    for (VarId v : c.vars) ++deg[v];
  uint32_t maxd = 0;
  for (uint32_t d : deg) maxd = std::max(maxd, d);
  st.core_degree_hist.assign(maxd + 1, 0.0);
  for (uint32_t d : deg) st.core_degree_hist[d] += 1.0;
  for (double& x : st.core_degree_hist) x /= double(cr.core.n);
  return st;
}

}  // namespace xorsat
