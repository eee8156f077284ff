#include "xorsat/decimation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "xorsat/gf2.hpp"
#include "xorsat/rng.hpp"

namespace xorsat {

namespace {

// Residual instance: live widths/rhs per clause, assigned flags per
// variable, and a version-stamped scratch so per-step ball extraction does
// no O(n) clearing.
struct Residual {
  const Instance& inst;
  std::vector<std::vector<uint32_t>> var_clauses;
  std::vector<uint32_t> width;
  std::vector<uint8_t> rhs;
  std::vector<char> assigned;

  std::vector<uint32_t> var_mark, eq_mark;
  std::vector<int> var_local, eq_local;
  uint32_t version = 0;

  explicit Residual(const Instance& in) : inst(in) {
    var_clauses.assign(in.n, {});
    for (uint32_t ci = 0; ci < in.m(); ++ci)
      for (VarId v : in.clauses[ci].vars) var_clauses[v].push_back(ci);
    width.assign(in.m(), in.k);
    rhs.resize(in.m());
    for (uint32_t ci = 0; ci < in.m(); ++ci) rhs[ci] = in.clauses[ci].rhs;
    assigned.assign(in.n, 0);
    var_mark.assign(in.n, 0);
    eq_mark.assign(in.m(), 0);
    var_local.assign(in.n, -1);
    eq_local.assign(in.m(), -1);
  }

  Neighborhood ball(VarId root, int R) {
    Neighborhood nb;
    nb.root = root;
    nb.radius = R;
    ++version;
    var_mark[root] = version;
    var_local[root] = 0;
    nb.vars.push_back(root);
    nb.var_depth.push_back(0);
    nb.root_local = 0;
    size_t vq = 0;
    while (vq < nb.vars.size()) {
      const VarId v = nb.vars[vq];
      const int d = nb.var_depth[vq];
      ++vq;
      if (d + 1 > R) continue;
      for (uint32_t ci : var_clauses[v]) {
        if (width[ci] == 0) continue;
        if (eq_mark[ci] == version) continue;
        eq_mark[ci] = version;
        eq_local[ci] = static_cast<int>(nb.clauses.size());
        nb.clauses.push_back(ci);
        if (d + 2 > R) continue;
        for (VarId w : inst.clauses[ci].vars) {
          if (assigned[w] || var_mark[w] == version) continue;
          var_mark[w] = version;
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
      row.reserve(width[ci]);
      for (VarId w : inst.clauses[ci].vars)
        if (!assigned[w] && var_mark[w] == version) row.push_back(static_cast<VarId>(var_local[w]));
      nb.sub.rows.push_back(std::move(row));
      nb.sub.rhs.push_back(rhs[ci]);
    }
    return nb;
  }

  // returns the number of clauses that left with their parity violated
  uint32_t assign(VarId v, uint8_t bit) {
    assigned[v] = 1;
    uint32_t violated = 0;
    for (uint32_t ci : var_clauses[v]) {
      rhs[ci] ^= bit;
      if (--width[ci] == 0 && rhs[ci]) ++violated;
    }
    return violated;
  }
};

}  // namespace

LocalRule make_rule_uc() {
  LocalRule rule;
  rule.name = "uc";
  rule.radius = 2;
  rule.fn = [](const Neighborhood& nb) -> RuleValue {
    int64_t best = -1;
    uint8_t best_rhs = 0;
    for (size_t i = 0; i < nb.sub.rows.size(); ++i) {
      const auto& row = nb.sub.rows[i];
      if (row.size() != 1 || row[0] != nb.root_local) continue;
      const int64_t orig = nb.clauses[i];
      if (best < 0 || orig < best) {
        best = orig;
        best_rhs = nb.sub.rhs[i];
      }
    }
    if (best < 0) return RuleValue{1, 2, true, false, 0.5};
    return RuleValue{best_rhs, 1, true, false, double(best_rhs)};
  };
  return rule;
}

LocalRule make_rule_marginal(int radius) {
  if (radius < 0 || radius % 2 != 0)
    throw std::invalid_argument("make_rule_marginal: radius must be even, >= 0");
  LocalRule rule;
  rule.name = "marginal";
  rule.radius = radius;
  rule.fn = [](const Neighborhood& nb) -> RuleValue {
    MarginalValue mv = exact_marginal(nb.sub, nb.root_local);
    if (mv.unsat()) return RuleValue{1, 2, true, true, 0.5};
    if (mv.is_half()) return RuleValue{1, 2, true, false, 0.5};
    if (mv.is_one()) return RuleValue{1, 1, true, false, 1.0};
    return RuleValue{0, 1, true, false, 0.0};
  };
  return rule;
}

std::vector<VarId> selection_order(const std::vector<double>& Z) {
  std::vector<VarId> order(Z.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](VarId a, VarId b) {
    if (Z[a] != Z[b]) return Z[a] > Z[b];
    return a < b;
  });
  return order;
}

DecimationTrace run_decimation(const Instance& inst, const LocalRule& rule,
                               const std::vector<double>& Z, const std::vector<double>& U,
                               const StepObserver& observer) {
  if (Z.size() != inst.n || U.size() != inst.n)
    throw std::invalid_argument("run_decimation: |Z| and |U| must equal n");
  const std::vector<VarId> order = selection_order(Z);
  Residual res(inst);
  DecimationTrace trace;
  trace.steps.reserve(inst.n);
  trace.output.assign(inst.n, 0);
  for (uint32_t t = 0; t < inst.n; ++t) {
    if (observer) observer(t, ResidualView{res.width, res.rhs, res.assigned});
    const VarId x = order[t];
    const Neighborhood nb = res.ball(x, rule.radius);
    const RuleValue rv = rule.fn(nb);
    const uint8_t bit = U[t] < rv.p() ? 1 : 0;
    trace.violated_on_removal += res.assign(x, bit);
    trace.output[x] = bit;
    const bool free = rv.is_free();
    trace.free_steps += free ? 1 : 0;
    trace.any_inexact = trace.any_inexact || !rv.exact;
    trace.unsat_balls += rv.unsat_ball ? 1 : 0;
    trace.steps.push_back(StepRecord{t, x, rv.num, rv.den, rv.exact, free, bit});
  }
  return trace;
}

double free_fraction(const DecimationTrace& trace) {
  if (trace.steps.empty()) return 0.0;
  return double(trace.free_steps) / double(trace.steps.size());
}

std::vector<std::pair<uint32_t, Assignment>> rerandomization_sequence(
    const Instance& inst, const LocalRule& rule, const std::vector<double>& Z,
    const std::vector<double>& V, const std::vector<double>& W,
    const std::vector<uint32_t>& checkpoints) {
  if (V.size() != inst.n || W.size() != inst.n)
    throw std::invalid_argument("rerandomization_sequence: |V| and |W| must equal n");
  std::vector<std::pair<uint32_t, Assignment>> out;
  out.reserve(checkpoints.size());
  std::vector<double> U(inst.n);
  for (uint32_t i : checkpoints) {
    if (i > inst.n) throw std::invalid_argument("rerandomization_sequence: checkpoint > n");
    for (uint32_t t = 0; t < inst.n; ++t) U[t] = t < i ? W[t] : V[t];
    out.emplace_back(i, run_decimation(inst, rule, Z, U).output);
  }
  return out;
}

std::vector<double> random_unit_vector(uint32_t n, uint64_t seed, uint64_t stream) {
  Rng rng(seed, stream);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.next_unit();
  return v;
}

std::string trace_to_json_lines(const DecimationTrace& trace, const Instance& inst) {
  std::string out;
  for (const StepRecord& s : trace.steps) {
    nlohmann::json j{{"t", s.t},         {"var", s.var}, {"p_num", s.p_num},
                     {"p_den", s.p_den}, {"free", s.free}, {"bit", s.bit != 0}};
    if (!s.exact) j["exact"] = false;
    out += j.dump();
    out += '\n';
  }
  nlohmann::json summary{{"free_fraction", free_fraction(trace)},
                         {"satisfied", evaluate(inst, trace.output).satisfied},
                         {"violated_on_removal", trace.violated_on_removal}};
  if (trace.any_inexact) summary["any_inexact"] = true;
  if (trace.unsat_balls) summary["unsat_balls"] = trace.unsat_balls;
  out += summary.dump();
  out += '\n';
  return out;
}

}  // namespace xorsat
