#pragma once

#include <cstdint>
#include <vector>

#include "xorsat/instance.hpp"

namespace xorsat {

// Result of peeling to the 2-core. Clauses are always removed whole together
// with their degree-<=1 variable, so the core is an induced sub-instance of
// full width-k clauses, re-indexed densely in ascending original order.
struct CoreResult {
  Instance core;
  std::vector<VarId> kept;  // core var id -> original var id
  // removal log, in order: (variable, clause removed with it or -1)
  std::vector<std::pair<VarId, int64_t>> peel_order;
};

// Deterministic peel: among degree-<=1 variables always the lowest index.
CoreResult peel(const Instance& inst);

// Same fixed point, randomized candidate order; used for confluence checks.
CoreResult peel_randomized(const Instance& inst, uint64_t seed);

// Restriction of a full assignment to the core variables.
Assignment project(const Assignment& a, const CoreResult& cr);

// Replay the peel log backwards: forced bit when the variable left with a
// clause, uniform random bit when it left with degree 0.
Assignment extend_core_solution(const Assignment& core_sol, const Instance& original,
                                const CoreResult& cr, uint64_t seed);

struct CoreStats {
  double core_var_fraction = 0.0;     // relative to original n
  double core_clause_fraction = 0.0;  // relative to original m
  // fraction of *core* variables by degree (sums to 1 when the core is
  // nonempty); comparable to the truncated-Poisson prediction
  std::vector<double> core_degree_hist;
};

CoreStats core_stats(const CoreResult& cr, uint32_t n, uint32_t m);

}  // namespace xorsat
