#pragma once

#include <cstdint>
#include <vector>

#include "xorsat/instance.hpp"

namespace xorsat {

// Bipartite variable/equation adjacency of an instance.
struct FactorGraph {
  uint32_t n = 0;
  std::vector<std::vector<uint32_t>> var_adj;  // variable -> incident clause ids
  std::vector<std::vector<VarId>> eq_adj;      // clause -> member variables
};

FactorGraph build_graph(const Instance& inst);

// Empirical degree distributions: node perspective (Lambda for variables,
// P for equations) and edge perspective (lambda, rho).
struct DegreeProfile {
  std::vector<double> Lambda;
  std::vector<double> P;
  std::vector<double> lambda;
  std::vector<double> rho;
  bool edge_defined = false;  // false when the graph has no edges
};

DegreeProfile degree_profile(const FactorGraph& g);

// Radius-R ball around a variable, re-indexed as a standalone XOR system.
// Clause membership is the *residual* membership passed in by the caller
// (full clauses when taken on a plain instance).
struct Neighborhood {
  VarId root = 0;
  int radius = 0;
  XorSystem sub;                   // locally indexed; sub.n == vars.size()
  std::vector<VarId> vars;         // local var id -> original var id
  std::vector<uint32_t> clauses;   // local clause id -> original clause id
  std::vector<int> var_depth;      // per local var, factor-graph distance from root
  uint32_t root_local = 0;
};

Neighborhood neighborhood(const FactorGraph& g, const Instance& inst, VarId root, int R);

bool is_tree(const Neighborhood& nb);

// All variables reachable from i by chains whose consecutive elements are
// within variable-to-variable distance <= R (co-occurrence graph) and whose
// (Z, -index) key strictly decreases. Always contains i. Sorted output.
std::vector<VarId> influence_range(const FactorGraph& g, const std::vector<double>& Z, VarId i,
                                   int R);

}  // namespace xorsat
