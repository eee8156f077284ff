#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "xorsat/decimation.hpp"
#include "xorsat/factor_graph.hpp"
#include "xorsat/rng.hpp"

using namespace xorsat;

namespace {

Instance chain_instance() {
  // x0-e0-x1-e1-x2 (width-2 clauses)
  Instance inst;
  inst.n = 3;
  inst.k = 2;
  inst.clauses.push_back({{0, 1}, 0});
  inst.clauses.push_back({{1, 2}, 1});
  return inst;
}

}  // namespace

TEST_CASE("build_graph degrees") {
  Instance inst;
  inst.n = 3;
  inst.k = 3;
  inst.clauses.push_back({{0, 1, 2}, 0});
  const FactorGraph g = build_graph(inst);
  CHECK(g.var_adj[0].size() == 1);
  CHECK(g.var_adj[1].size() == 1);
  CHECK(g.var_adj[2].size() == 1);
  CHECK(g.eq_adj[0].size() == 3);

  Instance empty;
  empty.n = 4;
  empty.k = 3;
  const FactorGraph ge = build_graph(empty);
  for (const auto& a : ge.var_adj) CHECK(a.empty());

  const Instance rnd = sample_instance(3, 30, 20, 1);
  const FactorGraph gr = build_graph(rnd);
  size_t total = 0;
  for (const auto& a : gr.var_adj) total += a.size();
  CHECK(total == 60);
}

TEST_CASE("degree profile of a fresh instance") {
  const Instance inst = sample_instance(3, 200, 150, 2);
  const DegreeProfile dp = degree_profile(build_graph(inst));
  CHECK(dp.P.back() == doctest::Approx(1.0));  // all clauses width 3
  double sl = 0, sp = 0;
  for (double x : dp.Lambda) sl += x;
  for (double x : dp.P) sp += x;
  CHECK(sl == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp == doctest::Approx(1.0).epsilon(1e-12));

  // single clause: every edge touches a degree-1 variable
  Instance one;
  one.n = 3;
  one.k = 3;
  one.clauses.push_back({{0, 1, 2}, 0});
  const DegreeProfile d1 = degree_profile(build_graph(one));
  REQUIRE(d1.edge_defined);
  CHECK(d1.lambda[1] == doctest::Approx(1.0));
}

TEST_CASE("variable degrees approach the Poisson limit") {
  const int n = 100000;
  const double kr = 2.7;
  const Instance inst = sample_instance(3, n, uint32_t(0.9 * n), 31);
  const DegreeProfile dp = degree_profile(build_graph(inst));
  double pmf = std::exp(-kr);
  for (int i = 0; i <= 8; ++i) {
    const double emp = i < int(dp.Lambda.size()) ? dp.Lambda[i] : 0.0;
    CHECK(std::fabs(emp - pmf) < 0.01);
    pmf *= kr / (i + 1);
  }
}

TEST_CASE("neighborhood balls") {
  const Instance inst = chain_instance();
  const FactorGraph g = build_graph(inst);

  const Neighborhood r0 = neighborhood(g, inst, 0, 0);
  CHECK(r0.vars == std::vector<VarId>{0});
  CHECK(r0.clauses.empty());

  const Neighborhood r2 = neighborhood(g, inst, 0, 2);
  CHECK(r2.vars.size() == 2);  // x0, x1
  CHECK(r2.clauses == std::vector<uint32_t>{0});

  const Neighborhood r4 = neighborhood(g, inst, 0, 4);
  CHECK(r4.vars.size() == 3);
  CHECK(r4.clauses.size() == 2);

  // monotone growth in R
  const Instance rnd = sample_instance(3, 60, 54, 4);
  const FactorGraph gr = build_graph(rnd);
  for (VarId v = 0; v < 10; ++v) {
    size_t prev = 0;
    for (int R = 0; R <= 6; R += 2) {
      const Neighborhood nb = neighborhood(gr, rnd, v, R);
      CHECK(nb.vars.size() >= prev);
      prev = nb.vars.size();
      for (int d : nb.var_depth) CHECK(d <= R);
    }
  }

  CHECK_THROWS_AS(neighborhood(g, inst, 99, 2), std::invalid_argument);
  CHECK_THROWS_AS(neighborhood(g, inst, 0, 3), std::invalid_argument);
}

TEST_CASE("is_tree") {
  const Instance chain = chain_instance();
  const FactorGraph g = build_graph(chain);
  CHECK(is_tree(neighborhood(g, chain, 0, 0)));
  CHECK(is_tree(neighborhood(g, chain, 0, 4)));

  // two clauses sharing two variables: a 4-cycle
  Instance cyc;
  cyc.n = 2;
  cyc.k = 2;
  cyc.clauses.push_back({{0, 1}, 0});
  cyc.clauses.push_back({{0, 1}, 1});
  const FactorGraph gc = build_graph(cyc);
  CHECK_FALSE(is_tree(neighborhood(gc, cyc, 0, 2)));
}

TEST_CASE("influence range basics") {
  Instance inst;
  inst.n = 3;
  inst.k = 2;
  inst.clauses.push_back({{0, 1}, 0});
  const FactorGraph g = build_graph(inst);
  const std::vector<double> Z{0.9, 0.3, 0.5};

  CHECK(influence_range(g, Z, 2, 2) == std::vector<VarId>{2});  // isolated
  const auto ir0 = influence_range(g, Z, 0, 1);
  CHECK(std::find(ir0.begin(), ir0.end(), 1u) != ir0.end());
  CHECK(influence_range(g, Z, 1, 1) == std::vector<VarId>{1});  // Z_1 is smallest key
}

TEST_CASE("influence range only reaches smaller keys") {
  const Instance inst = sample_instance(3, 300, 270, 9);
  const FactorGraph g = build_graph(inst);
  const auto Z = random_unit_vector(inst.n, 12, streams::kOrdering);
  for (VarId i = 0; i < 30; ++i) {
    const auto ir = influence_range(g, Z, i, 2);
    REQUIRE(std::find(ir.begin(), ir.end(), i) != ir.end());
    for (VarId j : ir) {
      if (j == i) continue;
      CHECK(Z[j] <= Z[i]);
    }
  }
}

TEST_CASE("influence range size stays modest at working scale") {
  // the theoretical bound is asymptotic; at this n only the single-hop
  // variant is far below n, the two-hop variant is just monitored
  const uint32_t n = 10000;
  const Instance inst = sample_instance(3, n, uint32_t(0.9 * n), 77);
  const FactorGraph g = build_graph(inst);
  const auto Z = random_unit_vector(n, 21, streams::kOrdering);
  size_t max_r1 = 0, max_r2 = 0;
  Rng rng(4, 6);
  for (int t = 0; t < 50; ++t) {
    const VarId i = VarId(rng.next_below(n));
    const size_t s1 = influence_range(g, Z, i, 1).size();
    const size_t s2 = influence_range(g, Z, i, 2).size();
    CHECK(s1 <= s2);  // larger hop length only adds variables
    max_r1 = std::max(max_r1, s1);
    max_r2 = std::max(max_r2, s2);
  }
  MESSAGE("max influence-range sizes over 50 probes: hop<=1: ", max_r1,
          ", hop<=2: ", max_r2);
  CHECK(max_r1 < n / 10);
  CHECK(max_r2 <= n);
}
