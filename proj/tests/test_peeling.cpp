#include "doctest.h"

#include <set>

#include "xorsat/gf2.hpp"
#include "xorsat/peeling.hpp"
#include "xorsat/rng.hpp"
#include "xorsat/theory.hpp"

using namespace xorsat;

namespace {

std::set<VarId> kept_set(const CoreResult& cr) {
  return std::set<VarId>(cr.kept.begin(), cr.kept.end());
}

}  // namespace

TEST_CASE("tree instance peels to nothing") {
  Instance inst;
  inst.n = 5;
  inst.k = 3;
  inst.clauses.push_back({{0, 1, 2}, 0});
  inst.clauses.push_back({{2, 3, 4}, 1});
  const CoreResult cr = peel(inst);
  CHECK(cr.core.n == 0);
  CHECK(cr.core.m() == 0);
  CHECK(cr.peel_order.size() == 5);
  const CoreStats st = core_stats(cr, inst.n, inst.m());
  CHECK(st.core_var_fraction == 0.0);
  CHECK(st.core_clause_fraction == 0.0);
}

TEST_CASE("all-degree-2 cycle survives whole") {
  Instance inst;
  inst.n = 3;
  inst.k = 2;
  inst.clauses.push_back({{0, 1}, 1});
  inst.clauses.push_back({{1, 2}, 0});
  inst.clauses.push_back({{0, 2}, 1});
  const CoreResult cr = peel(inst);
  CHECK(cr.core.n == 3);
  CHECK(cr.core.m() == 3);
  CHECK(cr.kept == std::vector<VarId>{0, 1, 2});
  CHECK(cr.core == inst);

  // identity projection / extension on a full core
  const auto res = eliminate(inst);
  REQUIRE(res.consistent);
  const Assignment sol = sample_solution(res, 3);
  CHECK(project(sol, cr) == sol);
  CHECK(extend_core_solution(sol, inst, cr, 4) == sol);
}

TEST_CASE("core variables all have degree >= 2") {
  for (uint64_t s = 0; s < 20; ++s) {
    const Instance inst = sample_instance(3, 400, 360, s);
    const CoreResult cr = peel(inst);
    if (cr.core.n == 0) continue;
    std::vector<int> deg(cr.core.n, 0);
    for (const Clause& c : cr.core.clauses)
      for (VarId v : c.vars) ++deg[v];
    for (int d : deg) CHECK(d >= 2);
  }
}

TEST_CASE("peel log replays to the core") {
  const Instance inst = sample_instance(3, 300, 270, 5);
  const CoreResult cr = peel(inst);
  // replay: remove variables/clauses in order, check final survivor sets
  std::set<VarId> vars;
  for (VarId v = 0; v < inst.n; ++v) vars.insert(v);
  std::set<uint32_t> clauses;
  for (uint32_t c = 0; c < inst.m(); ++c) clauses.insert(c);
  for (const auto& [v, c] : cr.peel_order) {
    REQUIRE(vars.erase(v) == 1);
    if (c >= 0) REQUIRE(clauses.erase(uint32_t(c)) == 1);
  }
  CHECK(vars == kept_set(cr));
  std::set<uint32_t> expect_clauses;
  {
    // surviving original clause ids are those whose variables all survive
    std::set<VarId> kept = kept_set(cr);
    for (uint32_t c = 0; c < inst.m(); ++c) {
      bool all = true;
      for (VarId v : inst.clauses[c].vars) all = all && kept.count(v);
      if (all) expect_clauses.insert(c);
    }
  }
  CHECK(clauses == expect_clauses);
}

TEST_CASE("confluence: randomized order finds the same core") {
  for (uint64_t s = 0; s < 30; ++s) {
    const Instance inst = sample_instance(3, 200, uint32_t(200 * 0.95), s + 50);
    const CoreResult a = peel(inst);
    const CoreResult b = peel_randomized(inst, s * 17 + 1);
    CHECK(kept_set(a) == kept_set(b));
    CHECK(a.core == b.core);
  }
}

TEST_CASE("satisfiability of instance equals satisfiability of core") {
  for (uint64_t s = 0; s < 30; ++s) {
    const Instance inst = sample_instance(3, 150, uint32_t(150 * 1.05), s + 500);
    const CoreResult cr = peel(inst);
    const bool sat_full = eliminate(inst).consistent;
    const bool sat_core = cr.core.n == 0 ? true : eliminate(cr.core).consistent;
    CHECK(sat_full == sat_core);
  }
}

TEST_CASE("projection of a solution solves the core; extension solves the instance") {
  int checked = 0;
  for (uint64_t s = 0; s < 40 && checked < 15; ++s) {
    const Instance inst = sample_instance(3, 1000, 900, s + 900);
    const auto res = eliminate(inst);
    if (!res.consistent) continue;
    const CoreResult cr = peel(inst);
    if (cr.core.n == 0) continue;
    ++checked;
    const Assignment sol = sample_solution(res, s);
    const Assignment proj = project(sol, cr);
    CHECK(evaluate(cr.core, proj).satisfied);

    const auto core_res = eliminate(cr.core);
    REQUIRE(core_res.consistent);
    const Assignment core_sol = sample_solution(core_res, s + 1);
    const Assignment full = extend_core_solution(core_sol, inst, cr, s + 2);
    CHECK(evaluate(inst, full).satisfied);
    CHECK(project(full, cr) == core_sol);
  }
  CHECK(checked >= 10);
}

TEST_CASE("extension works from an empty core on a tree") {
  Instance inst;
  inst.n = 4;
  inst.k = 3;
  inst.clauses.push_back({{0, 1, 2}, 1});
  inst.clauses.push_back({{1, 2, 3}, 0});
  const CoreResult cr = peel(inst);
  REQUIRE(cr.core.n == 0);
  for (uint64_t s = 0; s < 8; ++s)
    CHECK(evaluate(inst, extend_core_solution({}, inst, cr, s)).satisfied);
}

TEST_CASE("extension rejects non-solutions of the core") {
  Instance inst;
  inst.n = 2;
  inst.k = 2;
  inst.clauses.push_back({{0, 1}, 0});
  inst.clauses.push_back({{0, 1}, 0});
  const CoreResult cr = peel(inst);
  REQUIRE(cr.core.n == 2);
  CHECK_THROWS_AS(extend_core_solution({0, 1}, inst, cr, 1), std::invalid_argument);
}

TEST_CASE("below the core threshold the core is almost always empty") {
  // density 0.7 < threshold for width 3; modest n keeps this fast
  int empty = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const Instance inst = sample_instance(3, 20000, 14000, 7000 + t);
    if (peel(inst).core.n == 0) ++empty;
  }
  CHECK(empty >= trials * 95 / 100);
}
