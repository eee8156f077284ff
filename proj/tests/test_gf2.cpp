#include "doctest.h"

#include <bit>
#include <cmath>
#include <map>

#include "xorsat/gf2.hpp"
#include "xorsat/rng.hpp"

using namespace xorsat;

namespace {

// ground truth by full enumeration, n <= 24
struct BruteForce {
  uint64_t count = 0;
  std::vector<uint64_t> ones;  // per variable, solutions with that bit set

  BruteForce(const Instance& inst) {
    ones.assign(inst.n, 0);
    std::vector<uint64_t> masks;
    std::vector<uint8_t> rhs;
    for (const Clause& c : inst.clauses) {
      uint64_t m = 0;
      for (VarId v : c.vars) m |= 1ULL << v;
      masks.push_back(m);
      rhs.push_back(c.rhs);
    }
    for (uint64_t x = 0; x < (1ULL << inst.n); ++x) {
      bool ok = true;
      for (size_t i = 0; i < masks.size(); ++i)
        if ((std::popcount(x & masks[i]) & 1) != rhs[i]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      ++count;
      for (uint32_t v = 0; v < inst.n; ++v)
        if ((x >> v) & 1) ++ones[v];
    }
  }
};

Instance small_random(uint64_t seed) {
  Rng rng(seed, 0xabc);
  const uint32_t n = 4 + uint32_t(rng.next_below(13));  // 4..16
  const uint32_t m = uint32_t(rng.next_below(n + 6));
  return sample_instance(3, n, m, seed);
}

}  // namespace

TEST_CASE("empty system") {
  Instance inst;
  inst.n = 5;
  inst.k = 3;
  const auto res = eliminate(inst);
  CHECK(res.rank == 0);
  CHECK(res.consistent);
  CHECK(res.count_exp() == 5);
  CHECK(res.nullspace_basis.size() == 5);
}

TEST_CASE("contradictory pair is inconsistent") {
  XorSystem sys;
  sys.n = 2;
  sys.rows = {{0, 1}, {0, 1}};
  sys.rhs = {0, 1};
  const auto res = eliminate(sys);
  CHECK_FALSE(res.consistent);
  CHECK(res.count_exp() == -1);
}

TEST_CASE("elimination invariants on random systems") {
  for (uint64_t s = 0; s < 40; ++s) {
    const Instance inst = small_random(s);
    const auto res = eliminate(inst);
    if (!res.consistent) continue;
    CHECK(evaluate(inst, res.particular).satisfied);
    CHECK(res.nullspace_basis.size() == res.n - res.rank);
    // basis vectors solve the homogeneous system: particular ^ basis solves inst
    for (const Assignment& b : res.nullspace_basis) {
      Assignment x = res.particular;
      for (uint32_t i = 0; i < res.n; ++i) x[i] ^= b[i];
      CHECK(evaluate(inst, x).satisfied);
    }
  }
}

TEST_CASE("counts and marginals match enumeration") {
  int consistent_seen = 0;
  for (uint64_t s = 0; s < 120; ++s) {
    const Instance inst = small_random(s + 1000);
    const BruteForce bf(inst);
    const auto res = eliminate(inst);
    if (bf.count == 0) {
      CHECK_FALSE(res.consistent);
      CHECK(exact_marginal(inst, 0).unsat());
      continue;
    }
    ++consistent_seen;
    REQUIRE(res.consistent);
    CHECK(bf.count == (1ULL << res.count_exp()));
    for (VarId v = 0; v < inst.n; ++v) {
      const MarginalValue mv = exact_marginal(inst, v);
      REQUIRE_FALSE(mv.unsat());
      const uint64_t num = mv.num_exp < 0 ? 0 : (1ULL << mv.num_exp);
      CHECK(num == bf.ones[v]);
      CHECK((1ULL << mv.den_exp) == bf.count);
    }
  }
  CHECK(consistent_seen > 20);
}

TEST_CASE("unique solution sampling") {
  // x0=1, x1=0, x0^x1 parity fixes rank 2 over n=2
  XorSystem sys;
  sys.n = 2;
  sys.rows = {{0}, {1}};
  sys.rhs = {1, 0};
  const auto res = eliminate(sys);
  REQUIRE(res.consistent);
  REQUIRE(res.count_exp() == 0);
  for (uint64_t s = 0; s < 5; ++s) {
    const Assignment a = sample_solution(res, s);
    CHECK(a == Assignment{1, 0});
  }
}

TEST_CASE("sampled solutions are uniform over the affine space") {
  // first seed yielding a consistent system with a small solution space
  Instance inst;
  EliminationResult res;
  for (uint64_t s = 0;; ++s) {
    inst = sample_instance(3, 10, 6, s);
    res = eliminate(inst);
    if (res.consistent && res.count_exp() >= 3 && res.count_exp() <= 6) break;
    REQUIRE(s < 50);
  }
  const BruteForce bf(inst);
  REQUIRE(bf.count == (1ULL << res.count_exp()));

  std::map<uint64_t, int> counts;
  Rng rng(5, streams::kSolution);
  const int draws = 40000;
  for (int d = 0; d < draws; ++d) {
    const Assignment a = sample_solution(res, rng);
    CHECK(evaluate(inst, a).satisfied);
    uint64_t key = 0;
    for (uint32_t i = 0; i < inst.n; ++i) key |= uint64_t(a[i]) << i;
    counts[key]++;
  }
  REQUIRE(counts.size() == bf.count);
  const double expect = double(draws) / double(bf.count);
  double chi2 = 0;
  for (const auto& [key, c] : counts) chi2 += (c - expect) * (c - expect) / expect;
  // dof = count-1; generous bound ~ dof + 5*sqrt(2 dof)
  const double dof = double(bf.count - 1);
  CHECK(chi2 < dof + 5.0 * std::sqrt(2.0 * dof) + 10.0);
}

TEST_CASE("marginal special cases") {
  XorSystem unit;
  unit.n = 3;
  unit.rows = {{0}};
  unit.rhs = {1};
  CHECK(exact_marginal(unit, 0).is_one());
  CHECK(exact_marginal(unit, 1).is_half());  // untouched variable
  CHECK(exact_marginal(unit, 2).is_half());

  XorSystem zero;
  zero.n = 1;
  zero.rows = {{0}};
  zero.rhs = {0};
  CHECK(exact_marginal(zero, 0).is_zero());
}
