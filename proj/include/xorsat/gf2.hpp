#pragma once

#include <cstdint>
#include <vector>

#include "xorsat/instance.hpp"
#include "xorsat/rng.hpp"

namespace xorsat {

// Affine solution space of Ax=b over GF(2): particular point + nullspace
// basis. Solution count is 2^(n - rank) when consistent, else 0.
struct EliminationResult {
  uint32_t n = 0;
  uint32_t rank = 0;
  bool consistent = true;
  Assignment particular;                    // empty when inconsistent
  std::vector<Assignment> nullspace_basis;  // n - rank vectors, each length n

  // log2 of the solution count, or -1 when unsatisfiable
  int64_t count_exp() const { return consistent ? int64_t(n) - int64_t(rank) : -1; }
};

EliminationResult eliminate(const XorSystem& sys);
EliminationResult eliminate(const Instance& inst);

Assignment sample_solution(const EliminationResult& res, Rng& rng);
Assignment sample_solution(const EliminationResult& res, uint64_t seed);

// Marginal P(v=1) over the uniform measure on solutions, stored exactly as
// powers of two: num = 2^num_exp solutions with v=1 (num_exp = -1 means
// zero), den = 2^den_exp solutions total (den_exp = -1 means unsatisfiable).
// In a GF(2) affine space the fraction is always 0, 1/2 or 1.
struct MarginalValue {
  int64_t num_exp = -1;
  int64_t den_exp = -1;

  bool unsat() const { return den_exp < 0; }
  bool is_half() const { return !unsat() && num_exp == den_exp - 1; }
  bool is_one() const { return !unsat() && num_exp == den_exp; }
  bool is_zero() const { return !unsat() && num_exp < 0; }
  double p() const {
    if (unsat()) return 0.5;  // caller policy; flagged by unsat()
    if (num_exp < 0) return 0.0;
    return num_exp == den_exp ? 1.0 : 0.5;
  }
};

// Rank trick: append v=0 and v=1 and compare consistency; never enumerates.
MarginalValue exact_marginal(const XorSystem& sys, VarId v);
MarginalValue exact_marginal(const Instance& inst, VarId v);

}  // namespace xorsat
