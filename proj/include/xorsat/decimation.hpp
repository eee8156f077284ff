#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "xorsat/factor_graph.hpp"
#include "xorsat/instance.hpp"

namespace xorsat {

// Rule output. Exact rules report a dyadic rational num/den; a step is free
// iff p is exactly 1/2. Inexact (float-valued) rules set exact=false and the
// free predicate degrades to |p - 1/2| < 2^-40, flagged in the trace.
struct RuleValue {
  int64_t num = 1;
  int64_t den = 2;
  bool exact = true;
  bool unsat_ball = false;  // marginal rule met an unsatisfiable neighborhood
  double approx = 0.5;      // used when exact == false

  double p() const { return exact ? double(num) / double(den) : approx; }
  bool is_free() const {
    if (exact) return num * 2 == den;
    return approx > 0.5 - 0x1.0p-40 && approx < 0.5 + 0x1.0p-40;
  }
};

struct LocalRule {
  std::string name;
  int radius = 2;  // even; the ball passed to fn has this radius
  std::function<RuleValue(const Neighborhood&)> fn;
};

LocalRule make_rule_uc();                    // unit-clause rule, radius 2
LocalRule make_rule_marginal(int radius = 4);  // exact ball marginal

struct StepRecord {
  uint32_t t = 0;
  VarId var = 0;
  int64_t p_num = 1;
  int64_t p_den = 2;
  bool exact = true;
  bool free = false;
  uint8_t bit = 0;
};

struct DecimationTrace {
  std::vector<StepRecord> steps;
  Assignment output;
  uint64_t violated_on_removal = 0;
  uint64_t unsat_balls = 0;
  bool any_inexact = false;
  uint32_t free_steps = 0;
};

// Read-only view of the residual state offered to observers (e.g. to
// snapshot the clause-width histogram mid-run).
struct ResidualView {
  const std::vector<uint32_t>& clause_width;
  const std::vector<uint8_t>& clause_rhs;
  const std::vector<char>& assigned;
};

using StepObserver = std::function<void(uint32_t t, const ResidualView&)>;

// Sequential decimation: at step t the unassigned variable with the largest
// (Z, -index) key is assigned 1 iff U[t] < rule(ball). Deterministic in
// (inst, rule, Z, U).
DecimationTrace run_decimation(const Instance& inst, const LocalRule& rule,
                               const std::vector<double>& Z, const std::vector<double>& U,
                               const StepObserver& observer = {});

double free_fraction(const DecimationTrace& trace);

// Outputs for U^i = (W_0..W_{i-1}, V_i..V_{n-1}) at each checkpoint i.
std::vector<std::pair<uint32_t, Assignment>> rerandomization_sequence(
    const Instance& inst, const LocalRule& rule, const std::vector<double>& Z,
    const std::vector<double>& V, const std::vector<double>& W,
    const std::vector<uint32_t>& checkpoints);

// i.i.d. uniform [0,1) vector from a named stream
std::vector<double> random_unit_vector(uint32_t n, uint64_t seed, uint64_t stream);

// Variables in selection order: argsort by (Z, -index) descending.
std::vector<VarId> selection_order(const std::vector<double>& Z);

// Trace as JSON lines (one record per step, then a summary record).
std::string trace_to_json_lines(const DecimationTrace& trace, const Instance& inst);

}  // namespace xorsat
