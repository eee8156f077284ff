#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "xorsat/decimation.hpp"
#include "xorsat/instance.hpp"
#include "xorsat/theory.hpp"

namespace xorsat {

// Worker-pool size: XORSAT_LAB_THREADS if set, else hardware concurrency.
unsigned thread_budget();

// Runs fn(0..trials-1) across the pool; each trial must derive its own RNG
// substreams so results are independent of scheduling.
void parallel_trials(uint32_t trials, const std::function<void(uint32_t)>& fn);

// Per-trial master seed derived from the experiment seed.
uint64_t trial_seed(uint64_t master, uint64_t trial);

LocalRule rule_by_name(const std::string& name, int radius);

struct FreenessBatch {
  std::vector<double> fractions;  // per trial
  double mean = 0, sem = 0;
  double theory_w1 = 0, theory_w_e = 0;
  uint64_t violated_total = 0;
};

FreenessBatch run_freeness(int k, double r, uint32_t n, uint32_t trials,
                           const std::string& rule_name, int radius, uint64_t seed);

struct CoreStatsBatch {
  std::vector<double> var_fractions, clause_fractions;  // per trial
  double mean_var_fraction = 0, mean_clause_fraction = 0;
  std::vector<double> mean_degree_hist;  // averaged over trials with nonempty core
  uint32_t empty_cores = 0;
  double theory_V = 0;
  std::vector<double> theory_lambda_hat;  // index = degree, up to 8
};

CoreStatsBatch run_core_stats(int k, double r, uint32_t n, uint32_t trials, uint64_t seed);

struct WalkPoint {
  uint32_t i = 0;
  double dist = 0;       // d(sigma_0, sigma_i)/n
  double core_dist = 0;  // projected distance / core size (0 when core empty)
  bool both_solve = false;
};

// One re-randomization walk; checkpoints must include 0 and n.
std::vector<WalkPoint> run_walk(int k, double r, uint32_t n, const std::string& rule_name,
                                int radius, const std::vector<uint32_t>& checkpoints,
                                uint64_t seed);

struct WalkDrift {
  std::vector<double> endpoint_dist;  // per pair, d(sigma_0, sigma_n)/n
  std::vector<double> free_fracs;     // per pair (run with V)
  double mean_dist = 0, mean_free = 0;
};

WalkDrift run_walk_drift(int k, double r, uint32_t n, const std::string& rule_name, int radius,
                         uint32_t pairs, uint64_t seed);

struct OgpScan {
  bool core_target = false;
  bool core_empty = false;
  uint32_t resamples = 0;
  bool exhausted = false;  // no satisfiable instance in 100 resamples
  uint32_t space_size = 0;  // variables of the scanned system
  uint32_t pairs_used = 0;
  std::vector<uint64_t> bins;  // width 0.01, index d/n in [i/100,(i+1)/100)
  std::vector<double> distances;  // normalized, distinct pairs only
  double gap_lo = 0, gap_hi = 0;  // widest empty interval (edges at samples)
};

OgpScan run_ogp_scan(int k, double r, uint32_t n, uint32_t pairs, bool core_target,
                     uint64_t seed);

struct SuccessRow {
  double r = 0;
  uint32_t n = 0;
  uint32_t trials = 0;
  uint32_t successes = 0;
  double fraction = 0;
};

std::vector<SuccessRow> run_success(int k, const std::vector<double>& r_grid, uint32_t n,
                                    uint32_t trials, const std::string& rule_name, int radius,
                                    uint64_t seed);

}  // namespace xorsat
