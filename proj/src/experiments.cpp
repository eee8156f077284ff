#include "xorsat/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "xorsat/gf2.hpp"
#include "xorsat/peeling.hpp"
#include "xorsat/rng.hpp"

namespace xorsat {

unsigned thread_budget() {
  if (const char* env = std::getenv("XORSAT_LAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void parallel_trials(uint32_t trials, const std::function<void(uint32_t)>& fn) {
  const unsigned workers = std::min<uint32_t>(thread_budget(), trials);
  if (workers <= 1) {
    for (uint32_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<uint32_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (uint32_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) fn(t);
    });
  }
  for (auto& th : pool) th.join();
}

uint64_t trial_seed(uint64_t master, uint64_t trial) {
  return Rng::derive(master, 0x7452a1ULL + trial);
}

LocalRule rule_by_name(const std::string& name, int radius) {
  if (name == "uc") return make_rule_uc();
  if (name == "marginal") return make_rule_marginal(radius);
  throw std::invalid_argument("unknown rule '" + name + "' (expected uc or marginal)");
}

namespace {

void mean_sem(const std::vector<double>& xs, double& mean, double& sem) {
  mean = 0;
  sem = 0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  if (xs.size() < 2) return;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sem = std::sqrt(ss / double(xs.size() - 1) / double(xs.size()));
}

}  // namespace

FreenessBatch run_freeness(int k, double r, uint32_t n, uint32_t trials,
                           const std::string& rule_name, int radius, uint64_t seed) {
  FreenessBatch out;
  out.fractions.assign(trials, 0.0);
  std::vector<uint64_t> violated(trials, 0);
  const uint32_t m = static_cast<uint32_t>(std::llround(r * n));
  parallel_trials(trials, [&](uint32_t t) {
    const uint64_t s = trial_seed(seed, t);
    const LocalRule rule = rule_by_name(rule_name, radius);
    const Instance inst = sample_instance(k, n, m, s);
    const auto Z = random_unit_vector(n, s, streams::kOrdering);
    const auto U = random_unit_vector(n, s, streams::kInternal);
    const DecimationTrace tr = run_decimation(inst, rule, Z, U);
    out.fractions[t] = free_fraction(tr);
    violated[t] = tr.violated_on_removal;
  });
  for (uint64_t v : violated) out.violated_total += v;
  mean_sem(out.fractions, out.mean, out.sem);
  out.theory_w1 = theory::w1(k, r);
  out.theory_w_e = theory::w_e(k, r, radius);
  return out;
}

CoreStatsBatch run_core_stats(int k, double r, uint32_t n, uint32_t trials, uint64_t seed) {
  CoreStatsBatch out;
  out.var_fractions.assign(trials, 0.0);
  out.clause_fractions.assign(trials, 0.0);
  std::vector<std::vector<double>> hists(trials);
  const uint32_t m = static_cast<uint32_t>(std::llround(r * n));
  parallel_trials(trials, [&](uint32_t t) {
    const Instance inst = sample_instance(k, n, m, trial_seed(seed, t));
    const CoreResult cr = peel(inst);
    const CoreStats st = core_stats(cr, n, m);
    out.var_fractions[t] = st.core_var_fraction;
    out.clause_fractions[t] = st.core_clause_fraction;
    hists[t] = st.core_degree_hist;
  });
  double dummy;
  mean_sem(out.var_fractions, out.mean_var_fraction, dummy);
  mean_sem(out.clause_fractions, out.mean_clause_fraction, dummy);
  uint32_t nonempty = 0;
  for (uint32_t t = 0; t < trials; ++t) {
    if (hists[t].empty()) {
      ++out.empty_cores;
      continue;
    }
    ++nonempty;
    if (hists[t].size() > out.mean_degree_hist.size())
      out.mean_degree_hist.resize(hists[t].size(), 0.0);
    for (size_t i = 0; i < hists[t].size(); ++i) out.mean_degree_hist[i] += hists[t][i];
  }
  if (nonempty)
    for (double& x : out.mean_degree_hist) x /= double(nonempty);
  out.theory_V = theory::V(k, r);
  out.theory_lambda_hat.assign(9, 0.0);
  for (int l = 2; l <= 8; ++l) out.theory_lambda_hat[l] = theory::lambda_hat(l, k, r);
  return out;
}

std::vector<WalkPoint> run_walk(int k, double r, uint32_t n, const std::string& rule_name,
                                int radius, const std::vector<uint32_t>& checkpoints,
                                uint64_t seed) {
  if (checkpoints.empty() || checkpoints.front() != 0 || checkpoints.back() != n)
    throw std::invalid_argument("run_walk: checkpoints must include 0 and n");
  const LocalRule rule = rule_by_name(rule_name, radius);
  const uint32_t m = static_cast<uint32_t>(std::llround(r * n));
  const Instance inst = sample_instance(k, n, m, seed);
  const auto Z = random_unit_vector(n, seed, streams::kOrdering);
  const auto Vv = random_unit_vector(n, seed, streams::kInternal);
  const auto Wv = random_unit_vector(n, seed, streams::kInternalAlt);
  const CoreResult cr = peel(inst);

  const auto assignments = rerandomization_sequence(inst, rule, Z, Vv, Wv, checkpoints);
  const Assignment& base = assignments.front().second;
  const bool base_solves = evaluate(inst, base).satisfied;
  const Assignment base_core = project(base, cr);

  std::vector<WalkPoint> out;
  out.reserve(checkpoints.size());
  for (const auto& [i, a] : assignments) {
    WalkPoint wp;
    wp.i = i;
    wp.dist = n ? double(hamming(base, a)) / double(n) : 0.0;
    if (cr.core.n > 0)
      wp.core_dist = double(hamming(base_core, project(a, cr))) / double(cr.core.n);
    wp.both_solve = base_solves && evaluate(inst, a).satisfied;
    out.push_back(wp);
  }
  return out;
}

WalkDrift run_walk_drift(int k, double r, uint32_t n, const std::string& rule_name, int radius,
                         uint32_t pairs, uint64_t seed) {
  WalkDrift out;
  out.endpoint_dist.assign(pairs, 0.0);
  out.free_fracs.assign(pairs, 0.0);
  const uint32_t m = static_cast<uint32_t>(std::llround(r * n));
  parallel_trials(pairs, [&](uint32_t t) {
    const uint64_t s = trial_seed(seed, t);
    const LocalRule rule = rule_by_name(rule_name, radius);
    const Instance inst = sample_instance(k, n, m, s);
    const auto Z = random_unit_vector(n, s, streams::kOrdering);
    const auto Vv = random_unit_vector(n, s, streams::kInternal);
    const auto Wv = random_unit_vector(n, s, streams::kInternalAlt);
    const DecimationTrace a = run_decimation(inst, rule, Z, Vv);
    const DecimationTrace b = run_decimation(inst, rule, Z, Wv);
    out.endpoint_dist[t] = double(hamming(a.output, b.output)) / double(n);
    out.free_fracs[t] = free_fraction(a);
  });
  double dummy;
  mean_sem(out.endpoint_dist, out.mean_dist, dummy);
  mean_sem(out.free_fracs, out.mean_free, dummy);
  return out;
}

OgpScan run_ogp_scan(int k, double r, uint32_t n, uint32_t pairs, bool core_target,
                     uint64_t seed) {
  OgpScan out;
  out.core_target = core_target;
  out.bins.assign(101, 0);
  const uint32_t m = static_cast<uint32_t>(std::llround(r * n));

  EliminationResult elim;
  uint32_t space = 0;
  bool found = false;
  for (uint32_t attempt = 0; attempt <= 100; ++attempt) {
    const Instance inst = sample_instance(k, n, m, trial_seed(seed, attempt));
    const Instance* target = &inst;
    CoreResult cr;
    if (core_target) {
      cr = peel(inst);
      if (cr.core.n == 0) {
        out.core_empty = true;
        return out;
      }
      target = &cr.core;
    }
    elim = eliminate(*target);
    if (elim.consistent) {
      space = target->n;
      found = true;
      break;
    }
    ++out.resamples;
  }
  if (!found) {
    out.exhausted = true;
    return out;
  }
  out.space_size = space;

  Rng rng(seed, streams::kSolution);
  out.distances.reserve(pairs);
  for (uint32_t p = 0; p < pairs; ++p) {
    const Assignment a = sample_solution(elim, rng);
    const Assignment b = sample_solution(elim, rng);
    const uint32_t d = hamming(a, b);
    if (d == 0) continue;  // identical pair: excluded by protocol
    const double nd = double(d) / double(space);
    out.distances.push_back(nd);
    const size_t bin = std::min<size_t>(100, size_t(nd * 100.0));
    ++out.bins[bin];
  }
  out.pairs_used = static_cast<uint32_t>(out.distances.size());

  // widest empty interval between consecutive observed distances, with 0 as
  // a sentinel so an empty near-0 band reports (0, bulk minimum)
  std::vector<double> ds = out.distances;
  ds.push_back(0.0);
  std::sort(ds.begin(), ds.end());
  for (size_t i = 0; i + 1 < ds.size(); ++i) {
    if (ds[i + 1] - ds[i] > out.gap_hi - out.gap_lo) {
      out.gap_lo = ds[i];
      out.gap_hi = ds[i + 1];
    }
  }
  return out;
}

std::vector<SuccessRow> run_success(int k, const std::vector<double>& r_grid, uint32_t n,
                                    uint32_t trials, const std::string& rule_name, int radius,
                                    uint64_t seed) {
  std::vector<SuccessRow> rows;
  for (double r : r_grid) {
    SuccessRow row;
    row.r = r;
    row.n = n;
    row.trials = trials;
    const uint32_t m = static_cast<uint32_t>(std::llround(r * n));
    std::atomic<uint32_t> successes{0};
    parallel_trials(trials, [&](uint32_t t) {
      const uint64_t s = trial_seed(seed ^ Rng::mix(std::llround(r * 1e9)), t);
      const LocalRule rule = rule_by_name(rule_name, radius);
      const Instance inst = sample_instance(k, n, m, s);
      const auto Z = random_unit_vector(n, s, streams::kOrdering);
      const auto U = random_unit_vector(n, s, streams::kInternal);
      const DecimationTrace tr = run_decimation(inst, rule, Z, U);
      if (tr.violated_on_removal == 0 && evaluate(inst, tr.output).satisfied)
        successes.fetch_add(1);
    });
    row.successes = successes.load();
    row.fraction = trials ? double(row.successes) / double(trials) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace xorsat
