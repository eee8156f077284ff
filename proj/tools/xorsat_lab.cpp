#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "xorsat/experiments.hpp"
#include "xorsat/gf2.hpp"
#include "xorsat/peeling.hpp"
#include "xorsat/rng.hpp"

using nlohmann::json;
using namespace xorsat;

namespace {

constexpr const char* kBuildId = "xorsat-lab-1.0.0";

std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

using Config = std::vector<std::pair<std::string, std::string>>;

std::string csv_header(const std::string& cmd, const Config& cfg) {
  std::string out = "# build=" + std::string(kBuildId) + "\n# cmd=" + cmd + "\n";
  for (const auto& [k, v] : cfg) out += "# " + k + "=" + v + "\n";
  return out;
}

json json_config(const std::string& cmd, const Config& cfg) {
  json j{{"build", kBuildId}, {"cmd", cmd}};
  for (const auto& [k, v] : cfg) j[k] = v;
  return j;
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + out_path);
  f << payload;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open input file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

uint32_t clauses_for(double r, uint32_t n) {
  return static_cast<uint32_t>(std::llround(r * n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-XORSAT laboratory: sampling, solving, peeling, decimation and theory tables"};
  app.require_subcommand(1);

  // shared option storage
  int k = 3, radius = 2;
  double r = 0.9;
  uint32_t n = 1000, trials = 20, pairs = 1000, checkpoints = 101;
  uint64_t seed = 1;
  std::string rule = "uc", out_path, in_path, format = "csv", target = "core";
  std::vector<int> k_list;
  std::vector<double> r_list;
  bool full_walk = false, with_sample = false;
  int64_t m_override = -1;

  auto add_common = [&](CLI::App* sub, bool needs_r) {
    sub->add_option("--k", k, "clause width");
    if (needs_r) sub->add_option("--r", r, "clause density m/n");
    sub->add_option("--n", n, "variable count");
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_rule = [&](CLI::App* sub) {
    sub->add_option("--rule", rule, "local rule")->check(CLI::IsMember({"uc", "marginal"}));
    sub->add_option("--radius", radius, "rule radius (even; uc fixes 2, marginal default 4)");
  };

  auto* c_theory = app.add_subcommand("theory", "threshold table and freeness constants");
  c_theory->add_option("--k", k_list, "clause widths (repeatable; default 3..9)");
  c_theory->add_option("--r", r_list, "densities for freeness reports (repeatable)");
  c_theory->add_option("--radius", radius, "radius for the w_e column");
  c_theory->add_option("--out", out_path, "output file");
  c_theory->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* c_gen = app.add_subcommand("gen", "sample an instance and print it");
  add_common(c_gen, true);
  c_gen->add_option("--m", m_override, "clause count (overrides --r)");

  auto* c_solve = app.add_subcommand("solve", "exact GF(2) solve of an instance file");
  c_solve->add_option("--in", in_path, "instance file")->required();
  c_solve->add_option("--out", out_path, "output file");
  c_solve->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  c_solve->add_option("--seed", seed, "seed for --sample");
  c_solve->add_flag("--sample", with_sample, "include one uniform solution");

  auto* c_peel = app.add_subcommand("peel", "peel an instance file to its 2-core");
  c_peel->add_option("--in", in_path, "instance file")->required();
  c_peel->add_option("--out", out_path, "output file");

  auto* c_dec = app.add_subcommand("decimate", "run one decimation, emit JSON-lines trace");
  add_common(c_dec, true);
  add_rule(c_dec);
  c_dec->add_option("--in", in_path, "instance file (instead of sampling)");

  auto* c_free = app.add_subcommand("freeness", "free-step fractions over trials");
  add_common(c_free, true);
  add_rule(c_free);
  c_free->add_option("--trials", trials, "trial count");

  auto* c_walk = app.add_subcommand("walk", "re-randomization walk distances");
  add_common(c_walk, true);
  add_rule(c_walk);
  c_walk->add_option("--checkpoints", checkpoints, "number of checkpoints (incl. 0 and n)");
  c_walk->add_flag("--full", full_walk, "use all n+1 checkpoints (quadratic cost)");

  auto* c_ogp = app.add_subcommand("ogp-scan", "solution-pair distance histogram");
  add_common(c_ogp, true);
  c_ogp->add_option("--pairs", pairs, "solution pairs to sample");
  c_ogp->add_option("--target", target, "whole|core")->check(CLI::IsMember({"whole", "core"}));

  auto* c_succ = app.add_subcommand("success", "decimation success fraction per density");
  add_common(c_succ, false);
  add_rule(c_succ);
  c_succ->add_option("--r", r_list, "densities (repeatable)")->required();
  c_succ->add_option("--trials", trials, "trial count");

  auto* c_core = app.add_subcommand("core-stats", "2-core fractions and degree histogram");
  add_common(c_core, true);
  c_core->add_option("--trials", trials, "trial count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*c_theory) {
      if (k_list.empty()) k_list = {3, 4, 5, 6, 7, 8, 9};
      Config cfg{{"k", [&] {
                    std::string s;
                    for (int kk : k_list) s += (s.empty() ? "" : ",") + std::to_string(kk);
                    return s;
                  }()}};
      if (format == "json") {
        json rep;
        rep["config"] = json_config("theory", cfg);
        rep["thresholds"] = json::array();
        rep["freeness"] = json::array();
        for (int kk : k_list) {
          const auto tr = theory::threshold_report(kk);
          rep["thresholds"].push_back({{"k", tr.k},
                                       {"r_core", tr.r_core},
                                       {"r_1", tr.r_1},
                                       {"alpha_1", tr.alpha_1},
                                       {"r_sat_estimate", tr.r_sat_est},
                                       {"r_sat_note", "criterion-based estimate"}});
          for (double rr : r_list) {
            const auto fr = theory::freeness_report(kk, rr, radius % 2 ? radius + 1 : radius);
            json jf{{"k", fr.k},       {"r", fr.r},      {"Q", fr.Q},
                    {"mu", fr.mu},     {"mu_u", fr.mu_u}, {"w1", fr.w1},
                    {"w1_star", fr.w1_star}, {"R", fr.R},  {"w_e", fr.w_e},
                    {"w_e_limit", fr.w_e_limit}};
            if (fr.x_pm_defined) {
              jf["x_minus"] = fr.x_minus;
              jf["w_e_star"] = fr.w_e_star;
            }
            rep["freeness"].push_back(jf);
          }
        }
        emit(out_path, rep.dump(2) + "\n");
      } else {
        std::string s = csv_header("theory", cfg);
        s += "k,r_core,r_1,alpha_1,r_sat_estimate\n";
        for (int kk : k_list) {
          const auto tr = theory::threshold_report(kk);
          s += std::to_string(kk) + "," + fmt9(tr.r_core) + "," + fmt9(tr.r_1) + "," +
               fmt9(tr.alpha_1) + "," + fmt9(tr.r_sat_est) + "\n";
        }
        emit(out_path, s);
      }
      return 0;
    }

    if (*c_gen) {
      const uint32_t m = m_override >= 0 ? uint32_t(m_override) : clauses_for(r, n);
      emit(out_path, serialize(sample_instance(uint32_t(k), n, m, seed)));
      return 0;
    }

    if (*c_solve) {
      const Instance inst = parse_instance(slurp(in_path));
      const EliminationResult res = eliminate(inst);
      Config cfg{{"in", in_path}, {"n", std::to_string(inst.n)},
                 {"m", std::to_string(inst.m())}, {"k", std::to_string(inst.k)}};
      if (format == "json") {
        json j{{"config", json_config("solve", cfg)},
               {"satisfiable", res.consistent},
               {"rank", res.rank},
               {"count_exp", res.count_exp()}};
        if (res.consistent && with_sample) j["sample"] = sample_solution(res, seed);
        emit(out_path, j.dump(2) + "\n");
      } else {
        std::string s = csv_header("solve", cfg);
        s += "satisfiable,rank,count_exp\n";
        s += std::string(res.consistent ? "1" : "0") + "," + std::to_string(res.rank) + "," +
             std::to_string(res.count_exp()) + "\n";
        emit(out_path, s);
      }
      return 0;
    }

    if (*c_peel) {
      const Instance inst = parse_instance(slurp(in_path));
      const CoreResult cr = peel(inst);
      std::string kept;
      for (VarId v : cr.kept) kept += " " + std::to_string(v);
      char hash[32];
      std::snprintf(hash, sizeof hash, "%016llx",
                    static_cast<unsigned long long>(instance_hash(inst)));
      emit(out_path, "# core-of " + std::string(hash) + " kept" + kept + "\n" +
                         serialize(cr.core));
      return 0;
    }

    if (*c_dec) {
      const Instance inst = in_path.empty()
                                ? sample_instance(uint32_t(k), n, clauses_for(r, n), seed)
                                : parse_instance(slurp(in_path));
      const LocalRule lr = rule_by_name(rule, radius);
      const auto Z = random_unit_vector(inst.n, seed, streams::kOrdering);
      const auto U = random_unit_vector(inst.n, seed, streams::kInternal);
      emit(out_path, trace_to_json_lines(run_decimation(inst, lr, Z, U), inst));
      return 0;
    }

    Config cfg{{"k", std::to_string(k)},       {"r", fmt9(r)},
               {"n", std::to_string(n)},       {"trials", std::to_string(trials)},
               {"rule", rule},                 {"radius", std::to_string(radius)},
               {"seed", std::to_string(seed)}};

    if (*c_free) {
      const FreenessBatch fb = run_freeness(k, r, n, trials, rule, radius, seed);
      if (format == "json") {
        json j{{"config", json_config("freeness", cfg)},
               {"fractions", fb.fractions},
               {"mean", fb.mean},
               {"sem", fb.sem},
               {"w1", fb.theory_w1},
               {"w_e", fb.theory_w_e}};
        emit(out_path, j.dump(2) + "\n");
      } else {
        std::string s = csv_header("freeness", cfg);
        s += "# mean=" + fmt9(fb.mean) + " sem=" + fmt9(fb.sem) + " w1=" + fmt9(fb.theory_w1) +
             " w_e=" + fmt9(fb.theory_w_e) + "\n";
        s += "trial,free_fraction\n";
        for (size_t t = 0; t < fb.fractions.size(); ++t)
          s += std::to_string(t) + "," + fmt9(fb.fractions[t]) + "\n";
        emit(out_path, s);
      }
      return 0;
    }

    if (*c_walk) {
      std::vector<uint32_t> cps;
      if (full_walk) {
        for (uint32_t i = 0; i <= n; ++i) cps.push_back(i);
      } else {
        const uint32_t count = std::max<uint32_t>(2, checkpoints);
        for (uint32_t j = 0; j < count; ++j)
          cps.push_back(static_cast<uint32_t>((uint64_t(j) * n) / (count - 1)));
        cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
      }
      const auto points = run_walk(k, r, n, rule, radius, cps, seed);
      std::string s = csv_header("walk", cfg);
      s += "i,dist,core_dist,both_solve\n";
      for (const WalkPoint& p : points)
        s += std::to_string(p.i) + "," + fmt9(p.dist) + "," + fmt9(p.core_dist) + "," +
             (p.both_solve ? "1" : "0") + "\n";
      emit(out_path, s);
      return 0;
    }

    if (*c_ogp) {
      cfg.emplace_back("pairs", std::to_string(pairs));
      cfg.emplace_back("target", target);
      const OgpScan scan = run_ogp_scan(k, r, n, pairs, target == "core", seed);
      if (format == "json") {
        json j{{"config", json_config("ogp-scan", cfg)},
               {"core_empty", scan.core_empty},
               {"exhausted", scan.exhausted},
               {"resamples", scan.resamples},
               {"space_size", scan.space_size},
               {"pairs_used", scan.pairs_used},
               {"gap_lo", scan.gap_lo},
               {"gap_hi", scan.gap_hi},
               {"bins", scan.bins}};
        emit(out_path, j.dump(2) + "\n");
      } else {
        std::string s = csv_header("ogp-scan", cfg);
        s += "# core_empty=" + std::to_string(scan.core_empty ? 1 : 0) +
             " resamples=" + std::to_string(scan.resamples) +
             " space_size=" + std::to_string(scan.space_size) +
             " pairs_used=" + std::to_string(scan.pairs_used) + " gap_lo=" + fmt9(scan.gap_lo) +
             " gap_hi=" + fmt9(scan.gap_hi) + "\n";
        s += "bin_lo,count\n";
        for (size_t b = 0; b < scan.bins.size(); ++b)
          s += fmt9(b / 100.0) + "," + std::to_string(scan.bins[b]) + "\n";
        emit(out_path, s);
      }
      return 0;
    }

    if (*c_succ) {
      const auto rows = run_success(k, r_list, n, trials, rule, radius, seed);
      std::string s = csv_header("success", cfg);
      s += "r,n,trials,successes,fraction\n";
      for (const SuccessRow& row : rows)
        s += fmt9(row.r) + "," + std::to_string(row.n) + "," + std::to_string(row.trials) + "," +
             std::to_string(row.successes) + "," + fmt9(row.fraction) + "\n";
      emit(out_path, s);
      return 0;
    }

    if (*c_core) {
      const CoreStatsBatch cs = run_core_stats(k, r, n, trials, seed);
      if (format == "json") {
        json j{{"config", json_config("core-stats", cfg)},
               {"mean_var_fraction", cs.mean_var_fraction},
               {"mean_clause_fraction", cs.mean_clause_fraction},
               {"empty_cores", cs.empty_cores},
               {"mean_degree_hist", cs.mean_degree_hist},
               {"theory_V", cs.theory_V},
               {"theory_lambda_hat", cs.theory_lambda_hat}};
        emit(out_path, j.dump(2) + "\n");
      } else {
        std::string s = csv_header("core-stats", cfg);
        s += "# mean_var_fraction=" + fmt9(cs.mean_var_fraction) +
             " mean_clause_fraction=" + fmt9(cs.mean_clause_fraction) +
             " V=" + fmt9(cs.theory_V) + " empty_cores=" + std::to_string(cs.empty_cores) + "\n";
        s += "degree,core_fraction,lambda_hat\n";
        const size_t top = std::max(cs.mean_degree_hist.size(), cs.theory_lambda_hat.size());
        for (size_t d = 0; d < top; ++d) {
          const double emp = d < cs.mean_degree_hist.size() ? cs.mean_degree_hist[d] : 0.0;
          const double th = d < cs.theory_lambda_hat.size() ? cs.theory_lambda_hat[d] : 0.0;
          s += std::to_string(d) + "," + fmt9(emp) + "," + fmt9(th) + "\n";
        }
        emit(out_path, s);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
