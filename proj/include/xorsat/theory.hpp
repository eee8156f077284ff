#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace xorsat::theory {

// Largest Q in [0,1) with Q = 1 - exp(-k r Q^{k-1}); 0 when no positive
// fixed point exists. Downward grid scan brackets the largest root, with a
// golden-section refinement of the interior maximum so near-tangent slivers
// are not missed; bisection finishes to tol.
double solve_Q(int k, double r, double tol = 1e-12);

// Density above which a positive fixed point (a nonempty 2-core) appears.
double r_core(int k, double tol = 1e-7);

// Limiting core-variable fraction, and the truncated-Poisson fraction of
// core variables of degree l (zero for l < 2).
double V(int k, double r);
double lambda_hat(int l, int k, double r);

double mu(int k, double r);
double mu_u(int k);

// gamma(a, x) = int_0^x t^{a-1} e^{-t} dt; series for x < a+1, continued
// fraction otherwise; relative tolerance 1e-12.
double lower_inc_gamma(double a, double x);

// Free-step fraction of the unit-clause rule and its k-only lower bound.
double w1(int k, double r);
double w1_star(int k);

// Recursion S_0 = 1, S_{l+1}(x) = exp(-kr[(1-x)(1-S_l(x)) + x]^{k-1}).
double S_l(double x, int k, double r, int l);
// w_e = int_0^1 S_R(x) dx by adaptive Simpson (abs tol 1e-8, depth 40).
double w_e(int k, double r, int R);
// Fixed-point limit of S_l at a given x (l -> infinity; default cap 100).
double S_hat(double x, int k, double r, int max_levels = 100);

// Roots x^{+/-} used by the closed-form lower bound; throws std::domain_error
// naming (k, r) when the discriminant is negative.
std::pair<double, double> x_pm(int k, double r);
double w_e_star(int k, double r);

double binary_entropy(double a);
// First-moment exponent base for pair distance alpha.
double first_moment_f(int k, double r, double alpha);
double r_star(int k, double alpha);
// min over alpha in [0, 1/2] of r_star; optional argmin out-parameter.
double r_1(int k, double* alpha_out = nullptr);

// Criterion-based estimate of the satisfiability threshold: density where
// the core's clause/variable ratio reaches 1. Not a closed form from the
// source material; label it as an estimate wherever printed.
double r_sat_estimate(int k, double tol = 1e-7);

struct DegreePrediction {
  std::vector<double> var_deg;     // variables of degree i per original n
  std::vector<double> clause_deg;  // clauses of width i per original n (index 0..k)
};

// Predicted residual degree profile after a fraction x of decimation steps.
DegreePrediction degree_profile_prediction(int k, double r, double x);

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-8, int max_depth = 40);

struct ThresholdReport {
  int k = 0;
  double r_core = 0;
  double r_1 = 0;
  double alpha_1 = 0;
  double r_sat_est = 0;  // criterion-based estimate
};

struct FreenessReport {
  int k = 0;
  double r = 0;
  double Q = 0;
  double mu = 0;
  double mu_u = 0;
  double w1 = 0;
  double w1_star = 0;
  double w_e = 0;       // at radius R
  int R = 4;
  double w_e_limit = 0;  // 100-level recursion
  double w_e_star = 0;   // NaN-free only when the discriminant allows
  double x_minus = 0;
  bool x_pm_defined = false;
};

ThresholdReport threshold_report(int k);
FreenessReport freeness_report(int k, double r, int R = 4);

}  // namespace xorsat::theory
