#include "xorsat/theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xorsat::theory {

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// g(Q) = 1 - exp(-k r Q^{k-1}) - Q; positive between the two nontrivial
// fixed points, negative at Q=1.
double fp_gap(int k, double r, double Q) { return 1.0 - std::exp(-k * r * ipow(Q, k - 1)) - Q; }

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

constexpr double kGolden = 0.61803398874989484820;

// maximum of f on [a,b] (f unimodal there), returns argmax
double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double solve_Q(int k, double r, double tol) {
  if (k < 3) throw std::invalid_argument("solve_Q: k >= 3 required");
  if (r <= 0) return 0.0;
  auto g = [k, r](double Q) { return fp_gap(k, r, Q); };

  constexpr int kGrid = 10000;
  int hit = -1;
  for (int i = kGrid - 1; i >= 1; --i) {
    if (g(double(i) / kGrid) > 0) {
      hit = i;
      break;
    }
  }
  if (hit < 0) {
    // near tangency the positive sliver can slip between grid points:
    // refine around the interior maximum before giving up
    int best = 1;
    double best_g = -1e300;
    for (int i = 1; i < kGrid; ++i) {
      const double v = g(double(i) / kGrid);
      if (v > best_g) {
        best_g = v;
        best = i;
      }
    }
    const double qm =
        golden_max(g, double(best - 1) / kGrid, double(best + 1) / kGrid, 1e-13);
    if (g(qm) <= 0) return 0.0;
    return bisect(g, qm, 1.0, tol);
  }
  return bisect(g, double(hit) / kGrid, double(hit + 1) / kGrid, tol);
}

double r_core(int k, double tol) {
  auto has_core = [k](double r) { return solve_Q(k, r) > 1e-9; };
  double lo = 0.0, hi = 1.0;  // has_core(1) holds for every k >= 3
  while (hi - lo > tol * 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (has_core(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double V(int k, double r) {
  const double Q = solve_Q(k, r);
  if (Q <= 0) return 0.0;
  const double lam = k * r * ipow(Q, k - 1);
  return 1.0 - std::exp(-lam) * (1.0 + lam);
}

double lambda_hat(int l, int k, double r) {
  if (l < 2) return 0.0;
  const double Q = solve_Q(k, r);
  if (Q <= 0) return 0.0;
  const double lam = k * r * ipow(Q, k - 1);
  double num = 1.0;
  for (int i = 1; i <= l; ++i) num *= lam / i;
  return num / (std::exp(lam) - 1.0 - lam);
}

double mu(int k, double r) {
  const double Q = solve_Q(k, r);
  const double lam = k * r * ipow(Q, k - 1);
  return std::exp(-lam) * (1.0 + lam);
}

double mu_u(int k) {
  const double a = 1.0 - std::exp(-1.0 / k);
  return a - a * std::log(a);
}

double lower_inc_gamma(double a, double x) {
  if (a <= 0 || x < 0) throw std::invalid_argument("lower_inc_gamma: need a > 0, x >= 0");
  if (x == 0) return 0.0;
  const double lga = std::lgamma(a);
  if (x < a + 1.0) {
    // series: gamma(a,x) = e^{-x} x^a sum_{n>=0} x^n / (a (a+1) ... (a+n))
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x));
  }
  // modified Lentz continued fraction for the upper tail Gamma(a,x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  const double upper = std::exp(-x + a * std::log(x)) * h;
  return std::exp(lga) - upper;
}

double w1(int k, double r) {
  if (r == 0) return 1.0;
  const double kr = k * r;
  const double a = 1.0 / (k - 1);
  return std::pow(kr, 1.0 / (1.0 - k)) / (k - 1) * lower_inc_gamma(a, kr);
}

double w1_star(int k) {
  const double a = 1.0 / (k - 1);
  const double x = k * std::pow(double(k) / (k + 1), k - 1);
  return std::pow(double(k), 1.0 / (1.0 - k)) / (k - 1) * lower_inc_gamma(a, x);
}

double S_l(double x, int k, double r, int l) {
  double S = 1.0;
  for (int i = 0; i < l; ++i)
    S = std::exp(-k * r * ipow((1.0 - x) * (1.0 - S) + x, k - 1));
  return S;
}

double S_hat(double x, int k, double r, int max_levels) {
  double S = 1.0;
  for (int i = 0; i < max_levels; ++i) {
    const double next = std::exp(-k * r * ipow((1.0 - x) * (1.0 - S) + x, k - 1));
    if (std::fabs(next - S) < 1e-14) return next;
    S = next;
  }
  return S;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double w_e(int k, double r, int R) {
  return adaptive_simpson([=](double x) { return S_l(x, k, r, R); }, 0.0, 1.0, 1e-8, 40);
}

std::pair<double, double> x_pm(int k, double r) {
  if (k < 3) throw std::invalid_argument("x_pm: k >= 3 required");
  const double kr = k * r;
  const double disc = 1.0 - 4.0 / (kr * kr) * (std::pow(kr, 1.0 / (k - 1)) - 1.0);
  if (disc < 0)
    throw std::domain_error("x_pm: negative discriminant at k=" + std::to_string(k) +
                            ", r=" + std::to_string(r));
  const double s = std::sqrt(disc);
  const double xm = std::pow((1.0 - s) / 2.0, 1.0 / (k - 2));
  const double xp = std::pow((1.0 + s) / 2.0, 1.0 / (k - 2));
  return {xp, xm};
}

double w_e_star(int k, double r) {
  const double xm = x_pm(k, r).second;
  return xm - k * r * r * ipow(xm, k);
}

double binary_entropy(double a) {
  if (a <= 0.0 || a >= 1.0) return 0.0;
  return -a * std::log2(a) - (1.0 - a) * std::log2(1.0 - a);
}

double first_moment_f(int k, double r, double alpha) {
  double c = 1.0;  // alpha^alpha (1-alpha)^(1-alpha), boundary value 1
  if (alpha > 0.0 && alpha < 1.0)
    c = std::pow(alpha, alpha) * std::pow(1.0 - alpha, 1.0 - alpha);
  const double base = (1.0 + ipow(1.0 - 2.0 * alpha, k)) / 4.0;
  return 2.0 / c * std::pow(base, r);
}

double r_star(int k, double alpha) {
  const double denom = 2.0 - std::log2(1.0 + ipow(1.0 - 2.0 * alpha, k));
  return (1.0 + binary_entropy(alpha)) / denom;
}

double r_1(int k, double* alpha_out) {
  auto f = [k](double a) { return r_star(k, a); };
  constexpr int kGrid = 20000;
  int best = 0;
  double best_v = 1e300;
  for (int i = 0; i <= kGrid; ++i) {
    const double a = 0.5 * i / kGrid;
    const double v = f(a);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double lo = 0.5 * std::max(0, best - 1) / kGrid;
  const double hi = 0.5 * std::min(kGrid, best + 1) / kGrid;
  const double am = golden_max([&](double a) { return -f(a); }, lo, hi, 1e-12);
  if (alpha_out) *alpha_out = am;
  return f(am);
}

double r_sat_estimate(int k, double tol) {
  const double rc = r_core(k);
  auto h = [k](double r) {
    const double Q = solve_Q(k, r);
    return r * ipow(Q, k) - V(k, r);
  };
  double lo = rc + 2e-6, hi = 1.0;
  if (h(lo) >= 0) return lo;
  return bisect(h, lo, hi, tol * 1e-3);
}

DegreePrediction degree_profile_prediction(int k, double r, double x) {
  DegreePrediction dp;
  const double kr = k * r;
  const int cap = std::max(30, 3 * k);
  dp.var_deg.resize(cap + 1);
  double pois = std::exp(-kr);
  for (int i = 0; i <= cap; ++i) {
    dp.var_deg[i] = pois * (1.0 - x);
    pois *= kr / (i + 1);
  }
  dp.clause_deg.assign(k + 1, 0.0);
  double binom = 1.0;  // C(k, i)
  for (int i = 0; i <= k; ++i) {
    dp.clause_deg[i] = r * binom * ipow(x, k - i) * ipow(1.0 - x, i);
    binom *= double(k - i) / double(i + 1);
  }
  return dp;
}

ThresholdReport threshold_report(int k) {
  ThresholdReport tr;
  tr.k = k;
  tr.r_core = r_core(k);
  tr.r_1 = r_1(k, &tr.alpha_1);
  tr.r_sat_est = r_sat_estimate(k);
  return tr;
}

FreenessReport freeness_report(int k, double r, int R) {
  FreenessReport fr;
  fr.k = k;
  fr.r = r;
  fr.R = R;
  fr.Q = solve_Q(k, r);
  fr.mu = mu(k, r);
  fr.mu_u = mu_u(k);
  fr.w1 = w1(k, r);
  fr.w1_star = w1_star(k);
  fr.w_e = w_e(k, r, R);
  fr.w_e_limit = adaptive_simpson([=](double x) { return S_hat(x, k, r); }, 0.0, 1.0, 1e-8, 40);
  try {
    fr.x_minus = x_pm(k, r).second;
    fr.w_e_star = w_e_star(k, r);
    fr.x_pm_defined = true;
  } catch (const std::domain_error&) {
    fr.x_pm_defined = false;
  }
  return fr;
}

}  // namespace xorsat::theory
