#include "xorsat/gf2.hpp"

#include <stdexcept>

namespace xorsat {

namespace {

// Dense bit matrix, one row = coefficients for n variables plus the rhs bit
// at column n. Pivoting is by ascending variable index for determinism.
struct PackedSystem {
  uint32_t n = 0;
  uint32_t m = 0;
  uint32_t words = 0;
  std::vector<uint64_t> bits;  // m * words

  explicit PackedSystem(const XorSystem& sys) {
    n = sys.n;
    m = static_cast<uint32_t>(sys.rows.size());
    words = (n + 1 + 63) / 64;
    bits.assign(size_t(m) * words, 0);
    for (uint32_t i = 0; i < m; ++i) {
      for (VarId v : sys.rows[i]) {
        if (v >= n) throw std::invalid_argument("eliminate: variable id out of range");
        row(i)[v >> 6] ^= (1ULL << (v & 63));  // xor: repeated vars cancel, but inputs are distinct
      }
      if (sys.rhs[i]) row(i)[n >> 6] ^= (1ULL << (n & 63));
    }
  }

  uint64_t* row(uint32_t i) { return bits.data() + size_t(i) * words; }
  const uint64_t* row(uint32_t i) const { return bits.data() + size_t(i) * words; }

  bool get(uint32_t i, uint32_t col) const {
    return (row(i)[col >> 6] >> (col & 63)) & 1u;
  }

  void xor_rows(uint32_t dst, uint32_t src) {
    uint64_t* d = row(dst);
    const uint64_t* s = row(src);
    for (uint32_t w = 0; w < words; ++w) d[w] ^= s[w];
  }

  void swap_rows(uint32_t a, uint32_t b) {
    if (a == b) return;
    uint64_t* pa = row(a);
    uint64_t* pb = row(b);
    for (uint32_t w = 0; w < words; ++w) std::swap(pa[w], pb[w]);
  }
};

}  // namespace

EliminationResult eliminate(const XorSystem& sys) {
  PackedSystem ps(sys);
  const uint32_t n = ps.n;
  EliminationResult res;
  res.n = n;

  std::vector<int64_t> pivot_row_of_col(n, -1);
  uint32_t r = 0;
  for (uint32_t col = 0; col < n && r < ps.m; ++col) {
    uint32_t pr = r;
    while (pr < ps.m && !ps.get(pr, col)) ++pr;
    if (pr == ps.m) continue;
    ps.swap_rows(r, pr);
    for (uint32_t i = 0; i < ps.m; ++i)
      if (i != r && ps.get(i, col)) ps.xor_rows(i, r);
    pivot_row_of_col[col] = r;
    ++r;
  }
  res.rank = r;

  res.consistent = true;
  for (uint32_t i = r; i < ps.m; ++i)
    if (ps.get(i, n)) {
      res.consistent = false;
      break;
    }
  if (!res.consistent) return res;

  // fully reduced: pivot variable value = its row's rhs with free vars at 0
  res.particular.assign(n, 0);
  for (uint32_t c = 0; c < n; ++c)
    if (pivot_row_of_col[c] >= 0)
      res.particular[c] = ps.get(uint32_t(pivot_row_of_col[c]), n) ? 1 : 0;

  res.nullspace_basis.reserve(n - r);
  for (uint32_t f = 0; f < n; ++f) {
    if (pivot_row_of_col[f] >= 0) continue;
    Assignment v(n, 0);
    v[f] = 1;
    for (uint32_t c = 0; c < n; ++c)
      if (pivot_row_of_col[c] >= 0)
        v[c] = ps.get(uint32_t(pivot_row_of_col[c]), f) ? 1 : 0;
    res.nullspace_basis.push_back(std::move(v));
  }
  return res;
}

EliminationResult eliminate(const Instance& inst) { return eliminate(to_system(inst)); }

Assignment sample_solution(const EliminationResult& res, Rng& rng) {
  if (!res.consistent) throw std::runtime_error("sample_solution: system is unsatisfiable");
  Assignment out = res.particular;
  for (const Assignment& b : res.nullspace_basis) {
    if (!rng.next_bit()) continue;
    for (uint32_t i = 0; i < res.n; ++i) out[i] ^= b[i];
  }
  return out;
}

Assignment sample_solution(const EliminationResult& res, uint64_t seed) {
  Rng rng(seed, streams::kSolution);
  return sample_solution(res, rng);
}

MarginalValue exact_marginal(const XorSystem& sys, VarId v) {
  if (v >= sys.n) throw std::invalid_argument("exact_marginal: variable id out of range");
  EliminationResult base = eliminate(sys);
  MarginalValue mv;
  if (!base.consistent) return mv;  // den_exp = -1
  mv.den_exp = int64_t(base.n) - int64_t(base.rank);

  XorSystem ext = sys;
  ext.rows.push_back({v});
  ext.rhs.push_back(0);
  const bool c0 = eliminate(ext).consistent;
  ext.rhs.back() = 1;
  const bool c1 = eliminate(ext).consistent;

  if (c0 && c1)
    mv.num_exp = mv.den_exp - 1;  // v unconstrained: exactly half the solutions
  else if (c1)
    mv.num_exp = mv.den_exp;  // v forced to 1
  else
    mv.num_exp = -1;  // v forced to 0
  return mv;
}

MarginalValue exact_marginal(const Instance& inst, VarId v) {
  return exact_marginal(to_system(inst), v);
}

}  // namespace xorsat
