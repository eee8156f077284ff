#include "xorsat/instance.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

#include "xorsat/rng.hpp"

namespace xorsat {

XorSystem to_system(const Instance& inst) {
  XorSystem sys;
  sys.n = inst.n;
  sys.rows.reserve(inst.clauses.size());
  sys.rhs.reserve(inst.clauses.size());
  for (const Clause& c : inst.clauses) {
    sys.rows.push_back(c.vars);
    sys.rhs.push_back(c.rhs);
  }
  return sys;
}

Instance sample_instance(uint32_t k, uint32_t n, uint32_t m, uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_instance: need 0 < k <= n");
  Rng rng(seed, streams::kInstance);
  Instance inst;
  inst.n = n;
  inst.k = k;
  inst.clauses.resize(m);
  std::vector<VarId> picked;
  for (uint32_t j = 0; j < m; ++j) {
    // Floyd's uniform k-subset of {0..n-1}
    picked.clear();
    for (uint64_t i = n - k; i < n; ++i) {
      VarId t = static_cast<VarId>(rng.next_below(i + 1));
      if (std::find(picked.begin(), picked.end(), t) != picked.end())
        picked.push_back(static_cast<VarId>(i));
      else
        picked.push_back(t);
    }
    std::sort(picked.begin(), picked.end());
    inst.clauses[j].vars = picked;
    inst.clauses[j].rhs = rng.next_bit() ? 1 : 0;
  }
  return inst;
}

EvalResult evaluate(const Instance& inst, const Assignment& a) {
  if (a.size() != inst.n) throw std::invalid_argument("evaluate: assignment length mismatch");
  EvalResult res;
  for (const Clause& c : inst.clauses) {
    uint8_t acc = 0;
    for (VarId v : c.vars) acc ^= (a[v] & 1u);
    if (acc != c.rhs) ++res.violated_count;
  }
  res.satisfied = res.violated_count == 0;
  return res;
}

uint32_t hamming(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming: length mismatch");
  uint32_t d = 0;
  for (size_t i = 0; i < a.size(); ++i) d += (a[i] ^ b[i]) & 1u;
  return d;
}

std::string serialize(const Instance& inst) {
  std::string out;
  out += "p xor " + std::to_string(inst.n) + " " + std::to_string(inst.m()) + " " +
         std::to_string(inst.k) + "\n";
  for (const Clause& c : inst.clauses) {
    for (VarId v : c.vars) {
      out += std::to_string(v);
      out += ' ';
    }
    out += "= ";
    out += c.rhs ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

uint32_t parse_u32(const std::string& tok, int lineno, const char* what) {
  uint32_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(std::string("bad ") + what + " '" + tok + "'", lineno);
  return v;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  Instance inst;
  bool have_header = false;
  uint32_t declared_m = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 5 || toks[0] != "p" || toks[1] != "xor")
        throw ParseError("expected header 'p xor <n> <m> <k>'", lineno);
      inst.n = parse_u32(toks[2], lineno, "n");
      declared_m = parse_u32(toks[3], lineno, "m");
      inst.k = parse_u32(toks[4], lineno, "k");
      if (inst.k < 1 || inst.k > inst.n) throw ParseError("header requires 0 < k <= n", lineno);
      have_header = true;
      continue;
    }
    if (toks.size() != inst.k + 2 || toks[inst.k] != "=")
      throw ParseError("expected '<v1> ... <vk> = <b>' with k=" + std::to_string(inst.k), lineno);
    Clause c;
    c.vars.reserve(inst.k);
    for (uint32_t i = 0; i < inst.k; ++i) {
      VarId v = parse_u32(toks[i], lineno, "variable id");
      if (v >= inst.n) throw ParseError("variable id out of range", lineno);
      c.vars.push_back(v);
    }
    for (uint32_t i = 0; i + 1 < inst.k; ++i)
      if (c.vars[i] >= c.vars[i + 1])
        throw ParseError("variable ids must be strictly increasing", lineno);
    if (toks[inst.k + 1] != "0" && toks[inst.k + 1] != "1")
      throw ParseError("rhs must be 0 or 1", lineno);
    c.rhs = toks[inst.k + 1] == "1" ? 1 : 0;
    inst.clauses.push_back(std::move(c));
  }
  if (!have_header) throw ParseError("missing header", lineno);
  if (inst.m() != declared_m)
    throw ParseError("header clause count " + std::to_string(declared_m) + " != body count " +
                         std::to_string(inst.m()),
                     lineno);
  return inst;
}

uint64_t instance_hash(const Instance& inst) {
  const std::string s = serialize(inst);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace xorsat
