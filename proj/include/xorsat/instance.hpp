#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xorsat {

using VarId = uint32_t;

// One XOR equation: x_{vars[0]} ^ ... ^ x_{vars[k-1]} = rhs.
// vars are strictly increasing and distinct.
struct Clause {
  std::vector<VarId> vars;
  uint8_t rhs = 0;

  bool operator==(const Clause&) const = default;
};

// A width-k XORSAT instance over n variables; the linear system Ax = b.
// Clause order is stable and meaningful (lowest-index tie breaks).
struct Instance {
  uint32_t n = 0;
  uint32_t k = 0;
  std::vector<Clause> clauses;

  uint32_t m() const { return static_cast<uint32_t>(clauses.size()); }
  bool operator==(const Instance&) const = default;
};

using Assignment = std::vector<uint8_t>;  // entries 0/1, length n

// Generic XOR system (rows of arbitrary width); what the GF(2) solver and
// the residual machinery operate on.
struct XorSystem {
  uint32_t n = 0;
  std::vector<std::vector<VarId>> rows;
  std::vector<uint8_t> rhs;
};

XorSystem to_system(const Instance& inst);

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
  int line;
};

// Uniform ensemble: each clause an independent uniform k-subset of the n
// variables (Floyd's algorithm) with an independent fair rhs bit.
Instance sample_instance(uint32_t k, uint32_t n, uint32_t m, uint64_t seed);

struct EvalResult {
  bool satisfied = true;
  uint64_t violated_count = 0;
};

EvalResult evaluate(const Instance& inst, const Assignment& a);

uint32_t hamming(const Assignment& a, const Assignment& b);

// Text format: "p xor <n> <m> <k>" then m lines "<v1> ... <vk> = <b>".
// '#' lines are comments. Round trip is bit-exact.
std::string serialize(const Instance& inst);
Instance parse_instance(const std::string& text);

// FNV-1a over the serialized form; used to tag derived artifacts.
uint64_t instance_hash(const Instance& inst);

}  // namespace xorsat
