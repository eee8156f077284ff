#include "doctest.h"

#include <map>
#include <set>

#include "xorsat/instance.hpp"
#include "xorsat/rng.hpp"

using namespace xorsat;

TEST_CASE("single 3-subset of 3 variables is forced") {
  const Instance inst = sample_instance(3, 3, 1, 42);
  REQUIRE(inst.m() == 1);
  CHECK(inst.clauses[0].vars == std::vector<VarId>{0, 1, 2});
}

TEST_CASE("sampling is deterministic in the seed") {
  const Instance a = sample_instance(3, 50, 40, 7);
  const Instance b = sample_instance(3, 50, 40, 7);
  const Instance c = sample_instance(3, 50, 40, 8);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(serialize(a) == serialize(b));
}

TEST_CASE("clause structure invariants hold") {
  const Instance inst = sample_instance(4, 30, 200, 3);
  for (const Clause& c : inst.clauses) {
    REQUIRE(c.vars.size() == 4);
    for (size_t i = 0; i + 1 < c.vars.size(); ++i) CHECK(c.vars[i] < c.vars[i + 1]);
    CHECK(c.vars.back() < inst.n);
  }
}

TEST_CASE("rhs bits are fair coin flips") {
  const Instance inst = sample_instance(3, 100, 10000, 11);
  double ones = 0;
  for (const Clause& c : inst.clauses) ones += c.rhs;
  const double mean = ones / inst.m();
  CHECK(mean > 0.48);
  CHECK(mean < 0.52);
}

TEST_CASE("k-subsets are uniform for small C(n,k)") {
  // n=5, k=2: 10 subsets, 20000 draws
  std::map<std::pair<VarId, VarId>, int> counts;
  const Instance inst = sample_instance(2, 5, 20000, 99);
  for (const Clause& c : inst.clauses) counts[{c.vars[0], c.vars[1]}]++;
  REQUIRE(counts.size() == 10);
  for (const auto& [sub, cnt] : counts) {
    CHECK(cnt > 1700);  // expected 2000, ~8 sigma slack
    CHECK(cnt < 2300);
  }
}

TEST_CASE("evaluate basics") {
  Instance inst;
  inst.n = 3;
  inst.k = 3;
  inst.clauses.push_back({{0, 1, 2}, 0});
  CHECK(evaluate(inst, {0, 0, 0}).satisfied);
  const auto bad = evaluate(inst, {1, 0, 0});
  CHECK_FALSE(bad.satisfied);
  CHECK(bad.violated_count == 1);

  Instance empty;
  empty.n = 4;
  empty.k = 3;
  CHECK(evaluate(empty, {1, 0, 1, 1}).satisfied);

  CHECK_THROWS_AS(evaluate(inst, {0, 0}), std::invalid_argument);
}

TEST_CASE("evaluate.satisfied is clause-order invariant") {
  Instance inst = sample_instance(3, 20, 30, 5);
  Instance shuffled = inst;
  std::rotate(shuffled.clauses.begin(), shuffled.clauses.begin() + 7, shuffled.clauses.end());
  Rng rng(1, 1);
  for (int t = 0; t < 20; ++t) {
    Assignment a(inst.n);
    for (auto& b : a) b = rng.next_bit();
    CHECK(evaluate(inst, a).satisfied == evaluate(shuffled, a).satisfied);
  }
}

TEST_CASE("hamming distance") {
  CHECK(hamming({0, 0, 0}, {0, 0, 0}) == 0);
  CHECK(hamming({0, 0, 0}, {1, 1, 1}) == 3);
  CHECK(hamming({0, 1, 0, 1}, {0, 0, 1, 1}) == 2);
  CHECK_THROWS_AS(hamming({0}, {0, 1}), std::invalid_argument);

  Rng rng(3, 9);
  for (int t = 0; t < 50; ++t) {
    Assignment a(32), b(32), c(32);
    for (int i = 0; i < 32; ++i) {
      a[i] = rng.next_bit();
      b[i] = rng.next_bit();
      c[i] = rng.next_bit();
    }
    CHECK(hamming(a, b) == hamming(b, a));
    CHECK(hamming(a, c) <= hamming(a, b) + hamming(b, c));
  }
}

TEST_CASE("text round trip") {
  const std::string text = "p xor 3 1 3\n0 1 2 = 0\n";
  const Instance inst = parse_instance(text);
  CHECK(serialize(inst) == text);

  for (uint64_t s = 0; s < 25; ++s) {
    const Instance rnd = sample_instance(3, 40, 35, s);
    CHECK(parse_instance(serialize(rnd)) == rnd);
  }
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_instance("p xor 3 2 3\n0 1 2 = 0\n"), ParseError);  // count mismatch
  CHECK_THROWS_AS(parse_instance("p xor 3 1 3\n0 1 1 = 0\n"), ParseError);  // duplicate var
  CHECK_THROWS_AS(parse_instance("p xor 3 1 3\n0 1 5 = 0\n"), ParseError);  // out of range
  CHECK_THROWS_AS(parse_instance("0 1 2 = 0\n"), ParseError);               // missing header
  CHECK_THROWS_AS(parse_instance("p xor 3 1 3\n0 1 2 = 2\n"), ParseError);  // bad rhs
  CHECK_THROWS_AS(parse_instance("p xor 2 0 3\n"), ParseError);             // k > n

  // comments and blank lines are fine
  const Instance inst = parse_instance("# hi\n\np xor 3 1 3\n# mid\n0 1 2 = 1\n");
  CHECK(inst.clauses[0].rhs == 1);
}

TEST_CASE("sample_instance rejects bad parameters") {
  CHECK_THROWS_AS(sample_instance(5, 3, 1, 0), std::invalid_argument);
}
