#include <doctest.h>

#include <algorithm>

#include "pbitsat/formula.hpp"
#include "test_helpers.hpp"

using namespace pbitsat;
using namespace test_util;

TEST_CASE("spin/bool mapping") {
  CHECK(spin_of_bool({0, 1}) == SpinVector{-1, 1});
  CHECK(spin_of_bool({1, 1, 1}) == SpinVector{1, 1, 1});

  SplitMix64 rng(7);
  BoolAssignment x(50);
  for (auto& b : x) b = rng.next_bool() ? 1 : 0;
  CHECK(bool_of_spin(spin_of_bool(x)) == x);
}

TEST_CASE("violation indicator") {
  SpinVector both_false{-1, -1};
  CHECK(violation_indicator({1, 2}, both_false) == 1);
  CHECK(violation_indicator({1, -2}, both_false) == 0);
  // tautology is never violated
  for (std::int8_t a : {-1, 1})
    for (std::int8_t b : {-1, 1})
      CHECK(violation_indicator({1, -1}, SpinVector{a, b}) == 0);
}

TEST_CASE("violation count basics") {
  CnfFormula f(1, {{1}, {-1}});
  CHECK(violation_count(f, {1}) == 1);
  CHECK(violation_count(f, {-1}) == 1);
  CHECK(f.trivially_unsat() == false);

  CnfFormula sat(2, {{1, 2}, {-1, 2}});
  CHECK(violation_count(sat, spin_of_bool({1, 1})) == 0);
}

TEST_CASE("violation count matches an independent recount") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    CnfFormula f = random_formula(8, 30, rng);
    SpinVector s = random_spins(8, rng);
    CHECK(violation_count(f, s) == naive_violations(f.clauses(), bool_of_spin(s)));
  }
}

TEST_CASE("zero violations iff satisfying, exhaustively") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(8)); // up to 10
    CnfFormula f = random_formula(n, 4 * n, rng);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      BoolAssignment x = assignment_from_mask(n, mask);
      bool sat = naive_violations(f.clauses(), x) == 0;
      CHECK((violation_count(f, spin_of_bool(x)) == 0) == sat);
    }
  }
}

TEST_CASE("violation count invariant under clause and literal reordering") {
  SplitMix64 rng(5);
  CnfFormula f = random_formula(6, 20, rng);
  auto shuffled = f.clauses();
  for (auto& c : shuffled) std::reverse(c.begin(), c.end());
  std::reverse(shuffled.begin(), shuffled.end());
  CnfFormula g(6, shuffled);
  for (int trial = 0; trial < 20; ++trial) {
    SpinVector s = random_spins(6, rng);
    int v = violation_count(f, s);
    CHECK(v == violation_count(g, s));
    CHECK(v >= 0);
    CHECK(v <= static_cast<int>(f.num_clauses()));
  }
}

TEST_CASE("occurrence index is consistent with the clause list") {
  SplitMix64 rng(17);
  CnfFormula f = random_formula(7, 25, rng);
  // rebuild by hand and compare
  for (int v = 1; v <= f.num_vars(); ++v) {
    for (int sign : {1, -1}) {
      int lit = sign * v;
      std::vector<int> expect;
      for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        if (std::count(f.clause(ci).begin(), f.clause(ci).end(), lit))
          expect.push_back(static_cast<int>(ci));
      CHECK(f.occurrences(lit) == expect);
    }
  }
}

TEST_CASE("empty clause sets the trivially-unsat flag") {
  CnfFormula f(2, {{1}, {}});
  CHECK(f.trivially_unsat());
}

TEST_CASE("formula round trips through dimacs") {
  CnfFormula f(3, {{1, -2}, {2, 3}});
  auto doc = f.to_dimacs();
  CnfFormula g = CnfFormula::from_dimacs(doc);
  CHECK(g.num_vars() == 3);
  CHECK(g.clauses() == f.clauses());
}
