#pragma once

#include <cstdint>
#include <vector>

#include "pbitsat/formula.hpp"
#include "pbitsat/rng.hpp"

// Test-side utilities. The evaluators here are deliberately written against
// plain bool semantics, independent of the library's spin-based paths, so
// they can serve as oracles.
namespace test_util {

using pbitsat::BoolAssignment;
using pbitsat::CnfFormula;
using pbitsat::SplitMix64;

inline bool naive_clause_satisfied(const std::vector<int>& clause,
                                   const BoolAssignment& x) {
  for (int l : clause) {
    bool val = l > 0 ? x[static_cast<std::size_t>(l) - 1] != 0
                     : x[static_cast<std::size_t>(-l) - 1] == 0;
    if (val) return true;
  }
  return false;
}

inline int naive_violations(const std::vector<std::vector<int>>& clauses,
                            const BoolAssignment& x) {
  int bad = 0;
  for (const auto& c : clauses)
    if (!naive_clause_satisfied(c, x)) ++bad;
  return bad;
}

inline BoolAssignment assignment_from_mask(int n, std::uint64_t mask) {
  BoolAssignment x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (mask >> i) & 1;
  return x;
}

struct BruteForceResult {
  bool sat = false;
  BoolAssignment model; // first model in mask order when sat
};

inline BruteForceResult brute_force(const CnfFormula& f) {
  BruteForceResult out;
  int n = f.num_vars();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BoolAssignment x = assignment_from_mask(n, mask);
    if (naive_violations(f.clauses(), x) == 0) {
      out.sat = true;
      out.model = x;
      return out;
    }
  }
  return out;
}

inline std::vector<BoolAssignment> all_models(const CnfFormula& f) {
  std::vector<BoolAssignment> out;
  int n = f.num_vars();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BoolAssignment x = assignment_from_mask(n, mask);
    if (naive_violations(f.clauses(), x) == 0) out.push_back(x);
  }
  return out;
}

// Random CNF with clause widths min_width..max_width and distinct variables
// per clause.
inline CnfFormula random_formula(int n, int m, SplitMix64& rng, int max_width = 3,
                                 int min_width = 1) {
  std::vector<std::vector<int>> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  for (int ci = 0; ci < m; ++ci) {
    int span = max_width - min_width + 1;
    int w = min_width + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(span)));
    if (w > n) w = n;
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < w) {
      int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      bool dup = false;
      for (int u : vars) dup = dup || u == v;
      if (!dup) vars.push_back(v);
    }
    std::vector<int> clause;
    for (int v : vars) clause.push_back(rng.next_bool() ? v + 1 : -(v + 1));
    clauses.push_back(std::move(clause));
  }
  return CnfFormula(n, std::move(clauses));
}

inline pbitsat::SpinVector random_spins(int n, SplitMix64& rng) {
  pbitsat::SpinVector s(static_cast<std::size_t>(n));
  for (auto& v : s) v = rng.next_bool() ? std::int8_t{1} : std::int8_t{-1};
  return s;
}

} // namespace test_util
