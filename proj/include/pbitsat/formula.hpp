#pragma once

#include <cstdint>
#include <vector>

#include "pbitsat/dimacs.hpp"

namespace pbitsat {

// Spin assignments over the original variables: entry i is the value of
// variable i+1, and must be exactly -1 or +1.
using SpinVector = std::vector<std::int8_t>;

// Boolean assignments, entries in {0,1}; x_i = (1+s_i)/2.
using BoolAssignment = std::vector<std::uint8_t>;

// Immutable clause database. Literals stay in the signed DIMACS convention
// (variable v is literal +v or -v, 1 <= v <= num_vars); spin/bool vectors are
// 0-indexed by variable.
class CnfFormula {
public:
  CnfFormula() = default;
  CnfFormula(int num_vars, std::vector<std::vector<int>> clauses);

  static CnfFormula from_dimacs(const DimacsDocument& doc);
  DimacsDocument to_dimacs() const;

  int num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<std::vector<int>>& clauses() const { return clauses_; }
  const std::vector<int>& clause(std::size_t i) const { return clauses_[i]; }

  // Contains an empty clause, hence no assignment can satisfy it.
  bool trivially_unsat() const { return has_empty_clause_; }

  // Clause ids containing exactly this signed literal.
  const std::vector<int>& occurrences(int lit) const;

private:
  int num_vars_ = 0;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> pos_occ_; // by var-1
  std::vector<std::vector<int>> neg_occ_;
  bool has_empty_clause_ = false;
};

SpinVector spin_of_bool(const BoolAssignment& x);
BoolAssignment bool_of_spin(const SpinVector& s);
bool is_spin_vector(const SpinVector& s);

inline bool literal_true(int lit, const SpinVector& s) {
  return lit > 0 ? s[static_cast<std::size_t>(lit) - 1] == 1
                 : s[static_cast<std::size_t>(-lit) - 1] == -1;
}

// 1 iff every literal of the clause is false under s.
int violation_indicator(const std::vector<int>& clause, const SpinVector& s);

// Number of falsified clauses; 0 iff s satisfies the formula.
int violation_count(const CnfFormula& f, const SpinVector& s);

} // namespace pbitsat
