#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pbitsat/formula.hpp"

namespace pbitsat {

enum class SolveStatus { Sat, Unsat, BudgetExhausted };

struct SolveOutcome {
  SolveStatus status = SolveStatus::Unsat;
  // Full assignment when Sat (indexed by var-1).
  BoolAssignment model;
  // Assumption literals (DIMACS) implicated in an UNSAT-under-assumptions
  // answer. Empty together with Unsat means the formula itself is
  // unsatisfiable.
  std::vector<int> failed_assumptions;
  std::uint64_t call_conflicts = 0;
  std::uint64_t call_propagations = 0;
};

// Conflict-driven clause-learning solver with MiniSat-style assumptions.
// Learned clauses, variable activities and saved phases persist across solve
// calls on the same instance; counters only ever grow.
class Solver {
public:
  explicit Solver(const CnfFormula& f);

  // Assumptions are enqueued as pseudo-decisions in the given order. A budget
  // bounds the conflicts spent in this call (checked after each conflict);
  // nullopt means run to completion.
  SolveOutcome solve(const std::vector<int>& assumptions = {},
                     std::optional<std::uint64_t> budget = std::nullopt);

  std::uint64_t conflicts_total() const { return conflicts_total_; }
  std::uint64_t propagations_total() const { return propagations_total_; }
  bool trivially_unsat() const { return trivially_unsat_; }
  int num_vars() const { return num_vars_; }
  std::size_t num_learnts() const { return learnts_.size(); }

  // Learned clauses as DIMACS literal lists (diagnostics / soundness checks).
  std::vector<std::vector<int>> learned_clauses() const;

  // Learned clauses are kept until this many accumulate; then the larger half
  // is dropped. Desk-scale runs never get close.
  std::size_t learned_clause_limit = 100000;

private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = 0xffffffffu;

  // arena layout per clause: [size][lit0][lit1]...
  std::vector<std::int32_t> arena_;
  std::vector<CRef> clauses_; // problem clauses
  std::vector<CRef> learnts_;

  int num_vars_ = 0;
  std::vector<std::int8_t> assign_;      // by var: 0 free, +1 true, -1 false
  std::vector<std::uint32_t> var_level_;
  std::vector<CRef> reason_;
  std::vector<std::uint8_t> saved_phase_; // initial phase: false
  std::vector<std::uint8_t> seen_;
  std::vector<double> activity_;
  double activity_inc_ = 1.0;

  std::vector<std::vector<CRef>> watches_; // by literal code
  std::vector<int> trail_;                 // literal codes in assignment order
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  // activity-ordered decision heap
  std::vector<int> heap_;
  std::vector<int> heap_pos_;

  bool trivially_unsat_ = false;
  std::uint64_t conflicts_total_ = 0;
  std::uint64_t propagations_total_ = 0;
  std::uint64_t call_conflicts_ = 0;
  std::uint64_t call_propagations_ = 0;
  std::uint64_t restarts_ = 0; // luby index, persists across calls

  // literal code helpers: code = 2*var + (negated ? 1 : 0)
  static int code_of_dimacs(int lit) {
    int v = lit > 0 ? lit : -lit;
    return 2 * (v - 1) + (lit < 0 ? 1 : 0);
  }
  static int dimacs_of_code(int code) {
    int v = (code >> 1) + 1;
    return (code & 1) ? -v : v;
  }
  std::int8_t lit_value(int code) const {
    std::int8_t a = assign_[static_cast<std::size_t>(code >> 1)];
    return (code & 1) ? static_cast<std::int8_t>(-a) : a;
  }

  std::int32_t* lits(CRef cr) { return &arena_[cr + 1]; }
  const std::int32_t* lits(CRef cr) const { return &arena_[cr + 1]; }
  std::int32_t clause_size(CRef cr) const { return arena_[cr]; }

  CRef alloc_clause(const std::vector<int>& codes);
  void attach(CRef cr);
  void detach(CRef cr);
  bool locked(CRef cr) const;

  void enqueue(int code, CRef reason);
  CRef propagate();
  unsigned decision_level() const { return static_cast<unsigned>(trail_lim_.size()); }
  void new_decision_level() { trail_lim_.push_back(trail_.size()); }
  void cancel_until(unsigned level);

  void analyze(CRef confl, std::vector<int>& out_learnt, unsigned& out_btlevel);
  void analyze_final(int false_assumption, std::vector<int>& out_failed);
  void add_learnt(const std::vector<int>& learnt);
  void reduce_learnts();

  void bump_activity(int var);
  void decay_activity() { activity_inc_ /= 0.95; }
  void rescale_activity();

  // heap ops
  bool heap_contains(int v) const { return heap_pos_[static_cast<std::size_t>(v)] >= 0; }
  void heap_insert(int v);
  void heap_sift_up(std::size_t i);
  void heap_sift_down(std::size_t i);
  int heap_pop();
  int pick_branch_lit();
};

} // namespace pbitsat
