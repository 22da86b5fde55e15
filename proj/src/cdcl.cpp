#include "pbitsat/cdcl.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pbitsat {

namespace {

// Luby sequence element for 1-based index i: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
std::uint64_t luby(std::uint64_t i) {
  std::uint64_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) / 2;
    --seq;
    i = i % size;
  }
  return std::uint64_t{1} << seq;
}

constexpr std::uint64_t kRestartBase = 64;

} // namespace

Solver::Solver(const CnfFormula& f) : num_vars_(f.num_vars()) {
  std::size_t n = static_cast<std::size_t>(num_vars_);
  assign_.assign(n, 0);
  var_level_.assign(n, 0);
  reason_.assign(n, kNoReason);
  saved_phase_.assign(n, 0);
  seen_.assign(n, 0);
  activity_.assign(n, 0.0);
  watches_.assign(2 * n, {});
  heap_pos_.assign(n, -1);
  for (int v = 0; v < num_vars_; ++v) heap_insert(v);

  for (const auto& clause : f.clauses()) {
    if (trivially_unsat_) break;
    // normalize: dedup, drop tautologies
    std::vector<int> codes;
    bool taut = false;
    for (int lit : clause) {
      int c = code_of_dimacs(lit);
      if (std::find(codes.begin(), codes.end(), c) != codes.end()) continue;
      if (std::find(codes.begin(), codes.end(), c ^ 1) != codes.end()) {
        taut = true;
        break;
      }
      codes.push_back(c);
    }
    if (taut) continue;
    if (codes.empty()) {
      trivially_unsat_ = true;
      break;
    }
    if (codes.size() == 1) {
      if (lit_value(codes[0]) == -1) {
        trivially_unsat_ = true;
        break;
      }
      if (lit_value(codes[0]) == 0) enqueue(codes[0], kNoReason);
      continue;
    }
    CRef cr = alloc_clause(codes);
    clauses_.push_back(cr);
    attach(cr);
  }

  // settle level-0 propagation now; counters start from zero regardless
  if (!trivially_unsat_ && propagate() != kNoReason) trivially_unsat_ = true;
  call_conflicts_ = call_propagations_ = 0;
  conflicts_total_ = propagations_total_ = 0;
}

Solver::CRef Solver::alloc_clause(const std::vector<int>& codes) {
  CRef cr = static_cast<CRef>(arena_.size());
  arena_.push_back(static_cast<std::int32_t>(codes.size()));
  for (int c : codes) arena_.push_back(c);
  return cr;
}

void Solver::attach(CRef cr) {
  const std::int32_t* c = lits(cr);
  watches_[static_cast<std::size_t>(c[0])].push_back(cr);
  watches_[static_cast<std::size_t>(c[1])].push_back(cr);
}

void Solver::detach(CRef cr) {
  const std::int32_t* c = lits(cr);
  for (int k = 0; k < 2; ++k) {
    auto& ws = watches_[static_cast<std::size_t>(c[k])];
    ws.erase(std::find(ws.begin(), ws.end(), cr));
  }
}

bool Solver::locked(CRef cr) const {
  int first = lits(cr)[0];
  return reason_[static_cast<std::size_t>(first >> 1)] == cr && lit_value(first) == 1;
}

void Solver::enqueue(int code, CRef reason) {
  std::size_t v = static_cast<std::size_t>(code >> 1);
  assign_[v] = (code & 1) ? std::int8_t{-1} : std::int8_t{1};
  var_level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(code);
  if (reason != kNoReason) {
    ++call_propagations_;
    ++propagations_total_;
  }
}

Solver::CRef Solver::propagate() {
  while (qhead_ < trail_.size()) {
    int p = trail_[qhead_++];
    int false_lit = p ^ 1;
    auto& ws = watches_[static_cast<std::size_t>(false_lit)];
    std::size_t i = 0, keep = 0;
    while (i < ws.size()) {
      CRef cr = ws[i];
      std::int32_t* c = lits(cr);
      std::int32_t size = clause_size(cr);
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      int first = c[0];
      if (lit_value(first) == 1) {
        ws[keep++] = ws[i++];
        continue;
      }
      bool moved = false;
      for (std::int32_t k = 2; k < size; ++k) {
        if (lit_value(c[k]) != -1) {
          std::swap(c[1], c[k]);
          watches_[static_cast<std::size_t>(c[1])].push_back(cr);
          moved = true;
          break;
        }
      }
      if (moved) {
        ++i; // watch moved elsewhere; drop from this list
        continue;
      }
      ws[keep++] = ws[i++];
      if (lit_value(first) == -1) {
        while (i < ws.size()) ws[keep++] = ws[i++];
        ws.resize(keep);
        qhead_ = trail_.size();
        return cr;
      }
      enqueue(first, cr);
    }
    ws.resize(keep);
  }
  return kNoReason;
}

void Solver::cancel_until(unsigned level) {
  if (decision_level() <= level) return;
  std::size_t bound = trail_lim_[level];
  for (std::size_t i = trail_.size(); i-- > bound;) {
    int code = trail_[i];
    std::size_t v = static_cast<std::size_t>(code >> 1);
    saved_phase_[v] = assign_[v] > 0 ? 1 : 0;
    assign_[v] = 0;
    reason_[v] = kNoReason;
    if (!heap_contains(static_cast<int>(v))) heap_insert(static_cast<int>(v));
  }
  trail_.resize(bound);
  trail_lim_.resize(level);
  qhead_ = bound;
}

void Solver::bump_activity(int var) {
  activity_[static_cast<std::size_t>(var)] += activity_inc_;
  if (activity_[static_cast<std::size_t>(var)] > 1e100) rescale_activity();
  if (heap_contains(var))
    heap_sift_up(static_cast<std::size_t>(heap_pos_[static_cast<std::size_t>(var)]));
}

void Solver::rescale_activity() {
  for (auto& a : activity_) a *= 1e-100;
  activity_inc_ *= 1e-100;
}

void Solver::analyze(CRef confl, std::vector<int>& out_learnt, unsigned& out_btlevel) {
  out_learnt.clear();
  out_learnt.push_back(0); // slot for the asserting literal
  int path = 0;
  int p = -1;
  std::size_t index = trail_.size();

  for (;;) {
    const std::int32_t* c = lits(confl);
    std::int32_t size = clause_size(confl);
    for (std::int32_t j = (p == -1 ? 0 : 1); j < size; ++j) {
      int q = c[j];
      std::size_t v = static_cast<std::size_t>(q >> 1);
      if (!seen_[v] && var_level_[v] > 0) {
        seen_[v] = 1;
        bump_activity(static_cast<int>(v));
        if (var_level_[v] >= decision_level())
          ++path;
        else
          out_learnt.push_back(q);
      }
    }
    while (!seen_[static_cast<std::size_t>(trail_[index - 1] >> 1)]) --index;
    p = trail_[--index];
    std::size_t pv = static_cast<std::size_t>(p >> 1);
    seen_[pv] = 0;
    --path;
    if (path == 0) break;
    confl = reason_[pv]; // intermediate nodes always have reasons
  }
  out_learnt[0] = p ^ 1;

  if (out_learnt.size() == 1) {
    out_btlevel = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < out_learnt.size(); ++i)
      if (var_level_[static_cast<std::size_t>(out_learnt[i] >> 1)] >
          var_level_[static_cast<std::size_t>(out_learnt[max_i] >> 1)])
        max_i = i;
    std::swap(out_learnt[1], out_learnt[max_i]);
    out_btlevel = var_level_[static_cast<std::size_t>(out_learnt[1] >> 1)];
  }
  for (int q : out_learnt) seen_[static_cast<std::size_t>(q >> 1)] = 0;
}

void Solver::analyze_final(int false_assumption, std::vector<int>& out_failed) {
  out_failed.clear();
  out_failed.push_back(dimacs_of_code(false_assumption));
  if (decision_level() == 0 ||
      var_level_[static_cast<std::size_t>(false_assumption >> 1)] == 0)
    return;

  seen_[static_cast<std::size_t>(false_assumption >> 1)] = 1;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[0];) {
    std::size_t v = static_cast<std::size_t>(trail_[i] >> 1);
    if (!seen_[v]) continue;
    if (reason_[v] == kNoReason) {
      // a pseudo-decision, i.e. an earlier assumption
      if (static_cast<int>(v) != (false_assumption >> 1))
        out_failed.push_back(dimacs_of_code(trail_[i]));
    } else {
      const std::int32_t* c = lits(reason_[v]);
      std::int32_t size = clause_size(reason_[v]);
      for (std::int32_t j = 1; j < size; ++j)
        if (var_level_[static_cast<std::size_t>(c[j] >> 1)] > 0)
          seen_[static_cast<std::size_t>(c[j] >> 1)] = 1;
    }
    seen_[v] = 0;
  }
  seen_[static_cast<std::size_t>(false_assumption >> 1)] = 0;
}

void Solver::add_learnt(const std::vector<int>& learnt) {
  CRef cr = alloc_clause(learnt);
  learnts_.push_back(cr);
  if (learnt.size() >= 2) attach(cr);
  enqueue(learnt[0], cr);
}

void Solver::reduce_learnts() {
  // drop the larger half, keeping reasons of current assignments
  std::vector<CRef> order(learnts_);
  std::stable_sort(order.begin(), order.end(), [&](CRef a, CRef b) {
    return clause_size(a) > clause_size(b);
  });
  std::size_t target = order.size() / 2;
  std::vector<CRef> dropped;
  for (CRef cr : order) {
    if (dropped.size() >= target) break;
    if (clause_size(cr) < 2 || locked(cr)) continue;
    detach(cr);
    dropped.push_back(cr);
  }
  if (dropped.empty()) return;
  std::sort(dropped.begin(), dropped.end());
  std::vector<CRef> kept;
  kept.reserve(learnts_.size() - dropped.size());
  for (CRef cr : learnts_)
    if (!std::binary_search(dropped.begin(), dropped.end(), cr))
      kept.push_back(cr);
  learnts_ = std::move(kept);
}

void Solver::heap_insert(int v) {
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_sift_up(heap_.size() - 1);
}

void Solver::heap_sift_up(std::size_t i) {
  int v = heap_[i];
  double act = activity_[static_cast<std::size_t>(v)];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (activity_[static_cast<std::size_t>(heap_[parent])] >= act) break;
    heap_[i] = heap_[parent];
    heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

void Solver::heap_sift_down(std::size_t i) {
  int v = heap_[i];
  double act = activity_[static_cast<std::size_t>(v)];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() &&
        activity_[static_cast<std::size_t>(heap_[child + 1])] >
            activity_[static_cast<std::size_t>(heap_[child])])
      ++child;
    if (activity_[static_cast<std::size_t>(heap_[child])] <= act) break;
    heap_[i] = heap_[child];
    heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

int Solver::heap_pop() {
  int v = heap_[0];
  heap_pos_[static_cast<std::size_t>(v)] = -1;
  int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[static_cast<std::size_t>(last)] = 0;
    heap_sift_down(0);
  }
  return v;
}

int Solver::pick_branch_lit() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assign_[static_cast<std::size_t>(v)] == 0)
      return 2 * v + (saved_phase_[static_cast<std::size_t>(v)] ? 0 : 1);
  }
  return -1;
}

std::vector<std::vector<int>> Solver::learned_clauses() const {
  std::vector<std::vector<int>> out;
  out.reserve(learnts_.size());
  for (CRef cr : learnts_) {
    std::vector<int> clause;
    const std::int32_t* c = lits(cr);
    for (std::int32_t j = 0; j < clause_size(cr); ++j)
      clause.push_back(dimacs_of_code(c[j]));
    out.push_back(std::move(clause));
  }
  return out;
}

SolveOutcome Solver::solve(const std::vector<int>& assumptions,
                           std::optional<std::uint64_t> budget) {
  SolveOutcome out;
  call_conflicts_ = call_propagations_ = 0;

  auto finalize = [&]() {
    out.call_conflicts = call_conflicts_;
    out.call_propagations = call_propagations_;
  };

  if (trivially_unsat_) {
    out.status = SolveStatus::Unsat;
    finalize();
    return out;
  }

  std::vector<int> assume;
  assume.reserve(assumptions.size());
  for (int lit : assumptions) {
    if (lit == 0 || std::abs(lit) > num_vars_)
      throw std::out_of_range("assumption literal " + std::to_string(lit) +
                              " out of range");
    assume.push_back(code_of_dimacs(lit));
  }
  // a variable assumed with both polarities fails immediately
  for (std::size_t i = 0; i < assume.size(); ++i)
    for (std::size_t j = i + 1; j < assume.size(); ++j)
      if (assume[i] == (assume[j] ^ 1)) {
        out.status = SolveStatus::Unsat;
        out.failed_assumptions = {assumptions[i], assumptions[j]};
        finalize();
        return out;
      }

  cancel_until(0);
  std::uint64_t conflicts_since_restart = 0;
  std::uint64_t restart_limit = kRestartBase * luby(restarts_);
  std::vector<int> learnt;

  for (;;) {
    CRef confl = propagate();
    if (confl != kNoReason) {
      if (decision_level() == 0) {
        trivially_unsat_ = true;
        out.status = SolveStatus::Unsat;
        finalize();
        return out;
      }
      ++call_conflicts_;
      ++conflicts_total_;
      ++conflicts_since_restart;
      unsigned bt;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      add_learnt(learnt);
      decay_activity();
      if (learnts_.size() > learned_clause_limit) reduce_learnts();
      if (budget && call_conflicts_ >= *budget) {
        cancel_until(0);
        out.status = SolveStatus::BudgetExhausted;
        finalize();
        return out;
      }
    } else {
      if (budget && call_conflicts_ >= *budget) {
        cancel_until(0);
        out.status = SolveStatus::BudgetExhausted;
        finalize();
        return out;
      }
      if (conflicts_since_restart >= restart_limit) {
        ++restarts_;
        conflicts_since_restart = 0;
        restart_limit = kRestartBase * luby(restarts_);
        cancel_until(0); // assumptions are re-enqueued by the walk below
        continue;
      }

      int next = -1;
      while (decision_level() < assume.size()) {
        int a = assume[decision_level()];
        if (lit_value(a) == 1) {
          new_decision_level(); // already true: dummy level
        } else if (lit_value(a) == -1) {
          analyze_final(a, out.failed_assumptions);
          cancel_until(0);
          out.status = SolveStatus::Unsat;
          finalize();
          return out;
        } else {
          next = a;
          break;
        }
      }
      if (next == -1) {
        next = pick_branch_lit();
        if (next == -1) {
          // all variables assigned, no conflict: a model
          out.status = SolveStatus::Sat;
          out.model.resize(static_cast<std::size_t>(num_vars_));
          for (int v = 0; v < num_vars_; ++v)
            out.model[static_cast<std::size_t>(v)] =
                assign_[static_cast<std::size_t>(v)] > 0 ? 1 : 0;
          cancel_until(0);
          finalize();
          return out;
        }
      }
      new_decision_level();
      enqueue(next, kNoReason);
    }
  }
}

} // namespace pbitsat
