#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbitsat/cdcl.hpp"
#include "pbitsat/consensus.hpp"
#include "pbitsat/formula.hpp"
#include "pbitsat/pbit.hpp"

namespace pbitsat {

struct SamplerConfig {
  int replicas = 30;
  AnnealSchedule schedule{};
  int threads = 1;
  SweepOrder order = SweepOrder::Ascending;
};

struct HybridConfig {
  SamplerConfig sampler{};
  ConsensusConfig consensus{};
  std::uint64_t budget1 = 1500; // guided attempt, conflicts
  std::uint64_t budget2 = 1000; // retry, conflicts
  std::uint64_t master_seed = 1;
  // Ablation: give the rescue phase a fresh solver instead of reusing the one
  // that accumulated learned clauses during the guided attempts.
  bool fresh_rescue = false;
  // Test/ablation hook: when non-empty these literals replace the sampled
  // assumption set and the sampler never runs.
  std::vector<int> forced_assumptions;
};

enum class HybridMode { Guided, Retry, Rescue, PureSkip };

const char* to_string(HybridMode mode);

struct PhaseRecord {
  std::string name; // "guided", "retry", "rescue", "pure"
  SolveOutcome outcome;
  std::vector<int> assumptions;
};

struct HybridReport {
  SolveStatus answer = SolveStatus::Unsat; // Sat or Unsat, never BudgetExhausted
  BoolAssignment model;                    // when Sat
  HybridMode mode = HybridMode::PureSkip;
  std::vector<PhaseRecord> phases;
  std::uint64_t total_conflicts = 0;
  std::uint64_t total_propagations = 0;
  int rescue_flag = 0;      // 1 iff the unrestricted fallback phase ran
  int subcube_exponent = 0; // n - |assumptions| of the guided phase (n if none)
  double sampler_q_abs = 0.0;
};

// Sample, extract assumptions, guided attempt under budget1, halved retry
// under budget2, then unrestricted rescue on the same solver. The answer is
// always the solver's; sampled assignments are never returned directly.
HybridReport solve_hybrid(const CnfFormula& f, const HybridConfig& cfg);

// One unrestricted call on a fresh solver.
HybridReport solve_pure(const CnfFormula& f);

} // namespace pbitsat
