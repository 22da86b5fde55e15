#pragma once

#include <vector>

#include "pbitsat/pbit.hpp"

namespace pbitsat {

struct ConsensusConfig {
  int top_k = 5;           // agreement pool among the best-ranked samples
  int max_assumptions = 12;
};

// Ranked assumption literals for the solver, one variable each, strongest
// agreement first. These are high-agreement candidates from the sampler, not
// a backbone claim.
struct AssumptionSet {
  std::vector<int> literals;   // signed DIMACS literals
  std::vector<double> scores;  // |m_v| used for the ranking
};

// Mean spin per variable over the k best-ranked samples; +-1 means unanimity.
std::vector<double> agreement_scores(const SampleSet& samples, int top_k);

// Integer spin sums over the top-k pool; |sum| == k is the exact unanimity test.
std::vector<int> agreement_sums(const SampleSet& samples, int top_k);

// m_v = sum_r w_r s_v^(r) over ALL replicas, w_r proportional to 1/(1+V_r).
// The unanimity filter uses only the top-k pool; this ranking score does not.
std::vector<double> weighted_magnetization(const SampleSet& samples);

// Unanimous variables ranked by |m_v| (ties: ascending variable index),
// clipped to max_assumptions. Empty when no variable is unanimous.
AssumptionSet select_assumptions(const SampleSet& samples, const ConsensusConfig& cfg);

// Mean |m_v| across variables: how strongly the samples polarize.
double q_abs(const SampleSet& samples);

} // namespace pbitsat
