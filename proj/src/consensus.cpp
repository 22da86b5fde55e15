#include "pbitsat/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pbitsat {

namespace {

int clamp_k(const SampleSet& samples, int k) {
  if (samples.size() == 0) throw std::invalid_argument("empty sample set");
  return std::clamp(k, 1, static_cast<int>(samples.size()));
}

} // namespace

std::vector<int> agreement_sums(const SampleSet& samples, int top_k) {
  int k = clamp_k(samples, top_k);
  std::size_t n = samples.replicas.front().size();
  std::vector<int> sums(n, 0);
  for (int r = 0; r < k; ++r) {
    const auto& spins = samples.replicas[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < n; ++i) sums[i] += spins[i];
  }
  return sums;
}

std::vector<double> agreement_scores(const SampleSet& samples, int top_k) {
  int k = clamp_k(samples, top_k);
  std::vector<int> sums = agreement_sums(samples, k);
  std::vector<double> scores(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i)
    scores[i] = static_cast<double>(sums[i]) / static_cast<double>(k);
  return scores;
}

std::vector<double> weighted_magnetization(const SampleSet& samples) {
  if (samples.size() == 0) throw std::invalid_argument("empty sample set");
  std::size_t n = samples.replicas.front().size();
  double norm = 0;
  for (int v : samples.violations) norm += 1.0 / (1.0 + v);
  std::vector<double> m(n, 0.0);
  for (std::size_t r = 0; r < samples.size(); ++r) {
    double w = (1.0 / (1.0 + samples.violations[r])) / norm;
    const auto& spins = samples.replicas[r];
    for (std::size_t i = 0; i < n; ++i) m[i] += w * spins[i];
  }
  return m;
}

AssumptionSet select_assumptions(const SampleSet& samples, const ConsensusConfig& cfg) {
  int k = clamp_k(samples, cfg.top_k);
  std::vector<int> sums = agreement_sums(samples, k);
  std::vector<double> m = weighted_magnetization(samples);

  std::vector<int> candidates; // 0-based variable indices, unanimous in top-k
  for (std::size_t i = 0; i < sums.size(); ++i)
    if (sums[i] == k || sums[i] == -k) candidates.push_back(static_cast<int>(i));

  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    double ma = std::fabs(m[static_cast<std::size_t>(a)]);
    double mb = std::fabs(m[static_cast<std::size_t>(b)]);
    if (ma != mb) return ma > mb;
    return a < b;
  });

  AssumptionSet out;
  int h = std::max(cfg.max_assumptions, 1);
  for (int v : candidates) {
    if (static_cast<int>(out.literals.size()) >= h) break;
    int lit = sums[static_cast<std::size_t>(v)] > 0 ? v + 1 : -(v + 1);
    out.literals.push_back(lit);
    out.scores.push_back(std::fabs(m[static_cast<std::size_t>(v)]));
  }
  return out;
}

double q_abs(const SampleSet& samples) {
  std::vector<double> m = weighted_magnetization(samples);
  if (m.empty()) return 0.0;
  double total = 0;
  for (double v : m) total += std::fabs(v);
  return total / static_cast<double>(m.size());
}

} // namespace pbitsat
