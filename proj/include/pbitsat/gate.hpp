#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pbitsat/formula.hpp"

namespace pbitsat {

// Structural CNF features plus statistics from a short sampling probe
// (10 replicas, 200 sweeps). Benchmark/family metadata is deliberately not a
// feature.
struct GateFeatures {
  int num_vars = 0;
  int num_clauses = 0;
  double ratio = 0.0; // m/n
  std::int64_t clause_len_hist[4] = {0, 0, 0, 0}; // lengths 1, 2, 3, >3
  double positive_literal_fraction = 0.0;
  double degree_mean = 0.0;
  double degree_max = 0.0;
  double degree_variance = 0.0;
  // probe statistics
  double q_abs = 0.0;
  int probe_min_violation = 0;
  double probe_mean_violation = 0.0;
  int unanimous_candidates = 0;
};

// y = 1 iff the hybrid medians improve BOTH counters by at least 20%.
struct GateLabel {
  int y = 0;
  double conflict_reduction = 0.0;    // 1 - C_h / C_p
  double propagation_reduction = 0.0; // 1 - P_h / P_p
};

inline constexpr double kGateThreshold = 0.20;
inline constexpr int kProbeReplicas = 10;
inline constexpr int kProbeSweeps = 200;

// hybrid_runs: per-seed (conflicts, propagations). Medians use the
// lower-middle convention. A zero pure counter forces y = 0: the hybrid
// cannot improve on zero work.
GateLabel compute_label(
    std::uint64_t pure_conflicts, std::uint64_t pure_propagations,
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& hybrid_runs);

GateFeatures extract_features(const CnfFormula& f, std::uint64_t probe_seed);

// true -> route to the hybrid path
using GatePolicy = std::function<bool(const GateFeatures&)>;

GatePolicy always_hybrid_policy();
GatePolicy always_pure_policy();
GatePolicy ratio_threshold_policy(double max_ratio);
// Any scorer mapping features to a probability plugs in here.
GatePolicy scorer_policy(std::function<double(const GateFeatures&)> scorer,
                         double cutoff = 0.5);

struct LabeledCounters {
  int y = 0;
  std::uint64_t pure_conflicts = 0;
  std::uint64_t pure_propagations = 0;
  std::uint64_t hybrid_conflicts = 0;   // median over seeds
  std::uint64_t hybrid_propagations = 0;
};

// All rates in percent.
struct PolicyMetrics {
  double apply_rate = 0.0;  // fraction routed hybrid
  double keep_rate = 0.0;   // y=1 formulas routed hybrid
  double avoid_rate = 0.0;  // y=0 formulas routed pure
  double conflict_saving = 0.0;    // aggregate vs always-pure
  double propagation_saving = 0.0;
};

PolicyMetrics gate_evaluate(const std::vector<bool>& decisions,
                            const std::vector<LabeledCounters>& rows);

std::string gate_features_csv_header();
std::string gate_features_csv_row(const std::string& path, const GateFeatures& g);

} // namespace pbitsat
