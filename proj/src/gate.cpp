#include "pbitsat/gate.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "pbitsat/consensus.hpp"
#include "pbitsat/ising.hpp"
#include "pbitsat/pbit.hpp"
#include "pbitsat/stats.hpp"

namespace pbitsat {

GateLabel compute_label(
    std::uint64_t pure_conflicts, std::uint64_t pure_propagations,
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& hybrid_runs) {
  if (hybrid_runs.empty()) throw std::invalid_argument("no hybrid runs");
  GateLabel label;
  if (pure_conflicts == 0 || pure_propagations == 0) return label; // degenerate: y = 0

  std::vector<std::uint64_t> confs, props;
  confs.reserve(hybrid_runs.size());
  props.reserve(hybrid_runs.size());
  for (const auto& [c, p] : hybrid_runs) {
    confs.push_back(c);
    props.push_back(p);
  }
  std::uint64_t ch = median_lower(confs);
  std::uint64_t ph = median_lower(props);
  label.conflict_reduction =
      1.0 - static_cast<double>(ch) / static_cast<double>(pure_conflicts);
  label.propagation_reduction =
      1.0 - static_cast<double>(ph) / static_cast<double>(pure_propagations);
  // 1 - h/p >= 1/5 tested exactly on the integer counters: 5h <= 4p
  label.y = (5 * ch <= 4 * pure_conflicts && 5 * ph <= 4 * pure_propagations) ? 1 : 0;
  return label;
}

GateFeatures extract_features(const CnfFormula& f, std::uint64_t probe_seed) {
  GateFeatures g;
  g.num_vars = f.num_vars();
  g.num_clauses = static_cast<int>(f.num_clauses());
  g.ratio = f.num_vars() > 0
                ? static_cast<double>(f.num_clauses()) / f.num_vars()
                : 0.0;

  std::vector<std::int64_t> degree(static_cast<std::size_t>(f.num_vars()), 0);
  std::int64_t total_lits = 0, positive_lits = 0;
  for (const auto& c : f.clauses()) {
    std::size_t len = c.size();
    if (len >= 1) ++g.clause_len_hist[len >= 4 ? 3 : len - 1];
    for (int l : c) {
      ++total_lits;
      if (l > 0) ++positive_lits;
      ++degree[static_cast<std::size_t>(std::abs(l)) - 1];
    }
  }
  g.positive_literal_fraction =
      total_lits > 0 ? static_cast<double>(positive_lits) / total_lits : 0.0;
  if (!degree.empty()) {
    double sum = 0, max = 0;
    for (auto d : degree) {
      sum += static_cast<double>(d);
      max = std::max(max, static_cast<double>(d));
    }
    g.degree_mean = sum / static_cast<double>(degree.size());
    g.degree_max = max;
    double var = 0;
    for (auto d : degree) {
      double diff = static_cast<double>(d) - g.degree_mean;
      var += diff * diff;
    }
    g.degree_variance = var / static_cast<double>(degree.size());
  }

  if (f.num_vars() > 0 && !f.trivially_unsat()) {
    IsingModel model = encode_cnf(f);
    AnnealSchedule probe_schedule;
    probe_schedule.sweeps = kProbeSweeps;
    SampleSet samples =
        run_sampler(f, model, kProbeReplicas, probe_schedule, probe_seed);
    g.q_abs = q_abs(samples);
    g.probe_min_violation = samples.violations.front();
    g.probe_mean_violation = mean(samples.violations);
    ConsensusConfig probe_cfg;
    probe_cfg.max_assumptions = f.num_vars();
    g.unanimous_candidates =
        static_cast<int>(select_assumptions(samples, probe_cfg).literals.size());
  }
  return g;
}

GatePolicy always_hybrid_policy() {
  return [](const GateFeatures&) { return true; };
}

GatePolicy always_pure_policy() {
  return [](const GateFeatures&) { return false; };
}

GatePolicy ratio_threshold_policy(double max_ratio) {
  return [max_ratio](const GateFeatures& g) { return g.ratio <= max_ratio; };
}

GatePolicy scorer_policy(std::function<double(const GateFeatures&)> scorer,
                         double cutoff) {
  return [scorer = std::move(scorer), cutoff](const GateFeatures& g) {
    return scorer(g) >= cutoff;
  };
}

PolicyMetrics gate_evaluate(const std::vector<bool>& decisions,
                            const std::vector<LabeledCounters>& rows) {
  if (decisions.size() != rows.size())
    throw std::invalid_argument("decision and label lists differ in length");
  PolicyMetrics m;
  if (rows.empty()) return m;

  std::size_t hybrid_routed = 0, wins = 0, wins_kept = 0, losses = 0, losses_avoided = 0;
  double pure_conf = 0, pure_prop = 0, policy_conf = 0, policy_prop = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    bool d = decisions[i];
    if (d) ++hybrid_routed;
    if (r.y == 1) {
      ++wins;
      if (d) ++wins_kept;
    } else {
      ++losses;
      if (!d) ++losses_avoided;
    }
    pure_conf += static_cast<double>(r.pure_conflicts);
    pure_prop += static_cast<double>(r.pure_propagations);
    policy_conf += static_cast<double>(d ? r.hybrid_conflicts : r.pure_conflicts);
    policy_prop += static_cast<double>(d ? r.hybrid_propagations : r.pure_propagations);
  }
  m.apply_rate = 100.0 * static_cast<double>(hybrid_routed) / rows.size();
  m.keep_rate = wins ? 100.0 * static_cast<double>(wins_kept) / wins : 100.0;
  m.avoid_rate = losses ? 100.0 * static_cast<double>(losses_avoided) / losses : 100.0;
  m.conflict_saving = pure_conf > 0 ? 100.0 * (1.0 - policy_conf / pure_conf) : 0.0;
  m.propagation_saving = pure_prop > 0 ? 100.0 * (1.0 - policy_prop / pure_prop) : 0.0;
  return m;
}

std::string gate_features_csv_header() {
  return "path,n,m,ratio,len1,len2,len3,len_gt3,pos_lit_frac,deg_mean,deg_max,"
         "deg_var,q_abs,probe_min_viol,probe_mean_viol,unanimous_candidates";
}

std::string gate_features_csv_row(const std::string& path, const GateFeatures& g) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%s,%d,%d,%.17g,%lld,%lld,%lld,%lld,%.17g,%.17g,%.17g,%.17g,"
                "%.17g,%d,%.17g,%d",
                path.c_str(), g.num_vars, g.num_clauses, g.ratio,
                static_cast<long long>(g.clause_len_hist[0]),
                static_cast<long long>(g.clause_len_hist[1]),
                static_cast<long long>(g.clause_len_hist[2]),
                static_cast<long long>(g.clause_len_hist[3]),
                g.positive_literal_fraction, g.degree_mean, g.degree_max,
                g.degree_variance, g.q_abs, g.probe_min_violation,
                g.probe_mean_violation, g.unanimous_candidates);
  return buf;
}

} // namespace pbitsat
