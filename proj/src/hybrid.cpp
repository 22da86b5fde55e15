#include "pbitsat/hybrid.hpp"

#include <optional>

#include "pbitsat/ising.hpp"

namespace pbitsat {

const char* to_string(HybridMode mode) {
  switch (mode) {
    case HybridMode::Guided: return "guided";
    case HybridMode::Retry: return "retry";
    case HybridMode::Rescue: return "rescue";
    case HybridMode::PureSkip: return "pure";
  }
  return "?";
}

namespace {

void adopt_answer(HybridReport& report, const SolveOutcome& out) {
  report.answer = out.status;
  report.model = out.model;
}

} // namespace

HybridReport solve_hybrid(const CnfFormula& f, const HybridConfig& cfg) {
  HybridReport report;
  report.subcube_exponent = f.num_vars();

  Solver solver(f);

  // Trivially unsatisfiable inputs skip straight to the solver's verdict.
  if (solver.trivially_unsat()) {
    SolveOutcome out = solver.solve();
    report.phases.push_back({"pure", out, {}});
    adopt_answer(report, out);
    report.mode = HybridMode::PureSkip;
    report.total_conflicts = solver.conflicts_total();
    report.total_propagations = solver.propagations_total();
    return report;
  }

  AssumptionSet rho;
  if (!cfg.forced_assumptions.empty()) {
    rho.literals = cfg.forced_assumptions;
    rho.scores.assign(rho.literals.size(), 0.0);
  } else {
    IsingModel model = encode_cnf(f);
    SampleSet samples =
        run_sampler(f, model, cfg.sampler.replicas, cfg.sampler.schedule,
                    cfg.master_seed, cfg.sampler.threads, cfg.sampler.order);
    report.sampler_q_abs = q_abs(samples);
    rho = select_assumptions(samples, cfg.consensus);
  }

  if (rho.literals.empty()) {
    // no unanimous candidates: plain unrestricted solve
    SolveOutcome out = solver.solve();
    report.phases.push_back({"pure", out, {}});
    adopt_answer(report, out);
    report.mode = HybridMode::PureSkip;
    report.total_conflicts = solver.conflicts_total();
    report.total_propagations = solver.propagations_total();
    return report;
  }

  report.subcube_exponent = f.num_vars() - static_cast<int>(rho.literals.size());

  // guided attempt
  SolveOutcome guided = solver.solve(rho.literals, cfg.budget1);
  report.phases.push_back({"guided", guided, rho.literals});
  if (guided.status == SolveStatus::Sat ||
      (guided.status == SolveStatus::Unsat && guided.failed_assumptions.empty())) {
    adopt_answer(report, guided);
    report.mode = HybridMode::Guided;
    report.total_conflicts = solver.conflicts_total();
    report.total_propagations = solver.propagations_total();
    return report;
  }

  // retry with the stronger half of the ranked assumptions
  std::size_t half = (rho.literals.size() + 1) / 2;
  std::vector<int> retry_lits(rho.literals.begin(),
                              rho.literals.begin() + static_cast<long>(half));
  SolveOutcome retry = solver.solve(retry_lits, cfg.budget2);
  report.phases.push_back({"retry", retry, retry_lits});
  if (retry.status == SolveStatus::Sat ||
      (retry.status == SolveStatus::Unsat && retry.failed_assumptions.empty())) {
    adopt_answer(report, retry);
    report.mode = HybridMode::Retry;
    report.total_conflicts = solver.conflicts_total();
    report.total_propagations = solver.propagations_total();
    return report;
  }

  // unrestricted rescue; learned clauses are retained unless ablated
  std::optional<Solver> fresh;
  Solver* rescue_solver = &solver;
  if (cfg.fresh_rescue) {
    fresh.emplace(f);
    rescue_solver = &*fresh;
  }
  SolveOutcome rescue = rescue_solver->solve();
  report.phases.push_back({"rescue", rescue, {}});
  adopt_answer(report, rescue);
  report.mode = HybridMode::Rescue;
  report.rescue_flag = 1;
  report.total_conflicts = solver.conflicts_total();
  report.total_propagations = solver.propagations_total();
  if (cfg.fresh_rescue) {
    report.total_conflicts += fresh->conflicts_total();
    report.total_propagations += fresh->propagations_total();
  }
  return report;
}

HybridReport solve_pure(const CnfFormula& f) {
  HybridReport report;
  report.subcube_exponent = f.num_vars();
  Solver solver(f);
  SolveOutcome out = solver.solve();
  report.phases.push_back({"pure", out, {}});
  adopt_answer(report, out);
  report.mode = HybridMode::PureSkip;
  report.total_conflicts = solver.conflicts_total();
  report.total_propagations = solver.propagations_total();
  return report;
}

} // namespace pbitsat
