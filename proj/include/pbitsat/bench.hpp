#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbitsat/formula.hpp"
#include "pbitsat/hybrid.hpp"

namespace pbitsat {

class BenchError : public std::runtime_error {
public:
  enum class Kind { AnswerDisagreement, ZeroBaseline, BadCsv };

  BenchError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

// Satisfiable-by-construction random 3-SAT: clauses violated by the hidden
// planted assignment are rejected and redrawn. The planted assignment is
// reported on request (diagnostics; solvers never see it).
CnfFormula gen_planted_3sat(int n, int m, std::uint64_t seed,
                            BoolAssignment* planted_out = nullptr);

struct PlannedInstance {
  std::string path;   // real file path, or a synthetic name for generated input
  std::string family; // immediate parent directory name
  CnfFormula formula;
};

struct ExperimentPlan {
  std::vector<PlannedInstance> instances;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  HybridConfig hybrid{};
  int jobs = 1;
};

struct HybridRunStats {
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  int rescue_flag = 0;
  HybridMode mode = HybridMode::PureSkip;
};

struct InstanceResult {
  std::string path;
  std::string family;
  int num_vars = 0;
  int num_clauses = 0;
  std::string answer; // "SAT" or "UNSAT"; identical across every run
  std::uint64_t pure_conflicts = 0;
  std::uint64_t pure_propagations = 0;
  std::vector<HybridRunStats> runs;
  std::uint64_t hybrid_conflicts_median = 0;
  std::uint64_t hybrid_propagations_median = 0;
  double conflict_reduction = 0.0;
  double propagation_reduction = 0.0;
  double rescue_rate = 0.0; // mean rescue_flag over seeds
  int label = 0;
  int mode_counts[4] = {0, 0, 0, 0}; // guided, retry, rescue, pure-skip
};

// One pure solve plus one hybrid solve per seed for every instance. Any
// SAT/UNSAT disagreement aborts the run: that is a solver bug, never data.
std::vector<InstanceResult> run_experiment(const ExperimentPlan& plan);

// 100 * (1 - hybrid/pure); display rounds to one decimal, storage keeps the
// raw value.
double improvement_pct(double pure_median, double hybrid_median);

struct FamilySummary {
  std::string family;
  int instances = 0;
  double good_rate = 0.0;                 // percent with label 1
  double median_conflict_reduction = 0.0; // percent
  double median_propagation_reduction = 0.0;
  double median_rescue_rate = 0.0;        // percent
};

std::vector<FamilySummary> family_summary(const std::vector<InstanceResult>& results);

// One row per (family, n, m): medians over instances plus improvement.
struct GroupSummary {
  std::string family;
  int num_vars = 0;
  int num_clauses = 0;
  double ratio = 0.0;
  int instances = 0;
  std::uint64_t pure_conflicts_median = 0;
  std::uint64_t hybrid_conflicts_median = 0;
  double conflict_improvement = 0.0; // percent
  std::uint64_t pure_propagations_median = 0;
  std::uint64_t hybrid_propagations_median = 0;
  double propagation_improvement = 0.0;
};

std::vector<GroupSummary> group_summary(const std::vector<InstanceResult>& results);

inline constexpr const char* kResultsCsvVersion = "# pbit-sat results v1";

// config_note, when non-empty, is stored as a comment line (replayability:
// rng name, sampler settings, seeds).
void write_results_csv(const std::vector<InstanceResult>& results, std::ostream& out,
                       const std::string& config_note = "");
std::vector<InstanceResult> read_results_csv(std::istream& in);

void print_group_table(const std::vector<GroupSummary>& rows, std::ostream& out);
void print_family_table(const std::vector<FamilySummary>& rows, std::ostream& out);

// Sorted DIMACS files (*.cnf, *.dimacs) under a directory, recursively.
std::vector<std::string> find_dimacs_files(const std::string& dir);

} // namespace pbitsat
