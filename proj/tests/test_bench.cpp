#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pbitsat/bench.hpp"
#include "test_helpers.hpp"

using namespace pbitsat;
using namespace test_util;

namespace {

HybridConfig tiny_hybrid() {
  HybridConfig cfg;
  cfg.sampler.replicas = 6;
  cfg.sampler.schedule.sweeps = 60;
  cfg.consensus.top_k = 3;
  cfg.consensus.max_assumptions = 6;
  return cfg;
}

} // namespace

TEST_CASE("planted instances satisfy their planted assignment") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    BoolAssignment planted;
    CnfFormula f = gen_planted_3sat(12, 48, seed, &planted);
    CHECK(f.num_vars() == 12);
    CHECK(f.num_clauses() == 48);
    CHECK(naive_violations(f.clauses(), planted) == 0);
    CHECK(violation_count(f, spin_of_bool(planted)) == 0);
    for (const auto& c : f.clauses()) CHECK(c.size() == 3);
  }
}

TEST_CASE("planted generation is deterministic") {
  CnfFormula a = gen_planted_3sat(20, 85, 999);
  CnfFormula b = gen_planted_3sat(20, 85, 999);
  CHECK(a.clauses() == b.clauses());
  CnfFormula c = gen_planted_3sat(20, 85, 1000);
  CHECK(a.clauses() != c.clauses());
}

TEST_CASE("improvement percentages reproduce the reference table") {
  // reference pure/hybrid medians with their rounded improvement, conflicts and
  // propagations per row
  struct Row {
    double pure_c, hyb_c, imp_c, pure_p, hyb_p, imp_p;
  };
  const Row rows[] = {
      {286.5, 55.0, 80.8, 6693.5, 1289.5, 80.7},
      {277.5, 51.0, 81.6, 6352.0, 1236.5, 80.5},
      {272.5, 47.0, 82.8, 6194.5, 1087.0, 82.5},
      {247.5, 45.5, 81.6, 5559.5, 1103.0, 80.2},
      {245.5, 44.0, 82.1, 5600.0, 1063.5, 81.0},
      {226.5, 37.0, 83.7, 5317.0, 913.5, 82.8},
      {235.0, 34.0, 85.5, 5370.5, 825.5, 84.6},
      {214.0, 32.0, 85.0, 4943.5, 802.5, 83.8},
      {259.5, 43.0, 83.4, 6012.0, 1015.5, 83.1},
      {650.5, 404.5, 37.8, 15742.5, 9245.5, 41.3},
  };
  for (const auto& r : rows) {
    CHECK(std::fabs(improvement_pct(r.pure_c, r.hyb_c) - r.imp_c) <= 0.05);
    CHECK(std::fabs(improvement_pct(r.pure_p, r.hyb_p) - r.imp_p) <= 0.05);
  }
  CHECK(improvement_pct(123.0, 123.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(improvement_pct(0.0, 5.0), BenchError);
}

TEST_CASE("experiment runs the full protocol") {
  ExperimentPlan plan;
  plan.seeds = {1, 2};
  plan.hybrid = tiny_hybrid();
  for (std::uint64_t s = 1; s <= 3; ++s) {
    PlannedInstance inst;
    inst.path = "mem/planted_" + std::to_string(s) + ".cnf";
    inst.family = "mem";
    inst.formula = gen_planted_3sat(10, 40, s);
    plan.instances.push_back(std::move(inst));
  }
  auto results = run_experiment(plan);
  REQUIRE(results.size() == 3);
  for (const auto& r : results) {
    CHECK(r.runs.size() == 2); // one hybrid run per seed
    CHECK(r.answer == "SAT");
    int modes = r.mode_counts[0] + r.mode_counts[1] + r.mode_counts[2] + r.mode_counts[3];
    CHECK(modes == 2);
    CHECK(r.rescue_rate >= 0.0);
    CHECK(r.rescue_rate <= 1.0);
  }
}

TEST_CASE("unsat instances flow through the protocol") {
  std::vector<std::vector<int>> clauses;
  for (int mask = 0; mask < 8; ++mask)
    clauses.push_back({mask & 1 ? 1 : -1, mask & 2 ? 2 : -2, mask & 4 ? 3 : -3});
  ExperimentPlan plan;
  plan.seeds = {1, 2, 3};
  plan.hybrid = tiny_hybrid();
  PlannedInstance inst;
  inst.path = "mem/unsat.cnf";
  inst.family = "unsat";
  inst.formula = CnfFormula(3, clauses);
  plan.instances.push_back(std::move(inst));
  auto results = run_experiment(plan);
  REQUIRE(results.size() == 1);
  CHECK(results[0].answer == "UNSAT");
}

TEST_CASE("empty plan yields empty results") {
  ExperimentPlan plan;
  CHECK(run_experiment(plan).empty());
}

TEST_CASE("parallel and serial experiments agree") {
  ExperimentPlan plan;
  plan.seeds = {1, 2};
  plan.hybrid = tiny_hybrid();
  for (std::uint64_t s = 1; s <= 4; ++s) {
    PlannedInstance inst;
    inst.path = "mem/p" + std::to_string(s);
    inst.family = "mem";
    inst.formula = gen_planted_3sat(9, 36, 100 + s);
    plan.instances.push_back(std::move(inst));
  }
  auto serial = run_experiment(plan);
  plan.jobs = 4;
  auto parallel = run_experiment(plan);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].path == parallel[i].path);
    CHECK(serial[i].pure_conflicts == parallel[i].pure_conflicts);
    CHECK(serial[i].hybrid_conflicts_median == parallel[i].hybrid_conflicts_median);
    CHECK(serial[i].conflict_reduction == parallel[i].conflict_reduction);
  }
}

TEST_CASE("csv round trip reproduces the aggregation bit-exactly") {
  ExperimentPlan plan;
  plan.seeds = {1, 2, 3};
  plan.hybrid = tiny_hybrid();
  for (std::uint64_t s = 1; s <= 4; ++s) {
    PlannedInstance inst;
    inst.path = "fam" + std::to_string(s % 2) + "/i" + std::to_string(s);
    inst.family = "fam" + std::to_string(s % 2);
    inst.formula = gen_planted_3sat(10, 42, 50 + s);
    plan.instances.push_back(std::move(inst));
  }
  auto results = run_experiment(plan);

  std::ostringstream out;
  write_results_csv(results, out);
  std::istringstream in(out.str());
  auto loaded = read_results_csv(in);
  REQUIRE(loaded.size() == results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(loaded[i].path == results[i].path);
    CHECK(loaded[i].conflict_reduction == results[i].conflict_reduction);
    CHECK(loaded[i].propagation_reduction == results[i].propagation_reduction);
    CHECK(loaded[i].rescue_rate == results[i].rescue_rate);
    CHECK(loaded[i].label == results[i].label);
  }

  auto direct_fam = family_summary(results);
  auto loaded_fam = family_summary(loaded);
  REQUIRE(direct_fam.size() == loaded_fam.size());
  for (std::size_t i = 0; i < direct_fam.size(); ++i) {
    CHECK(direct_fam[i].family == loaded_fam[i].family);
    CHECK(direct_fam[i].good_rate == loaded_fam[i].good_rate);
    CHECK(direct_fam[i].median_conflict_reduction ==
          loaded_fam[i].median_conflict_reduction);
    CHECK(direct_fam[i].median_rescue_rate == loaded_fam[i].median_rescue_rate);
  }
  auto direct_grp = group_summary(results);
  auto loaded_grp = group_summary(loaded);
  REQUIRE(direct_grp.size() == loaded_grp.size());
  for (std::size_t i = 0; i < direct_grp.size(); ++i) {
    CHECK(direct_grp[i].pure_conflicts_median == loaded_grp[i].pure_conflicts_median);
    CHECK(direct_grp[i].conflict_improvement == loaded_grp[i].conflict_improvement);
  }
}

TEST_CASE("single-instance family summarizes to its own values") {
  InstanceResult r;
  r.family = "solo";
  r.path = "solo/a";
  r.label = 1;
  r.conflict_reduction = 0.42;
  r.propagation_reduction = 0.31;
  r.rescue_rate = 0.2;
  auto fams = family_summary({r});
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].instances == 1);
  CHECK(fams[0].good_rate == doctest::Approx(100.0));
  CHECK(fams[0].median_conflict_reduction == doctest::Approx(42.0));
  CHECK(fams[0].median_propagation_reduction == doctest::Approx(31.0));
  CHECK(fams[0].median_rescue_rate == doctest::Approx(20.0));
}

TEST_CASE("all-good family reports a 100 percent good rate") {
  std::vector<InstanceResult> rows;
  for (int i = 0; i < 4; ++i) {
    InstanceResult r;
    r.family = "good";
    r.label = 1;
    r.conflict_reduction = 0.5;
    r.propagation_reduction = 0.5;
    r.rescue_rate = 1.0; // every seed rescued, like the always-rescue family
    rows.push_back(r);
  }
  auto fams = family_summary(rows);
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].good_rate == doctest::Approx(100.0));
  CHECK(fams[0].median_rescue_rate == doctest::Approx(100.0));
}
