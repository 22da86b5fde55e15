#include <doctest.h>

#include <cmath>

#include "pbitsat/bench.hpp"
#include "pbitsat/ising.hpp"
#include "pbitsat/pbit.hpp"
#include "test_helpers.hpp"

using namespace pbitsat;
using namespace test_util;

namespace {

IsingModel random_model(int n, SplitMix64& rng) {
  IsingModel model;
  model.n_orig = n;
  model.h_x8.resize(static_cast<std::size_t>(n));
  for (auto& h : model.h_x8)
    h = static_cast<std::int64_t>(rng.next_below(17)) - 8;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_below(3) == 0) {
        std::int64_t v = static_cast<std::int64_t>(rng.next_below(17)) - 8;
        if (v != 0) model.couplings.push_back({i, j, v});
      }
  model.finalize();
  return model;
}

} // namespace

TEST_CASE("anneal schedule endpoints and monotonicity") {
  AnnealSchedule sched;
  sched.beta_hot = 0.1;
  sched.beta_cold = 5.0;
  sched.sweeps = 700;
  CHECK(sched.valid());
  CHECK(sched.beta(0) == doctest::Approx(0.1));
  CHECK(sched.beta(699) == doctest::Approx(5.0));
  for (int t = 1; t < 700; ++t) CHECK(sched.beta(t) > sched.beta(t - 1));
}

TEST_CASE("update probability formula") {
  CHECK(update_probability(0.0, 3.0) == doctest::Approx(0.5));
  // frozen value of (1 + tanh(1)) / 2
  CHECK(update_probability(1.0, 1.0) ==
        doctest::Approx(0.8807970779778824).epsilon(1e-12));
  CHECK(update_probability(1e9, 1.0) == doctest::Approx(1.0));
  CHECK(update_probability(-1e9, 1.0) == doctest::Approx(0.0));
  // monotone in the field
  double prev = -1;
  for (double field = -3; field <= 3; field += 0.25) {
    double p = update_probability(field, 0.7);
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("local field sign convention") {
  IsingModel model;
  model.n_orig = 2;
  model.h_x8 = {0, 0};
  model.couplings.push_back({0, 1, 8}); // J_01 = 1
  model.finalize();
  SpinVector y{1, 1};
  CHECK(model.local_field(y, 0) == doctest::Approx(-1.0));
  y[1] = -1; // flipping y_j negates the contribution
  CHECK(model.local_field(y, 0) == doctest::Approx(1.0));

  IsingModel null_model;
  null_model.n_orig = 3;
  null_model.h_x8 = {0, 0, 0};
  null_model.finalize();
  for (int i = 0; i < 3; ++i)
    CHECK(null_model.local_field({1, -1, 1}, i) == doctest::Approx(0.0));
}

TEST_CASE("zero-temperature updates never increase energy") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    IsingModel model = random_model(8, rng);
    SpinVector y = random_spins(8, rng);
    SplitMix64 update_rng(trial);
    std::int64_t before = model.energy_x8(y);
    for (int pass = 0; pass < 3; ++pass) {
      for (int i = 0; i < model.num_spins(); ++i) {
        update_spin(model, y, i, 1e6, update_rng);
        std::int64_t after = model.energy_x8(y);
        CHECK(after <= before);
        before = after;
      }
    }
  }
}

TEST_CASE("hot limit is unbiased") {
  SplitMix64 rng(6);
  IsingModel model = random_model(4, rng);
  SpinVector y = random_spins(4, rng);
  SplitMix64 update_rng(42);
  int plus = 0;
  const int updates = 10000;
  for (int t = 0; t < updates; ++t) {
    update_spin(model, y, t % 4, 1e-6, update_rng);
    if (y[static_cast<std::size_t>(t % 4)] == 1) ++plus;
  }
  double freq = static_cast<double>(plus) / updates;
  CHECK(freq > 0.48);
  CHECK(freq < 0.52);
}

TEST_CASE("sampler is deterministic and thread-count independent") {
  CnfFormula f = gen_planted_3sat(30, 120, 5);
  IsingModel model = encode_cnf(f);
  AnnealSchedule sched;
  sched.sweeps = 80;
  SampleSet serial = run_sampler(f, model, 10, sched, 999, 1);
  SampleSet again = run_sampler(f, model, 10, sched, 999, 1);
  SampleSet threaded = run_sampler(f, model, 10, sched, 999, 4);
  CHECK(serial.replicas == again.replicas);
  CHECK(serial.violations == again.violations);
  CHECK(serial.seeds == again.seeds);
  CHECK(serial.replicas == threaded.replicas);
  CHECK(serial.violations == threaded.violations);
  CHECK(serial.seeds == threaded.seeds);
}

TEST_CASE("sample set is ranked by recomputable violation counts") {
  CnfFormula f = gen_planted_3sat(20, 80, 3);
  IsingModel model = encode_cnf(f);
  AnnealSchedule sched;
  sched.sweeps = 60;
  SampleSet set = run_sampler(f, model, 12, sched, 17);
  REQUIRE(set.size() == 12);
  for (std::size_t r = 0; r < set.size(); ++r) {
    CHECK(set.violations[r] == violation_count(f, set.replicas[r]));
    CHECK(set.replicas[r].size() == 20);
    if (r > 0) CHECK(set.violations[r] >= set.violations[r - 1]);
  }
}

TEST_CASE("annealing reaches low violations on an easy formula") {
  // all unit clauses: the landscape is a simple field
  std::vector<std::vector<int>> clauses;
  for (int v = 1; v <= 12; ++v) clauses.push_back({v % 2 ? v : -v});
  CnfFormula f(12, clauses);
  IsingModel model = encode_cnf(f);
  AnnealSchedule sched;
  sched.sweeps = 200;
  SampleSet set = run_sampler(f, model, 5, sched, 2);
  CHECK(set.violations.front() == 0);
}

TEST_CASE("minimal configuration works") {
  CnfFormula f(3, {{1, 2, 3}});
  IsingModel model = encode_cnf(f);
  AnnealSchedule sched;
  sched.sweeps = 1;
  SampleSet set = run_sampler(f, model, 1, sched, 0);
  CHECK(set.size() == 1);
  CHECK(is_spin_vector(set.replicas[0]));
}

TEST_CASE("default operating point runs at benchmark scale") {
  CnfFormula f = gen_planted_3sat(100, 429, 11);
  IsingModel model = encode_cnf(f);
  AnnealSchedule sched; // defaults: 700 sweeps
  SampleSet set = run_sampler(f, model, 30, sched, 1, 2);
  CHECK(set.size() == 30);
  // annealing should do much better than random guessing (~m/8 violations)
  CHECK(set.violations.front() < 25);
}

TEST_CASE("sampler validates its inputs") {
  CnfFormula f = gen_planted_3sat(10, 40, 1);
  CnfFormula other = gen_planted_3sat(12, 48, 1);
  IsingModel model = encode_cnf(f);
  AnnealSchedule sched;
  CHECK_THROWS_AS(run_sampler(other, model, 4, sched, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_sampler(f, model, 0, sched, 1), std::invalid_argument);
  AnnealSchedule backwards;
  backwards.beta_hot = 5.0;
  backwards.beta_cold = 0.1;
  CHECK_THROWS_AS(run_sampler(f, model, 4, backwards, 1), std::invalid_argument);
}

TEST_CASE("randomized sweep order is deterministic per seed") {
  CnfFormula f = gen_planted_3sat(15, 60, 9);
  IsingModel model = encode_cnf(f);
  AnnealSchedule sched;
  sched.sweeps = 40;
  SampleSet a = run_sampler(f, model, 4, sched, 5, 1, SweepOrder::Randomized);
  SampleSet b = run_sampler(f, model, 4, sched, 5, 2, SweepOrder::Randomized);
  CHECK(a.replicas == b.replicas);
  CHECK(a.violations == b.violations);
}
