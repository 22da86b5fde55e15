#include "pbitsat/pbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace pbitsat {

double AnnealSchedule::beta(int t) const {
  int denom = sweeps > 1 ? sweeps - 1 : 1;
  double frac = static_cast<double>(t) / static_cast<double>(denom);
  return beta_hot * std::pow(beta_cold / beta_hot, frac);
}

bool AnnealSchedule::valid() const {
  return beta_hot > 0 && beta_cold > beta_hot && sweeps >= 1;
}

double update_probability(double field, double beta) {
  return 0.5 * (1.0 + std::tanh(beta * field));
}

void update_spin(const IsingModel& model, SpinVector& y, int i, double beta,
                 SplitMix64& rng) {
  double p = update_probability(model.local_field(y, i), beta);
  y[static_cast<std::size_t>(i)] = rng.next_double() < p ? std::int8_t{1} : std::int8_t{-1};
}

void sweep(const IsingModel& model, SpinVector& y, double beta, SplitMix64& rng,
           SweepOrder order) {
  const int n = model.num_spins();
  if (order == SweepOrder::Ascending) {
    for (int i = 0; i < n; ++i) update_spin(model, y, i, beta, rng);
    return;
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
  for (int i : idx) update_spin(model, y, i, beta, rng);
}

namespace {

struct ReplicaResult {
  SpinVector spins; // original variables only
  int violations = 0;
  std::uint64_t seed = 0;
};

ReplicaResult anneal_replica(const CnfFormula& f, const IsingModel& model,
                             const AnnealSchedule& schedule, std::uint64_t seed,
                             SweepOrder order) {
  SplitMix64 rng(seed);
  SpinVector y(static_cast<std::size_t>(model.num_spins()));
  for (auto& s : y) s = rng.next_bool() ? std::int8_t{1} : std::int8_t{-1};
  for (int t = 0; t < schedule.sweeps; ++t)
    sweep(model, y, schedule.beta(t), rng, order);

  ReplicaResult out;
  out.spins.assign(y.begin(), y.begin() + model.n_orig);
  out.violations = violation_count(f, out.spins);
  out.seed = seed;
  return out;
}

} // namespace

SampleSet run_sampler(const CnfFormula& f, const IsingModel& model, int replicas,
                      const AnnealSchedule& schedule, std::uint64_t master_seed,
                      int threads, SweepOrder order) {
  if (replicas < 1) throw std::invalid_argument("need at least one replica");
  if (!schedule.valid()) throw std::invalid_argument("invalid anneal schedule");
  if (model.n_orig != f.num_vars())
    throw std::invalid_argument("model does not match formula");

  std::vector<ReplicaResult> results(static_cast<std::size_t>(replicas));
  auto run_range = [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r)
      results[static_cast<std::size_t>(r)] =
          anneal_replica(f, model, schedule, derive_seed(master_seed, static_cast<std::uint64_t>(r)), order);
  };

  int workers = std::min(std::max(threads, 1), replicas);
  if (workers <= 1) {
    run_range(0, replicas);
  } else {
    std::vector<std::thread> pool;
    int chunk = (replicas + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int lo = w * chunk, hi = std::min(replicas, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // rank by direct violation count, stable in replica index
  std::vector<int> idx(static_cast<std::size_t>(replicas));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return results[static_cast<std::size_t>(a)].violations <
           results[static_cast<std::size_t>(b)].violations;
  });

  SampleSet set;
  set.replicas.reserve(static_cast<std::size_t>(replicas));
  set.violations.reserve(static_cast<std::size_t>(replicas));
  set.seeds.reserve(static_cast<std::size_t>(replicas));
  for (int r : idx) {
    auto& res = results[static_cast<std::size_t>(r)];
    set.replicas.push_back(std::move(res.spins));
    set.violations.push_back(res.violations);
    set.seeds.push_back(res.seed);
  }
  return set;
}

} // namespace pbitsat
