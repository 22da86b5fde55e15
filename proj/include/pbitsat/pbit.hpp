#pragma once

#include <cstdint>
#include <vector>

#include "pbitsat/formula.hpp"
#include "pbitsat/ising.hpp"
#include "pbitsat/rng.hpp"

namespace pbitsat {

// Geometric inverse-temperature ramp from exploratory to exploitative.
struct AnnealSchedule {
  double beta_hot = 0.1;
  double beta_cold = 5.0;
  int sweeps = 700;

  // beta(0) = beta_hot, beta(sweeps-1) = beta_cold, geometric in between.
  double beta(int t) const;
  bool valid() const;
};

enum class SweepOrder { Ascending, Randomized };

// Annealed replicas over the original variables, sorted by direct CNF
// violation count (ascending, ties by replica index). Extension spins are
// dropped once sampling ends; they steer the walk but never the ranking.
struct SampleSet {
  std::vector<SpinVector> replicas;
  std::vector<int> violations;
  std::vector<std::uint64_t> seeds;

  std::size_t size() const { return replicas.size(); }
};

// Pr(y_i = +1) = (1 + tanh(beta * field)) / 2
double update_probability(double field, double beta);

// One stochastic update of spin i from its current local field. Consumes
// exactly one uniform draw.
void update_spin(const IsingModel& model, SpinVector& y, int i, double beta,
                 SplitMix64& rng);

// Sequential Gibbs-style pass over all spins; each update sees the partially
// updated state.
void sweep(const IsingModel& model, SpinVector& y, double beta, SplitMix64& rng,
           SweepOrder order = SweepOrder::Ascending);

// Anneal `replicas` independent p-bit replicas. Replica r is seeded with
// derive_seed(master_seed, r), so serial and threaded runs give bit-identical
// results.
SampleSet run_sampler(const CnfFormula& f, const IsingModel& model, int replicas,
                      const AnnealSchedule& schedule, std::uint64_t master_seed,
                      int threads = 1, SweepOrder order = SweepOrder::Ascending);

} // namespace pbitsat
