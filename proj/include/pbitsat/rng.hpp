#pragma once

#include <cstdint>

namespace pbitsat {

// splitmix64 -- the generator named in run configs. Fully specified by its
// constants, so streams replay bit-identically on every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [0, bound), bound > 0
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  bool next_bool() { return (next() >> 63) != 0; }

private:
  std::uint64_t state_;
};

// Counter-based derivation: the splitmix64 output at position index+1 of the
// stream seeded with `master`. Replica k gets derive_seed(master, k), so any
// subset of replicas can run in any order or thread and still replay.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master + 0x9e3779b97f4a7c15ULL * index);
  return g.next();
}

} // namespace pbitsat
