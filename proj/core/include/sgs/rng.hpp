#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace sgs {

/// Deterministic xoshiro256** generator with splitmix64 seeding.
/// Output is identical across platforms, so every seeded run of the
/// library and CLI is reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Derives an independent stream from an ordered key tuple, e.g.
  /// (master_seed, trial_index, stage_tag). Key order matters.
  static Rng from_keys(std::initializer_list<std::uint64_t> keys);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 bits of randomness.
  double uniform();
  double uniform(double lo, double hi);

  /// Uniform integer in [lo, hi], both inclusive.
  int uniform_int(int lo, int hi);

  /// Standard normal via the polar method.
  double normal();

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(0, static_cast<int>(i - 1)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sgs
