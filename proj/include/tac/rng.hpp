#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace tac {

/// Seeded random stream. Substreams are derived by name from the root seed, so
/// draws on one substream never perturb another.
///
/// Bounded draws use rejection sampling on the raw 64-bit output rather than
/// std::uniform_int_distribution, whose algorithm differs between standard
/// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(mix(seed)), engine_(seed_) {}

  Rng substream(std::string_view name, std::uint64_t index = 0) const;

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform in [0, 1).
  double uniform_real();
  bool bernoulli(double p) { return uniform_real() < p; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tac
