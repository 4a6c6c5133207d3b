#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace phonostad {

/// Portable seeded generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Distributions are implemented here rather than taken from
/// <random>, because the standard distributions are implementation-defined
/// and would make sampled datasets differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller (cosine branch only, one value per call pair).
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based sub-seed: splitmix64(splitmix64(base ^ fnv1a(stream)) + counter).
/// Every random decision in the toolkit draws from a generator seeded this way,
/// so results do not depend on evaluation order or worker count.
std::uint64_t derive_seed(std::uint64_t base, std::string_view stream, std::uint64_t counter = 0) noexcept;

/// k distinct indices from [0, population), in draw order (partial Fisher-Yates).
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t k, Rng& rng);

}  // namespace phonostad
