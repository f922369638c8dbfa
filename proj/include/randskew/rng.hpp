#pragma once

#include <cstdint>
#include <limits>

namespace randskew {

/// SplitMix64 in counter form: output k is mix(key + (k+1) * golden_gamma).
/// Every stream is identified by its key, so independent Monte-Carlo trials
/// take `derive_seed(seed, trial)` as key and never share state.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }
  std::uint64_t next();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal (polar Box-Muller; the second variate is cached).
  double normal();
  /// +1 or -1 with equal probability.
  double rademacher();

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Finalizer of SplitMix64; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Independent sub-stream key for `index` under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace randskew
