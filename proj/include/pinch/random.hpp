#pragma once

#include <cstdint>
#include <limits>

namespace pinch {

/// Counter-based random stream. The output sequence is a pure function of the
/// key passed at construction, so every Monte-Carlo trial can own a stream
/// derived from (master seed, sweep point, trial index) independently of how
/// trials are scheduled across threads.
///
/// The generator is SplitMix64: output i is mix64(key + (i + 1) * gamma).
/// Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) : state_(key) {}

  /// Stream for trial `trial` of sweep point `point` under `master_seed`.
  static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t point,
                                std::uint64_t trial);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

}  // namespace pinch
