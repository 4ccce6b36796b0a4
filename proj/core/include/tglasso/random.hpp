#pragma once

#include <cstdint>
#include <random>

namespace tglasso {

/// Reproducible random stream identified by (seed, stream id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit halves of seed and stream; both are fully specified by the
/// standard, so draws are identical across conforming platforms. Uniform and
/// normal variates are produced here rather than through <random>'s
/// distributions, whose algorithms are implementation-defined.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t stream() const noexcept { return stream_; }

  /// Independent stream derived from this one's seed and a child id.
  [[nodiscard]] RngStream split(std::uint64_t child) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, bound); bound > 0. Unbiased (rejection).
  std::uint64_t uniform_int(std::uint64_t bound);
  bool bernoulli(double prob);
  /// Standard normal via the Marsaglia polar method.
  double normal();

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tglasso
