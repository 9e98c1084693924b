#pragma once

#include <cstdint>
#include <random>

namespace abssep {

/// Deterministic random stream keyed by (seed, stream index).
///
/// Uses std::mt19937_64, whose output sequence is fixed by the standard, and
/// derives doubles from raw bits instead of the implementation-defined
/// std::*_distribution templates, so draws are identical on every platform.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double exponential();
  double normal();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace abssep
