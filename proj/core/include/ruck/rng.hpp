#pragma once

#include <cstdint>
#include <random>

namespace ruck {

/// SplitMix64 finalizer. Bijective on 64-bit words; used to key independent
/// streams from a (seed, stream index) pair.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic random stream.
///
/// Engine: std::mt19937_64 seeded with the SplitMix64 output at counter
/// `stream` for state `seed`, so stream k of a given seed is reproducible in
/// any language with those two well-known generators. Variate recipes are
/// fixed here instead of using <random> distributions (whose output is
/// implementation-defined): uniforms take the top 53 bits of one engine
/// word, normals use the Marsaglia polar method, Poisson counts use
/// sequential-search inversion.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix64(seed + (stream + 1) * 0x9e3779b97f4a7c15ull)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1); safe to pass through log().
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Fair coin from the low bit of one engine word.
  bool coin() { return (next_u64() & 1ull) != 0; }

  /// Standard normal variate (polar method; the second variate of each
  /// accepted pair is cached and returned by the next call).
  double normal();

  /// Poisson variate by sequential search on the CDF. Means above 500 are
  /// split into independent halves so exp(-mean) stays away from underflow.
  int poisson(double mean);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ruck
