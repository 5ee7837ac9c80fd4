#pragma once

#include <cstdint>

namespace sternlab {

/// Counter-based 64-bit generator (splitmix64 finalizer over a keyed
/// counter). Stateless apart from the counter, so independent streams can
/// be derived per sample; identical (seed, stream, counter) triples give
/// identical output on every platform and thread layout.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

  std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// One uniform bit.
  int next_bit() { return static_cast<int>(next() >> 63); }

  /// Uniform in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // 128-bit multiply rejection-free scaling; bias < 2^-64, irrelevant here.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  double next_double() { return (next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sternlab
