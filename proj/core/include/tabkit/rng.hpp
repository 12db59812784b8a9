#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace tabkit {

/// SplitMix64 finalizer. Used both for seed derivation and for spreading
/// user-supplied seeds before they reach the generator.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream tags keep the per-replicate seeds of independent random consumers
/// (training draws, test draws, fold shuffles, MC evaluation) disjoint.
enum class Stream : std::uint64_t {
  TrainTarget = 1,
  TrainSource = 2,
  Test = 3,
  Fit = 4,
  Eval = 5,
};

/// Child seed for replicate `index` of stream `stream` under `base_seed`.
/// Defined as a SplitMix64 mix of the three words; fixed for reproducibility.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index,
                                 Stream stream) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ (index + 0x9e3779b97f4a7c15ULL));
  h = mix64(h ^ (static_cast<std::uint64_t>(stream) << 32));
  return h;
}

/// Deterministic random source. The engine is std::mt19937_64 (fully
/// specified by the standard) and every variate below is produced by a fixed
/// documented transform of its raw 64-bit output, so streams are
/// bit-reproducible for a given seed:
///   uniform01: (x >> 11) * 2^-53, values in [0, 1)
///   normal:    Box-Muller on two fresh uniforms, no cached spare
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform over [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    // Box-Muller; u1 is nudged away from 0 so the log is finite.
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  int bernoulli(double p) { return uniform01() < p ? 1 : 0; }

  /// Integer in [0, n). Rejection-free modulo is avoided; uses the
  /// floating-point path so results match across platforms.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

 private:
  std::mt19937_64 engine_;
};

/// Fisher-Yates shuffle driven by Rng::index; deterministic per seed.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = rng.index(i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace tabkit
