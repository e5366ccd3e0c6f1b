#ifndef DTFC_RNG_HPP
#define DTFC_RNG_HPP

#include <cstdint>
#include <random>

namespace dtfc {

// Deterministic sampling helpers on top of mt19937_64. The engine's
// output sequence is pinned by the standard; everything below uses only
// IEEE add/mul/sqrt so that identical seeds give identical bits,
// independent of the platform's libm.

// Uniform double in [0, 1), 53-bit resolution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1].
inline double uniform01_open_low(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Uniform integer in [0, n), rejection sampled so the result does not
// depend on how a library maps words to bounded ints.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Standard-normal stand-in: Irwin-Hall sum of 12 uniforms minus 6.
// Bell-shaped, zero mean, unit variance, support [-6, 6]; avoids log/cos
// so sampling stays bit-exact everywhere.
inline double bell01(std::mt19937_64& rng) {
  double acc = 0.0;
  for (int i = 0; i < 12; ++i) acc += uniform01(rng);
  return acc - 6.0;
}

// Stable seed mixing for derived streams (splitmix64 step).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace dtfc

#endif
