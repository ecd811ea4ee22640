// coh/rng.h
//
// Deterministic random number generation. All randomness in the library goes
// through Rng so that a fixed seed gives bit-identical results across runs
// and platforms. std::mt19937_64 is fully specified by the standard; the
// distributions here are hand-rolled because the standard library's
// distribution objects are not portable across implementations.

#ifndef COH_RNG_H_
#define COH_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace coh {

// 64-bit FNV-1a. Used for stable string hashing (OOV vectors, seed tags).
uint64_t fnv1a64(std::string_view s);

// splitmix64 finalizer; good single-step mixer for combining seed words.
uint64_t mix64(uint64_t x);

// Derive a child seed from a base seed and a stream of tag words.
uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> words);
uint64_t derive_seed(uint64_t base, std::string_view tag);
uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t word);

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0, n). n must be > 0.
  uint64_t uniform_int(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  // Standard normal via Box-Muller. No spare caching: one value per call
  // keeps the consumption pattern obvious and reproducible.
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Sample k distinct indices from [0, n) via partial Fisher-Yates.
  std::vector<size_t> sample_without_replacement(size_t n, size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace coh

#endif  // COH_RNG_H_
