#include "coh/rng.h"

#include <cmath>
#include <numeric>

namespace coh {

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> words) {
  uint64_t h = mix64(base);
  for (uint64_t w : words) h = mix64(h ^ w);
  return h;
}

uint64_t derive_seed(uint64_t base, std::string_view tag) {
  return derive_seed(base, {fnv1a64(tag)});
}

uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t word) {
  return derive_seed(base, {fnv1a64(tag), word});
}

std::vector<size_t> Rng::sample_without_replacement(size_t n, size_t k) {
  std::vector<size_t> pool(n);
  std::iota(pool.begin(), pool.end(), size_t{0});
  if (k > n) k = n;
  std::vector<size_t> out;
  out.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + static_cast<size_t>(uniform_int(n - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace coh
