#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace forge {

// mt19937_64 with hand-rolled reductions so that sequences are identical
// across standard libraries (std distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::size_t below(std::size_t n) {
    return n ? static_cast<std::size_t>(next() % n) : 0;
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 eng_;
};

// Stable per-document seed from (corpus seed, doc id). FNV-1a over the key,
// mixed with the corpus seed.
inline std::uint64_t derive_seed(std::uint64_t corpus_seed, std::string_view key) {
  std::uint64_t h = 1469598103934665603ULL ^ corpus_seed;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= corpus_seed << 1;
  return h;
}

}  // namespace forge
