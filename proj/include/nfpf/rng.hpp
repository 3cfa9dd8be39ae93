#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace nfpf {

// Seed combiner (splitmix64 over the xor of both inputs). Used to derive
// independent per-cycle and per-component streams from one experiment seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (stream + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random source. std::mt19937_64 output is pinned by the
// standard; the transforms below are fixed here so that draws are
// bit-reproducible across platforms (the std distributions are not).
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // in [0, 1)
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // in [0, n), Lemire multiply-shift
  std::size_t index_below(std::size_t n) {
    using u128 = unsigned __int128;
    return static_cast<std::size_t>((static_cast<u128>(gen_()) * n) >> 64);
  }

  // standard normal via Box-Muller; second value of each pair is cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // first m entries of a Fisher-Yates permutation of 0..n-1
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t m) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < m && i + 1 < n; ++i) {
      std::size_t j = i + index_below(n - i);
      std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    return idx;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace nfpf
