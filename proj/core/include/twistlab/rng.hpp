#pragma once

// Deterministic randomness: splitmix64 to derive per-sample seeds, mt19937_64
// for streams. Only raw engine output is used (distributions are not portable
// across standard libraries).

#include <cstdint>
#include <random>
#include <vector>

#include "twistlab/rational.hpp"

namespace twistlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x51ed27ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return eng_() % bound; }
  long uniform(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  // Positive rational p/q with 1 <= p, q <= range.
  Q positive_rational(long range = 9) {
    Q q(uniform(1, range), uniform(1, range));
    q.canonicalize();
    return q;
  }
  Q rational(long range = 9) {
    Q q = positive_rational(range);
    return below(2) ? q : Q(-q);
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace twistlab
