#pragma once

// k-subsets of [n] as bitmasks: bit (i-1) stands for element i.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace twistlab {

using Subset = std::uint32_t;

inline int subset_size(Subset s) { return std::popcount(s); }
inline bool contains(Subset s, int i) { return (s >> (i - 1)) & 1u; }
inline Subset singleton(int i) { return Subset(1) << (i - 1); }

inline std::vector<int> elements(Subset s) {
  std::vector<int> v;
  for (int i = 1; s; ++i, s >>= 1)
    if (s & 1u) v.push_back(i);
  return v;
}

inline Subset make_subset(const std::vector<int>& xs) {
  Subset s = 0;
  for (int x : xs) s |= singleton(x);
  return s;
}

// Reduce an arbitrary integer into [1, n].
inline int mod1(long i, int n) {
  long r = ((i - 1) % n + n) % n;
  return static_cast<int>(r + 1);
}

// The cyclic interval [a, b) reduced mod n (may have fewer than b-a elements
// when it wraps past itself).
inline Subset cyclic_interval(long a, long b, int n) {
  Subset s = 0;
  for (long i = a; i < b; ++i) s |= singleton(mod1(i, n));
  return s;
}

// All k-subsets of [n] in lexicographic order of their sorted element lists.
std::vector<Subset> k_subsets(int n, int k);

// "{1,3}" style label, or compact "13" when n < 10.
std::string subset_label(Subset s, int n);

}  // namespace twistlab
