#pragma once

// Exact rationals. GMP's mpq_class keeps values canonical after every
// arithmetic operation, which is all the invariants we need.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace twistlab {

using Q = mpq_class;
using Z = mpz_class;

inline int sign(const Q& x) { return sgn(x); }

// Always "p/q", also for integers ("3/1"), so outputs are uniform.
inline std::string to_string(const Q& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// Accepts "p/q", "p", and a leading sign.
inline Q parse_rational(const std::string& s) {
  Q q;
  if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline Q qpow(const Q& x, unsigned e) {
  Q r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

inline int neg1pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace twistlab
