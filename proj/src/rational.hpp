#ifndef QH_RATIONAL_HPP
#define QH_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace qh {

// Exact arbitrary-precision rationals. GMP keeps values in canonical
// reduced form (gcd 1, positive denominator) through all arithmetic.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat(const std::string& s) {
  Rat q(s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

} // namespace qh

#endif
