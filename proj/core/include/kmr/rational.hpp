#ifndef KMR_RATIONAL_HPP
#define KMR_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace kmr {

using Q = mpq_class;

inline std::string q_str(const Q& q) { return q.get_str(); }

inline Q q_parse(const std::string& s) {
  Q q(s);
  q.canonicalize();
  return q;
}

// n choose k for integer n (possibly negative) and k >= 0
inline Q binom(long n, long k) {
  if (k < 0) return Q(0);
  Q r(1);
  for (long i = 0; i < k; ++i) {
    r *= Q(n - i);
    r /= Q(i + 1);
  }
  return r;
}

}  // namespace kmr

#endif
