#ifndef RRG_RATIONAL_HPP
#define RRG_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rrg {

// Exact rational arithmetic for everything upstream of the double-valued
// estimate boundary. mpq_class does NOT canonicalize two-argument
// constructions, so all construction funnels through rat().
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Falling factorial (x)_k = x(x-1)...(x-k+1), exact.
inline Int falling(long x, int k) {
    Int p = 1;
    for (int i = 0; i < k; ++i) p *= Int(x - i);
    return p;
}

inline Int ipow(long base, int exp) {
    Int p = 1;
    for (int i = 0; i < exp; ++i) p *= base;
    return p;
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline std::string to_string(const Rat& r) { return r.get_str(); }

} // namespace rrg

#endif
