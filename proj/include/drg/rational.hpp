#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace drg {

// All verdict-bearing arithmetic in this project is exact. Int / Rat are the
// only scalar types used outside of approximate display values.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

#define DRG_CHECK(cond, msg)                                                  \
    do {                                                                      \
        if (!(cond)) throw ::drg::internal_error(std::string("invariant: ") + (msg)); \
    } while (0)

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline bool is_nonneg_integer(const Rat& r) { return den(r) == 1 && num(r) >= 0; }

// q^e for e >= 0.
inline Int ipow(const Int& q, unsigned long e) {
    Int r = 1, base = q;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat rpow(const Rat& q, long e) {
    if (e >= 0) {
        Rat r = 1, base = q;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }
    DRG_CHECK(q != 0, "rpow: negative power of zero");
    return 1 / rpow(q, -e);
}

// v_p(n) for n != 0.
inline long valuation(Int n, const Int& p) {
    DRG_CHECK(n != 0 && p >= 2, "valuation: bad arguments");
    if (n < 0) n = -n;
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Exact value as "n" or "n/d".
inline std::string rat_str(const Rat& r) { return r.str(); }

// Marked approximate decimal rendering for reports.
inline double rat_approx(const Rat& r) { return r.convert_to<double>(); }

inline Rat parse_rat(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational: " + s);
    }
}

} // namespace drg
