#ifndef POLMOD_RATIONAL_HPP
#define POLMOD_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "error.hpp"

namespace polmod {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "7", "-3/4", "+2".
inline Rational parse_rational(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw Error(ErrorKind::Parse, "bad rational '" + text + "'");
    if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Integer factorial(unsigned k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

} // namespace polmod

#endif
