#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace trmaps {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat parse_rat(const std::string& text)
{
    Rat r;
    if (r.set_str(text, 10) != 0 || r.get_den() == 0)
        throw std::invalid_argument("not a rational number: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

inline Rat rat_pow(const Rat& base, long e)
{
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        return rat_pow(Rat(1) / base, -e);
    }
    Rat out(1), b(base);
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

} // namespace trmaps
