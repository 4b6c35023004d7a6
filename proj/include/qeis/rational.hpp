#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "qeis/errors.hpp"

namespace qeis {

using BigInt = mpz_class;
using BigRat = mpq_class;

// p-adic valuation with a distinguished infinite value (the valuation of 0).
// Kept as a proper type so +inf can never be confused with a real valuation.
struct Valuation {
    bool finite = false;
    long v = 0;

    static Valuation of(long value) { return Valuation{true, value}; }
    static Valuation infinite() { return Valuation{false, 0}; }

    bool is_infinite() const { return !finite; }

    // finite value; throws on the infinite marker
    long get() const {
        if (!finite) throw precision_error("valuation is infinite (exact zero)");
        return v;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.finite == b.finite && (!a.finite || a.v == b.v);
    }
    // +inf compares greater than every finite valuation
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (!a.finite) return false;
        if (!b.finite) return true;
        return a.v < b.v;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a == b || a < b; }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

    // v + delta, absorbing into infinity
    Valuation shifted(long delta) const { return finite ? of(v + delta) : infinite(); }

    std::string str() const { return finite ? std::to_string(v) : "+inf"; }
};

inline BigInt int_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt int_pow_ui(unsigned long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// largest e with p^e | n, for n != 0
inline long valuation_int(const BigInt& n, long p) {
    if (n == 0) throw invariant_violation("valuation_int: argument is zero");
    BigInt rest = abs(n);
    BigInt q, r;
    long e = 0;
    const BigInt P(p);
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), P.get_mpz_t());
        if (r != 0) return e;
        rest = q;
        ++e;
    }
}

inline Valuation valuation(const BigRat& r, long p) {
    if (r == 0) return Valuation::infinite();
    return Valuation::of(valuation_int(r.get_num(), p) - valuation_int(r.get_den(), p));
}

inline bool is_small_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_odd_prime(long p) { return p > 2 && is_small_prime(p); }

inline void require_odd_prime(long p, const char* where) {
    if (!is_odd_prime(p))
        throw std::domain_error(std::string(where) + ": p = " + std::to_string(p) +
                                " is not an odd prime");
}

// "num/den" with the denominator omitted when it is 1
inline std::string rat_to_string(const BigRat& r) { return r.get_str(); }

inline BigRat rat_from_string(const std::string& s) {
    BigRat r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

} // namespace qeis
