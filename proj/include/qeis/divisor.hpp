#pragma once

#include <vector>

#include "qeis/bernoulli.hpp"
#include "qeis/rational.hpp"

namespace qeis {

// ascending divisors of n >= 1
inline std::vector<unsigned long> divisors(unsigned long n) {
    if (n == 0) throw std::domain_error("divisors: n must be positive");
    std::vector<unsigned long> lo, hi;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

inline unsigned long to_ulong_checked(const BigInt& n, const char* where) {
    if (!n.fits_ulong_p())
        throw infeasible_error(std::string(where) + ": argument too large for divisor enumeration");
    return n.get_ui();
}

inline BigInt sigma_ui(unsigned long k, unsigned long n) {
    BigInt s = 0;
    for (unsigned long d : divisors(n)) s += int_pow_ui(d, k);
    return s;
}

// sigma_k extended by the convention sigma_k(m) = 0 for m not a positive
// integer, so call sites never pre-check divisibility.
inline BigInt sigma(unsigned long k, const BigRat& m) {
    if (m.get_den() != 1 || m <= 0) return 0;
    return sigma_ui(k, to_ulong_checked(m.get_num(), "sigma"));
}

// sum of d^m over divisors d | N with gcd(d, p) = 1
inline BigInt sigma_star(unsigned long m, const BigInt& N, long p) {
    require_odd_prime(p, "sigma_star");
    if (N < 1) throw std::domain_error("sigma_star: N must be positive");
    BigInt s = 0;
    for (unsigned long d : divisors(to_ulong_checked(N, "sigma_star")))
        if (d % static_cast<unsigned long>(p) != 0) s += int_pow_ui(d, m);
    return s;
}

// same zero-off-N convention as sigma
inline BigInt sigma_star(unsigned long m, const BigRat& N, long p) {
    require_odd_prime(p, "sigma_star");
    if (N.get_den() != 1 || N <= 0) return 0;
    return sigma_star(m, BigInt(N.get_num()), p);
}

// sum_{0<d|pN} f(d) = sum_{0<d|N, p∤d} f(d) + sum_{0<d|N} f(pd)
template <class F>
bool verify_divisor_split(F&& f, unsigned long N, long p) {
    if (N == 0) throw std::domain_error("verify_divisor_split: N must be positive");
    if (!is_small_prime(p)) throw std::domain_error("verify_divisor_split: p must be prime");
    BigInt lhs = 0;
    for (unsigned long d : divisors(N * static_cast<unsigned long>(p))) lhs += f(d);
    BigInt rhs = 0;
    for (unsigned long d : divisors(N)) {
        if (d % static_cast<unsigned long>(p) != 0) rhs += f(d);
        rhs += f(d * static_cast<unsigned long>(p));
    }
    return lhs == rhs;
}

// p^{2m} sigma_m(N) - sigma_m(p^2 N) = -(1 + p^m) sigma*_m(N)
inline bool verify_sigma_twist(unsigned long m, unsigned long N, long p) {
    require_odd_prime(p, "verify_sigma_twist");
    if (N == 0) throw std::domain_error("verify_sigma_twist: N must be positive");
    const BigInt pm = int_pow_ui(static_cast<unsigned long>(p), m);
    BigInt lhs = pm * pm * sigma_ui(m, N) -
                 sigma_ui(m, N * static_cast<unsigned long>(p) * static_cast<unsigned long>(p));
    BigInt rhs = -(1 + pm) * sigma_star(m, BigInt(N), p);
    return lhs == rhs;
}

// Euler-factor-corrected Bernoulli quotient (1 - p^{k-1}) B_k / k
inline BigRat kummer_lhs(long k, long p) {
    require_odd_prime(p, "kummer_lhs");
    if (k < 2 || k % 2 != 0) throw std::domain_error("kummer_lhs: k must be even and >= 2");
    BigRat r(1 - int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(k - 1)));
    r *= bernoulli(static_cast<unsigned long>(k));
    r /= BigInt(k);
    return r;
}

// exact p-adic valuation of kummer_lhs(k,p) - kummer_lhs(k2,p);
// the infinite marker when the difference is exactly zero
inline Valuation kummer_valuation(long k, long k2, long p) {
    return valuation(kummer_lhs(k, p) - kummer_lhs(k2, p), p);
}

} // namespace qeis
