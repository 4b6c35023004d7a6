#pragma once

#include <limits>
#include <vector>

#include "qeis/bernoulli.hpp"
#include "qeis/rational.hpp"

namespace qeis {

// Element of Q_p with explicit precision tracking. Three states:
//   - exact zero,
//   - zero to absolute precision A (== 0 mod p^A, tail unknown),
//   - p^val * unit with unit in [1, p^prec), p coprime to unit; the number is
//     then known modulo p^{val+prec}.
// Arithmetic never inflates precision: every operation propagates the
// worst-case absolute precision of its inputs.
class PadicNumber {
  public:
    static constexpr long kUnbounded = std::numeric_limits<long>::max();

    static PadicNumber exact_zero(long p) {
        PadicNumber x(p);
        x.kind_ = Kind::ExactZero;
        return x;
    }

    static PadicNumber zero_mod(long p, long abs_prec) {
        PadicNumber x(p);
        x.kind_ = Kind::ZeroMod;
        x.val_ = abs_prec;
        return x;
    }

    static PadicNumber from_unit(long p, long val, BigInt unit, long prec) {
        if (prec < 1) return zero_mod(p, val + prec);
        PadicNumber x(p);
        x.kind_ = Kind::Unit;
        x.val_ = val;
        x.prec_ = prec;
        x.unit_ = std::move(unit);
        BigInt mod = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(prec));
        x.unit_ %= mod;
        if (x.unit_ < 0) x.unit_ += mod;
        if (x.unit_ == 0 || x.unit_ % p == 0)
            throw invariant_violation("PadicNumber: unit part divisible by p");
        return x;
    }

    // value p^shift * R for an integer residue R known modulo p^rel_prec
    static PadicNumber from_residue(long p, const BigInt& residue, long rel_prec, long shift) {
        BigInt mod = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(rel_prec));
        BigInt r = residue % mod;
        if (r < 0) r += mod;
        if (r == 0) return zero_mod(p, shift + rel_prec);
        long v = valuation_int(r, p);
        if (v >= rel_prec) return zero_mod(p, shift + rel_prec);
        BigInt pv = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(v));
        return from_unit(p, shift + v, r / pv, rel_prec - v);
    }

    static PadicNumber from_rational(const BigRat& r, long p, long prec) {
        require_odd_prime(p, "PadicNumber::from_rational");
        if (prec < 1) throw std::domain_error("PadicNumber::from_rational: precision must be >= 1");
        if (r == 0) return exact_zero(p);
        const BigInt num = r.get_num(), den = r.get_den();
        const long a = valuation_int(num, p), b = valuation_int(den, p);
        const BigInt mod = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(prec));
        BigInt nu = num / int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(a));
        BigInt du = den / int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(b));
        BigInt inv;
        if (mpz_invert(inv.get_mpz_t(), du.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw invariant_violation("PadicNumber::from_rational: denominator unit not invertible");
        return from_unit(p, a - b, nu * inv, prec);
    }

    long prime() const { return p_; }
    bool is_zero() const { return kind_ != Kind::Unit; }
    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
    bool is_unit_form() const { return kind_ == Kind::Unit; }

    // exact valuation; infinite marker for the exact zero; throws when only a
    // lower bound is known (zero to finite precision)
    Valuation valuation() const {
        switch (kind_) {
            case Kind::ExactZero: return Valuation::infinite();
            case Kind::Unit: return Valuation::of(val_);
            default:
                throw precision_error("PadicNumber: valuation undetermined (zero mod p^" +
                                      std::to_string(val_) + ")");
        }
    }

    // total: for zero-to-precision, the proven bound
    long val_lower_bound() const {
        switch (kind_) {
            case Kind::ExactZero: return kUnbounded;
            case Kind::Unit: return val_;
            default: return val_;
        }
    }

    long abs_precision() const {
        switch (kind_) {
            case Kind::ExactZero: return kUnbounded;
            case Kind::Unit: return val_ + prec_;
            default: return val_;
        }
    }

    long rel_precision() const { return kind_ == Kind::Unit ? prec_ : 0; }
    const BigInt& unit_part() const {
        if (kind_ != Kind::Unit) throw precision_error("PadicNumber: no unit part");
        return unit_;
    }

    // base-p digits of the unit part, least significant first (prec of them)
    std::vector<int> unit_digits() const {
        std::vector<int> d;
        BigInt u = unit_part();
        for (long i = 0; i < prec_; ++i) {
            BigInt q = u % p_;
            d.push_back(int(q.get_si()));
            u /= p_;
        }
        return d;
    }

    PadicNumber operator-() const {
        if (kind_ != Kind::Unit) return *this;
        BigInt mod = int_pow_ui(static_cast<unsigned long>(p_), static_cast<unsigned long>(prec_));
        return from_unit(p_, val_, mod - unit_, prec_);
    }

    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
        a.check_same(b);
        if (a.kind_ == Kind::ExactZero) return b;
        if (b.kind_ == Kind::ExactZero) return a;
        const long abs = std::min(a.abs_precision(), b.abs_precision());
        if (a.kind_ == Kind::ZeroMod && b.kind_ == Kind::ZeroMod)
            return zero_mod(a.p_, abs);
        if (a.kind_ == Kind::ZeroMod || b.kind_ == Kind::ZeroMod) {
            const PadicNumber& u = (a.kind_ == Kind::Unit) ? a : b;
            if (u.val_ >= abs) return zero_mod(a.p_, abs);
            return from_residue(a.p_, u.unit_, abs - u.val_, u.val_);
        }
        const long shift = std::min(a.val_, b.val_);
        const long rel = abs - shift;
        BigInt ra = a.unit_ * int_pow_ui(static_cast<unsigned long>(a.p_),
                                         static_cast<unsigned long>(a.val_ - shift));
        BigInt rb = b.unit_ * int_pow_ui(static_cast<unsigned long>(b.p_),
                                         static_cast<unsigned long>(b.val_ - shift));
        return from_residue(a.p_, ra + rb, rel, shift);
    }

    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
        a.check_same(b);
        if (a.kind_ == Kind::ExactZero || b.kind_ == Kind::ExactZero)
            return exact_zero(a.p_);
        if (a.kind_ == Kind::ZeroMod || b.kind_ == Kind::ZeroMod) {
            // val_ bounds the valuation from below in both remaining kinds
            return zero_mod(a.p_, a.val_ + b.val_);
        }
        const long prec = std::min(a.prec_, b.prec_);
        return from_unit(a.p_, a.val_ + b.val_, a.unit_ * b.unit_, prec);
    }

    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
        a.check_same(b);
        if (b.kind_ != Kind::Unit)
            throw std::domain_error("PadicNumber: division by a (possible) zero");
        if (a.kind_ == Kind::ExactZero) return exact_zero(a.p_);
        if (a.kind_ == Kind::ZeroMod) return zero_mod(a.p_, a.val_ - b.val_);
        const long prec = std::min(a.prec_, b.prec_);
        const BigInt mod =
            int_pow_ui(static_cast<unsigned long>(a.p_), static_cast<unsigned long>(prec));
        BigInt inv;
        if (mpz_invert(inv.get_mpz_t(), b.unit_.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw invariant_violation("PadicNumber: unit not invertible");
        return from_unit(a.p_, a.val_ - b.val_, a.unit_ * inv, prec);
    }

  private:
    explicit PadicNumber(long p) : p_(p) {}

    void check_same(const PadicNumber& o) const {
        if (p_ != o.p_)
            throw std::domain_error("PadicNumber: mixed primes in arithmetic");
    }

    enum class Kind { ExactZero, ZeroMod, Unit };

    long p_;
    Kind kind_ = Kind::ExactZero;
    long val_ = 0;
    BigInt unit_;
    long prec_ = 0;
};

// Truncation control for the log/exp series: all dropped terms have valuation
// >= target_abs, and guard working digits absorb every division by n or n!.
struct PadicSeriesBudget {
    long target_abs = 0;
    long cutoff = 0; // first term index not summed
    long guard = 0;
};

namespace detail {

inline long floor_log_p(long n, long p) {
    long e = 0;
    while (n >= p) {
        n /= p;
        ++e;
    }
    return e;
}

inline long vp_long(long n, long p) {
    long e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

// Legendre: v_p(n!)
inline long vp_factorial(long n, long p) {
    long e = 0;
    for (long q = p; q <= n; q *= p) {
        e += n / q;
        if (q > n / p) break;
    }
    return e;
}

inline PadicSeriesBudget plan_log_budget(long p, long w, long target_abs) {
    PadicSeriesBudget b;
    b.target_abs = target_abs;
    long n = 1;
    while (n * w - floor_log_p(n, p) < target_abs) ++n;
    b.cutoff = n;
    for (long k = 1; k < b.cutoff; ++k) b.guard = std::max(b.guard, vp_long(k, p));
    return b;
}

inline PadicSeriesBudget plan_exp_budget(long p, long w, long target_abs) {
    PadicSeriesBudget b;
    b.target_abs = target_abs;
    // v_p(n!) <= (n-1)/(p-1), and n w - (n-1)/(p-1) is non-decreasing, so the
    // first index clearing the target bounds every later one too.
    long n = 1;
    while (n * w - (n - 1) / (p - 1) < target_abs) ++n;
    b.cutoff = n;
    b.guard = vp_factorial(b.cutoff, p);
    return b;
}

} // namespace detail

// log about 1: log_p(x) = sum_{n>=1} (-1)^{n+1} (x-1)^n / n, for x = 1 mod p.
// Result carries the full absolute precision of the input (divisions by n are
// absorbed by guard digits in the working modulus).
inline PadicNumber padic_log(const PadicNumber& x) {
    const long p = x.prime();
    if (!x.is_unit_form() || x.valuation().get() != 0)
        throw std::domain_error("padic_log: argument must be a unit congruent to 1 mod p");
    const long E = x.abs_precision();
    BigInt t = x.unit_part() - 1;
    if (t == 0) return PadicNumber::zero_mod(p, E); // x = 1 to full precision
    const long w = valuation_int(t, p);
    if (w < 1) throw std::domain_error("padic_log: v_p(x - 1) <= 0, outside the domain");

    const PadicSeriesBudget budget = detail::plan_log_budget(p, w, E);
    const long W = E + budget.guard;
    const BigInt mod = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(W));
    BigInt acc = 0, power = t % mod;
    if (power < 0) power += mod;
    for (long n = 1; n < budget.cutoff; ++n) {
        const long e = detail::vp_long(n, p);
        const BigInt pe = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(e));
        BigInt term = power / pe; // exact: v_p(t^n) = n w >= e
        BigInt inv;
        BigInt nu(n / pe);
        mpz_invert(inv.get_mpz_t(), nu.get_mpz_t(), mod.get_mpz_t());
        term = term * inv % mod;
        if (n % 2 == 1)
            acc = (acc + term) % mod;
        else
            acc = (acc - term + mod) % mod;
        power = power * (t % mod) % mod;
        if (power < 0) power += mod;
    }
    return PadicNumber::from_residue(p, acc, E, 0);
}

// exp_p(x) = sum x^n / n! for v_p(x) >= 1 (the domain |x|_p < p^{-1/(p-1)}
// for odd p). Result is a unit congruent to 1 mod p at the input's precision.
inline PadicNumber padic_exp(const PadicNumber& x) {
    const long p = x.prime();
    if (x.is_exact_zero()) return PadicNumber::from_rational(1, p, 256);
    if (!x.is_unit_form()) {
        // x = 0 mod p^A with A >= 1: exp(x) = 1 mod p^A
        const long A = x.abs_precision();
        if (A < 1) throw std::domain_error("padic_exp: v_p(x) <= 0, outside the domain");
        return PadicNumber::from_unit(p, 0, 1, A);
    }
    const long w = x.valuation().get();
    if (w < 1) throw std::domain_error("padic_exp: v_p(x) <= 0, outside the domain");
    const long E = x.abs_precision();

    const PadicSeriesBudget budget = detail::plan_exp_budget(p, w, E);
    const long W = E + budget.guard;
    const BigInt mod = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(W));
    const BigInt t = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(w)) *
                     x.unit_part() % mod;
    BigInt acc = 1, power = t;
    BigInt fact_unit = 1;
    long fact_pval = 0;
    for (long n = 1; n < budget.cutoff; ++n) {
        const long e = detail::vp_long(n, p);
        fact_pval += e;
        const BigInt pe = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(e));
        fact_unit = fact_unit * (BigInt(n) / pe) % mod;
        const BigInt pfv =
            int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(fact_pval));
        BigInt term = power / pfv; // exact: v_p(x^n) = n w >= v_p(n!)
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), fact_unit.get_mpz_t(), mod.get_mpz_t());
        acc = (acc + term * inv) % mod;
        power = power * t % mod;
    }
    return PadicNumber::from_residue(p, acc, E, 0);
}

// exact rational (x^{p^m} - 1) / p^m
inline BigRat leopoldt_quotient_exact(const BigInt& x, long p, long m) {
    require_odd_prime(p, "leopoldt_quotient");
    if (m < 1) throw std::domain_error("leopoldt_quotient: m must be >= 1");
    if (x != 1 && valuation_int(x - 1, p) < 1)
        throw std::domain_error("leopoldt_quotient: v_p(x - 1) <= 0, outside the domain");
    const BigInt pm = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(m));
    if (!pm.fits_ulong_p() || pm.get_ui() > 2000000ul)
        throw infeasible_error("leopoldt_quotient: exponent p^m too large");
    BigRat q(int_pow(x, pm.get_ui()) - 1);
    q /= pm;
    return q;
}

inline PadicNumber leopoldt_quotient(const BigInt& x, long p, long m, long prec) {
    return PadicNumber::from_rational(leopoldt_quotient_exact(x, p, m), p, prec);
}

// tilde a = -48 p / log_p(2^{p-1}), the transcendental limit coefficient at
// rank-2 forms with content 1 and 2 det = 1.
inline PadicNumber tilde_a_value(long p, long prec) {
    require_odd_prime(p, "tilde_a_value");
    if (prec < 1) throw std::domain_error("tilde_a_value: precision must be >= 1");
    const BigInt base = int_pow_ui(2, static_cast<unsigned long>(p - 1));
    const long w = valuation_int(base - 1, p);
    const PadicNumber lg =
        padic_log(PadicNumber::from_rational(BigRat(base), p, prec + w + 8));
    const PadicNumber num = PadicNumber::from_rational(BigRat(-48 * p), p, prec + w + 8);
    return num / lg;
}

// The limit the coefficient sequence a_{k_m} actually attains:
// -48 p / ((1-p) log_p(2^{p-1})). Differs from tilde_a_value by the Euler
// factor 1/(1-p): along k_m = 2 + (p-1)p^{m-1} every weight is = 0 mod (p-1),
// so B_{k_m}/k_m converges to (1-p) B_2/2, not to B_2/2. Verified against the
// exact sequence for p in {3,5}; v_p(a_{k_m} - this value) = m.
inline PadicNumber tilde_a_attained(long p, long prec) {
    const PadicNumber euler =
        PadicNumber::from_rational(BigRat(1 - p), p, prec + 8);
    return tilde_a_value(p, prec) / euler;
}

// exact valuation of B_{(p-1)p^{m-1}} - (p-1)/p
inline long bernoulli_residue_check(long p, long m) {
    require_odd_prime(p, "bernoulli_residue_check");
    if (m < 1) throw std::domain_error("bernoulli_residue_check: m must be >= 1");
    const BigInt idx = BigInt(p - 1) * int_pow_ui(static_cast<unsigned long>(p),
                                                  static_cast<unsigned long>(m - 1));
    if (idx > 600) throw infeasible_error("bernoulli_residue_check: Bernoulli index > 600");
    const BigRat diff = bernoulli(idx.get_ui()) - BigRat(p - 1, p);
    return valuation(diff, p).get();
}

} // namespace qeis
