#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "qeis/bernoulli.hpp"
#include "qeis/divisor.hpp"
#include "qeis/hermitian.hpp"
#include "qeis/padic.hpp"
#include "qeis/rational.hpp"

namespace qeis {

inline void require_even_weight(long k, const char* where) {
    if (k % 2 != 0 || k < 4)
        throw std::domain_error(std::string(where) + ": weight must be even and >= 4");
}

// Krieg's elementary coefficient function:
//   alpha*(0)   = -2k / B_k
//   alpha*(ell) = -4k(k-2) / ((2^{k-2}-1) B_k B_{k-2}) *
//                 [sigma_{k-3}(ell) - 2^{k-2} sigma_{k-3}(ell/4)]
inline BigRat alpha_star(long k, const BigInt& ell) {
    require_even_weight(k, "alpha_star");
    if (ell < 0) throw std::domain_error("alpha_star: ell must be nonnegative");
    const unsigned long uk = static_cast<unsigned long>(k);
    if (ell == 0) return BigRat(-2 * k) / bernoulli(uk);
    const BigInt pow2 = int_pow_ui(2, uk - 2);
    BigRat pref(-4 * k * (k - 2));
    pref /= BigRat(pow2 - 1) * bernoulli(uk) * bernoulli(uk - 2);
    BigRat bracket(sigma(uk - 3, BigRat(ell)));
    bracket -= BigRat(pow2) * BigRat(sigma(uk - 3, BigRat(ell) / 4));
    return pref * bracket;
}

// a_k(H): 1 at the zero form (Eisenstein normalization), otherwise
// sum_{0<d|eps(H)} d^{k-1} alpha*(2 det(H) / d^2)
inline BigRat a_coeff(long k, const HermitianForm& H) {
    require_psd(H, "a_coeff");
    if (H.is_zero()) return BigRat(1);
    const BigInt eps = epsilon(H);
    const BigInt td = two_det(H);
    BigRat acc = 0;
    for (unsigned long d : divisors(to_ulong_checked(eps, "a_coeff"))) {
        BigInt d2(d);
        d2 *= d;
        if (td % d2 != 0)
            throw invariant_violation("a_coeff: 2 det(H)/d^2 not integral for d | eps(H)");
        acc += BigRat(int_pow_ui(d, static_cast<unsigned long>(k - 1))) *
               alpha_star(k, td / d2);
    }
    return acc;
}

// normalization constant c_k with b_k = c_k a_k
inline BigRat eis_norm_const(long k) {
    require_even_weight(k, "eis_norm_const");
    const unsigned long uk = static_cast<unsigned long>(k);
    BigRat c(int_pow_ui(2, uk - 2) - 1);
    c *= -bernoulli(uk) * bernoulli(uk - 2);
    c /= BigInt(4 * k * (k - 2));
    return c;
}

inline BigRat b_coeff(long k, const HermitianForm& H) {
    return eis_norm_const(k) * a_coeff(k, H);
}

// Coefficients A_k(H) of G*_k, with all p-factors removed: the three-case
// closed form (rank 0 / 1 / 2).
inline BigRat A_coeff(long k, long p, const HermitianForm& H) {
    require_even_weight(k, "A_coeff");
    require_odd_prime(p, "A_coeff");
    require_psd(H, "A_coeff");
    const unsigned long uk = static_cast<unsigned long>(k);
    const BigInt pk1 = int_pow_ui(static_cast<unsigned long>(p), uk - 1);
    const BigInt pk3 = int_pow_ui(static_cast<unsigned long>(p), uk - 3);
    const int r = rank(H);
    if (r == 0) return BigRat(1 - pk1) * BigRat(1 - pk3) * eis_norm_const(k);
    if (r == 1) {
        BigRat out(1 - pk3);
        out *= BigRat(int_pow_ui(2, uk - 2) - 1) * bernoulli(uk - 2);
        out /= BigInt(2 * (k - 2));
        out *= BigRat(sigma_star(uk - 1, epsilon(H), p));
        return out;
    }
    const BigInt eps = epsilon(H);
    const BigInt td = two_det(H);
    const BigInt pow2 = int_pow_ui(2, uk - 2);
    BigRat acc = 0;
    for (unsigned long d : divisors(to_ulong_checked(eps, "A_coeff"))) {
        if (d % static_cast<unsigned long>(p) == 0) continue;
        BigInt d2(d);
        d2 *= d;
        BigRat bracket(sigma_star(uk - 3, BigRat(td) / d2, p));
        bracket -= BigRat(pow2) * BigRat(sigma_star(uk - 3, BigRat(td) / (4 * d2), p));
        acc += BigRat(int_pow_ui(d, uk - 1)) * bracket;
    }
    return acc;
}

// a_k(H) at rank-2 forms with eps(H) = 1 and 2 det(H) = 1, in closed form:
// -4k(k-2) / ((2^{k-2}-1) B_k B_{k-2}). Second route against a_coeff.
inline BigRat a_rank2_unit_closed(long k) {
    require_even_weight(k, "a_rank2_unit_closed");
    const unsigned long uk = static_cast<unsigned long>(k);
    BigRat out(-4 * k * (k - 2));
    out /= BigRat(int_pow_ui(2, uk - 2) - 1) * bernoulli(uk) * bernoulli(uk - 2);
    return out;
}

// Finite q-expansion: every PSD key with n + m <= trace_bound is present.
// Access outside the bound is a checked error, never an implicit zero.
class QExpansion {
  public:
    using Entry = std::pair<HermitianForm, BigRat>;

    QExpansion(long trace_bound, std::vector<Entry> entries)
        : bound_(trace_bound), entries_(std::move(entries)) {}

    long trace_bound() const { return bound_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    const BigRat& at(const HermitianForm& H) const {
        auto it = std::lower_bound(
            entries_.begin(), entries_.end(), H,
            [](const Entry& e, const HermitianForm& key) { return canonical_less(e.first, key); });
        if (it == entries_.end() || it->first != H) {
            if (H.trace() > bound_)
                throw std::out_of_range("QExpansion: key outside the trace bound");
            throw std::out_of_range("QExpansion: key is not a canonical PSD form");
        }
        return it->second;
    }

    friend bool operator==(const QExpansion& a, const QExpansion& b) {
        return a.bound_ == b.bound_ && a.entries_ == b.entries_;
    }

  private:
    long bound_;
    std::vector<Entry> entries_;
};

template <class F>
QExpansion make_expansion(long trace_bound, F&& coeff) {
    std::vector<QExpansion::Entry> entries;
    for (HermitianForm& H : enumerate_psd(trace_bound)) {
        BigRat v = coeff(H);
        entries.emplace_back(std::move(H), std::move(v));
    }
    return QExpansion(trace_bound, std::move(entries));
}

inline QExpansion expand_b(long k, long trace_bound) {
    return make_expansion(trace_bound, [k](const HermitianForm& H) { return b_coeff(k, H); });
}

inline QExpansion expand_A(long k, long p, long trace_bound) {
    return make_expansion(trace_bound,
                          [k, p](const HermitianForm& H) { return A_coeff(k, p, H); });
}

// F|U(p): coefficient at H is the input coefficient at pH; the trace bound
// shrinks by a factor p.
inline QExpansion u_p(const QExpansion& F, long p) {
    require_odd_prime(p, "u_p");
    if (F.trace_bound() < p)
        throw std::domain_error("u_p: trace bound below p, output bound would be empty");
    return make_expansion(F.trace_bound() / p,
                          [&](const HermitianForm& H) { return F.at(scale(H, p)); });
}

inline QExpansion restrict_expansion(const QExpansion& F, long trace_bound) {
    if (trace_bound > F.trace_bound())
        throw std::domain_error("restrict_expansion: cannot grow the trace bound");
    return make_expansion(trace_bound, [&](const HermitianForm& H) { return F.at(H); });
}

inline QExpansion scale_expansion(const QExpansion& F, const BigRat& c) {
    std::vector<QExpansion::Entry> entries = F.entries();
    for (auto& e : entries) e.second *= c;
    return QExpansion(F.trace_bound(), std::move(entries));
}

inline QExpansion sub_expansion(const QExpansion& F, const QExpansion& G) {
    if (F.trace_bound() != G.trace_bound())
        throw std::domain_error("sub_expansion: trace bounds differ");
    std::vector<QExpansion::Entry> entries = F.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].first != G.entries()[i].first)
            throw invariant_violation("sub_expansion: canonical key sets differ");
        entries[i].second -= G.entries()[i].second;
    }
    return QExpansion(F.trace_bound(), std::move(entries));
}

// F_k = G_k|U(p) - p^{k-1} G_k, evaluated coefficientwise:
// B_k(H) = b_k(pH) - p^{k-1} b_k(H)
inline BigRat f_coeff(long k, long p, const HermitianForm& H) {
    const BigInt pk1 = int_pow_ui(static_cast<unsigned long>(p), static_cast<unsigned long>(k - 1));
    return b_coeff(k, scale(H, p)) - BigRat(pk1) * b_coeff(k, H);
}

inline QExpansion build_F(long k, long p, long trace_bound) {
    require_even_weight(k, "build_F");
    require_odd_prime(p, "build_F");
    return make_expansion(trace_bound,
                          [k, p](const HermitianForm& H) { return f_coeff(k, p, H); });
}

// G*_k = -1/(1+p^{k-3}) { p^{2(k-3)} F_k - F_k|U(p) }, again coefficientwise
// from the operator definition (the index shift of U(p) is unrolled into
// evaluations of b_k at H, pH and p^2 H). MUST agree with expand_A exactly;
// that dual-path equality is the module's central oracle.
inline BigRat g_star_coeff(long k, long p, const HermitianForm& H) {
    const unsigned long uk = static_cast<unsigned long>(k);
    const BigInt p2k3 = int_pow_ui(static_cast<unsigned long>(p), 2 * (uk - 3));
    BigRat acc = BigRat(p2k3) * f_coeff(k, p, H) - f_coeff(k, p, scale(H, p));
    acc /= -(1 + BigRat(int_pow_ui(static_cast<unsigned long>(p), uk - 3)));
    return acc;
}

inline QExpansion build_G_star(long k, long p, long trace_bound) {
    require_even_weight(k, "build_G_star");
    require_odd_prime(p, "build_G_star");
    return make_expansion(trace_bound,
                          [k, p](const HermitianForm& H) { return g_star_coeff(k, p, H); });
}

// weight ladder k_m = k + (p-1) p^{m-1}
struct WeightSequence {
    long base_k;
    long p;

    long weight(long m) const {
        if (m < 1) throw std::domain_error("WeightSequence: m must be >= 1");
        long q = 1;
        for (long i = 1; i < m; ++i) {
            q *= p;
            if (q > 1000000) throw infeasible_error("WeightSequence: ladder too deep");
        }
        return base_k + (p - 1) * q;
    }
};

inline constexpr long kMaxFeasibleWeight = 600;

inline void require_feasible_weight(long k, const char* where) {
    if (k > kMaxFeasibleWeight)
        throw infeasible_error(std::string(where) + ": weight " + std::to_string(k) +
                               " exceeds the feasible Bernoulli range");
}

// rows (m, v_p(b_{k_m}(H) - A_k(H))), exact on rationals
inline std::vector<std::pair<long, Valuation>> convergence_table(long k, long p,
                                                                 const HermitianForm& H,
                                                                 long m_max) {
    require_even_weight(k, "convergence_table");
    require_odd_prime(p, "convergence_table");
    const WeightSequence ks{k, p};
    const BigRat target = A_coeff(k, p, H);
    std::vector<std::pair<long, Valuation>> rows;
    for (long m = 1; m <= m_max; ++m) {
        const long km = ks.weight(m);
        require_feasible_weight(km, "convergence_table");
        rows.emplace_back(m, valuation(b_coeff(km, H) - target, p));
    }
    return rows;
}

inline void require_transcendental_form(const HermitianForm& H, const char* where) {
    if (rank(H) != 2 || epsilon(H) != 1 || two_det(H) != 1)
        throw std::domain_error(std::string(where) +
                                ": form must have rank 2, eps(H) = 1 and 2 det(H) = 1");
}

// rows (m, v_p(a_{k_m}(H) - limit)) along k_m = 2 + (p-1) p^{m-1}
inline std::vector<std::pair<long, Valuation>> transcendental_table_vs(
    const PadicNumber& limit, long p, const HermitianForm& H, long m_max, long prec) {
    require_odd_prime(p, "transcendental_table");
    require_transcendental_form(H, "transcendental_table");
    const WeightSequence ks{2, p};
    std::vector<std::pair<long, Valuation>> rows;
    for (long m = 1; m <= m_max; ++m) {
        const long km = ks.weight(m);
        require_feasible_weight(km, "transcendental_table");
        const PadicNumber a = PadicNumber::from_rational(a_rank2_unit_closed(km), p, prec + 6);
        rows.emplace_back(m, (a - limit).valuation());
    }
    return rows;
}

// against tilde_a_value = -48p / log_p(2^{p-1})
inline std::vector<std::pair<long, Valuation>> transcendental_table(long p,
                                                                    const HermitianForm& H,
                                                                    long m_max, long prec) {
    return transcendental_table_vs(tilde_a_value(p, prec), p, H, m_max, prec);
}

// against the attained limit -48p / ((1-p) log_p(2^{p-1}))
inline std::vector<std::pair<long, Valuation>> transcendental_table_attained(
    long p, const HermitianForm& H, long m_max, long prec) {
    return transcendental_table_vs(tilde_a_attained(p, prec), p, H, m_max, prec);
}

} // namespace qeis
