#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qeis/hermitian.hpp"
#include "qeis/quaternion.hpp"

namespace qeis {

// Square matrix over the half-integral quaternion lattice; 2n x 2n in block
// form (A B / C D) when representing elements of the modular group.
struct QuaternionMatrix {
    int size = 0;
    std::vector<HurwitzQuaternion> e; // row-major

    QuaternionMatrix() = default;
    explicit QuaternionMatrix(int sz) : size(sz), e(static_cast<std::size_t>(sz) * sz) {}

    HurwitzQuaternion& at(int i, int j) { return e[static_cast<std::size_t>(i) * size + j]; }
    const HurwitzQuaternion& at(int i, int j) const {
        return e[static_cast<std::size_t>(i) * size + j];
    }

    static QuaternionMatrix identity(int sz) {
        QuaternionMatrix m(sz);
        for (int i = 0; i < sz; ++i) m.at(i, i) = HurwitzQuaternion::unit(1);
        return m;
    }

    // J_n, size 2n
    static QuaternionMatrix symplectic_J(int n) {
        QuaternionMatrix m(2 * n);
        for (int i = 0; i < n; ++i) {
            m.at(i, n + i) = HurwitzQuaternion::unit(1);
            m.at(n + i, i) = -HurwitzQuaternion::unit(1);
        }
        return m;
    }

    friend bool operator==(const QuaternionMatrix& a, const QuaternionMatrix& b) {
        return a.size == b.size && a.e == b.e;
    }
};

inline QuaternionMatrix qm_add(const QuaternionMatrix& a, const QuaternionMatrix& b) {
    QuaternionMatrix r(a.size);
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

inline QuaternionMatrix qm_sub(const QuaternionMatrix& a, const QuaternionMatrix& b) {
    QuaternionMatrix r(a.size);
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

inline QuaternionMatrix qm_neg(const QuaternionMatrix& a) {
    QuaternionMatrix r(a.size);
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = -a.e[i];
    return r;
}

inline QuaternionMatrix conj_transpose(const QuaternionMatrix& a) {
    QuaternionMatrix r(a.size);
    for (int i = 0; i < a.size; ++i)
        for (int j = 0; j < a.size; ++j) r.at(i, j) = a.at(j, i).conj();
    return r;
}

// Exact product. Entry sums are accumulated in quadrupled coordinates and
// halved once at the end, so only the final entry needs to lie in (1/2)Z^4.
inline QuaternionMatrix qm_mul(const QuaternionMatrix& a, const QuaternionMatrix& b) {
    QuaternionMatrix r(a.size);
    for (int i = 0; i < a.size; ++i)
        for (int j = 0; j < a.size; ++j) {
            std::array<BigInt, 4> acc{};
            for (int l = 0; l < a.size; ++l) {
                auto t = mul_quadrupled(a.at(i, l), b.at(l, j));
                for (int c = 0; c < 4; ++c) acc[c] += t[c];
            }
            for (int c = 0; c < 4; ++c) {
                if (acc[c] % 2 != 0)
                    throw lattice_error("qm_mul: product entry leaves the half-integral lattice");
                acc[c] /= 2;
            }
            r.at(i, j) = HurwitzQuaternion(acc[0], acc[1], acc[2], acc[3]);
        }
    return r;
}

inline bool entries_in_order(const QuaternionMatrix& a) {
    for (const auto& q : a.e)
        if (!in_hurwitz(q)) return false;
    return true;
}

// every entry in p O
inline bool entries_in_p_order(const QuaternionMatrix& a, long p) {
    for (const auto& q : a.e) {
        if (!in_hurwitz(q)) return false;
        for (int c = 0; c < 4; ++c)
            if (q.c[c] % p != 0) return false;
    }
    return true;
}

// tM-bar J M = J, checked exactly in octupled coordinates so that matrices
// with general half-integral entries never trip a spurious lattice error.
inline bool is_symplectic(const QuaternionMatrix& M) {
    if (M.size % 2 != 0) return false;
    const int n = M.size / 2;
    const QuaternionMatrix J = QuaternionMatrix::symplectic_J(n);
    const QuaternionMatrix Mc = conj_transpose(M);
    const int sz = M.size;
    // JM in quadrupled coordinates
    std::vector<std::array<BigInt, 4>> jm(static_cast<std::size_t>(sz) * sz);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) {
            std::array<BigInt, 4> acc{};
            for (int l = 0; l < sz; ++l) {
                auto t = mul_quadrupled(J.at(i, l), M.at(l, j));
                for (int c = 0; c < 4; ++c) acc[c] += t[c];
            }
            jm[static_cast<std::size_t>(i) * sz + j] = std::move(acc);
        }
    // tM-bar (JM) in octupled coordinates, compared against 4 * J(doubled)
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) {
            std::array<BigInt, 4> acc{};
            for (int l = 0; l < sz; ++l) {
                const Quaternion<BigInt>& x = Mc.at(i, l);
                const auto& y = jm[static_cast<std::size_t>(l) * sz + j];
                Quaternion<BigInt> yq(y[0], y[1], y[2], y[3]);
                auto t = mul_quadrupled(x, yq);
                for (int c = 0; c < 4; ++c) acc[c] += t[c];
            }
            for (int c = 0; c < 4; ++c)
                if (acc[c] != 4 * J.at(i, j).c[c]) return false;
        }
    return true;
}

inline QuaternionMatrix block(const QuaternionMatrix& M, int bi, int bj) {
    const int n = M.size / 2;
    QuaternionMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = M.at(bi * n + i, bj * n + j);
    return r;
}

inline QuaternionMatrix assemble(const QuaternionMatrix& A, const QuaternionMatrix& B,
                                 const QuaternionMatrix& C, const QuaternionMatrix& D) {
    const int n = A.size;
    QuaternionMatrix r(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            r.at(i, j) = A.at(i, j);
            r.at(i, n + j) = B.at(i, j);
            r.at(n + i, j) = C.at(i, j);
            r.at(n + i, n + j) = D.at(i, j);
        }
    return r;
}

// C = O_n mod p M(n, O)
inline bool in_gamma0(const QuaternionMatrix& M, long p) {
    return entries_in_p_order(block(M, 1, 0), p);
}

inline bool is_hermitian_over_order(const QuaternionMatrix& S) {
    return entries_in_order(S) && conj_transpose(S) == S;
}

// Hermitian T as an n x n quaternion matrix
inline QuaternionMatrix hermitian_matrix(const IntegralHermitian& T) {
    if (T.deg == 1) {
        QuaternionMatrix m(1);
        m.at(0, 0) = HurwitzQuaternion::from_integral(T.s, 0, 0, 0);
        return m;
    }
    QuaternionMatrix m(2);
    m.at(0, 0) = HurwitzQuaternion::from_integral(T.s, 0, 0, 0);
    m.at(1, 1) = HurwitzQuaternion::from_integral(T.u, 0, 0, 0);
    m.at(0, 1) = T.t.value();
    m.at(1, 0) = T.t.value().conj();
    return m;
}

// gamma_T = (O -1 / 1 T)
inline QuaternionMatrix gamma_of(const QuaternionMatrix& T) {
    const int n = T.size;
    const QuaternionMatrix one = QuaternionMatrix::identity(n);
    return assemble(QuaternionMatrix(n), qm_neg(one), one, T);
}

// gamma_S^{-1} = (S 1 / -1 O)
inline QuaternionMatrix gamma_inverse_of(const QuaternionMatrix& S) {
    const int n = S.size;
    const QuaternionMatrix one = QuaternionMatrix::identity(n);
    return assemble(S, one, qm_neg(one), QuaternionMatrix(n));
}

// Machine check of the coset-representative construction: S := tD-bar (B + TD)
// must be Hermitian over O, satisfy AS = B + TD mod p M(n,O), and conjugating
// M by gamma_T, gamma_S must land back in Gamma_0(p).
inline bool coset_rep_check(const QuaternionMatrix& M, const QuaternionMatrix& T, long p) {
    const QuaternionMatrix A = block(M, 0, 0), B = block(M, 0, 1), C = block(M, 1, 0),
                           D = block(M, 1, 1);
    const QuaternionMatrix BTD = qm_add(B, qm_mul(T, D));
    const QuaternionMatrix S = qm_mul(conj_transpose(D), BTD);
    if (!is_hermitian_over_order(S)) return false;
    if (!entries_in_p_order(qm_sub(qm_mul(A, S), BTD), p)) return false;

    const QuaternionMatrix P = qm_mul(qm_mul(gamma_of(T), M), gamma_inverse_of(S));
    if (!entries_in_order(P) || !is_symplectic(P) || !in_gamma0(P, p)) return false;

    // cross-check against the closed block formula
    // ( -CS+D  -C / (A+TC)S-(B+TD)  A+TC )
    const QuaternionMatrix ATC = qm_add(A, qm_mul(T, C));
    const QuaternionMatrix expected =
        assemble(qm_add(qm_neg(qm_mul(C, S)), D), qm_neg(C),
                 qm_sub(qm_mul(ATC, S), BTD), ATC);
    return P == expected;
}

// ---- Gamma_0(p) sampling ------------------------------------------------

struct SampledGamma0 {
    QuaternionMatrix M;
    std::string word; // generator word, replayable
};

namespace detail {

// deterministic in [lo, hi]
inline long rnd_range(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

inline QuaternionMatrix random_hermitian_over_order(int n, std::mt19937_64& rng,
                                                    std::ostringstream& word) {
    QuaternionMatrix S(n);
    const long s = rnd_range(rng, -2, 2);
    S.at(0, 0) = HurwitzQuaternion::from_integral(BigInt(s), 0, 0, 0);
    word << s;
    if (n == 2) {
        const long u = rnd_range(rng, -2, 2);
        S.at(1, 1) = HurwitzQuaternion::from_integral(BigInt(u), 0, 0, 0);
        long x[4];
        for (auto& xi : x) xi = rnd_range(rng, -2, 2);
        const OrderElement t = OrderElement::from_basis(x[0], x[1], x[2], x[3]);
        S.at(0, 1) = t.value();
        S.at(1, 0) = t.value().conj();
        word << ',' << u << ",[" << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ']';
    }
    return S;
}

} // namespace detail

// Pseudorandom word in the generators
//   (1 S / 0 1), (1 0 / pS 1), (U 0 / 0 U)     [S Hermitian over O, U a
// monomial matrix of Hurwitz units], hence provably in Gamma_0(p).
inline SampledGamma0 sample_gamma0(int n, long p, std::uint64_t seed, int word_length) {
    if (n != 1 && n != 2) throw std::domain_error("sample_gamma0: degree must be 1 or 2");
    require_odd_prime(p, "sample_gamma0");
    std::mt19937_64 rng(seed);
    const std::vector<HurwitzQuaternion> units = hurwitz_units();
    QuaternionMatrix M = QuaternionMatrix::identity(2 * n);
    std::ostringstream word;
    const QuaternionMatrix one = QuaternionMatrix::identity(n);
    for (int step = 0; step < word_length; ++step) {
        if (step) word << '|';
        QuaternionMatrix G;
        switch (rng() % 3) {
            case 0: {
                word << "T(";
                QuaternionMatrix S = detail::random_hermitian_over_order(n, rng, word);
                word << ')';
                G = assemble(one, S, QuaternionMatrix(n), one);
                break;
            }
            case 1: {
                word << "L(";
                QuaternionMatrix S = detail::random_hermitian_over_order(n, rng, word);
                word << ')';
                QuaternionMatrix pS(n);
                for (std::size_t i = 0; i < pS.e.size(); ++i) pS.e[i] = S.e[i] * BigInt(p);
                G = assemble(one, QuaternionMatrix(n), pS, one);
                break;
            }
            default: {
                // monomial unit block (U 0 / 0 U); tU-bar U = 1 for unit monomials
                QuaternionMatrix U(n);
                word << "U(";
                if (n == 1) {
                    const long i = detail::rnd_range(rng, 0, long(units.size()) - 1);
                    U.at(0, 0) = units[static_cast<std::size_t>(i)];
                    word << i;
                } else {
                    const bool swap = rng() % 2 != 0;
                    const long i = detail::rnd_range(rng, 0, long(units.size()) - 1);
                    const long j = detail::rnd_range(rng, 0, long(units.size()) - 1);
                    U.at(0, swap ? 1 : 0) = units[static_cast<std::size_t>(i)];
                    U.at(1, swap ? 0 : 1) = units[static_cast<std::size_t>(j)];
                    word << (swap ? "x," : "=,") << i << ',' << j;
                }
                word << ')';
                G = assemble(U, QuaternionMatrix(n), QuaternionMatrix(n), U);
                break;
            }
        }
        M = qm_mul(M, G);
    }
    return SampledGamma0{std::move(M), word.str()};
}

// ---- Lemma 2 character sums ----------------------------------------------

enum class CharacterVerdict { Zero, FullMass };

struct CharacterSumResult {
    std::vector<long long> counts; // tally of tau(H,T) mod p
    CharacterVerdict verdict;
};

namespace detail {

inline CharacterSumResult classify_counts(std::vector<long long> counts) {
    long long total = 0;
    for (long long c : counts) total += c;
    if (counts[0] == total) return {std::move(counts), CharacterVerdict::FullMass};
    bool uniform = true;
    for (long long c : counts)
        if (c != counts[0]) uniform = false;
    if (uniform) return {std::move(counts), CharacterVerdict::Zero};
    throw invariant_violation("character_sum: tally neither uniform nor concentrated");
}

inline long to_long_checked(const BigInt& v, const char* where) {
    if (!v.fits_slong_p()) throw infeasible_error(std::string(where) + ": entry too large");
    return v.get_si();
}

} // namespace detail

// Precomputed sweep over Her_n(O)/p Her_n(O); reusable across many H.
class CharacterSweep {
  public:
    CharacterSweep(int n_deg, long p) : deg_(n_deg), p_(p) {
        for (const IntegralHermitian& T : enumerate_quotient(n_deg, p)) {
            std::array<long, 6> r{};
            r[0] = detail::to_long_checked(T.s, "CharacterSweep");
            r[1] = detail::to_long_checked(T.u, "CharacterSweep");
            const auto& c = T.t.value().c;
            for (int i = 0; i < 4; ++i) r[2 + i] = detail::to_long_checked(c[i], "CharacterSweep");
            reps_.push_back(r);
        }
    }

    long prime() const { return p_; }
    int degree() const { return deg_; }
    std::size_t size() const { return reps_.size(); }

    // degree 2
    CharacterSumResult run(const HermitianForm& H) const {
        if (deg_ != 2) throw std::domain_error("CharacterSweep: degree-2 sweep required");
        const long n = detail::to_long_checked(H.n, "character_sum");
        const long m = detail::to_long_checked(H.m, "character_sum");
        long h[4];
        for (int i = 0; i < 4; ++i) h[i] = detail::to_long_checked(H.h.c[i], "character_sum");
        std::vector<long long> counts(static_cast<std::size_t>(p_), 0);
        for (const auto& r : reps_) {
            const long cross = h[0] * r[2] + h[1] * r[3] + h[2] * r[4] + h[3] * r[5];
            if (cross % 2 != 0)
                throw invariant_violation("character_sum: non-integral trace pairing");
            long tau = (n * r[0] + m * r[1] + cross / 2) % p_;
            if (tau < 0) tau += p_;
            ++counts[static_cast<std::size_t>(tau)];
        }
        return detail::classify_counts(std::move(counts));
    }

    // degree 1: H an element of the (scalar) dual lattice
    CharacterSumResult run_deg1(long h) const {
        if (deg_ != 1) throw std::domain_error("CharacterSweep: degree-1 sweep required");
        std::vector<long long> counts(static_cast<std::size_t>(p_), 0);
        for (const auto& r : reps_) {
            long tau = (h * r[0]) % p_;
            if (tau < 0) tau += p_;
            ++counts[static_cast<std::size_t>(tau)];
        }
        return detail::classify_counts(std::move(counts));
    }

  private:
    int deg_;
    long p_;
    std::vector<std::array<long, 6>> reps_;
};

inline CharacterSumResult character_sum(const HermitianForm& H, long p) {
    return CharacterSweep(2, p).run(H);
}

inline CharacterSumResult character_sum_deg1(long h, long p) {
    return CharacterSweep(1, p).run_deg1(h);
}

} // namespace qeis
