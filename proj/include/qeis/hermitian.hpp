#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qeis/quaternion.hpp"
#include "qeis/rational.hpp"

namespace qeis {

// H = [[n, h], [conj(h), m]] in Her_2^tau(O): integral diagonal, off-diagonal
// in the trace-dual O^#. two_det(H) = 2(nm - N(h)) is then always an integer.
struct HermitianForm {
    BigInt n;
    BigInt m;
    HurwitzQuaternion h;

    HermitianForm() = default;
    HermitianForm(BigInt n_, BigInt m_, HurwitzQuaternion h_)
        : n(std::move(n_)), m(std::move(m_)), h(std::move(h_)) {
        if (!in_dual(h))
            throw lattice_error("HermitianForm: off-diagonal entry not in the dual lattice O^#");
    }

    static HermitianForm diag(long n_, long m_) {
        return HermitianForm(BigInt(n_), BigInt(m_), HurwitzQuaternion::zero());
    }
    static HermitianForm zero() { return diag(0, 0); }

    bool is_zero() const { return n == 0 && m == 0 && h.is_zero(); }
    BigInt trace() const { return n + m; }

    friend bool operator==(const HermitianForm& a, const HermitianForm& b) {
        return a.n == b.n && a.m == b.m && a.h == b.h;
    }
    friend bool operator!=(const HermitianForm& a, const HermitianForm& b) { return !(a == b); }
};

inline BigInt two_det(const HermitianForm& H) {
    BigInt num = 4 * H.n * H.m - norm2_x4(H.h);
    if (num % 2 != 0)
        throw invariant_violation("two_det: 2 det(H) not integral; dual-lattice invariant broken");
    return num / 2;
}

inline bool is_psd(const HermitianForm& H) {
    return H.n >= 0 && H.m >= 0 && two_det(H) >= 0;
}

inline void require_psd(const HermitianForm& H, const char* where) {
    if (!is_psd(H))
        throw std::domain_error(std::string(where) + ": form is not positive semidefinite");
}

// 0 for the zero form, 1 on the boundary two_det = 0, 2 in the interior
inline int rank(const HermitianForm& H) {
    require_psd(H, "rank");
    if (H.is_zero()) return 0;
    return two_det(H) == 0 ? 1 : 2;
}

// content: the largest d >= 1 with d^{-1} H still in Her_2^tau(O)
inline BigInt epsilon(const HermitianForm& H) {
    if (H.is_zero()) throw std::domain_error("epsilon: undefined for the zero form");
    BigInt g = gcd(abs(H.n), abs(H.m));
    for (int i = 0; i < 4; ++i) g = gcd(g, abs(H.h.c[i]));
    // divisors of g, largest first, first one whose quotient stays in O^#
    unsigned long gl = g.fits_ulong_p() ? g.get_ui() : 0;
    if (gl == 0) throw infeasible_error("epsilon: content too large");
    for (unsigned long d = gl;; --d) {
        if (gl % d) continue;
        HurwitzQuaternion hd(H.h.c[0] / long(d), H.h.c[1] / long(d), H.h.c[2] / long(d),
                             H.h.c[3] / long(d));
        if (in_dual(hd)) return BigInt(d);
    }
}

inline HermitianForm scale(const HermitianForm& H, const BigInt& d) {
    if (d <= 0) throw std::domain_error("scale: factor must be positive");
    return HermitianForm(H.n * d, H.m * d, H.h * d);
}

// entrywise division; throws unless d^{-1} H lies in Her_2^tau(O)
inline HermitianForm divide_exact(const HermitianForm& H, const BigInt& d) {
    if (d <= 0) throw std::domain_error("divide_exact: divisor must be positive");
    if (H.n % d != 0 || H.m % d != 0)
        throw lattice_error("divide_exact: diagonal not divisible");
    for (int i = 0; i < 4; ++i)
        if (H.h.c[i] % d != 0) throw lattice_error("divide_exact: off-diagonal not divisible");
    HurwitzQuaternion hd(H.h.c[0] / d, H.h.c[1] / d, H.h.c[2] / d, H.h.c[3] / d);
    if (!in_dual(hd)) throw lattice_error("divide_exact: quotient leaves the dual lattice");
    return HermitianForm(H.n / d, H.m / d, hd);
}

inline bool in_p_dual(const HermitianForm& H, long p) {
    if (H.n % p != 0 || H.m % p != 0) return false;
    for (int i = 0; i < 4; ++i)
        if (H.h.c[i] % p != 0) return false;
    HurwitzQuaternion hd(H.h.c[0] / p, H.h.c[1] / p, H.h.c[2] / p, H.h.c[3] / p);
    return in_dual(hd);
}

// Element of Her_n(O) (integral diagonal, off-diagonal in O); deg 1 uses s only.
struct IntegralHermitian {
    int deg = 2;
    BigInt s;
    BigInt u;
    OrderElement t = OrderElement::zero();
};

// tau(H, T) = n s + m u + 2 Re(h conj(t)): an exact integer by duality
inline BigInt tau_pair(const HermitianForm& H, const IntegralHermitian& T) {
    if (T.deg != 2) throw std::domain_error("tau_pair: degree-2 representative required");
    BigInt cross = re_prod_x4(H.h, T.t.value());
    if (cross % 2 != 0)
        throw invariant_violation("tau_pair: non-integral pairing; dual-lattice invariant broken");
    return H.n * T.s + H.m * T.u + cross / 2;
}

// total order behind canonical q-expansion keys:
// lexicographic on (n+m, n, doubled coordinates of h)
inline int canonical_compare(const HermitianForm& a, const HermitianForm& b) {
    int c = cmp(a.trace(), b.trace());
    if (c) return c;
    c = cmp(a.n, b.n);
    if (c) return c;
    for (int i = 0; i < 4; ++i) {
        c = cmp(a.h.c[i], b.h.c[i]);
        if (c) return c;
    }
    return 0;
}

inline bool canonical_less(const HermitianForm& a, const HermitianForm& b) {
    return canonical_compare(a, b) < 0;
}

namespace detail {
inline long isqrt_ll(long long v) {
    if (v < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return static_cast<long>(r);
}
} // namespace detail

// All H >= 0 in Her_2^tau(O) with n + m <= trace_bound, in canonical order,
// duplicate-free. For each (n, m), h ranges over O^# with 4 N(h) <= 4 n m.
inline std::vector<HermitianForm> enumerate_psd(long trace_bound) {
    if (trace_bound < 0) throw std::domain_error("enumerate_psd: negative trace bound");
    std::vector<HermitianForm> out;
    for (long s = 0; s <= trace_bound; ++s) {
        for (long n = 0; n <= s; ++n) {
            const long m = s - n;
            const long long cap = 4LL * n * m;
            if (cap == 0) {
                out.push_back(HermitianForm::diag(n, m));
                continue;
            }
            const long L1 = detail::isqrt_ll(cap);
            for (long c1 = -L1; c1 <= L1; ++c1) {
                const long long r1 = cap - 1LL * c1 * c1;
                const long L2 = detail::isqrt_ll(r1);
                for (long c2 = -L2; c2 <= L2; ++c2) {
                    const long long r2 = r1 - 1LL * c2 * c2;
                    const long L3 = detail::isqrt_ll(r2);
                    for (long c3 = -L3; c3 <= L3; ++c3) {
                        const long long r3 = r2 - 1LL * c3 * c3;
                        const long L4 = detail::isqrt_ll(r3);
                        for (long c4 = -L4; c4 <= L4; ++c4) {
                            if ((c1 + c2 + c3 + c4) % 2 != 0) continue;
                            out.emplace_back(BigInt(n), BigInt(m),
                                             HurwitzQuaternion(c1, c2, c3, c4));
                        }
                    }
                }
            }
        }
    }
    return out;
}

// Representatives of Her_n(O)/p Her_n(O): p classes for n = 1, p^6 for n = 2
// (diagonal entries in [0,p), t over the p^4 classes of O/pO in the basis
// {e1, e2, e3, omega}). Deterministic order.
inline std::vector<IntegralHermitian> enumerate_quotient(int n_deg, long p) {
    if (n_deg != 1 && n_deg != 2) throw std::domain_error("enumerate_quotient: degree must be 1 or 2");
    require_odd_prime(p, "enumerate_quotient");
    if (n_deg == 2 && p > 13)
        throw infeasible_error("enumerate_quotient: p^6 classes exceed the desk-scale envelope");
    std::vector<IntegralHermitian> out;
    if (n_deg == 1) {
        for (long s = 0; s < p; ++s)
            out.push_back(IntegralHermitian{1, BigInt(s), BigInt(0), OrderElement::zero()});
        return out;
    }
    out.reserve(static_cast<std::size_t>(p) * p * p * p * p * p);
    for (long s = 0; s < p; ++s)
        for (long u = 0; u < p; ++u)
            for (long x1 = 0; x1 < p; ++x1)
                for (long x2 = 0; x2 < p; ++x2)
                    for (long x3 = 0; x3 < p; ++x3)
                        for (long x4 = 0; x4 < p; ++x4)
                            out.push_back(IntegralHermitian{
                                2, BigInt(s), BigInt(u),
                                OrderElement::from_basis(x1, x2, x3, x4)});
    return out;
}

} // namespace qeis
