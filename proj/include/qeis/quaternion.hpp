#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qeis/rational.hpp"

namespace qeis {

// Quaternion over the half-integral lattice (1/2)Z^4, stored via doubled
// coordinates: the value is (c[0] e1 + c[1] e2 + c[2] e3 + c[3] e4) / 2 with
// e1 = 1, e4 = e2 e3 = -e3 e2, e2^2 = e3^2 = -1. Doubling keeps every lattice
// membership test an integer parity test.
template <class I>
struct Quaternion {
    std::array<I, 4> c{};

    Quaternion() = default;
    // doubled coordinates
    Quaternion(I c1, I c2, I c3, I c4) : c{std::move(c1), std::move(c2), std::move(c3), std::move(c4)} {}

    static Quaternion zero() { return Quaternion(); }
    // e_i, i in 1..4
    static Quaternion unit(int i) {
        Quaternion q;
        q.c[i - 1] = I(2);
        return q;
    }
    static Quaternion omega() { return Quaternion(I(1), I(1), I(1), I(1)); }
    // a1 e1 + a2 e2 + a3 e3 + a4 e4 with integral a_i
    static Quaternion from_integral(const I& a1, const I& a2, const I& a3, const I& a4) {
        return Quaternion(a1 * 2, a2 * 2, a3 * 2, a4 * 2);
    }

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

    Quaternion conj() const { return Quaternion(c[0], -c[1], -c[2], -c[3]); }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return Quaternion(a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]);
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return Quaternion(a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]);
    }
    Quaternion operator-() const { return Quaternion(-c[0], -c[1], -c[2], -c[3]); }

    // scaling by an integer
    friend Quaternion operator*(const Quaternion& a, const I& s) {
        return Quaternion(a.c[0] * s, a.c[1] * s, a.c[2] * s, a.c[3] * s);
    }

    friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.c == b.c; }
    friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }
};

// Exact product in quadrupled coordinates: for a, b in doubled coordinates
// the array below holds 4 * (a*b), always integral. Callers divide by 2 to
// return to doubled coordinates when the product stays in the lattice.
template <class I>
std::array<I, 4> mul_quadrupled(const Quaternion<I>& a, const Quaternion<I>& b) {
    const auto& x = a.c;
    const auto& y = b.c;
    return {
        x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
        x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
        x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
        x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0],
    };
}

template <class I>
Quaternion<I> q_add(const Quaternion<I>& a, const Quaternion<I>& b) { return a + b; }

// Exact product; throws if it leaves (1/2)Z^4 (possible for general
// half-integral factors, never for factors in the Hurwitz order).
template <class I>
Quaternion<I> q_mul(const Quaternion<I>& a, const Quaternion<I>& b) {
    std::array<I, 4> q = mul_quadrupled(a, b);
    for (const I& v : q)
        if (v % 2 != 0)
            throw lattice_error("q_mul: exact product leaves the half-integral lattice");
    return Quaternion<I>(q[0] / 2, q[1] / 2, q[2] / 2, q[3] / 2);
}

template <class I>
Quaternion<I> q_conj(const Quaternion<I>& a) { return a.conj(); }

// 4 N(a) = sum of squared doubled coordinates
template <class I>
I norm2_x4(const Quaternion<I>& a) {
    return a.c[0] * a.c[0] + a.c[1] * a.c[1] + a.c[2] * a.c[2] + a.c[3] * a.c[3];
}

// 4 Re(a * conj(b)) = dot product of doubled coordinates
template <class I>
I re_prod_x4(const Quaternion<I>& a, const Quaternion<I>& b) {
    return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

using HurwitzQuaternion = Quaternion<BigInt>;

inline BigRat q_norm2(const HurwitzQuaternion& a) { return BigRat(norm2_x4(a)) / 4; }

// Hurwitz order membership: doubled coordinates all even or all odd
template <class I>
bool in_hurwitz(const Quaternion<I>& a) {
    bool odd0 = (a.c[0] % 2) != 0;
    for (int i = 1; i < 4; ++i)
        if (((a.c[i] % 2) != 0) != odd0) return false;
    return true;
}

// Membership in the trace-dual O^# of the Hurwitz order: even coordinate sum.
// This characterization is validated against dual_pairing_oracle by tests.
template <class I>
bool in_dual(const Quaternion<I>& a) {
    return (a.c[0] + a.c[1] + a.c[2] + a.c[3]) % 2 == 0;
}

// Literal pairing test: 2 Re(a * conj(t)) integral for t over the lattice
// basis {e1, e2, e3, omega} of O. Independent route used to validate in_dual.
template <class I>
bool dual_pairing_oracle(const Quaternion<I>& a) {
    const Quaternion<I> basis[4] = {Quaternion<I>::unit(1), Quaternion<I>::unit(2),
                                    Quaternion<I>::unit(3), Quaternion<I>::omega()};
    for (const auto& t : basis) {
        // 2 Re(a conj(t)) = re_prod_x4 / 2
        if (re_prod_x4(a, t) % 2 != 0) return false;
    }
    return true;
}

// A quaternion certified to lie in the Hurwitz order O.
class OrderElement {
  public:
    explicit OrderElement(HurwitzQuaternion q) : q_(std::move(q)) {
        if (!in_hurwitz(q_)) throw lattice_error("OrderElement: not in the Hurwitz order");
    }
    static OrderElement zero() { return OrderElement(HurwitzQuaternion::zero()); }

    const HurwitzQuaternion& value() const { return q_; }

    // coordinates in the integral basis {e1, e2, e3, omega}
    std::array<BigInt, 4> basis_coords() const {
        const auto& c = q_.c;
        return {(c[0] - c[3]) / 2, (c[1] - c[3]) / 2, (c[2] - c[3]) / 2, c[3]};
    }

    // from basis coordinates x1 e1 + x2 e2 + x3 e3 + x4 omega
    static OrderElement from_basis(const BigInt& x1, const BigInt& x2, const BigInt& x3,
                                   const BigInt& x4) {
        return OrderElement(
            HurwitzQuaternion(2 * x1 + x4, 2 * x2 + x4, 2 * x3 + x4, x4));
    }

    friend bool operator==(const OrderElement& a, const OrderElement& b) { return a.q_ == b.q_; }

  private:
    HurwitzQuaternion q_;
};

// residue class of a in O/pO over the basis {e1, e2, e3, omega}, entries in [0, p)
inline std::array<long, 4> q_mod(const OrderElement& a, long p) {
    if (p < 2) throw std::domain_error("q_mod: modulus must be >= 2");
    std::array<long, 4> r{};
    auto x = a.basis_coords();
    for (int i = 0; i < 4; ++i) {
        BigInt m = x[i] % p;
        if (m < 0) m += p;
        r[i] = long(m.get_si());
    }
    return r;
}

// the 24 units of the Hurwitz order: +-e_i and (+-1 +-e2 +-e3 +-e4)/2
inline std::vector<HurwitzQuaternion> hurwitz_units() {
    std::vector<HurwitzQuaternion> u;
    for (int i = 1; i <= 4; ++i) {
        u.push_back(HurwitzQuaternion::unit(i));
        u.push_back(-HurwitzQuaternion::unit(i));
    }
    for (int s0 = -1; s0 <= 1; s0 += 2)
        for (int s1 = -1; s1 <= 1; s1 += 2)
            for (int s2 = -1; s2 <= 1; s2 += 2)
                for (int s3 = -1; s3 <= 1; s3 += 2)
                    u.push_back(HurwitzQuaternion(s0, s1, s2, s3));
    return u;
}

} // namespace qeis
