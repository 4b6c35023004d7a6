#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qeis/quaternion.hpp"

using namespace qeis;

namespace {

HurwitzQuaternion e(int i) { return HurwitzQuaternion::unit(i); }

HurwitzQuaternion random_order_element(std::mt19937_64& rng, long box) {
    auto r = [&] { return long(rng() % (2 * box + 1)) - box; };
    return OrderElement::from_basis(r(), r(), r(), r()).value();
}

} // namespace

TEST_CASE("multiplication table of the canonical basis") {
    CHECK(q_mul(e(2), e(3)) == e(4));
    CHECK(q_mul(e(3), e(2)) == -e(4));
    CHECK(q_mul(e(2), e(2)) == -e(1));
    CHECK(q_mul(e(3), e(3)) == -e(1));
    CHECK(q_mul(e(4), e(4)) == -e(1));
    CHECK(q_mul(e(3), e(4)) == e(2));
    CHECK(q_mul(e(4), e(2)) == e(3));
    CHECK(q_mul(e(1), e(4)) == e(4));
}

TEST_CASE("associativity on sampled order elements") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto a = random_order_element(rng, 3), b = random_order_element(rng, 3),
             c = random_order_element(rng, 3);
        CHECK(q_mul(q_mul(a, b), c) == q_mul(a, q_mul(b, c)));
    }
}

TEST_CASE("conjugation is an involutive anti-homomorphism") {
    const HurwitzQuaternion omega = HurwitzQuaternion::omega();
    CHECK(q_conj(omega) == HurwitzQuaternion(1, -1, -1, -1));
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        auto a = random_order_element(rng, 4), b = random_order_element(rng, 4);
        CHECK(q_conj(q_conj(a)) == a);
        CHECK(q_conj(q_mul(a, b)) == q_mul(q_conj(b), q_conj(a)));
    }
}

TEST_CASE("norms") {
    CHECK(q_norm2(e(1)) == 1);
    CHECK(q_norm2(HurwitzQuaternion(1, 1, 0, 0)) == BigRat(1, 2)); // (e1+e2)/2
    CHECK(q_norm2(HurwitzQuaternion::omega()) == 1);
}

TEST_CASE("norm is multiplicative over a 1000-sample sweep") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        auto a = random_order_element(rng, 6), b = random_order_element(rng, 6);
        CHECK(q_norm2(q_mul(a, b)) == q_norm2(a) * q_norm2(b));
    }
}

TEST_CASE("Hurwitz order membership is the doubled-coordinate parity test") {
    CHECK(in_hurwitz(e(2)));
    CHECK(in_hurwitz(HurwitzQuaternion::omega()));
    CHECK_FALSE(in_hurwitz(HurwitzQuaternion(1, 1, 0, 0)));
}

TEST_CASE("order is closed under multiplication") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 500; ++i)
        CHECK(in_hurwitz(q_mul(random_order_element(rng, 5), random_order_element(rng, 5))));
}

TEST_CASE("dual lattice membership and the pairing oracle") {
    CHECK(in_dual(HurwitzQuaternion(1, 1, 0, 0)));
    CHECK_FALSE(in_dual(HurwitzQuaternion(0, 0, 1, 0))); // e3/2
    CHECK(dual_pairing_oracle(HurwitzQuaternion(1, 1, 0, 0)));
    CHECK_FALSE(dual_pairing_oracle(HurwitzQuaternion(1, 0, 0, 0))); // e1/2 vs omega
    CHECK(dual_pairing_oracle(HurwitzQuaternion::zero()));
    // O is contained in its dual
    std::mt19937_64 rng(15);
    for (int i = 0; i < 100; ++i) CHECK(in_dual(random_order_element(rng, 5)));
}

TEST_CASE("in_dual equals the pairing oracle, exhaustively on [-4,4]^4") {
    for (long c1 = -4; c1 <= 4; ++c1)
        for (long c2 = -4; c2 <= 4; ++c2)
            for (long c3 = -4; c3 <= 4; ++c3)
                for (long c4 = -4; c4 <= 4; ++c4) {
                    HurwitzQuaternion q(c1, c2, c3, c4);
                    CHECK(in_dual(q) == dual_pairing_oracle(q));
                }
}

TEST_CASE("products may leave the half-integral lattice") {
    // (e1+e2)/2 * (e1+e3)/2 = (e1+e2+e3+e4)/4
    CHECK_THROWS_AS(q_mul(HurwitzQuaternion(1, 1, 0, 0), HurwitzQuaternion(1, 0, 1, 0)),
                    lattice_error);
}

TEST_CASE("order element certification") {
    CHECK_THROWS_AS(OrderElement(HurwitzQuaternion(1, 1, 0, 0)), lattice_error);
    OrderElement w(HurwitzQuaternion::omega());
    auto coords = w.basis_coords();
    CHECK(coords == std::array<BigInt, 4>{0, 0, 0, 1});
}

TEST_CASE("residues in O/pO over the basis {e1,e2,e3,omega}") {
    CHECK(q_mod(OrderElement(e(1)), 3) == std::array<long, 4>{1, 0, 0, 0});
    CHECK(q_mod(OrderElement(HurwitzQuaternion::omega()), 3) == std::array<long, 4>{0, 0, 0, 1});
    CHECK(q_mod(OrderElement(HurwitzQuaternion(3, 3, 3, 3)), 3) ==
          std::array<long, 4>{0, 0, 0, 0}); // 3 omega
}

TEST_CASE("O/3O has exactly 81 classes (exhaustive)") {
    std::set<std::array<long, 4>> classes;
    for (long x1 = -4; x1 <= 4; ++x1)
        for (long x2 = -4; x2 <= 4; ++x2)
            for (long x3 = -4; x3 <= 4; ++x3)
                for (long x4 = -4; x4 <= 4; ++x4)
                    classes.insert(q_mod(OrderElement::from_basis(x1, x2, x3, x4), 3));
    CHECK(classes.size() == 81);
}

TEST_CASE("the Hurwitz order has 24 units") {
    auto units = hurwitz_units();
    CHECK(units.size() == 24);
    std::set<std::array<BigInt, 4>> distinct;
    for (const auto& u : units) {
        CHECK(in_hurwitz(u));
        CHECK(q_norm2(u) == 1);
        distinct.insert(u.c);
    }
    CHECK(distinct.size() == 24);
}
