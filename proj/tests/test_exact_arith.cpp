#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <thread>
#include <vector>

#include "qeis/bernoulli.hpp"
#include "qeis/divisor.hpp"
#include "qeis/verify.hpp"

using namespace qeis;

namespace {

// independent sigma via the multiplicative closed form
// sigma_k(n) = prod over p^a || n of (p^{k(a+1)} - 1)/(p^k - 1)
BigInt sigma_multiplicative(unsigned long k, unsigned long n) {
    BigRat out = 1;
    for (unsigned long q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        unsigned long a = 0;
        while (n % q == 0) {
            n /= q;
            ++a;
        }
        if (k == 0)
            out *= BigInt(a + 1);
        else
            out *= BigRat(int_pow_ui(q, k * (a + 1)) - 1) / BigRat(int_pow_ui(q, k) - 1);
    }
    if (n > 1) {
        if (k == 0)
            out *= 2;
        else
            out *= BigRat(int_pow_ui(n, 2 * k) - 1) / BigRat(int_pow_ui(n, k) - 1);
    }
    REQUIRE(out.get_den() == 1);
    return out.get_num();
}

} // namespace

TEST_CASE("Bernoulli numbers: pinned values and conventions") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == BigRat(-1, 2));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(2) == BigRat(1, 6));
    CHECK(bernoulli(12) == BigRat(-691, 2730));
    // von Staudt-Clausen at m = 12: 2730 = 2*3*5*7*13
    CHECK(BernoulliTable::von_staudt_clausen_denominator(12) == 2730);
}

TEST_CASE("Bernoulli numbers satisfy the defining recurrence") {
    for (unsigned long m : {1ul, 2ul, 7ul, 20ul, 51ul}) {
        BigRat acc = 0;
        for (unsigned long j = 0; j <= m; ++j)
            acc += BigRat(binomial(m + 1, j)) * bernoulli(j);
        CHECK(acc == 0);
    }
}

TEST_CASE("von Staudt-Clausen denominators up to 200") {
    CHECK(verify_bernoulli(200).ok());
}

TEST_CASE("Bernoulli cache: concurrent readers observe identical values") {
    std::vector<BigRat> seen(8);
    std::vector<std::thread> pool;
    for (int i = 0; i < 8; ++i)
        pool.emplace_back([&seen, i] { seen[static_cast<std::size_t>(i)] = bernoulli(120); });
    for (auto& t : pool) t.join();
    for (const auto& v : seen) CHECK(v == seen[0]);
}

TEST_CASE("sigma on integers and off the positive integers") {
    CHECK(sigma(5, 1) == 1);
    CHECK(sigma(3, 6) == 252); // 1 + 8 + 27 + 216
    CHECK(sigma(1, BigRat(3, 2)) == 0);
    CHECK(sigma(4, 0) == 0);
    CHECK(sigma(4, -8) == 0);
}

TEST_CASE("sigma agrees with the multiplicative closed form") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        unsigned long n = 1 + rng() % 5000;
        unsigned long k = rng() % 6;
        CHECK(sigma(k, BigRat(BigInt(n))) == sigma_multiplicative(k, n));
    }
}

TEST_CASE("sigma_star drops divisors sharing a factor with p") {
    CHECK(sigma_star(1, BigInt(6), 3) == 3); // divisors {1,2} survive
    CHECK(sigma_star(4, BigInt(9), 3) == 1);
    CHECK(sigma_star(3, BigInt(10), 3) == sigma(3, BigRat(10))); // gcd(10,3)=1
    CHECK(sigma_star(2, BigRat(5, 4), 3) == 0);
    CHECK_THROWS_AS(sigma_star(1, BigInt(6), 2), std::domain_error);
    CHECK_THROWS_AS(sigma_star(1, BigInt(6), 9), std::domain_error);
}

TEST_CASE("divisor splitting identity") {
    // both sides enumerate to 1+2+3+6+9+18 = 39
    BigInt lhs = 0;
    for (unsigned long d : divisors(18)) lhs += d;
    CHECK(lhs == 39);
    CHECK(verify_divisor_split([](unsigned long d) { return BigInt(long(d)); }, 6, 3));
    CHECK(verify_divisor_split([](unsigned long) { return BigInt(1); }, 1, 5));
    CHECK(verify_divisor_split([](unsigned long d) { return BigInt(long(d)) * long(d); }, 4, 3));
    for (long p : {3L, 5L, 7L})
        for (unsigned long N = 1; N <= 200; ++N)
            for (unsigned long j = 0; j <= 5; ++j)
                CHECK(verify_divisor_split([j](unsigned long d) { return int_pow_ui(d, j); }, N, p));
}

TEST_CASE("sigma twist identity") {
    // 9 sigma_1(1) - sigma_1(9) = 9 - 13 = -4 = -(1+3) sigma*_1(1)
    CHECK(9 - sigma(1, BigRat(9)) == -4);
    CHECK(verify_sigma_twist(1, 1, 3));
    CHECK(verify_sigma_twist(0, 1, 5));
    CHECK(verify_sigma_twist(3, 10, 3));
    for (long p : {3L, 5L, 7L})
        for (unsigned long N = 1; N <= 120; ++N)
            for (unsigned long m = 0; m <= 6; ++m) CHECK(verify_sigma_twist(m, N, p));
}

TEST_CASE("Kummer quotients: pinned values") {
    CHECK(kummer_lhs(6, 5) == BigRat(-781, 63));
    CHECK(kummer_lhs(2, 3) == BigRat(-1, 6));
    CHECK(kummer_lhs(4, 3) == BigRat(13, 60));
}

TEST_CASE("Kummer valuations") {
    CHECK(kummer_valuation(6, 10, 5) == Valuation::of(1));
    CHECK(kummer_valuation(8, 8, 3).is_infinite());
    // frozen oracle value: the pole branch contributes v_p(k - k2) - 2 here,
    // so the congruence class mod 2*3^3 attains exactly 2
    CHECK(kummer_valuation(4, 58, 3) == Valuation::of(2));
}

TEST_CASE("Kummer minima over the congruence grid, frozen by oracle sweep") {
    // full grid (all even k,k2 <= 200): unbounded below by -1 - v_p(k)
    // because B_k has p in its denominator whenever (p-1) | k
    const std::map<long, std::vector<long>> full = {{3, {-5, -5, -5, -5, -1}},
                                                    {5, {-3, -3, -3}}};
    for (long p : {3L, 5L}) {
        auto minima = kummer_min_valuations(p, 200);
        REQUIRE(minima.size() == full.at(p).size());
        for (std::size_t i = 0; i < minima.size(); ++i)
            CHECK(minima[i].second == Valuation::of(full.at(p)[i]));
        // restricted to p coprime to k and k2 the law is exactly m - 2
        auto restricted = kummer_min_valuations_coprime(p, 200);
        REQUIRE(restricted.size() == minima.size());
        for (const auto& [m, v] : restricted) CHECK(v == Valuation::of(m - 2));
    }
}

TEST_CASE("verify_kummer suite passes") {
    CHECK(verify_kummer(3, 200).ok());
    CHECK(verify_kummer(5, 100).ok());
}

TEST_CASE("valuations on rationals") {
    CHECK(valuation(BigRat(0), 5).is_infinite());
    CHECK(valuation(BigRat(45, 7), 3) == Valuation::of(2));
    CHECK(valuation(BigRat(7, 45), 3) == Valuation::of(-2));
    CHECK(Valuation::of(2) < Valuation::infinite());
    CHECK(Valuation::infinite() >= Valuation::infinite().shifted(1));
}
