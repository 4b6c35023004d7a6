#pragma once

#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "qeis/rational.hpp"

namespace qeis {

// Exact Bernoulli numbers under the B_1 = -1/2 convention, computed by the
// defining recurrence sum_{j=0..m} C(m+1,j) B_j = 0 and cached. The cache
// behaves as if each entry were computed exactly once; concurrent readers
// observe identical values.
class BernoulliTable {
  public:
    static BigRat get(unsigned long m) {
        Impl& t = impl();
        std::lock_guard<std::mutex> lock(t.mu);
        t.extend(m);
        return t.cache[m];
    }

    static unsigned long computed_upto() {
        Impl& t = impl();
        std::lock_guard<std::mutex> lock(t.mu);
        return t.cache.empty() ? 0 : t.cache.size() - 1;
    }

    // Optional disk cache ("m<TAB>num/den" per line). Entries failing the
    // von Staudt-Clausen denominator check are rejected wholesale, so a stale
    // or corrupted file can only cost a recomputation, never poison results.
    static bool load_cache(const std::string& path) {
        std::ifstream in(path);
        if (!in) return false;
        std::vector<BigRat> loaded;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos) return false;
            BigRat v;
            try {
                if (std::stoul(line.substr(0, tab)) != loaded.size()) return false;
                v = rat_from_string(line.substr(tab + 1));
            } catch (const std::exception&) {
                return false;
            }
            loaded.push_back(v);
        }
        if (loaded.empty() || !validate(loaded)) return false;
        Impl& t = impl();
        std::lock_guard<std::mutex> lock(t.mu);
        if (loaded.size() > t.cache.size()) t.cache = std::move(loaded);
        return true;
    }

    static bool save_cache(const std::string& path) {
        Impl& t = impl();
        std::lock_guard<std::mutex> lock(t.mu);
        std::ofstream out(path, std::ios::trunc);
        if (!out) return false;
        for (unsigned long m = 0; m < t.cache.size(); ++m)
            out << m << '\t' << rat_to_string(t.cache[m]) << '\n';
        return bool(out);
    }

    // denominator of B_m for even m >= 2: product of primes q with (q-1) | m
    static BigInt von_staudt_clausen_denominator(unsigned long m) {
        BigInt d = 1;
        for (unsigned long q = 2; q <= m + 1; ++q)
            if (is_small_prime(long(q)) && m % (q - 1) == 0) d *= q;
        return d;
    }

  private:
    struct Impl {
        std::mutex mu;
        std::vector<BigRat> cache;

        void extend(unsigned long m) {
            if (cache.empty()) cache.emplace_back(1); // B_0
            while (cache.size() <= m) {
                unsigned long n = cache.size();
                if (n >= 3 && n % 2 == 1) {
                    cache.emplace_back(0);
                    continue;
                }
                BigRat acc = 0;
                for (unsigned long j = 0; j < n; ++j) {
                    if (j >= 3 && j % 2 == 1) continue;
                    acc += BigRat(binomial(n + 1, j)) * cache[j];
                }
                acc /= BigInt(n + 1);
                cache.emplace_back(-acc);
            }
        }
    };

    static bool validate(const std::vector<BigRat>& v) {
        if (v[0] != 1) return false;
        for (unsigned long m = 1; m < v.size(); ++m) {
            if (m == 1) {
                if (v[1] != BigRat(-1, 2)) return false;
            } else if (m % 2 == 1) {
                if (v[m] != 0) return false;
            } else {
                if (v[m].get_den() != von_staudt_clausen_denominator(m)) return false;
            }
        }
        return true;
    }

    static Impl& impl() {
        static Impl instance;
        return instance;
    }
};

inline BigRat bernoulli(unsigned long m) { return BernoulliTable::get(m); }

} // namespace qeis
