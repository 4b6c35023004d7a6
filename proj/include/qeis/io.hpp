#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qeis/eisenstein.hpp"
#include "qeis/hermitian.hpp"
#include "qeis/padic.hpp"
#include "qeis/quaternion.hpp"

namespace qeis {

using json = nlohmann::ordered_json;

// "[c1,c2,c3,c4]" with doubled coordinates: (c1 e1 + c2 e2 + c3 e3 + c4 e4)/2
inline HurwitzQuaternion parse_quaternion_literal(const std::string& s) {
    std::istringstream in(s);
    char ch = 0;
    long c[4];
    in >> ch;
    if (ch != '[') throw std::invalid_argument("quaternion literal must start with '['");
    for (int i = 0; i < 4; ++i) {
        if (!(in >> c[i])) throw std::invalid_argument("bad quaternion literal: " + s);
        in >> ch;
        if (ch != (i == 3 ? ']' : ','))
            throw std::invalid_argument("bad quaternion literal: " + s);
    }
    std::string rest;
    if (in >> rest) throw std::invalid_argument("trailing junk in quaternion literal: " + s);
    return HurwitzQuaternion(BigInt(c[0]), BigInt(c[1]), BigInt(c[2]), BigInt(c[3]));
}

inline std::string format_quaternion(const HurwitzQuaternion& q) {
    std::ostringstream out;
    out << '[' << q.c[0] << ',' << q.c[1] << ',' << q.c[2] << ',' << q.c[3] << ']';
    return out.str();
}

// "n,m,[c1,c2,c3,c4]"
inline HermitianForm parse_hermitian_literal(const std::string& s) {
    auto first = s.find(',');
    auto second = s.find(',', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::invalid_argument("Hermitian literal must be n,m,[c1,c2,c3,c4]");
    long n = 0, m = 0;
    try {
        n = std::stol(s.substr(0, first));
        m = std::stol(s.substr(first + 1, second - first - 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad diagonal in Hermitian literal: " + s);
    }
    return HermitianForm(BigInt(n), BigInt(m), parse_quaternion_literal(s.substr(second + 1)));
}

inline std::string format_hermitian(const HermitianForm& H) {
    std::ostringstream out;
    out << H.n << ',' << H.m << ',' << format_quaternion(H.h);
    return out.str();
}

namespace detail {
inline long long json_int(const BigInt& v) {
    if (!v.fits_slong_p()) throw infeasible_error("hermitian_to_json: entry too large");
    return v.get_si();
}
} // namespace detail

inline json hermitian_to_json(const HermitianForm& H) {
    json j;
    j["n"] = detail::json_int(H.n);
    j["m"] = detail::json_int(H.m);
    j["h2"] = json::array();
    for (int i = 0; i < 4; ++i) j["h2"].push_back(detail::json_int(H.h.c[i]));
    return j;
}

inline HermitianForm hermitian_from_json(const json& j) {
    const auto& h2 = j.at("h2");
    if (!h2.is_array() || h2.size() != 4)
        throw std::invalid_argument("Hermitian JSON: h2 must be a 4-element array");
    return HermitianForm(BigInt(j.at("n").get<long>()), BigInt(j.at("m").get<long>()),
                         HurwitzQuaternion(BigInt(h2[0].get<long>()), BigInt(h2[1].get<long>()),
                                           BigInt(h2[2].get<long>()),
                                           BigInt(h2[3].get<long>())));
}

// JSON Lines: one record per key, canonical order, big integers as decimal
// strings so arbitrary precision survives any consumer.
inline void write_expansion(std::ostream& out, const QExpansion& F) {
    for (const auto& [H, c] : F.entries()) {
        json j;
        j["H"] = hermitian_to_json(H);
        j["num"] = c.get_num().get_str();
        j["den"] = c.get_den().get_str();
        out << j.dump() << '\n';
    }
}

inline std::vector<QExpansion::Entry> read_expansion_entries(std::istream& in) {
    std::vector<QExpansion::Entry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        BigRat c(BigInt(std::string(j.at("num").get<std::string>())),
                 BigInt(std::string(j.at("den").get<std::string>())));
        c.canonicalize();
        entries.emplace_back(hermitian_from_json(j.at("H")), c);
    }
    return entries;
}

// "p^v * u mod p^(v+N)"
inline std::string padic_to_string(const PadicNumber& x) {
    std::ostringstream out;
    const long p = x.prime();
    if (x.is_exact_zero()) {
        out << "0 (exact)";
    } else if (!x.is_unit_form()) {
        out << "0 mod " << p << '^' << x.abs_precision();
    } else {
        out << p << '^' << x.valuation().get() << " * " << x.unit_part() << " mod " << p << '^'
            << x.abs_precision();
    }
    return out.str();
}

// base-p digits of the unit part, least significant first
inline std::string padic_digits_string(const PadicNumber& x) {
    if (!x.is_unit_form()) return "";
    std::ostringstream out;
    bool first = true;
    for (int d : x.unit_digits()) {
        if (!first) out << ',';
        out << d;
        first = false;
    }
    return out.str();
}

inline json padic_to_json(const PadicNumber& x) {
    json j;
    j["p"] = x.prime();
    if (x.is_exact_zero()) {
        j["val"] = nullptr;
        j["unit"] = "0";
        j["prec"] = nullptr;
    } else if (!x.is_unit_form()) {
        j["val"] = nullptr;
        j["unit"] = "0";
        j["prec"] = x.abs_precision();
    } else {
        j["val"] = x.valuation().get();
        j["unit"] = x.unit_part().get_str();
        j["prec"] = x.rel_precision();
    }
    return j;
}

} // namespace qeis
