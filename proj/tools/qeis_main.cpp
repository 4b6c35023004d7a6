// Command-line surface for the quaternionic Eisenstein toolkit: exact Fourier
// coefficients, q-expansion files, p-adic limit tables, and the verification
// suites. Exit codes: 0 success, 1 a verification suite failed, 2 bad
// invocation or domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qeis/qeis.hpp"

namespace {

using qeis::json;

std::string fmt;

void emit(const json& j, const std::string& human, const std::string& csv) {
    if (fmt == "json")
        std::cout << j.dump() << '\n';
    else if (fmt == "csv")
        std::cout << csv;
    else
        std::cout << human;
}

json valuation_json(const qeis::Valuation& v) {
    if (v.is_infinite()) return nullptr;
    return v.get();
}

std::string bernoulli_cache_file() {
    const char* dir = std::getenv("QEIS_BERNOULLI_CACHE");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/bernoulli.tsv";
}

int run_coeff(long k, const std::string& h_lit, std::optional<long> p) {
    const qeis::HermitianForm H = qeis::parse_hermitian_literal(h_lit);
    const qeis::BigRat a = qeis::a_coeff(k, H);
    const qeis::BigRat b = qeis::b_coeff(k, H);
    json j;
    j["k"] = k;
    j["H"] = qeis::hermitian_to_json(H);
    j["a"] = qeis::rat_to_string(a);
    j["b"] = qeis::rat_to_string(b);
    std::string human = "a = " + qeis::rat_to_string(a) + "\nb = " + qeis::rat_to_string(b) + "\n";
    std::string csv = "a," + qeis::rat_to_string(a) + "\nb," + qeis::rat_to_string(b) + "\n";
    if (p) {
        const qeis::BigRat A = qeis::A_coeff(k, *p, H);
        j["p"] = *p;
        j["A"] = qeis::rat_to_string(A);
        human += "A = " + qeis::rat_to_string(A) + "\n";
        csv += "A," + qeis::rat_to_string(A) + "\n";
    }
    emit(j, human, csv);
    return 0;
}

int run_expand(long k, std::optional<long> p, const std::string& series, long bound,
               const std::string& out_path) {
    if (series == "gstar" && !p)
        throw std::domain_error("expand: --series gstar requires -p");
    const qeis::QExpansion F =
        series == "gstar" ? qeis::expand_A(k, *p, bound) : qeis::expand_b(k, bound);
    if (out_path.empty()) {
        qeis::write_expansion(std::cout, F);
    } else {
        std::ofstream out(out_path, std::ios::trunc | std::ios::binary);
        if (!out) throw std::domain_error("expand: cannot open output file " + out_path);
        qeis::write_expansion(out, F);
    }
    return 0;
}

int run_limit(long k, long p, const std::string& h_lit, long m_max) {
    const qeis::HermitianForm H = qeis::parse_hermitian_literal(h_lit);
    const auto rows = qeis::convergence_table(k, p, H, m_max);
    const qeis::WeightSequence ks{k, p};
    json j;
    j["k"] = k;
    j["p"] = p;
    j["H"] = qeis::hermitian_to_json(H);
    j["rows"] = json::array();
    std::string human = "m\tk_m\tv_" + std::to_string(p) + "(b_{k_m}(H) - A_k(H))\n";
    std::string csv = "m,weight,valuation\n";
    for (const auto& [m, v] : rows) {
        const long km = ks.weight(m);
        j["rows"].push_back({{"m", m}, {"weight", km}, {"val", valuation_json(v)}});
        human += std::to_string(m) + '\t' + std::to_string(km) + '\t' + v.str() + '\n';
        csv += std::to_string(m) + ',' + std::to_string(km) + ',' + v.str() + '\n';
    }
    emit(j, human, csv);
    return 0;
}

int run_tilde(long p, const std::string& h_lit, long m_max, long prec) {
    const qeis::HermitianForm H = qeis::parse_hermitian_literal(h_lit);
    qeis::require_transcendental_form(H, "tilde");
    const qeis::PadicNumber tilde = qeis::tilde_a_value(p, prec);
    const qeis::BigInt base = qeis::int_pow_ui(2, static_cast<unsigned long>(p - 1));
    const long w = qeis::valuation_int(base - 1, p);
    const qeis::PadicNumber lg = qeis::padic_log(
        qeis::PadicNumber::from_rational(qeis::BigRat(base), p, prec + w + 8));
    const qeis::PadicNumber residual =
        tilde * lg + qeis::PadicNumber::from_rational(qeis::BigRat(48 * p), p, prec + w + 8);
    const long res_bound = residual.val_lower_bound();

    const qeis::PadicNumber attained = qeis::tilde_a_attained(p, prec);
    const qeis::PadicNumber att_residual =
        attained * qeis::PadicNumber::from_rational(qeis::BigRat(1 - p), p, prec + w + 8) * lg +
        qeis::PadicNumber::from_rational(qeis::BigRat(48 * p), p, prec + w + 8);

    json j;
    j["p"] = p;
    j["H"] = qeis::hermitian_to_json(H);
    j["tilde_a"] = qeis::padic_to_json(tilde);
    j["digits"] = qeis::padic_digits_string(tilde);
    j["residual_val_lower_bound"] = res_bound;
    j["attained_limit"] = qeis::padic_to_json(attained);
    j["attained_digits"] = qeis::padic_digits_string(attained);
    j["attained_residual_val_lower_bound"] = att_residual.val_lower_bound();
    std::string human = "tilde_a = " + qeis::padic_to_string(tilde) + "\n" +
                        "digits (least significant first) = " + qeis::padic_digits_string(tilde) +
                        "\n" + "v_" + std::to_string(p) + "(tilde_a * log_p(2^(p-1)) + 48p) >= " +
                        std::to_string(res_bound) + "\n" +
                        "attained limit = " + qeis::padic_to_string(attained) +
                        "  [= tilde_a / (1-p); the sequence converges to this value]\n";
    std::string csv = "m,weight,valuation_vs_tilde_a,valuation_vs_attained\n";
    if (m_max > 0) {
        const auto rows = qeis::transcendental_table(p, H, m_max, prec);
        const auto rows_att = qeis::transcendental_table_attained(p, H, m_max, prec);
        const qeis::WeightSequence ks{2, p};
        j["rows"] = json::array();
        human += "m\tk_m\tv(a_{k_m}(H) - tilde_a)\tv(a_{k_m}(H) - attained)\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& [m, v] = rows[i];
            const auto& va = rows_att[i].second;
            const long km = ks.weight(m);
            j["rows"].push_back({{"m", m},
                                 {"weight", km},
                                 {"val", valuation_json(v)},
                                 {"val_attained", valuation_json(va)}});
            human += std::to_string(m) + '\t' + std::to_string(km) + '\t' + v.str() + '\t' +
                     va.str() + '\n';
            csv += std::to_string(m) + ',' + std::to_string(km) + ',' + v.str() + ',' + va.str() +
                   '\n';
        }
    }
    emit(j, human, csv);
    return 0;
}

int run_verify(const std::string& suite, long k, long p, long bound, int n_deg, long kmax,
               long samples, unsigned long long seed, long prec, long nmax, long mmax) {
    qeis::VerifyReport r;
    if (suite == "bernoulli") {
        r = qeis::verify_bernoulli(kmax);
    } else if (suite == "divisor") {
        r = qeis::verify_divisor(nmax, mmax);
    } else if (suite == "kummer") {
        r = qeis::verify_kummer(p, kmax);
    } else if (suite == "lemma2") {
        r = qeis::verify_lemma2(n_deg, p, bound);
    } else if (suite == "coset") {
        r = qeis::verify_coset(n_deg, p, samples, seed);
    } else if (suite == "gstar") {
        r = qeis::verify_gstar(k, p, bound);
    } else if (suite == "leopoldt") {
        r = qeis::verify_leopoldt();
    } else if (suite == "padic") {
        r = qeis::verify_padic({3, 5, 7}, samples, seed, prec);
    } else {
        throw CLI::ValidationError("verify", "unknown suite: " + suite);
    }
    json j;
    j["check"] = r.check;
    for (const auto& [key, value] : r.params) j[key] = value;
    j["cases"] = r.cases;
    j["failures"] = r.failures;
    if (!r.notes.empty()) j["notes"] = r.notes;
    std::string human = r.check + ": " + std::to_string(r.cases) + " cases, " +
                        std::to_string(r.failures) + " failures\n";
    for (const auto& note : r.notes) human += "  " + note + "\n";
    std::string csv = "check,cases,failures\n" + r.check + ',' + std::to_string(r.cases) + ',' +
                      std::to_string(r.failures) + '\n';
    emit(j, human, csv);
    return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with degree-2 quaternionic Eisenstein series"};
    app.require_subcommand(1);
    app.add_option("--format", fmt, "output format: json|csv|human")
        ->default_val("human")
        ->check(CLI::IsMember({"json", "csv", "human"}));

    long k = 8, p = 3, bound = 1, m_max = 4, prec = 12, kmax = 200, samples = 200;
    long nmax = 1000, mmax = 10;
    int n_deg = 2;
    unsigned long long seed = 20240901;
    std::string h_lit = "0,0,[0,0,0,0]";
    std::string h0_lit = "1,1,[1,1,0,0]";
    std::string series = "b", out_path, suite;
    bool has_p = false;

    auto* coeff = app.add_subcommand("coeff", "a_k(H), b_k(H) and, with -p, A_k(H)");
    coeff->fallthrough();
    coeff->add_option("-k", k, "even weight >= 4")->required();
    coeff->add_option("-H", h_lit, "Hermitian form literal n,m,[c1,c2,c3,c4]")->required();
    auto* coeff_p = coeff->add_option("-p", p, "odd prime");
    coeff->callback([&] { has_p = coeff_p->count() > 0; });

    auto* expand = app.add_subcommand("expand", "write a q-expansion as JSON Lines");
    expand->fallthrough();
    expand->add_option("-k", k, "even weight >= 4")->required();
    expand->add_option("-B,--bound", bound, "trace bound")->required();
    expand->add_option("-p", p, "odd prime (for --series gstar)");
    expand->add_option("--series", series, "series: b (normalized Eisenstein) or gstar")
        ->check(CLI::IsMember({"b", "gstar"}));
    expand->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* limit = app.add_subcommand("limit", "valuations of b_{k_m}(H) - A_k(H)");
    limit->fallthrough();
    limit->add_option("-k", k, "base weight")->required();
    limit->add_option("-p", p, "odd prime")->required();
    limit->add_option("-H", h_lit, "Hermitian form literal")->required();
    limit->add_option("-m", m_max, "ladder depth")->required();

    auto* tilde = app.add_subcommand("tilde", "transcendental limit coefficient and its table");
    tilde->fallthrough();
    tilde->add_option("-p", p, "odd prime")->required();
    tilde->add_option("-m", m_max, "ladder depth (0: value only)")->required();
    tilde->add_option("-N", prec, "p-adic working precision")->required();
    tilde->add_option("-H", h0_lit, "rank-2 form with eps = 1, 2 det = 1");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->fallthrough();
    verify->add_option("suite", suite,
                       "bernoulli|divisor|kummer|lemma2|coset|gstar|leopoldt|padic")
        ->required();
    verify->add_option("-k", k, "weight (gstar)");
    verify->add_option("-p", p, "odd prime");
    verify->add_option("-B,--bound", bound, "trace bound (gstar, lemma2)");
    verify->add_option("-n", n_deg, "degree 1 or 2 (lemma2, coset)");
    verify->add_option("--kmax", kmax, "weight cap (bernoulli, kummer)");
    verify->add_option("--samples", samples, "sample count (coset, padic)");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("-N", prec, "p-adic working precision (padic)");
    verify->add_option("--nmax", nmax, "divisor sweep bound");
    verify->add_option("--mmax", mmax, "divisor exponent bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string cache = bernoulli_cache_file();
    if (!cache.empty()) qeis::BernoulliTable::load_cache(cache);

    int rc = 2;
    try {
        if (coeff->parsed())
            rc = run_coeff(k, h_lit, has_p ? std::optional<long>(p) : std::nullopt);
        else if (expand->parsed())
            rc = run_expand(k, series == "gstar" ? std::optional<long>(p) : std::nullopt, series,
                            bound, out_path);
        else if (limit->parsed())
            rc = run_limit(k, p, h_lit, m_max);
        else if (tilde->parsed())
            rc = run_tilde(p, h0_lit, m_max, prec);
        else if (verify->parsed())
            rc = run_verify(suite, k, p, bound, n_deg, kmax, samples, seed, prec, nmax, mmax);
    } catch (const qeis::invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    if (!cache.empty()) qeis::BernoulliTable::save_cache(cache);
    return rc;
}
