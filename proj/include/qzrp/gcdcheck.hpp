#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qzrp/laurent.hpp"

namespace qzrp {

enum class GcdVerdict { UnitWithCertainty, UnitProbably, NonUnitWitness };

struct GcdReport {
    GcdVerdict verdict;
    std::optional<LaurentPoly> witness;  // a common non-unit divisor, when found
    std::string detail;
};

namespace detail {

// Univariate gcd over Q, coefficients indexed by exponent (dense).
inline std::vector<BigRational> uni_gcd(std::vector<BigRational> a, std::vector<BigRational> b) {
    auto trim = [](std::vector<BigRational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            BigRational q = a.back() / b.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
            trim(a);
        }
        std::swap(a, b);
    }
    trim(a);
    return a;
}

// Substitutes every variable except `keep` (0 = t, i = x_i) with the given
// positive integers and returns the dense coefficient vector of the
// resulting univariate polynomial after clearing the minimal exponent.
inline std::vector<BigRational> substitute_to_univariate(const LaurentPoly& p, int keep,
                                                         const std::vector<long>& values) {
    int n = p.nvars();
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        int d = keep == 0 ? e.t_exp : e.x[keep - 1];
        lo = first ? d : std::min(lo, d);
        hi = first ? d : std::max(hi, d);
        first = false;
    }
    std::vector<BigRational> coeffs(static_cast<std::size_t>(hi - lo + 1), BigRational(0));
    for (const auto& [e, c] : p.terms()) {
        BigRational val(c);
        if (keep != 0) val *= rational_pow(BigRational(values[0]), e.t_exp);
        for (int i = 1; i <= n; ++i) {
            if (i == keep) continue;
            val *= rational_pow(BigRational(values[i]), e.x[i - 1]);
        }
        int d = keep == 0 ? e.t_exp : e.x[keep - 1];
        coeffs[static_cast<std::size_t>(d - lo)] += val;
    }
    return coeffs;
}

}  // namespace detail

// Decides (honest-verdict) whether gcd of the given nonzero polynomials is a
// unit of the Laurent ring over Z, i.e. +-(monomial).  Certainty is claimed
// only on the monomial route and for non-unit witnesses found by exact trial
// division; the randomized substitution route reports UnitProbably, with the
// Schwartz-Zippel caveat making only non-unit claims certain.
inline GcdReport gcd_is_unit(const std::vector<LaurentPoly>& ps, int trials, unsigned long seed,
                             const std::vector<LaurentPoly>& candidates = {}) {
    if (ps.empty()) throw ContractViolation("gcd_is_unit: empty list");
    int n = ps.front().nvars();
    for (const auto& p : ps)
        if (p.is_zero()) throw ContractViolation("gcd_is_unit: zero polynomial");

    // Integer content: a common constant factor is a non-unit over Z.
    BigInt content = 0;
    for (const auto& p : ps) content = boost::multiprecision::gcd(content, p.integer_content());
    if (content > 1)
        return {GcdVerdict::NonUnitWitness, LaurentPoly::constant(n, content),
                "common integer content " + content.str()};

    // Common monomial factor with positive exponents (gcd is taken in the
    // polynomial ring, where x_i is not a unit).
    {
        Exponent common{0, std::vector<int>(n, 0)};
        bool first = true;
        for (const auto& p : ps) {
            Exponent m = p.min_exponents();
            if (first) {
                common = m;
                first = false;
            } else {
                common.t_exp = std::min(common.t_exp, m.t_exp);
                for (int i = 0; i < n; ++i) common.x[i] = std::min(common.x[i], m.x[i]);
            }
        }
        Exponent positive{std::max(common.t_exp, 0), std::vector<int>(n, 0)};
        bool nontrivial = positive.t_exp > 0;
        for (int i = 0; i < n; ++i) {
            positive.x[i] = std::max(common.x[i], 0);
            nontrivial |= positive.x[i] > 0;
        }
        if (nontrivial)
            return {GcdVerdict::NonUnitWitness, LaurentPoly::monomial(n, 1, positive),
                    "common monomial factor"};
    }

    // With no shared monomial factor, all-monomial inputs certainly have
    // trivially coprime exponents.
    bool all_monomials = true;
    for (const auto& p : ps) all_monomials &= p.is_monomial();
    if (all_monomials)
        return {GcdVerdict::UnitWithCertainty, std::nullopt,
                "monomials with trivially coprime exponents"};

    // Trial division against the supplied candidate factors.
    for (const auto& cand : candidates) {
        if (cand.is_zero() || cand.is_monomial()) continue;
        bool divides_all = true;
        for (const auto& p : ps)
            if (!exact_divide(p, cand)) {
                divides_all = false;
                break;
            }
        if (divides_all)
            return {GcdVerdict::NonUnitWitness, cand, "trial division found a common factor"};
    }

    // Randomized substitutions: for each variable, look for one substitution
    // of the remaining variables under which the univariate gcd is constant;
    // that is strong evidence that no common factor involves the variable.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> pick(2, 97);
    for (int keep = 0; keep <= n; ++keep) {
        bool has_degree = false;
        for (const auto& p : ps) {
            for (const auto& [e, c] : p.terms()) {
                int d = keep == 0 ? e.t_exp : e.x[keep - 1];
                if (d != 0) has_degree = true;
            }
        }
        if (!has_degree) continue;
        bool constant_gcd_seen = false;
        for (int trial = 0; trial < std::max(trials, 1) && !constant_gcd_seen; ++trial) {
            std::vector<long> values(static_cast<std::size_t>(n) + 1);
            for (auto& v : values) v = pick(rng);
            std::vector<BigRational> g;
            bool first = true;
            for (const auto& p : ps) {
                auto uni = detail::substitute_to_univariate(p, keep, values);
                g = first ? uni : detail::uni_gcd(g, uni);
                first = false;
                if (g.size() == 1) break;
            }
            if (g.size() == 1 && g[0] != 0) constant_gcd_seen = true;
        }
        if (!constant_gcd_seen)
            return {GcdVerdict::NonUnitWitness, std::nullopt,
                    std::string("persistent nonconstant gcd in variable ") +
                        (keep == 0 ? "t" : "x" + std::to_string(keep)) +
                        " (no explicit witness extracted)"};
    }
    return {GcdVerdict::UnitProbably, std::nullopt, "randomized substitution test passed"};
}

inline std::string verdict_name(GcdVerdict v) {
    switch (v) {
        case GcdVerdict::UnitWithCertainty: return "UnitWithCertainty";
        case GcdVerdict::UnitProbably: return "UnitProbably";
        case GcdVerdict::NonUnitWitness: return "NonUnitWitness";
    }
    return "?";
}

}  // namespace qzrp
