#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "qzrp/macdonald.hpp"
#include "qzrp/simulate.hpp"
#include "qzrp/zrp.hpp"

namespace qzrp {

// Unreduced rational function; equality is cross-multiplied polynomial
// equality, so no gcd is ever needed.
struct RationalFunction {
    LaurentPoly num;
    LaurentPoly den;

    RationalFunction(LaurentPoly n_, LaurentPoly d_) : num(std::move(n_)), den(std::move(d_)) {
        if (den.is_zero()) throw ContractViolation("rational function with zero denominator");
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num * b.den == b.num * a.den;
    }

    RationalFunction operator-(const RationalFunction& o) const {
        return {num * o.den - o.num * den, den * o.den};
    }

    BigRational evaluate(const std::vector<BigRational>& xs, const BigRational& t) const {
        BigRational d = den.evaluate(xs, t);
        if (d == 0) throw ContractViolation("rational function evaluated at a pole");
        return num.evaluate(xs, t) / d;
    }
};

// (x_i d/dx_i p, p), the log-derivative as an unreduced fraction.
inline RationalFunction log_derivative(const LaurentPoly& p, int i) {
    if (p.is_zero()) throw ContractViolation("log_derivative of zero polynomial");
    return {p.x_log_derivative_numerator(i), p};
}

// Exact stationary density of species j at site i: the weight-weighted count
// over the full partition function.
inline RationalFunction density_exact(const Partition& lambda, int n, int species, int site,
                                      long long budget = -1) {
    check_budget(lambda, n, budget);
    LaurentPoly num(n), den(n);
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        LaurentPoly w = weight(sigma);
        den += w;
        int count = proj(sigma).count_at(site, species);
        if (count) num += w * BigInt(count);
    });
    return {std::move(num), std::move(den)};
}

namespace detail {

// Number of particles with species label >= the j'th strongest class, for
// compressed lambda = <1^{m_1},...,k^{m_k}>: r_j = m_j + ... + m_k.
inline int tail_count(const Partition& lambda_c, int species) {
    int count = 0;
    for (int p : lambda_c.parts)
        if (p >= species) ++count;
    return count;
}

inline std::vector<int> rotation_for_site(int n, int site) {
    // Variable permutation realizing <tau_i> = r(x_i,...,x_n,x_1,...,x_{i-1}).
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[k] = (k + site - 1) % n;
    return perm;
}

}  // namespace detail

// The density formula: species j at site 1 equals
// x_1 d/dx_1 log( H~_<1^{r_j}> / H~_<1^{r_{j+1}}> ),
// with other sites obtained by cyclic rotation of the variables.
inline RationalFunction density_formula(const Partition& lambda, int n, int species, int site = 1) {
    if (!lambda.is_compressed())
        throw ContractViolation("density_formula: lambda must be compressed");
    if (site < 1 || site > n) throw ContractViolation("density_formula: site out of range");
    if (species < 1 || species > lambda.largest())
        throw ContractViolation("density_formula: species out of range");
    int r_j = detail::tail_count(lambda, species);
    int r_next = detail::tail_count(lambda, species + 1);
    LaurentPoly a = htilde_column_monomial(r_j, n);
    LaurentPoly b = htilde_column_monomial(r_next, n);
    LaurentPoly num = a.x_log_derivative_numerator(1) * b - b.x_log_derivative_numerator(1) * a;
    LaurentPoly den = a * b;
    auto perm = detail::rotation_for_site(n, site);
    return {num.permuted_vars(perm), den.permuted_vars(perm)};
}

// The current formula for species j:
// [r_j]_t H~_<1^{r_j - 1}>/H~_<1^{r_j}> - [r_{j+1}]_t H~_<1^{r_{j+1}-1}>/H~_<1^{r_{j+1}}>.
inline RationalFunction current_formula(const Partition& lambda, int n, int species) {
    if (!lambda.is_compressed())
        throw ContractViolation("current_formula: lambda must be compressed");
    int r_j = detail::tail_count(lambda, species);
    int r_next = detail::tail_count(lambda, species + 1);
    LaurentPoly a1 = htilde_column_monomial(r_j - 1, n), a = htilde_column_monomial(r_j, n);
    LaurentPoly num = t_integer(r_j, n) * a1;
    LaurentPoly den = a;
    if (r_next > 0) {
        LaurentPoly b1 = htilde_column_monomial(r_next - 1, n), b = htilde_column_monomial(r_next, n);
        num = num * b - t_integer(r_next, n) * b1 * a;
        den = a * b;
    }
    return {std::move(num), std::move(den)};
}

// Exact stationary current of a species across the site n -> 1 bond,
// computed from the exact stationary law at numeric parameters.
inline BigRational current_exact(const Partition& lambda, int n, int species,
                                 const ZrpParams& params, long long budget = -1) {
    BigRational current = 0;
    for (const auto& [w, pi] : stationary_exact(lambda, n, params, budget)) {
        for (const ZrpMove& mv : zrp_rates(w))
            if (mv.site == n && mv.species == species)
                current += pi * mv.rate.evaluate(params.x, params.t);
    }
    return current;
}

// Species conservation: sum over sites of the density of species j equals
// its multiplicity in lambda, as an exact rational-function identity.
inline bool check_density_conservation(const Partition& lambda, int n, int species,
                                       long long budget = -1) {
    LaurentPoly num(n), den(n);
    bool have = false;
    for (int site = 1; site <= n; ++site) {
        RationalFunction d = density_exact(lambda, n, species, site, budget);
        if (!have) {
            num = d.num;
            den = d.den;
            have = true;
        } else {
            num = num * d.den + d.num * den;
            den = den * d.den;
        }
    }
    int mult = 0;
    for (int p : lambda.parts)
        if (p == species) ++mult;
    return num == den * BigInt(mult);
}

// Restricted stationary weight: the sum of wt(sigma) over fillings whose
// projection agrees with w on sites 1..ell.
inline LaurentPoly restricted_weight(const Partition& lambda, int n, int ell,
                                     const std::vector<std::vector<int>>& w,
                                     long long budget = -1) {
    check_budget(lambda, n, budget);
    if (ell < 0 || ell > n || static_cast<int>(w.size()) != ell)
        throw ContractViolation("restricted_weight: bad restriction");
    std::vector<std::vector<int>> target = w;
    for (auto& site : target) std::sort(site.begin(), site.end(), std::greater<int>());
    LaurentPoly sum(n);
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        if (proj(sigma).restricted(ell) == target) sum += weight(sigma);
    });
    return sum;
}

// The restricted-configuration symmetry: for every w on sites 1..ell the
// restricted weight is symmetric in x_{ell+1}..x_n.
inline bool check_restricted_symmetry(const Partition& lambda, int n, int ell,
                                      long long budget = -1) {
    check_budget(lambda, n, budget);
    std::vector<int> tail_vars;
    for (int v = ell + 1; v <= n; ++v) tail_vars.push_back(v);

    std::map<std::vector<std::vector<int>>, LaurentPoly> by_restriction;
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        auto key = proj(sigma).restricted(ell);
        auto [it, fresh] = by_restriction.emplace(std::move(key), weight(sigma));
        if (!fresh) it->second += weight(sigma);
    });
    for (const auto& [w, poly] : by_restriction)
        if (!poly.symmetric_under(tail_vars)) return false;
    return true;
}

// Top-of-diagram consistency: dropping the k bottom rows, the fiber sum over
// completions of each filling sigma of the reduced shape equals
// wt(sigma) * prod over the deleted rows r of H~_<1^{lambda'_r}>.
inline bool check_top_consistency(const Partition& lambda, int n, int k, long long budget = -1) {
    if (k < 0 || k > lambda.largest()) throw ContractViolation("check_top_consistency: bad k");
    if (k == 0) return true;
    check_budget(lambda, n, budget);
    LaurentPoly factor = LaurentPoly::one(n);
    Partition conj = lambda.conjugate();
    for (int r = 1; r <= k; ++r) factor *= htilde_column_monomial(conj.part(r), n);

    std::map<std::vector<int>, LaurentPoly> fiber;
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& xi) {
        auto key = restrict_top(xi, k).entries();
        auto [it, fresh] = fiber.emplace(std::move(key), weight(xi));
        if (!fresh) it->second += weight(xi);
    });

    std::vector<int> mu_parts;
    for (int p : lambda.parts)
        if (p - k > 0) mu_parts.push_back(p - k);
    auto mu_dg = std::make_shared<Diagram>(Partition(std::move(mu_parts)));
    bool ok = true;
    for_each_filling(mu_dg, n, [&](const Filling& sigma) {
        if (!ok) return;
        auto it = fiber.find(sigma.entries());
        if (it == fiber.end() || !(it->second == weight(sigma) * factor)) ok = false;
    });
    return ok;
}

// Translation covariance: rotating a configuration by one site while
// cyclically relabeling the variables fixes its stationary weight.
inline bool check_translation_covariance(const Partition& lambda, int n, long long budget = -1) {
    auto weights = all_tazrp_weights(lambda, n, budget);
    for (const auto& [w, poly] : weights) {
        if (!(weights.at(w.rotated()) == poly.rotated_vars())) return false;
    }
    return true;
}

// Two-sample Kolmogorov-Smirnov statistic and the alpha = 0.001 asymptotic
// threshold; this is statistical evidence, never a proof.
struct KsResult {
    double statistic = 0;
    double threshold = 0;
    bool reject = false;
};

inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double c_alpha = 1.95) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    KsResult res;
    res.statistic = d;
    res.threshold = c_alpha * std::sqrt((na + nb) / (na * nb));
    res.reject = d > res.threshold;
    return res;
}

struct PathwiseReport {
    int paths = 0;
    double horizon = 0;
    KsResult ks;
    bool exploratory = false;  // true when run at t > 0 (open problem territory)
};

// Fraction of [0, horizon] during which site 1 holds no particle, replayed
// from the recorded event sequence.
inline double site_empty_fraction(const Trajectory& tr, int n, double horizon) {
    int count = static_cast<int>(tr.initial.sites[0].size());
    double empty = 0, prev = 0;
    for (const Event& e : tr.events) {
        if (count == 0) empty += e.time - prev;
        prev = e.time;
        if (e.site == 1) --count;
        if (e.site == n) ++count;
    }
    if (count == 0) empty += horizon - prev;
    return empty / horizon;
}

// Monte Carlo probe of pathwise symmetry at t = 0: simulates the process
// under the original and the permuted parameters from the same initial
// condition (sites ell+1..n empty) and compares the per-path fraction of
// time site 1 is empty with a two-sample KS test.
inline PathwiseReport pathwise_symmetry_mc(const Partition& lambda, int n, int ell,
                                           const std::vector<int>& tail_permutation,
                                           const ZrpParams& params, std::uint64_t seed,
                                           double horizon, int paths,
                                           bool allow_positive_t = false) {
    if (!allow_positive_t && params.t != 0)
        throw ContractViolation("pathwise_symmetry_mc requires t = 0");
    if (ell < 1 || ell >= n) throw ContractViolation("need 1 <= ell < n");
    if (static_cast<int>(tail_permutation.size()) != n - ell)
        throw ContractViolation("permutation must cover sites ell+1..n");

    std::vector<BigRational> xs2 = params.x;
    for (int k = 0; k < n - ell; ++k) {
        int src = tail_permutation[k];
        if (src < ell + 1 || src > n) throw ContractViolation("permutation entry out of range");
        xs2[ell + k] = params.x[src - 1];
    }
    ZrpParams permuted(xs2, params.t);

    // Initial condition: everything at site 1, sites ell+1..n empty.
    ZrpConfig start;
    start.sites.assign(n, {});
    for (int p : lambda.parts) start.sites[0].push_back(p);

    auto run = [&](const ZrpParams& pr, std::uint64_t stream_base) {
        std::vector<double> stats;
        stats.reserve(paths);
        for (int path = 0; path < paths; ++path) {
            Trajectory tr = simulate(lambda, n, pr, split_seed(seed, stream_base + path), horizon,
                                     -1, &start);
            stats.push_back(site_empty_fraction(tr, n, horizon));
        }
        return stats;
    };

    // Common random numbers: both parameterizations replay the same streams,
    // so the identity permutation is identical by construction and equal-law
    // comparisons are conservative.
    auto s1 = run(params, 1);
    auto s2 = run(permuted, 1);

    PathwiseReport rep;
    rep.paths = paths;
    rep.horizon = horizon;
    rep.ks = ks_two_sample(s1, s2);
    rep.exploratory = params.t != 0;
    return rep;
}

}  // namespace qzrp
