#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qzrp/macdonald.hpp"
#include "qzrp/multiline.hpp"
#include "qzrp/observables.hpp"
#include "qzrp/tabchain.hpp"
#include "qzrp/zrp.hpp"

namespace qzrp {

struct CheckResult {
    std::string name;
    long checked = 0;
    bool pass = true;
    std::string note;
};

struct SuiteReport {
    std::vector<CheckResult> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, long checked, bool pass, std::string note = "") {
        checks.push_back(CheckResult{std::move(name), checked, pass, std::move(note)});
    }
    void merge(const SuiteReport& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    }
};

// --- balance: wt is in the left kernel of the generator, state by state ---
inline SuiteReport suite_balance(const Partition& lambda, int n, long long budget = -1) {
    check_budget(lambda, n, budget);
    SuiteReport rep;
    long states = 0;
    bool ok = true;
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        ++states;
        if (ok && !verify_balance(sigma)) ok = false;
    });
    rep.add("balance", states, ok);
    return rep;
}

// --- updown: D = U (raw and unblocked) and the telescoping row identity ---
inline SuiteReport suite_updown(const Partition& lambda, int n, long long budget = -1) {
    check_budget(lambda, n, budget);
    SuiteReport rep;
    long checked = 0;
    bool du_ok = true, telescope_ok = true;
    LaurentPoly t_minus_1 = LaurentPoly::t_power(0, 1) - LaurentPoly::one(0);
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        for (int k = 1; k <= n; ++k) {
            ++checked;
            auto [D, U] = dsum_usum(sigma, k);
            if (!(D == U)) du_ok = false;
            auto [Du, Uu] = dsum_usum_unblocked(sigma, k);
            if (!(Du == Uu)) du_ok = false;
            int top = sigma.diagram().nrows();
            for (int j = 0; j <= top; ++j) {
                RowUpDown below = row_updown(sigma, k, j);
                RowUpDown above = row_updown(sigma, k, j + 1);
                LaurentPoly lhs = t_minus_1 * (above.d - below.u);
                LaurentPoly rhs =
                    LaurentPoly::t_power(0, above.ell) - LaurentPoly::t_power(0, below.ell);
                if (!(lhs == rhs)) telescope_ok = false;
            }
        }
    });
    rep.add("updown-sums", checked, du_ok);
    rep.add("updown-telescoping", checked, telescope_ok);
    return rep;
}

// --- quinvdiff: the quinv change law under ringing paths, the tau swap law,
// the monomial relation, and the LLT comparison -------------------------
inline SuiteReport suite_quinvdiff(const Partition& lambda, int n, long long budget = -1) {
    check_budget(lambda, n, budget);
    SuiteReport rep;
    long ring_checked = 0, tau_checked = 0, llt_checked = 0;
    bool full_ok = true, corrected_ok = true, monomial_ok = true, roundtrip_ok = true,
         tau_ok = true, llt_ok = true;
    auto dg = std::make_shared<Diagram>(lambda);
    const Partition& lam = lambda;
    for_each_filling(dg, n, [&](const Filling& xi) {
        long q_xi = quinv(xi);
        // LLT comparison.
        LltStats st = llt_stats(xi);
        ++llt_checked;
        if (q_xi != st.inv_hat - st.arm_hat) llt_ok = false;

        for (const Cell& u : dg->reading_order()) {
            if (!clock_attached(xi, u)) continue;
            ++ring_checked;
            int h = chain_top(xi, u);
            Cell y{h, u.col};
            Filling sigma = ring(xi, u);
            // Uncorrected law with the degenerate-segment correction term.
            int correction = 0;
            if (h == lam.part(u.col) && xi.at(y) == n) {
                int left = 0, right = 0;
                for (int j = 1; j < u.col; ++j)
                    if (lam.part(j) == lam.part(u.col)) ++left;
                for (int j = u.col + 1; j <= lam.length(); ++j)
                    if (lam.part(j) == lam.part(u.col)) ++right;
                correction = left - right;
            }
            DownUp du_u = down_up(xi, u), du_y = down_up(sigma, y);
            if (!du_u.down || !du_y.up) {
                full_ok = false;
                continue;
            }
            if (q_xi - quinv(sigma) != *du_y.up - *du_u.down + correction) full_ok = false;
            // Corrected law via R'.
            RingPrimeResult rp = ring_prime(xi, u);
            DownUp du_yp = down_up(rp.result, rp.y_prime);
            if (!du_yp.up || q_xi - quinv(rp.result) != *du_yp.up - *du_u.down)
                corrected_ok = false;
            // Monomial relation x^xi = x^sigma x_{xi(u)} / x_{sigma(y)}.
            LaurentPoly lhs = x_monomial(xi) * LaurentPoly::variable(n, sigma.at(y));
            LaurentPoly rhs = x_monomial(sigma) * LaurentPoly::variable(n, xi.at(u));
            if (!(lhs == rhs)) monomial_ok = false;
            // Ringing path round trip.
            auto [back, trig] = ring_inverse_with_trigger(sigma, y);
            if (!(back == xi) || !(trig == u)) roundtrip_ok = false;
        }
        // tau swap law on every equal-height column pair.
        for (int j = 1; j < lam.length(); ++j) {
            if (lam.part(j) != lam.part(j + 1)) continue;
            ++tau_checked;
            int k = lam.part(j);
            Filling swapped = tau(xi, j);
            long delta = quinv(swapped) - q_xi;
            int topj = xi.at(k, j), topj1 = xi.at(k, j + 1);
            long expect = topj > topj1 ? 1 : (topj < topj1 ? -1 : 0);
            if (delta != expect) tau_ok = false;
        }
    });
    rep.add("quinvdiff-full", ring_checked, full_ok);
    rep.add("quinvdiff-corrected", ring_checked, corrected_ok);
    rep.add("ring-monomial-relation", ring_checked, monomial_ok);
    rep.add("ring-roundtrip", ring_checked, roundtrip_ok);
    rep.add("tau-quinv-step", tau_checked, tau_ok);
    rep.add("llt-comparison", llt_checked, llt_ok);
    return rep;
}

// --- lumping: Dynkin criterion plus the projection of the tableau chain ---
inline SuiteReport suite_lumping(const Partition& lambda, int n, long long budget = -1) {
    SuiteReport rep;
    rep.add("zrp-projection", 1, verify_projection(lambda, n, budget));
    long thresholds = 0;
    bool ok = true;
    for (int j = 1; j < lambda.length(); ++j) {
        if (lambda.part(j) == lambda.part(j + 1)) continue;
        ++thresholds;
        if (!verify_lumping(lambda, n, j, budget)) ok = false;
    }
    rep.add("lumping", thresholds, ok, thresholds == 0 ? "no valid threshold (vacuous)" : "");
    return rep;
}

// --- stationary: partition-function identities and the numeric solve ---
inline SuiteReport suite_stationary(const Partition& lambda, int n, const ZrpParams& params,
                                    long long budget = -1) {
    SuiteReport rep;
    MacdonaldQ1 tab = htilde_q1_tableaux(lambda, n, budget);
    MacdonaldQ1 fact = htilde_q1_factorized(lambda, n);
    MacdonaldQ1 fact_tab = htilde_q1_factor_tableaux(lambda, n, budget);
    rep.add("htilde-threeway", 3, tab.poly == fact.poly && fact.poly == fact_tab.poly);

    auto weights = all_tazrp_weights(lambda, n, budget);
    LaurentPoly total(n);
    for (const auto& [w, poly] : weights) total += poly;
    rep.add("weights-sum-to-htilde", static_cast<long>(weights.size()), total == tab.poly);

    LaurentPoly z = zrp_partition_function(lambda, n);
    auto ratio = exact_divide(fact.poly, z);
    rep.add("htilde-divisible-by-compressed", 1, ratio.has_value());
    bool weights_divisible = true;
    if (ratio) {
        for (const auto& [w, poly] : weights)
            if (!poly.is_zero() && !exact_divide(poly, *ratio)) weights_divisible = false;
    }
    rep.add("weights-divisible-by-ratio", static_cast<long>(weights.size()),
            ratio.has_value() && weights_divisible);

    bool solve_ok = true;
    long matched = 0;
    BigRational zval = z.evaluate(params.x, params.t);
    BigRational rval = ratio ? ratio->evaluate(params.x, params.t) : BigRational(1);
    for (const auto& [w, pi] : stationary_exact(lambda, n, params, budget)) {
        BigRational expected = weights.at(w).evaluate(params.x, params.t) / (zval * rval);
        if (pi != expected) solve_ok = false;
        ++matched;
    }
    rep.add("stationary-solve-matches-weights", matched, solve_ok);
    return rep;
}

// --- symmetry: full and restricted ---
inline SuiteReport suite_symmetry(const Partition& lambda, int n, long long budget = -1) {
    SuiteReport rep;
    std::vector<int> all_vars;
    for (int v = 1; v <= n; ++v) all_vars.push_back(v);
    rep.add("htilde-symmetric", 1,
            htilde_q1_tableaux(lambda, n, budget).poly.symmetric_under(all_vars));
    bool ok = true;
    for (int ell = 0; ell <= n; ++ell)
        if (!check_restricted_symmetry(lambda, n, ell, budget)) ok = false;
    rep.add("restricted-symmetry", n + 1, ok);
    return rep;
}

// --- density: the log-derivative formula against the exact densities ---
inline SuiteReport suite_density(const Partition& lambda, int n, long long budget = -1) {
    SuiteReport rep;
    Partition lc = lambda.compressed();
    auto values = lambda.value_multiplicities();  // ascending distinct values
    long checked = 0;
    bool ok = true, conserve_ok = true;
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        int value = values[idx].first;
        int label = static_cast<int>(idx) + 1;  // compressed species label
        for (int site = 1; site <= n; ++site) {
            ++checked;
            RationalFunction exact = density_exact(lambda, n, value, site, budget);
            RationalFunction formula = density_formula(lc, n, label, site);
            if (!(exact == formula)) ok = false;
        }
        if (!check_density_conservation(lambda, n, value, budget)) conserve_ok = false;
    }
    rep.add("density-formula", checked, ok);
    rep.add("density-conservation", static_cast<long>(values.size()), conserve_ok);
    return rep;
}

// --- current: the formula against exact bond-flux expectations at several
// generic rational parameter points ---
inline SuiteReport suite_current(const Partition& lambda, int n, long long budget = -1) {
    SuiteReport rep;
    Partition lc = lambda.compressed();
    auto values = lambda.value_multiplicities();
    std::vector<ZrpParams> points;
    {
        std::vector<long> primes{2, 3, 5, 7, 11, 13};
        std::vector<BigRational> ts{BigRational(1, 3), BigRational(1, 2), BigRational(2, 5)};
        for (int p = 0; p < 3; ++p) {
            std::vector<BigRational> xs;
            for (int i = 0; i < n; ++i) xs.emplace_back(primes[(p + i) % primes.size()]);
            points.emplace_back(xs, ts[p]);
        }
    }
    long checked = 0;
    bool ok = true;
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        int value = values[idx].first;
        int label = static_cast<int>(idx) + 1;
        RationalFunction formula = current_formula(lc, n, label);
        for (const ZrpParams& pt : points) {
            ++checked;
            if (formula.evaluate(pt.x, pt.t) != current_exact(lambda, n, value, pt, budget))
                ok = false;
        }
    }
    rep.add("current-formula", checked, ok);
    return rep;
}

// --- top: the top-of-diagram consistency ---
inline SuiteReport suite_top(const Partition& lambda, int n, long long budget = -1) {
    SuiteReport rep;
    rep.add("top-consistency-k1", 1, check_top_consistency(lambda, n, 1, budget));
    if (lambda.largest() >= 2)
        rep.add("top-consistency-k2", 1, check_top_consistency(lambda, n, 2, budget));
    return rep;
}

// --- multiline: the bijection, weights, refusals, and jump conjugation ---
inline SuiteReport suite_multiline(const Partition& lambda, int n, long long budget = -1) {
    check_budget(lambda, n, budget);
    SuiteReport rep;
    auto dg = std::make_shared<Diagram>(lambda);
    if (lambda.is_strict()) {
        long fillings = 0, jumps = 0;
        bool round_ok = true, weight_ok = true, refusal_ok = true, jump_ok = true;
        for_each_filling(dg, n, [&](const Filling& sigma) {
            ++fillings;
            MultilineDiagram m = to_multiline(sigma);
            if (!(from_multiline(m, n) == sigma)) round_ok = false;
            if (!(multiline_weight(m, n) == weight(sigma))) weight_ok = false;
            if (refusals(m, n) != quinv(sigma)) refusal_ok = false;
            // Bottom row of the diagram is the ZRP projection.
            if (!(m.row(1) == proj(sigma))) refusal_ok = false;
            for (const Cell& u : dg->reading_order()) {
                int species = lambda.part(u.col);
                int site = sigma.at(u);
                auto jump = multiline_jump(m, n, u.row, site, species);
                if (clock_attached(sigma, u)) {
                    ++jumps;
                    if (!jump) {
                        jump_ok = false;
                        continue;
                    }
                    Filling target = ring(sigma, u);
                    if (!(jump->result == to_multiline(target))) jump_ok = false;
                    if (!(jump->rate == rate(sigma, u))) jump_ok = false;
                } else if (jump) {
                    jump_ok = false;
                }
            }
        });
        rep.add("multiline-roundtrip", fillings, round_ok);
        rep.add("multiline-weight", fillings, weight_ok);
        rep.add("multiline-refusals", fillings, refusal_ok);
        rep.add("multiline-jump-conjugation", jumps, jump_ok);
    } else {
        // General shapes: only the projection and the fiber-summed weight.
        std::map<std::string, LaurentPoly> fibers;
        LaurentPoly total(n);
        long fillings = 0;
        bool bottom_ok = true;
        for_each_filling(dg, n, [&](const Filling& sigma) {
            ++fillings;
            MultilineDiagram m = to_multiline(sigma);
            if (!(m.row(1) == proj(sigma))) bottom_ok = false;
            auto [it, fresh] = fibers.emplace(m.str(), weight(sigma));
            if (!fresh) it->second += weight(sigma);
        });
        for (const auto& [k, v] : fibers) total += v;
        rep.add("multiline-bottom-row", fillings, bottom_ok);
        rep.add("multiline-fiber-total", static_cast<long>(fibers.size()),
                total == htilde_q1_factorized(lambda, n).poly);
    }
    return rep;
}

// --- t0: quinv-free combinatorics ---
inline SuiteReport suite_t0(const Partition& lambda, int n, long long budget = -1) {
    check_budget(lambda, n, budget);
    SuiteReport rep;
    rep.add("t0-identity", 1, check_t0_identity(lambda, n, budget));
    rep.add("htilde-at-t0-is-h",
            1, htilde_q1_factorized(lambda, n).poly.at_t0() ==
                   [&] {
                       LaurentPoly h = LaurentPoly::one(n);
                       for (int r : lambda.conjugate().parts) h *= complete_homogeneous(r, n);
                       return h;
                   }());
    rep.add("t0-irreducible", 1, verify_irreducibility(lambda, n, /*t0=*/true, budget));
    // Uniqueness: the sorter reconstructs every quinv-free filling from its
    // row contents.
    long quinv_free = 0;
    bool sort_ok = true;
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        if (quinv(sigma) != 0) return;
        ++quinv_free;
        std::vector<std::vector<int>> rows;
        for (int r = 1; r <= dg->nrows(); ++r) {
            std::vector<int> row;
            for (int c = 1; c <= dg->row_len(r); ++c) row.push_back(sigma.at(r, c));
            rows.push_back(std::move(row));
        }
        if (!(quinv_free_sort(rows, n) == sigma)) sort_ok = false;
    });
    rep.add("t0-sort-uniqueness", quinv_free, sort_ok);
    return rep;
}

// --- irreducibility at t > 0 ---
inline SuiteReport suite_irreducible(const Partition& lambda, int n, long long budget = -1) {
    SuiteReport rep;
    rep.add("irreducible", 1, verify_irreducibility(lambda, n, false, budget));
    return rep;
}

inline ZrpParams default_params(int n) {
    std::vector<long> primes{2, 3, 5, 7, 11, 13, 17, 19};
    std::vector<BigRational> xs;
    for (int i = 0; i < n; ++i) xs.emplace_back(primes[i % primes.size()]);
    return ZrpParams(xs, BigRational(1, 3));
}

inline SuiteReport run_suite(const std::string& name, const Partition& lambda, int n,
                             const ZrpParams* params = nullptr, long long budget = -1) {
    ZrpParams p = params ? *params : default_params(n);
    if (name == "balance") return suite_balance(lambda, n, budget);
    if (name == "updown") return suite_updown(lambda, n, budget);
    if (name == "quinvdiff") return suite_quinvdiff(lambda, n, budget);
    if (name == "lumping") return suite_lumping(lambda, n, budget);
    if (name == "stationary") return suite_stationary(lambda, n, p, budget);
    if (name == "symmetry") return suite_symmetry(lambda, n, budget);
    if (name == "density") return suite_density(lambda, n, budget);
    if (name == "current") return suite_current(lambda, n, budget);
    if (name == "top") return suite_top(lambda, n, budget);
    if (name == "multiline") return suite_multiline(lambda, n, budget);
    if (name == "t0") return suite_t0(lambda, n, budget);
    if (name == "irreducible") return suite_irreducible(lambda, n, budget);
    if (name == "all") {
        SuiteReport rep;
        for (const char* s : {"balance", "updown", "quinvdiff", "lumping", "stationary",
                              "symmetry", "density", "current", "top", "multiline", "t0",
                              "irreducible"})
            rep.merge(run_suite(s, lambda, n, &p, budget));
        return rep;
    }
    throw ContractViolation("unknown suite '" + name + "'");
}

}  // namespace qzrp
