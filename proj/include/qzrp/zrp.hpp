#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qzrp/filling.hpp"
#include "qzrp/linalg.hpp"
#include "qzrp/qanalog.hpp"

namespace qzrp {

// Desk-scale guard: refuses when states would exceed the budget.  The
// default is generous for |lambda| <= 6, n <= 4 and can be raised via the
// QZRP_BUDGET environment variable or per call.
inline long long default_budget() {
    if (const char* env = std::getenv("QZRP_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 20'000'000;
}

inline void check_budget(const Partition& shape, int n, long long budget = -1) {
    if (budget < 0) budget = default_budget();
    long long states = count_fillings(shape, n);
    if (states < 0 || states > budget)
        throw BudgetExceeded(states < 0 ? -1 : states, budget);
}

// An mTAZRP configuration: one multiset of species per site, each stored as
// a descending-sorted vector so equality is structural.
struct ZrpConfig {
    std::vector<std::vector<int>> sites;

    ZrpConfig() = default;
    explicit ZrpConfig(std::vector<std::vector<int>> s) : sites(std::move(s)) {
        for (auto& site : sites) std::sort(site.begin(), site.end(), std::greater<int>());
    }

    int n() const { return static_cast<int>(sites.size()); }

    int count_at(int site, int species) const {
        int c = 0;
        for (int v : sites[site - 1])
            if (v == species) ++c;
        return c;
    }

    int stronger_at(int site, int species) const {
        int c = 0;
        for (int v : sites[site - 1])
            if (v > species) ++c;
        return c;
    }

    // Moves one particle of `species` from `site` to the cyclically next one.
    ZrpConfig moved(int site, int species) const {
        ZrpConfig w = *this;
        auto& from = w.sites[site - 1];
        auto it = std::find(from.begin(), from.end(), species);
        if (it == from.end()) throw ContractViolation("species absent at site");
        from.erase(it);
        auto& to = w.sites[site % n()];
        to.insert(std::upper_bound(to.begin(), to.end(), species, std::greater<int>()), species);
        return w;
    }

    // Simultaneous site translation i -> i+1 (site n wraps to 1).
    ZrpConfig rotated() const {
        ZrpConfig w;
        w.sites.resize(sites.size());
        for (std::size_t i = 0; i < sites.size(); ++i) w.sites[(i + 1) % sites.size()] = sites[i];
        return w;
    }

    std::vector<std::vector<int>> restricted(int ell) const {
        return {sites.begin(), sites.begin() + ell};
    }

    Partition content() const {
        std::vector<int> all;
        for (const auto& site : sites) all.insert(all.end(), site.begin(), site.end());
        std::sort(all.begin(), all.end(), std::greater<int>());
        return Partition(std::move(all));
    }

    friend bool operator==(const ZrpConfig& a, const ZrpConfig& b) { return a.sites == b.sites; }
    friend bool operator<(const ZrpConfig& a, const ZrpConfig& b) { return a.sites < b.sites; }

    // Text form: sites joined by '|', species digits descending, '.' empty.
    std::string str() const {
        std::string out;
        for (int j = 0; j < n(); ++j) {
            if (j) out += "|";
            if (sites[j].empty()) {
                out += ".";
            } else {
                for (int v : sites[j]) out += std::to_string(v);
            }
        }
        return out;
    }

    static ZrpConfig parse(const std::string& text) {
        std::vector<std::vector<int>> sites;
        std::stringstream in(text);
        std::string tok;
        while (std::getline(in, tok, '|')) {
            std::vector<int> site;
            for (char ch : tok) {
                if (ch == '.' || ch == ' ') continue;
                if (ch < '0' || ch > '9') throw ContractViolation("bad config character");
                site.push_back(ch - '0');
            }
            sites.push_back(std::move(site));
        }
        return ZrpConfig(std::move(sites));
    }
};

// proj: bottom row of a filling read as a ZRP configuration; the particle of
// species lambda_i sits at site sigma(1, i).
inline ZrpConfig proj(const Filling& sigma) {
    ZrpConfig w;
    w.sites.assign(sigma.n(), {});
    const Partition& lam = sigma.shape();
    for (int i = 1; i <= lam.length(); ++i) w.sites[sigma.at(1, i) - 1].push_back(lam.part(i));
    for (auto& site : w.sites) std::sort(site.begin(), site.end(), std::greater<int>());
    return w;
}

// All multiset compositions of lambda into n sites, in the canonical
// (lexicographic on per-site descending vectors) order.
inline std::vector<ZrpConfig> enumerate_configs(const Partition& lambda, int n) {
    std::vector<ZrpConfig> configs;
    ZrpConfig base;
    base.sites.assign(n, {});
    configs.push_back(base);
    for (const auto& [value, mult] : lambda.value_multiplicities()) {
        // Distribute `mult` copies of `value` over n sites.
        std::vector<std::vector<int>> placements;
        std::vector<int> counts(n, 0);
        auto rec = [&](auto&& self, int left, int site) -> void {
            if (site == n - 1) {
                counts[site] = left;
                placements.push_back(counts);
                return;
            }
            for (int k = left; k >= 0; --k) {
                counts[site] = k;
                self(self, left - k, site + 1);
            }
            counts[site] = 0;
        };
        rec(rec, mult, 0);
        std::vector<ZrpConfig> next;
        next.reserve(configs.size() * placements.size());
        for (const auto& cfg : configs)
            for (const auto& pl : placements) {
                ZrpConfig w = cfg;
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < pl[j]; ++k) w.sites[j].push_back(value);
                next.push_back(std::move(w));
            }
        configs = std::move(next);
    }
    for (auto& w : configs)
        for (auto& site : w.sites) std::sort(site.begin(), site.end(), std::greater<int>());
    std::sort(configs.begin(), configs.end());
    configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
    return configs;
}

struct ZrpMove {
    int site;
    int species;
    ZrpConfig target;
    LaurentPoly rate;
};

// All jump classes out of w.  A species r at site j with c_r copies and d_r
// stronger particles jumps at total rate x_j^{-1} t^{d_r} (1+t+...+t^{c_r-1}).
inline std::vector<ZrpMove> zrp_rates(const ZrpConfig& w) {
    int n = w.n();
    std::vector<ZrpMove> moves;
    for (int j = 1; j <= n; ++j) {
        std::vector<int> seen;
        for (int r : w.sites[j - 1]) {
            if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
            seen.push_back(r);
            int c = w.count_at(j, r), d = w.stronger_at(j, r);
            LaurentPoly rate =
                LaurentPoly::variable(n, j, -1) * LaurentPoly::t_power(n, d) * t_integer(c, n);
            moves.push_back(ZrpMove{j, r, w.moved(j, r), std::move(rate)});
        }
    }
    return moves;
}

// Exact fiber sum of tableau weights over proj^{-1}(w), for every w at once.
inline std::map<ZrpConfig, LaurentPoly> all_tazrp_weights(const Partition& lambda, int n,
                                                          long long budget = -1) {
    check_budget(lambda, n, budget);
    std::map<ZrpConfig, LaurentPoly> weights;
    for (const ZrpConfig& w : enumerate_configs(lambda, n)) weights.emplace(w, LaurentPoly(n));
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& sigma) { weights.at(proj(sigma)) += weight(sigma); });
    return weights;
}

inline LaurentPoly tazrp_weight(const Partition& lambda, int n, const ZrpConfig& w,
                                long long budget = -1) {
    check_budget(lambda, n, budget);
    auto dg = std::make_shared<Diagram>(lambda);
    LaurentPoly sum(n);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        if (proj(sigma) == w) sum += weight(sigma);
    });
    return sum;
}

// Numeric parameters: positive site rates x and t >= 0 (symbolic layers place
// no restriction on t; the simulator and the stationary solver do).
struct ZrpParams {
    std::vector<BigRational> x;
    BigRational t;

    ZrpParams(std::vector<BigRational> xs, BigRational tt) : x(std::move(xs)), t(std::move(tt)) {
        for (const auto& v : x)
            if (v <= 0) throw ContractViolation("site parameters must be positive");
        if (t < 0) throw ContractViolation("t must be nonnegative");
    }
};

// Exact stationary distribution: solves pi Q = 0, sum(pi) = 1 with the
// normalization replacing the balance equation of the last state in
// canonical order.
inline std::vector<std::pair<ZrpConfig, BigRational>> stationary_exact(const Partition& lambda,
                                                                       int n,
                                                                       const ZrpParams& params,
                                                                       long long budget = -1) {
    if (static_cast<int>(params.x.size()) != n) throw ContractViolation("params arity mismatch");
    std::vector<ZrpConfig> states = enumerate_configs(lambda, n);
    const int m = static_cast<int>(states.size());
    if (budget < 0) budget = default_budget();
    if (m > budget) throw BudgetExceeded(m, budget);
    std::map<ZrpConfig, int> index;
    for (int i = 0; i < m; ++i) index[states[i]] = i;

    // Column-indexed balance equations sum_i pi_i Q(i,j) = 0.
    std::vector<std::vector<BigRational>> a(m, std::vector<BigRational>(m, BigRational(0)));
    for (int i = 0; i < m; ++i) {
        for (const ZrpMove& mv : zrp_rates(states[i])) {
            int j = index.at(mv.target);
            if (j == i) continue;
            BigRational r = mv.rate.evaluate(params.x, params.t);
            a[j][i] += r;
            a[i][i] -= r;
        }
    }
    for (int i = 0; i < m; ++i) a[m - 1][i] = 1;  // normalization row
    std::vector<BigRational> b(m, BigRational(0));
    b[m - 1] = 1;

    std::vector<BigRational> pi = solve_linear_exact(std::move(a), std::move(b));
    BigRational total = 0;
    for (const auto& p : pi) {
        if (p <= 0) throw ContractViolation("non-positive stationary probability (internal)");
        total += p;
    }
    if (total != 1) throw ContractViolation("stationary probabilities do not sum to 1 (internal)");
    std::vector<std::pair<ZrpConfig, BigRational>> out;
    out.reserve(m);
    for (int i = 0; i < m; ++i) out.emplace_back(states[i], pi[i]);
    return out;
}

}  // namespace qzrp
