#pragma once

#include <deque>
#include <map>
#include <set>
#include <vector>

#include "qzrp/filling.hpp"
#include "qzrp/zrp.hpp"

namespace qzrp {

// Cyclic arithmetic lands in [n]: n+1 wraps to 1, 0 wraps to n.
inline int cyc_next(int v, int n) { return v % n + 1; }
inline int cyc_prev(int v, int n) { return v == 1 ? n : v - 1; }

// Row number of the top of the maximal vertical chain upwards from u along
// which contents increase by 1 cyclically.
inline int chain_top(const Filling& sigma, const Cell& u) {
    if (!sigma.diagram().contains(u)) throw ContractViolation("chain_top: cell outside diagram");
    int r = u.row, c = u.col, n = sigma.n();
    while (sigma.diagram().contains(r + 1, c) && sigma.at(r + 1, c) == cyc_next(sigma.at(r, c), n))
        ++r;
    return r;
}

// The ringing-path map R_u: increments the maximal chain above u, or fixes
// sigma when the cell below u shares its content.
inline Filling ring(const Filling& sigma, const Cell& u) {
    if (!sigma.diagram().contains(u)) throw ContractViolation("ring: cell outside diagram");
    int n = sigma.n();
    if (sigma.has_south(u.row, u.col) && sigma.at(u.row - 1, u.col) == sigma.at(u))
        return sigma;
    int h = chain_top(sigma, u);
    std::vector<int> e = sigma.entries();
    for (int r = u.row; r <= h; ++r) {
        int idx = sigma.diagram().reading_index(r, u.col);
        e[idx] = cyc_next(e[idx], n);
    }
    return sigma.with_entries(std::move(e));
}

// The inverse map R_y^{-1}: decrements the maximal downward chain from y
// along which contents decrease by 1 cyclically; identity when the cell
// above y shares its content.  Also reports the bottom cell of the chain,
// which is the unique trigger u with R_u(result) = sigma.
inline std::pair<Filling, Cell> ring_inverse_with_trigger(const Filling& sigma, const Cell& y) {
    if (!sigma.diagram().contains(y)) throw ContractViolation("ring_inverse: cell outside diagram");
    int n = sigma.n();
    if (sigma.north_content(y.row, y.col) == sigma.at(y)) return {sigma, y};
    int r = y.row, c = y.col;
    while (sigma.diagram().contains(r - 1, c) && sigma.at(r - 1, c) == cyc_prev(sigma.at(r, c), n))
        --r;
    std::vector<int> e = sigma.entries();
    for (int i = r; i <= y.row; ++i) {
        int idx = sigma.diagram().reading_index(i, c);
        e[idx] = cyc_prev(e[idx], n);
    }
    return {sigma.with_entries(std::move(e)), Cell{r, c}};
}

inline Filling ring_inverse(const Filling& sigma, const Cell& y) {
    return ring_inverse_with_trigger(sigma, y).first;
}

// r_max of the swap operator tau_j: the largest row r in {2..k} where
// exchanging the two entries of row r does not change whether the triple
// below row r is a quinv triple; 1 when no such row exists.
inline int tau_rmax(const Filling& sigma, int j) {
    const Partition& lam = sigma.shape();
    if (lam.part(j) == 0 || lam.part(j) != lam.part(j + 1))
        throw ContractViolation("tau: columns must have equal height");
    int k = lam.part(j);
    for (int r = k; r >= 2; --r) {
        int a_r = sigma.at(r, j), b_r = sigma.at(r, j + 1);
        int a_below = sigma.at(r - 1, j), b_below = sigma.at(r - 1, j + 1);
        if (in_quinv_set(a_r, a_below, b_below) == in_quinv_set(b_r, a_below, b_below)) return r;
    }
    return 1;
}

// tau_j: swaps the entries of columns j, j+1 in rows r_max..k.
inline Filling tau(const Filling& sigma, int j) {
    int k = sigma.shape().part(j);
    int rmax = tau_rmax(sigma, j);
    std::vector<int> e = sigma.entries();
    for (int r = rmax; r <= k; ++r) {
        int ij = sigma.diagram().reading_index(r, j);
        int ij1 = sigma.diagram().reading_index(r, j + 1);
        std::swap(e[ij], e[ij1]);
    }
    return sigma.with_entries(std::move(e));
}

struct RingPrimeResult {
    Filling result;
    Cell y;        // top of the ringing chain in xi
    Cell y_prime;  // landing cell after the tau correction (y when none)
};

// R'_u: the ringing path followed, when a column-top n wraps to 1 inside a
// degenerate segment, by the ordered tau composition reflecting that 1
// across the segment (Def. of the corrected transition).
inline RingPrimeResult ring_prime(const Filling& xi, const Cell& u) {
    if (xi.has_south(u.row, u.col) && xi.at(u.row - 1, u.col) == xi.at(u))
        throw ContractViolation("ring_prime: trigger has equal content below");
    int n = xi.n();
    int h = chain_top(xi, u);
    Cell y{h, u.col};
    Filling sigma = ring(xi, u);
    if (xi.at(y) != n || h < xi.shape().part(u.col)) return {sigma, y, y};

    auto [s, e] = xi.diagram().degenerate_segment(y);
    int v = y.col, vp = s + e - v;
    if (v < vp) {
        for (int j = v; j < vp; ++j) sigma = tau(sigma, j);
    } else {
        for (int j = v - 1; j >= vp; --j) sigma = tau(sigma, j);
    }
    return {sigma, y, Cell{y.row, vp}};
}

// Clock rate of the trigger u in state sigma: x_{sigma(u)}^{-1} t^{down}.
inline LaurentPoly rate(const Filling& sigma, const Cell& u) {
    if (sigma.has_south(u.row, u.col) && sigma.at(u.row - 1, u.col) == sigma.at(u))
        throw ContractViolation("rate: no clock attached (down is Blocked)");
    return LaurentPoly::variable(sigma.n(), sigma.at(u), -1) *
           LaurentPoly::t_power(sigma.n(), down_arm_count(sigma, u));
}

inline bool clock_attached(const Filling& sigma, const Cell& u) {
    return !(sigma.has_south(u.row, u.col) && sigma.at(u.row - 1, u.col) == sigma.at(u));
}

struct Transition {
    Filling from;
    Cell trigger;
    Filling to;
    LaurentPoly rate;
};

inline std::vector<Transition> transitions_from(const Filling& sigma) {
    std::vector<Transition> out;
    for (const Cell& u : sigma.diagram().reading_order()) {
        if (!clock_attached(sigma, u)) continue;
        out.push_back(Transition{sigma, u, ring_prime(sigma, u).result, rate(sigma, u)});
    }
    return out;
}

inline std::vector<Transition> build_generator(const Partition& lambda, int n,
                                               long long budget = -1) {
    check_budget(lambda, n, budget);
    std::vector<Transition> gen;
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        auto trans = transitions_from(sigma);
        gen.insert(gen.end(), trans.begin(), trans.end());
    });
    return gen;
}

struct InEdge {
    Filling from;
    Cell trigger;
};

// In(sigma) computed constructively: every candidate is produced by undoing
// the ringing path (and, for a wrapped column-top 1, the reflected tau
// composition) and then confirmed by forward application of R'.  The forward
// check keeps correctness independent of any unstated involution property of
// the tau operators.
inline std::vector<InEdge> in_transitions(const Filling& sigma) {
    std::vector<InEdge> in;
    std::set<std::pair<std::vector<int>, std::pair<int, int>>> seen;
    auto consider = [&](const Filling& xi, const Cell& u) {
        if (!clock_attached(xi, u)) return;
        RingPrimeResult rp = ring_prime(xi, u);
        if (!(rp.result == sigma)) return;
        auto key = std::make_pair(xi.entries(), std::make_pair(u.row, u.col));
        if (seen.insert(key).second) in.push_back(InEdge{xi, u});
    };

    const Diagram& dg = sigma.diagram();
    // Uncorrected transitions: undo the chain from every eligible cell y.
    for (const Cell& y : dg.reading_order()) {
        if (sigma.north_content(y.row, y.col) == sigma.at(y)) continue;
        auto [xi, u] = ring_inverse_with_trigger(sigma, y);
        consider(xi, u);
    }
    // Corrected transitions: a 1 at a column top may have been reflected
    // into its position; move it back across the degenerate segment first.
    for (int c = 1; c <= dg.ncols(); ++c) {
        Cell w{dg.col_height(c), c};
        if (sigma.at(w) != 1) continue;
        auto [s, e] = dg.degenerate_segment(w);
        int vp = w.col, v = s + e - vp;
        if (v == vp) continue;
        Filling mid = sigma;
        if (v > vp) {
            for (int j = vp; j < v; ++j) mid = tau(mid, j);
        } else {
            for (int j = vp - 1; j >= v; --j) mid = tau(mid, j);
        }
        Cell y{w.row, v};
        if (mid.at(y) != 1) continue;
        auto [xi, u] = ring_inverse_with_trigger(mid, y);
        consider(xi, u);
    }
    return in;
}

// Checks the stationarity balance at one state as an exact Laurent identity:
// wt(sigma) * sum of outgoing rates == sum over In(sigma) of wt(xi) rate(xi).
inline bool verify_balance(const Filling& sigma) {
    int n = sigma.n();
    LaurentPoly outflow(n);
    for (const Cell& u : sigma.diagram().reading_order())
        if (clock_attached(sigma, u)) outflow += rate(sigma, u);
    LaurentPoly lhs = weight(sigma) * outflow;
    LaurentPoly rhs(n);
    for (const InEdge& edge : in_transitions(sigma)) rhs += weight(edge.from) * rate(edge.from, edge.trigger);
    return lhs == rhs;
}

namespace detail {

inline bool mutually_reachable(const std::vector<std::vector<int>>& adj) {
    const int m = static_cast<int>(adj.size());
    if (m == 0) return true;
    std::vector<std::vector<int>> radj(m);
    for (int v = 0; v < m; ++v)
        for (int w : adj[v]) radj[w].push_back(v);
    auto bfs = [m](const std::vector<std::vector<int>>& g) {
        std::vector<char> vis(m, 0);
        std::deque<int> q{0};
        vis[0] = 1;
        int count = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : g[v])
                if (!vis[w]) {
                    vis[w] = 1;
                    ++count;
                    q.push_back(w);
                }
        }
        return count == m;
    };
    return bfs(adj) && bfs(radj);
}

}  // namespace detail

// Strong connectivity of the transition digraph.  In t=0 mode the state
// space is restricted to quinv-free fillings and triggers to down = 0 cells.
inline bool verify_irreducibility(const Partition& lambda, int n, bool t0_mode = false,
                                  long long budget = -1) {
    check_budget(lambda, n, budget);
    auto dg = std::make_shared<Diagram>(lambda);
    std::vector<Filling> states;
    std::map<std::vector<int>, int> index;
    for_each_filling(dg, n, [&](const Filling& sigma) {
        if (t0_mode && quinv(sigma) != 0) return;
        index[sigma.entries()] = static_cast<int>(states.size());
        states.push_back(sigma);
    });
    std::vector<std::vector<int>> adj(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (const Cell& u : dg->reading_order()) {
            if (!clock_attached(states[i], u)) continue;
            if (t0_mode && down_arm_count(states[i], u) != 0) continue;
            Filling target = ring_prime(states[i], u).result;
            auto it = index.find(target.entries());
            if (it == index.end()) return false;  // left the restricted state space
            if (it->second != static_cast<int>(i)) adj[i].push_back(it->second);
        }
    }
    return detail::mutually_reachable(adj);
}

// Species-threshold lumping (the colouring projection): keep the j strongest
// particles and relabel them 1.
inline ZrpConfig lumped_image(const ZrpConfig& w, int threshold_species) {
    ZrpConfig img;
    img.sites.assign(w.n(), {});
    for (int s = 1; s <= w.n(); ++s)
        for (int v : w.sites[s - 1])
            if (v >= threshold_species) img.sites[s - 1].push_back(1);
    return img;
}

// The projection of the tableau chain onto the ZRP: for every filling, the
// trigger rates summed by the projected target reproduce the ZRP rates
// exactly.
inline bool verify_projection(const Partition& lambda, int n, long long budget = -1) {
    check_budget(lambda, n, budget);
    auto dg = std::make_shared<Diagram>(lambda);
    bool ok = true;
    for_each_filling(dg, n, [&](const Filling& sigma) {
        if (!ok) return;
        ZrpConfig w = proj(sigma);
        std::map<ZrpConfig, LaurentPoly> buckets;
        for (const Cell& u : dg->reading_order()) {
            if (!clock_attached(sigma, u)) continue;
            ZrpConfig target = proj(ring_prime(sigma, u).result);
            if (target == w) continue;
            auto [it, fresh] = buckets.emplace(target, rate(sigma, u));
            if (!fresh) it->second += rate(sigma, u);
        }
        std::map<ZrpConfig, LaurentPoly> expected;
        for (const ZrpMove& mv : zrp_rates(w))
            if (!(mv.target == w)) expected.emplace(mv.target, mv.rate);
        if (!(buckets == expected)) ok = false;
    });
    return ok;
}

// Checks (a) the Dynkin criterion for lumping onto the single-species TAZRP
// across the species threshold at position j, and (b) the projection of the
// tableau chain onto the ZRP.
inline bool verify_lumping(const Partition& lambda, int n, int j, long long budget = -1) {
    if (j < 1 || j >= lambda.length() || lambda.part(j) == lambda.part(j + 1))
        throw ContractViolation("verify_lumping: need 1 <= j < len(lambda) with lambda_j != lambda_{j+1}");
    check_budget(lambda, n, budget);
    int threshold = lambda.part(j);

    // (a) Dynkin criterion on the ZRP generator.
    for (const ZrpConfig& w : enumerate_configs(lambda, n)) {
        ZrpConfig img = lumped_image(w, threshold);
        std::map<ZrpConfig, LaurentPoly> into_class;
        for (const ZrpMove& mv : zrp_rates(w)) {
            ZrpConfig timg = lumped_image(mv.target, threshold);
            if (timg == img) continue;
            auto [it, fresh] = into_class.emplace(timg, mv.rate);
            if (!fresh) it->second += mv.rate;
        }
        std::map<ZrpConfig, LaurentPoly> expected;
        for (int s = 1; s <= n; ++s) {
            int m = static_cast<int>(img.sites[s - 1].size());
            if (m == 0) continue;
            ZrpConfig timg = img.moved(s, 1);
            if (timg == img) continue;  // self-loop on a one-site ring
            expected.emplace(std::move(timg), LaurentPoly::variable(n, s, -1) * t_integer(m, n));
        }
        if (!(into_class == expected)) return false;
    }

    // (b) The tableau chain projects onto the ZRP chain.
    return verify_projection(lambda, n, budget);
}

}  // namespace qzrp
