#pragma once

#include <optional>
#include <vector>

#include "qzrp/tabchain.hpp"
#include "qzrp/zrp.hpp"

namespace qzrp {

// Cyclic betweenness on sites arranged clockwise: b lies strictly between a
// and c reading clockwise from a, including the case a = c != b.
inline bool cyclic_between(int a, int b, int c, int n) {
    int db = ((b - a) % n + n) % n;
    int dc = ((c - a) % n + n) % n;
    return db >= 1 && (dc == 0 || db < dc);
}

// L rows of ZRP configurations with nested species content; rows are stored
// top (row L) to bottom (row 1), so rows[0] = M^(L).
struct MultilineDiagram {
    Partition shape;
    std::vector<ZrpConfig> rows;

    int levels() const { return static_cast<int>(rows.size()); }
    const ZrpConfig& row(int k) const { return rows[levels() - k]; }
    ZrpConfig& row(int k) { return rows[levels() - k]; }

    friend bool operator==(const MultilineDiagram& a, const MultilineDiagram& b) {
        return a.shape == b.shape && a.rows == b.rows;
    }

    std::string str() const {
        std::string out;
        for (int i = 0; i < levels(); ++i) {
            if (i) out += "\n";
            out += rows[i].str();
        }
        return out;
    }

    // The position p_r of the particle with label r in row k; requires a
    // strict shape so the label is unique within the row.
    int position(int k, int species) const {
        const ZrpConfig& w = row(k);
        for (int s = 1; s <= w.n(); ++s)
            for (int v : w.sites[s - 1])
                if (v == species) return s;
        throw ContractViolation("particle label absent from multiline row");
    }
};

// Row j of sigma read as a ZRP configuration of type lambda^{(j)}: the
// particle of species lambda_i sits at site sigma(j, i).
inline MultilineDiagram to_multiline(const Filling& sigma) {
    const Partition& lam = sigma.shape();
    MultilineDiagram m;
    m.shape = lam;
    int levels = lam.largest();
    for (int k = levels; k >= 1; --k) {
        ZrpConfig w;
        w.sites.assign(sigma.n(), {});
        for (int i = 1; i <= sigma.diagram().row_len(k); ++i)
            w.sites[sigma.at(k, i) - 1].push_back(lam.part(i));
        for (auto& site : w.sites) std::sort(site.begin(), site.end(), std::greater<int>());
        m.rows.push_back(std::move(w));
    }
    return m;
}

// Inverse of to_multiline for strict shapes: sigma(k, j) records the position
// of the unique particle labeled lambda_j in row k.
inline Filling from_multiline(const MultilineDiagram& m, int n) {
    if (!m.shape.is_strict())
        throw ContractViolation("from_multiline: shape must be strict");
    auto dg = std::make_shared<Diagram>(m.shape);
    std::vector<int> entries(dg->cell_count());
    for (const Cell& u : dg->reading_order())
        entries[dg->reading_index(u.row, u.col)] = m.position(u.row, m.shape.part(u.col));
    return Filling(std::move(dg), n, std::move(entries));
}

// Refusals between rows k and k-1: label pairs s < r with the pattern
// p_r(M^(k-1)) < p_s(M^(k-1)) < p_r(M^(k)) in cyclic order.
inline long refusals_between(const MultilineDiagram& m, int k, int n) {
    long count = 0;
    for (int r : m.shape.parts) {
        if (r < k) continue;  // r must appear in row k
        for (int s : m.shape.parts) {
            if (s >= r || s < k - 1) continue;  // s in row k-1, s < r
            int pr_low = m.position(k - 1, r);
            int ps_low = m.position(k - 1, s);
            int pr_high = m.position(k, r);
            if (cyclic_between(pr_low, ps_low, pr_high, n)) ++count;
        }
    }
    return count;
}

// Total number of refusals over all adjacent row pairs.  Single-row diagrams
// have no pairs and hence no refusals, strict or not.
inline long refusals(const MultilineDiagram& m, int n) {
    if (m.levels() <= 1) return 0;
    if (!m.shape.is_strict()) throw ContractViolation("refusals: shape must be strict");
    long total = 0;
    for (int k = 2; k <= m.levels(); ++k) total += refusals_between(m, k, n);
    return total;
}

// wt(M) = x^M t^{refusals}: x-exponents count particles per site across all
// rows.
inline LaurentPoly multiline_weight(const MultilineDiagram& m, int n) {
    Exponent e{static_cast<int>(refusals(m, n)), std::vector<int>(n, 0)};
    for (const ZrpConfig& w : m.rows)
        for (int s = 1; s <= n; ++s) e.x[s - 1] += static_cast<int>(w.sites[s - 1].size());
    return LaurentPoly::monomial(n, 1, std::move(e));
}

// Fiber-summed weight for general shapes: sum of wt(sigma) over all fillings
// mapping to M.  For strict shapes this equals multiline_weight.
inline LaurentPoly multiline_weight_fiber(const MultilineDiagram& m, int n,
                                          long long budget = -1) {
    check_budget(m.shape, n, budget);
    LaurentPoly sum(n);
    auto dg = std::make_shared<Diagram>(m.shape);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        if (to_multiline(sigma) == m) sum += weight(sigma);
    });
    return sum;
}

struct MultilineJump {
    MultilineDiagram result;
    LaurentPoly rate;
};

// One jump of the multiline dynamics (strict shapes): species r at (row k,
// site j) moves one site right, recursively dragging the same label on the
// row above when it sits at the landing site.  Forbidden (nullopt) when the
// row below holds the same label at the starting site.  The rate is
// x_j^{-1} t^d with d = #stronger at (k, j) + #weaker at (k-1, j).
inline std::optional<MultilineJump> multiline_jump(const MultilineDiagram& m, int n, int k, int j,
                                                   int species) {
    if (!m.shape.is_strict()) throw ContractViolation("multiline_jump: shape must be strict");
    if (m.row(k).count_at(j, species) == 0)
        throw ContractViolation("multiline_jump: species absent at the chosen site");
    if (k > 1 && m.row(k - 1).count_at(j, species) > 0) return std::nullopt;

    int d = m.row(k).stronger_at(j, species);
    if (k > 1) {
        for (int v : m.row(k - 1).sites[j - 1])
            if (v < species) ++d;
    }
    MultilineDiagram out = m;
    int row = k, site = j;
    while (true) {
        out.row(row) = out.row(row).moved(site, species);
        int landing = site % n + 1;
        if (row + 1 <= out.levels() && species >= row + 1 &&
            out.row(row + 1).count_at(landing, species) > 0) {
            row += 1;
            site = landing;
        } else {
            break;
        }
    }
    LaurentPoly rate =
        LaurentPoly::variable(n, j, -1) * LaurentPoly::t_power(n, d);
    return MultilineJump{std::move(out), std::move(rate)};
}

}  // namespace qzrp
