#pragma once

#include <map>
#include <vector>

#include "qzrp/gcdcheck.hpp"
#include "qzrp/parallel.hpp"
#include "qzrp/qanalog.hpp"
#include "qzrp/symfunc.hpp"
#include "qzrp/tabchain.hpp"
#include "qzrp/zrp.hpp"

namespace qzrp {

enum class MacdonaldForm { TableauSum, Factorized, MonomialExpansion };

struct MacdonaldQ1 {
    Partition shape;
    int n;
    LaurentPoly poly;
    MacdonaldForm provenance;
};

// H~_lambda(x_1..x_n; 1, t) as the streaming weight sum over Tab(lambda, n).
// With jobs > 1 the enumeration is partitioned by the first reading-order
// entry and the partial sums combine in prefix order, so the result is
// independent of the job count.
inline MacdonaldQ1 htilde_q1_tableaux(const Partition& lambda, int n, long long budget = -1,
                                      int jobs = 1) {
    check_budget(lambda, n, budget);
    auto dg = std::make_shared<Diagram>(lambda);
    if (jobs <= 1 || dg->cell_count() == 0 || n == 1) {
        LaurentPoly sum(n);
        for_each_filling(dg, n, [&](const Filling& sigma) { sum += weight(sigma); });
        return {lambda, n, std::move(sum), MacdonaldForm::TableauSum};
    }
    std::vector<int> prefixes(n);
    for (int v = 1; v <= n; ++v) prefixes[v - 1] = v;
    auto partials = parallel_map<int, LaurentPoly>(
        prefixes,
        [&](int first) {
            LaurentPoly part(n);
            for_each_filling_with_prefix(dg, n, {first},
                                         [&](const Filling& sigma) { part += weight(sigma); });
            return part;
        },
        jobs);
    LaurentPoly sum(n);
    for (const LaurentPoly& part : partials) sum += part;
    return {lambda, n, std::move(sum), MacdonaldForm::TableauSum};
}

// The single-column factor H~_<1^r> via its monomial expansion
// sum_{mu |- r} [r; mu]_t m_mu(X).
inline LaurentPoly htilde_column_monomial(int r, int n) {
    LaurentPoly sum(n);
    for (const Partition& mu : partitions_of(r))
        sum += t_multinomial(r, mu.parts, n) * monomial_symmetric(mu.parts, n);
    if (r == 0) sum = LaurentPoly::one(n);
    return sum;
}

// H~_lambda(X;1,t) = prod_j H~_<1^{lambda'_j}>(X;1,t), factors built from the
// monomial expansion.
inline MacdonaldQ1 htilde_q1_factorized(const Partition& lambda, int n) {
    LaurentPoly prod = LaurentPoly::one(n);
    for (int rowlen : lambda.conjugate().parts) prod *= htilde_column_monomial(rowlen, n);
    return {lambda, n, std::move(prod), MacdonaldForm::Factorized};
}

// Third route: the same product with each factor computed as a tableau sum
// over the one-column shape, so all three forms are independently derived.
inline MacdonaldQ1 htilde_q1_factor_tableaux(const Partition& lambda, int n,
                                             long long budget = -1) {
    LaurentPoly prod = LaurentPoly::one(n);
    for (int rowlen : lambda.conjugate().parts)
        prod *= htilde_q1_tableaux(one_column(rowlen), n, budget).poly;
    return {lambda, n, std::move(prod), MacdonaldForm::MonomialExpansion};
}

// Verifies the expansion in powers of x_1:
// H~_<1^r>(x1..xn) = sum_i [r i]_t x1^i H~_<1^{r-i}>(x2..xn).
inline bool x1_expansion_check(int r, int n) {
    if (r < 0) throw ContractViolation("x1_expansion_check: negative r");
    LaurentPoly lhs = htilde_column_monomial(r, n);
    LaurentPoly rhs(n);
    for (int i = 0; i <= r; ++i) {
        LaurentPoly tail = htilde_column_monomial(r - i, n - 1).shifted_vars(1);
        rhs += t_binomial(r, i, n) * LaurentPoly::variable(n, 1, i) * tail;
    }
    return lhs == rhs;
}

// Partition function of the mTAZRP: H~ at q=1 of the compressed partition.
inline LaurentPoly zrp_partition_function(const Partition& lambda, int n) {
    return htilde_q1_factorized(lambda.compressed(), n).poly;
}

// One bubble-sort stage of the unique-quinv-free construction: rearranges
// `row` under a fixed row `above` by scanning left to right and swapping an
// adjacent pair whenever it forms a quinv triple with the cell above the
// left entry (a = 0 beyond the end of the row above).  The result is the
// unique arrangement free of quinv triples against `above`.
inline std::vector<int> bubble_sort_against(std::vector<int> row, const std::vector<int>& above) {
    if (row.size() < above.size())
        throw ContractViolation("bubble_sort_against: row shorter than the row above");
    auto pair_is_quinv = [&](std::size_t c) {
        int a = c < above.size() ? above[c] : 0;
        return in_quinv_set(a, row[c], row[c + 1]);
    };
    bool swapped = true;
    long passes = 0, cap = 4 * static_cast<long>(row.size()) * row.size() + 16;
    while (swapped && passes++ < cap) {
        swapped = false;
        for (std::size_t c = 0; c + 1 < row.size(); ++c)
            if (pair_is_quinv(c)) {
                std::swap(row[c], row[c + 1]);
                swapped = true;
            }
    }
    if (swapped) throw ContractViolation("bubble_sort_against: sort did not terminate");
    return row;
}

// The unique quinv-free filling with the given row contents (multisets,
// listed bottom row first, lengths weakly decreasing).  The top row sorts
// descending; each lower row is bubble-sorted against the row above.
inline Filling quinv_free_sort(const std::vector<std::vector<int>>& row_contents, int n) {
    std::vector<int> rowlens;
    for (std::size_t i = 0; i < row_contents.size(); ++i) {
        if (row_contents[i].empty()) throw ContractViolation("quinv_free_sort: empty row");
        if (i && row_contents[i].size() > row_contents[i - 1].size())
            throw ContractViolation("quinv_free_sort: row lengths must weakly decrease upwards");
        rowlens.push_back(static_cast<int>(row_contents[i].size()));
    }
    Partition shape = Partition(rowlens).conjugate();
    auto dg = std::make_shared<Diagram>(shape);
    std::vector<std::vector<int>> rows = row_contents;
    int nrows = static_cast<int>(rows.size());
    if (nrows) std::sort(rows[nrows - 1].begin(), rows[nrows - 1].end(), std::greater<int>());
    for (int r = nrows - 1; r >= 1; --r) rows[r - 1] = bubble_sort_against(rows[r - 1], rows[r]);
    std::vector<int> entries(dg->cell_count());
    for (int r = 1; r <= nrows; ++r)
        for (int c = 1; c <= dg->row_len(r); ++c)
            entries[dg->reading_index(r, c)] = rows[r - 1][c - 1];
    Filling result(dg, n, std::move(entries));
    if (quinv(result) != 0)
        throw ContractViolation("quinv_free_sort: bubble sort failed to reach a quinv-free filling");
    return result;
}

// The t=0 identity: the quinv-free weight generating function equals
// h_{lambda'}(x_1..x_n).
inline bool check_t0_identity(const Partition& lambda, int n, long long budget = -1) {
    check_budget(lambda, n, budget);
    LaurentPoly lhs(n);
    auto dg = std::make_shared<Diagram>(lambda);
    for_each_filling(dg, n, [&](const Filling& sigma) {
        if (quinv(sigma) == 0) lhs += x_monomial(sigma);
    });
    LaurentPoly rhs = LaurentPoly::one(n);
    for (int rowlen : lambda.conjugate().parts) rhs *= complete_homogeneous(rowlen, n);
    return lhs == rhs;
}

struct ConjectureEvidence {
    std::string instance;
    GcdReport gcd;
    bool passed;
};

// Evidence gathering for the reduced-partition-function conjecture: the gcd
// of all stationary weights of TAZRP(lambda, n) should be a unit when lambda
// is compressed.  The H~ column factors are natural divisor candidates.
inline ConjectureEvidence check_conjecture_compressed(const Partition& lambda, int n, int trials,
                                                      unsigned long seed, long long budget = -1) {
    if (!lambda.is_compressed())
        throw ContractViolation("check_conjecture_compressed: lambda must be compressed");
    check_budget(lambda, n, budget);
    std::vector<LaurentPoly> weights;
    for (auto& [w, poly] : all_tazrp_weights(lambda, n, budget)) weights.push_back(poly);
    std::vector<LaurentPoly> candidates;
    for (int r = 2; r <= lambda.size(); ++r) candidates.push_back(htilde_column_monomial(r, n));
    GcdReport report = gcd_is_unit(weights, trials, seed, candidates);
    bool passed = report.verdict != GcdVerdict::NonUnitWitness;
    return {"compressed lambda=" + lambda.str() + " n=" + std::to_string(n), std::move(report),
            passed};
}

// The set Ext_lambda(sigma): fillings of dg(lambda) extending a filling of
// dg(lambda^c), where column i of lambda^c occupies the bottom lambda^c_i
// cells of column i of lambda (so the bottom rows coincide) and the skew
// cells above are free.
inline std::vector<Filling> extensions(const Filling& sigma_c, const Partition& lambda) {
    const Partition lc = lambda.compressed();
    if (!(sigma_c.shape() == lc))
        throw ContractViolation("extensions: filling shape must be the compressed partition");
    auto dg = std::make_shared<Diagram>(lambda);
    std::vector<Cell> free_cells;
    for (const Cell& u : dg->reading_order())
        if (u.row > lc.part(u.col)) free_cells.push_back(u);
    std::vector<int> base(dg->cell_count(), 1);
    for (const Cell& u : sigma_c.diagram().reading_order())
        base[dg->reading_index(u.row, u.col)] = sigma_c.at(u);
    std::vector<Filling> out;
    std::vector<int> choice(free_cells.size(), 1);
    int n = sigma_c.n();
    while (true) {
        std::vector<int> entries = base;
        for (std::size_t i = 0; i < free_cells.size(); ++i)
            entries[dg->reading_index(free_cells[i].row, free_cells[i].col)] = choice[i];
        out.emplace_back(dg, n, std::move(entries));
        int i = static_cast<int>(choice.size()) - 1;
        while (i >= 0 && choice[i] == n) {
            choice[i] = 1;
            --i;
        }
        if (i < 0) break;
        ++choice[i];
    }
    return out;
}

// The refined conjecture at one instance: for strict lambda and a filling
// sigma of dg(lambda^c),
//   sum_{T in Ext_lambda(sigma)} wt(T) = wt(sigma) H~_lambda / H~_{lambda^c}.
inline bool check_conjecture_refined(const Partition& lambda, int n, const Filling& sigma_c,
                                     long long budget = -1) {
    if (!lambda.is_strict()) throw ContractViolation("check_conjecture_refined: lambda must be strict");
    check_budget(lambda, n, budget);
    LaurentPoly lhs(n);
    for (const Filling& T : extensions(sigma_c, lambda)) lhs += weight(T);
    LaurentPoly num = htilde_q1_factorized(lambda, n).poly;
    LaurentPoly den = htilde_q1_factorized(lambda.compressed(), n).poly;
    auto ratio = exact_divide(num, den);
    if (!ratio) throw ContractViolation("H~_lambda not divisible by H~_{lambda^c} (internal)");
    return lhs == weight(sigma_c) * (*ratio);
}

}  // namespace qzrp
