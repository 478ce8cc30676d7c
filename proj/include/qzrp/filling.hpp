#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qzrp/laurent.hpp"
#include "qzrp/shapes.hpp"

namespace qzrp {

// Membership in the quinv triple set: the entries (a,b,c) of a triple, read
// in increasing order, run counterclockwise.  Degenerate triples enter with
// a = 0; the value 0 participates only as a.
inline bool in_quinv_set(int a, int b, int c) {
    return (a < b && b < c) || (b < c && c < a) || (c < a && a < b) || (a == b && b != c);
}

// A filling of dg(lambda) with labels in [n].  Entries are stored in reading
// order; the sentinels sigma(above a column top) = 0 and sigma(below the
// bottom row) = infinity are virtual, never stored.
class Filling {
  public:
    Filling(std::shared_ptr<const Diagram> dg, int n, std::vector<int> entries)
        : dg_(std::move(dg)), n_(n), entries_(std::move(entries)) {
        if (static_cast<int>(entries_.size()) != dg_->cell_count())
            throw ContractViolation("entry count does not match diagram");
        for (int v : entries_)
            if (v < 1 || v > n_) throw ContractViolation("entry outside [n]");
    }

    static Filling constant(std::shared_ptr<const Diagram> dg, int n, int value) {
        std::vector<int> e(dg->cell_count(), value);
        return Filling(std::move(dg), n, std::move(e));
    }

    const Diagram& diagram() const { return *dg_; }
    std::shared_ptr<const Diagram> diagram_ptr() const { return dg_; }
    const Partition& shape() const { return dg_->shape(); }
    int n() const { return n_; }
    const std::vector<int>& entries() const { return entries_; }

    int at(int r, int c) const { return entries_[dg_->reading_index(r, c)]; }
    int at(const Cell& u) const { return at(u.row, u.col); }

    // 0 when the cell above is missing.
    int north_content(int r, int c) const {
        return dg_->contains(r + 1, c) ? at(r + 1, c) : 0;
    }
    bool has_south(int r, int c) const { return dg_->contains(r - 1, c); }

    Filling with_entry(int r, int c, int v) const {
        std::vector<int> e = entries_;
        e[dg_->reading_index(r, c)] = v;
        return Filling(dg_, n_, std::move(e));
    }

    Filling with_entries(std::vector<int> e) const { return Filling(dg_, n_, std::move(e)); }

    friend bool operator==(const Filling& a, const Filling& b) {
        return a.shape() == b.shape() && a.n_ == b.n_ && a.entries_ == b.entries_;
    }
    friend bool operator<(const Filling& a, const Filling& b) { return a.entries_ < b.entries_; }

    // Rows top to bottom, entries left to right, rows joined by " ; ".
    std::string str() const {
        std::ostringstream out;
        for (int r = dg_->nrows(); r >= 1; --r) {
            if (r != dg_->nrows()) out << " ; ";
            for (int c = 1; c <= dg_->row_len(r); ++c) {
                if (c > 1) out << " ";
                out << at(r, c);
            }
        }
        return out.str();
    }

  private:
    std::shared_ptr<const Diagram> dg_;
    int n_;
    std::vector<int> entries_;
};

// Parses the text form produced by Filling::str (rows top to bottom,
// ';'-separated).  The shape is inferred from the row lengths.
inline Filling parse_filling(const std::string& text, int n) {
    std::vector<std::vector<int>> rows_top_down;
    std::stringstream in(text);
    std::string rowtext;
    while (std::getline(in, rowtext, ';')) {
        std::vector<int> row;
        std::stringstream rin(rowtext);
        int v;
        while (rin >> v) row.push_back(v);
        if (!row.empty()) rows_top_down.push_back(std::move(row));
    }
    int nrows = static_cast<int>(rows_top_down.size());
    std::vector<int> colheights;
    if (nrows) {
        int width = static_cast<int>(rows_top_down.back().size());
        colheights.assign(width, 0);
        for (int r = 1; r <= nrows; ++r) {
            const auto& row = rows_top_down[nrows - r];
            for (std::size_t c = 0; c < row.size(); ++c) colheights[c] = r;
        }
    }
    auto dg = std::make_shared<Diagram>(Partition(colheights));
    std::vector<int> entries(dg->cell_count());
    for (int r = 1; r <= nrows; ++r) {
        const auto& row = rows_top_down[nrows - r];
        if (static_cast<int>(row.size()) != dg->row_len(r))
            throw ContractViolation("ragged filling rows do not form a diagram");
        for (int c = 1; c <= dg->row_len(r); ++c)
            entries[dg->reading_index(r, c)] = row[c - 1];
    }
    return Filling(dg, n, std::move(entries));
}

// Streams all n^{|lambda|} fillings in lexicographic order of the entry
// vector read in reading order.  Constant memory per filling.
class FillingEnumerator {
  public:
    FillingEnumerator(std::shared_ptr<const Diagram> dg, int n)
        : dg_(std::move(dg)), n_(n), entries_(dg_->cell_count(), 1), done_(n < 1) {}

    std::optional<Filling> next() {
        if (done_) return std::nullopt;
        Filling f(dg_, n_, entries_);
        // Odometer increment on the reading-order word, last cell fastest.
        int i = static_cast<int>(entries_.size()) - 1;
        while (i >= 0 && entries_[i] == n_) {
            entries_[i] = 1;
            --i;
        }
        if (i < 0)
            done_ = true;
        else
            ++entries_[i];
        return f;
    }

  private:
    std::shared_ptr<const Diagram> dg_;
    int n_;
    std::vector<int> entries_;
    bool done_;
};

template <typename F>
inline void for_each_filling(const std::shared_ptr<const Diagram>& dg, int n, F&& fn) {
    FillingEnumerator en(dg, n);
    while (auto f = en.next()) fn(*f);
}

// Enumerates only the fillings whose leading reading-order entries equal the
// given prefix; the prefixes partition Tab(lambda, n) for parallel sweeps.
template <typename F>
inline void for_each_filling_with_prefix(const std::shared_ptr<const Diagram>& dg, int n,
                                         const std::vector<int>& prefix, F&& fn) {
    int cells = dg->cell_count();
    if (static_cast<int>(prefix.size()) > cells)
        throw ContractViolation("prefix longer than the diagram");
    std::vector<int> entries(cells, 1);
    std::copy(prefix.begin(), prefix.end(), entries.begin());
    int fixed = static_cast<int>(prefix.size());
    while (true) {
        fn(Filling(dg, n, entries));
        int i = cells - 1;
        while (i >= fixed && entries[i] == n) {
            entries[i] = 1;
            --i;
        }
        if (i < fixed) break;
        ++entries[i];
    }
}

inline long long count_fillings(const Partition& shape, int n) {
    long long count = 1;
    for (int i = 0; i < shape.size(); ++i) {
        if (count > (1LL << 62) / std::max(n, 1)) return -1;  // overflow guard
        count *= n;
    }
    return count;
}

// quinv(sigma): number of quinv triples, degenerate triples included via the
// a = 0 convention.
inline long quinv(const Filling& sigma) {
    const Diagram& dg = sigma.diagram();
    long total = 0;
    for (int r = 1; r <= dg.nrows(); ++r) {
        int len = dg.row_len(r);
        for (int i = 1; i < len; ++i) {
            int a = sigma.north_content(r, i);
            int b = sigma.at(r, i);
            for (int j = i + 1; j <= len; ++j)
                if (in_quinv_set(a, b, sigma.at(r, j))) ++total;
        }
    }
    return total;
}

// x^sigma as a Laurent monomial.
inline LaurentPoly x_monomial(const Filling& sigma) {
    Exponent e{0, std::vector<int>(sigma.n(), 0)};
    for (int v : sigma.entries()) ++e.x[v - 1];
    return LaurentPoly::monomial(sigma.n(), 1, std::move(e));
}

// wt(sigma) = x^sigma t^{quinv(sigma)}.
inline LaurentPoly weight(const Filling& sigma) {
    Exponent e{static_cast<int>(quinv(sigma)), std::vector<int>(sigma.n(), 0)};
    for (int v : sigma.entries()) ++e.x[v - 1];
    return LaurentPoly::monomial(sigma.n(), 1, std::move(e));
}

// Raw arm counts (no Blocked sentinel): the number of lower/upper-arm cells
// sharing u's content.  These are the exponents in the bar generating
// functions of the telescoping identity.
inline int down_arm_count(const Filling& sigma, const Cell& u) {
    int k = sigma.at(u), count = 0;
    for (const Cell& y : sigma.diagram().lower_arm(u))
        if (sigma.at(y) == k) ++count;
    return count;
}

inline int up_arm_count(const Filling& sigma, const Cell& u) {
    int k = sigma.at(u), count = 0;
    for (const Cell& y : sigma.diagram().upper_arm(u))
        if (sigma.at(y) == k) ++count;
    return count;
}

// down/up with the Blocked (t^{-infinity}) case as an explicit empty
// optional: down is Blocked iff sigma(South(u)) = sigma(u) (bottom-row cells
// are never blocked), symmetrically for up with the 0 sentinel above.
struct DownUp {
    std::optional<int> down;
    std::optional<int> up;
};

inline DownUp down_up(const Filling& sigma, const Cell& u) {
    DownUp res;
    int k = sigma.at(u);
    bool south_blocked = sigma.has_south(u.row, u.col) && sigma.at(u.row - 1, u.col) == k;
    bool north_blocked = sigma.north_content(u.row, u.col) == k;
    if (!south_blocked) res.down = down_arm_count(sigma, u);
    if (!north_blocked) res.up = up_arm_count(sigma, u);
    return res;
}

// Per-row generating functions d_j(t), u_j(t) over all content-k cells of row
// j using raw arm counts, plus the cell count l_j.  These satisfy
// (t-1)(d_{j+1} - u_j) = t^{l_{j+1}} - t^{l_j}.
struct RowUpDown {
    LaurentPoly d;
    LaurentPoly u;
    int ell = 0;
};

inline RowUpDown row_updown(const Filling& sigma, int k, int row) {
    RowUpDown res{LaurentPoly::zero(0), LaurentPoly::zero(0), 0};
    const Diagram& dg = sigma.diagram();
    if (row < 1 || row > dg.nrows()) return res;
    for (int c = 1; c <= dg.row_len(row); ++c) {
        Cell u{row, c};
        if (sigma.at(u) != k) continue;
        ++res.ell;
        res.d += LaurentPoly::t_power(0, down_arm_count(sigma, u));
        res.u += LaurentPoly::t_power(0, up_arm_count(sigma, u));
    }
    return res;
}

// D(sigma,k), U(sigma,k): t-generating functions of the raw down/up counts
// over every content-k cell (blocked cells included; their contributions to
// the two sides cancel pairwise, which the unblocked variant makes explicit).
inline std::pair<LaurentPoly, LaurentPoly> dsum_usum(const Filling& sigma, int k) {
    LaurentPoly D = LaurentPoly::zero(0), U = LaurentPoly::zero(0);
    for (int r = 1; r <= sigma.diagram().nrows(); ++r) {
        RowUpDown row = row_updown(sigma, k, r);
        D += row.d;
        U += row.u;
    }
    return {D, U};
}

// The unblocked variant: sums restricted to cells whose clock exists
// (sigma(South(u)) != k resp. sigma(North(u)) != k).
inline std::pair<LaurentPoly, LaurentPoly> dsum_usum_unblocked(const Filling& sigma, int k) {
    LaurentPoly D = LaurentPoly::zero(0), U = LaurentPoly::zero(0);
    for (const Cell& u : sigma.diagram().reading_order()) {
        if (sigma.at(u) != k) continue;
        DownUp du = down_up(sigma, u);
        if (du.down) D += LaurentPoly::t_power(0, *du.down);
        if (du.up) U += LaurentPoly::t_power(0, *du.up);
    }
    return {D, U};
}

// Attacking inversions, descent set, and the arm-length correction of the
// LLT comparison quinv = inv_hat - arm_hat.
struct LltStats {
    long inv_hat = 0;
    long arm_hat = 0;
    std::vector<Cell> descents;
};

inline LltStats llt_stats(const Filling& sigma) {
    LltStats st;
    const Diagram& dg = sigma.diagram();
    for (int r = 1; r <= dg.nrows(); ++r) {
        int len = dg.row_len(r);
        for (int i = 1; i <= len; ++i) {
            int si = sigma.at(r, i);
            // Type B: same row, the right entry exceeds the left.
            for (int j = i + 1; j <= len; ++j)
                if (sigma.at(r, j) > si) ++st.inv_hat;
            // Type A: u=(r,i) against v=(r-1,j) with j > i.
            if (r >= 2)
                for (int j = i + 1; j <= dg.row_len(r - 1); ++j)
                    if (si > sigma.at(r - 1, j)) ++st.inv_hat;
            // Descents and their arm lengths.
            if (r >= 2 && si > sigma.at(r - 1, i)) {
                st.descents.push_back(Cell{r, i});
                st.arm_hat += dg.row_len(r - 1) - i;
            }
        }
    }
    return st;
}

// Drops the k bottom rows: shape mu_i = (lambda_i - k)_+, entries shifted.
inline Filling restrict_top(const Filling& xi, int k) {
    const Partition& lam = xi.shape();
    if (k < 0 || k > lam.largest()) throw ContractViolation("restrict_top: bad row count");
    std::vector<int> mu;
    for (int p : lam.parts)
        if (p - k > 0) mu.push_back(p - k);
    auto dg = std::make_shared<Diagram>(Partition(std::move(mu)));
    std::vector<int> entries(dg->cell_count());
    for (const Cell& u : dg->reading_order())
        entries[dg->reading_index(u.row, u.col)] = xi.at(u.row + k, u.col);
    return Filling(std::move(dg), xi.n(), std::move(entries));
}

}  // namespace qzrp
